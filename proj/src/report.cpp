#include "norden/report.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace norden {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "not-applicable";
    case CheckStatus::Informational: return "informational";
  }
  return "?";
}

const std::vector<CheckInfo>& check_catalogue() {
  static const std::vector<CheckInfo> catalogue = {
      {"eq1.1-norden", "Eq 1.1", "J^2 = -I and g(Jx,Jy) = -g(x,y)", {}},
      {"assoc-metric-norden", "Sec 1 g~", "g~ symmetric, Norden, and its associate is -g", {}},
      {"lc-torsion-free", "Sec 1 nabla", "Levi-Civita connection is torsion free", {}},
      {"lc-metric", "Sec 1 nabla", "Levi-Civita connection is metric", {}},
      {"eq1.3-f-symmetry", "Eq 1.3", "F(x,y,z) = F(x,z,y) = F(x,Jy,Jz)", {}},
      {"eq1.4-w3-class", "Eq 1.4", "cyclic sum of F (class W3 iff zero)", {}, false, true},
      {"w0-class", "Sec 1 W0", "max |F| (class W0 iff zero)", {}, false, true},
      {"eq2.1-b-natural", "Eq 2.1", "B-connection satisfies Dg = DJ = 0", {}},
      {"eq2.4-q-two-route", "Eq 2.4", "Q from F equals Q from (nabla J)J", {}},
      {"eq2.5-q-antisym", "Eq 2.5", "Q(y,z,w) = -Q(y,w,z)", {}},
      {"eq2.2-torsion", "Eq 2.2", "T(x,y,Jz) = (F(x,y,z) - F(y,x,z))/2", {}},
      {"prop2.1-torsion-cyclic", "Prop 2.1", "cyclic sum of T(x,y,Jz) vanishes", {"is_W3"}},
      {"eq1.5-ricci-identity", "Eq 1.5", "(nabla_x F)(y,z,w) - (nabla_y F)(x,z,w) = R(x,y,Jz,w) - R(x,y,z,Jw)", {}},
      {"eq1.11-r-curvature-like", "Eq 1.10-1.11", "R is curvature-like", {}},
      {"eq1.12-k-kahler", "Eq 1.12", "K antisymmetries and K(x,y,Jz,Jw) = -K(x,y,z,w)", {}},
      {"eq2.8-p-kahler", "Eq 2.8", "P antisymmetries and P(x,y,Jz,Jw) = -P(x,y,z,w)", {}},
      {"thm2.2-k-crosscheck", "Thm 2.2", "curvature of D equals (2R - 2R(.,.,J,J) + P)/4", {"is_W3"}, true},
      {"eq2.10-l2-class", "Eq 2.10", "cyclic sum of R(x,y,Jz,Jw) (class L2 iff zero)", {}, false, true},
      {"thm2.3-kahler-k", "Thm 2.3", "Bianchi(K) = 0 iff 2 S R(x,y,Jz,Jw) = S P", {"is_W3"}},
      {"thm2.4-kahler-p", "Thm 2.4", "Bianchi(K) = 0 iff Bianchi(P) = 0", {"is_W3", "is_L2"}},
      {"cor2.5-h-kahler", "Cor 2.5", "H = R - R(.,.,J,J) is a Kähler tensor", {"is_W3", "is_L2", "K_kahler"}},
      {"eq1.6-norm", "Eq 1.6", "square norm of nabla J", {}, false, true},
      {"eq1.7-w3-norm", "Eq 1.7", "|nabla J|^2 = -2 g^ij g^ks g((nabla_i J)e_k, (nabla_s J)e_j)", {"is_W3"}},
      {"eq1.9-tau-star", "Eq 1.9", "tau* of R (both readings)", {}, false, true},
      {"eq3.1-ricci-relation", "Eq 3.1", "rho(y,z) - rho*(y,Jz) = 2 rho(K) - rho(P)/2", {"is_W3"}},
      {"eq3.2-scalar-relation", "Eq 3.2", "tau - tau** = 2 tau(K) - tau(P)/2", {"is_W3"}},
      {"norm-tau-relation", "Sec 3 norm", "|nabla J|^2 = -2 (tau + tau**)", {"is_W3"}},
      {"eq3.3-tau-relation", "Eq 3.3", "tau = tau(K) - (tau(P) + |nabla J|^2)/4", {"is_W3"}},
      {"eq3.4-tau-p", "Eq 3.4", "tau(P) = -|nabla J|^2 / 2", {"is_W3"}},
      {"eq3.5-tau-k", "Eq 3.5", "tau = tau(K) - |nabla J|^2 / 8", {"is_W3"}},
      {"prop3.1-isotropic-kahler", "Prop 3.1", "isotropic-Kähler iff tau = tau(K)", {"is_W3"}},
      {"eq3.6-pi-basis", "Eq 3.6", "pi1 - pi2 and pi3 are Kähler tensors", {"dim4"}},
      {"eq3.6-h-decomposition", "Eq 3.6", "H = nu (pi1 - pi2) + nu* pi3", {"dim4", "is_W3", "is_L2", "K_kahler"}},
      {"prop3.2-h-form", "Prop 3.2", "H = (4tau(K) - tau(P))/16 (pi1 - pi2) + (4tau*(K) - tau*(P))/16 pi3",
       {"dim4", "is_W3", "is_L2", "K_kahler"}},
  };
  return catalogue;
}

void require_known_checks(const std::vector<std::string>& ids) {
  const auto& cat = check_catalogue();
  for (const auto& id : ids) {
    if (std::none_of(cat.begin(), cat.end(), [&](const CheckInfo& c) { return c.id == id; })) {
      throw Error("unknown check id '" + id + "'");
    }
  }
}

bool IdentityReport::any_fail() const {
  return std::any_of(entries.begin(), entries.end(), [](const ReportEntry& e) { return e.status == CheckStatus::Fail; });
}

const ReportEntry* IdentityReport::find(std::string_view id) const {
  for (const auto& e : entries)
    if (e.check_id == id) return &e;
  return nullptr;
}

namespace {

struct Outcome {
  std::string residual;
  bool pass = true;
  std::string note;
};

template <Field T>
Outcome judged(const Residual<T>& r, std::string note = {}) {
  return {r.str(), r.vanishes(), std::move(note)};
}

template <Field T>
Outcome value_only(const T& v, std::string note = {}) {
  return {ScalarTraits<T>::str(v), true, std::move(note)};
}

template <Field T>
Residual<T> kahler_tensor_residual(const FrameTensor<T>& L, const FrameTensor<T>& J) {
  const auto cl = curvature_like_check(L);
  return cl.antisym.merged(cl.bianchi).merged(kahler_residual(L, J));
}

std::string bool_str(bool b) {
  return b ? "true" : "false";
}

template <Field T>
using Runner = std::function<Outcome(Analysis<T>&)>;

template <Field T>
const std::map<std::string, Runner<T>, std::less<>>& runners() {
  static const std::map<std::string, Runner<T>, std::less<>> table = {
      {"eq1.1-norden",
       [](Analysis<T>& a) {
         const auto& s = a.structure();
         const auto JJ = compose(s.J, s.J) + FrameTensor<T>::identity(s.dim());
         const auto gJJ = apply_endomorphism(apply_endomorphism(s.g(), 0, s.J), 1, s.J) + s.g();
         return judged(residual_of(JJ, {&s.J}).merged(residual_of(gJJ, {&s.g()})));
       }},
      {"assoc-metric-norden",
       [](Analysis<T>& a) {
         const auto& s = a.structure();
         const auto gt = associated_metric(s);
         const auto sym = gt - permute_slots(gt, {1, 0});
         const auto norden = apply_endomorphism(apply_endomorphism(gt, 0, s.J), 1, s.J) + gt;
         const auto twice = apply_endomorphism(gt, 1, s.J) + s.g();
         return judged(residual_of(sym, {&gt}).merged(residual_of(norden, {&gt})).merged(residual_of(twice, {&gt})));
       }},
      {"lc-torsion-free",
       [](Analysis<T>& a) { return judged(torsion_free_residual(a.nabla(), a.structure().frame.C)); }},
      {"lc-metric", [](Analysis<T>& a) { return judged(metric_compatibility_residual(a.nabla(), a.structure().g())); }},
      {"eq1.3-f-symmetry", [](Analysis<T>& a) { return judged(f_symmetry_residual(a.structure(), a.F())); }},
      {"eq1.4-w3-class",
       [](Analysis<T>& a) { return judged(a.flags().w3, "is_W3=" + bool_str(a.flags().is_W3)); }},
      {"w0-class", [](Analysis<T>& a) { return judged(a.flags().w0, "is_W0=" + bool_str(a.flags().is_W0)); }},
      {"eq2.1-b-natural", [](Analysis<T>& a) { return judged(naturality_residual(a.structure(), a.D())); }},
      {"eq2.4-q-two-route",
       [](Analysis<T>& a) {
         const auto q = q_tensor(a.structure(), a.F());
         const auto q2 = q_tensor_from_derivative(a.structure(), a.nabla());
         return judged(residual_of(q - q2, {&q, &q2}));
       }},
      {"eq2.5-q-antisym",
       [](Analysis<T>& a) { return judged(q_antisymmetry_residual(q_tensor(a.structure(), a.F()))); }},
      {"eq2.2-torsion",
       [](Analysis<T>& a) { return judged(torsion_identity_residual(a.structure(), a.torsion(), a.F())); }},
      {"prop2.1-torsion-cyclic",
       [](Analysis<T>& a) { return judged(torsion_cyclic_residual(a.torsion(), a.structure().J)); }},
      {"eq1.5-ricci-identity",
       [](Analysis<T>& a) {
         const auto& c = a.curvature();
         return judged(ricci_identity_residual(c.nabla_F, c.R, a.structure().J));
       }},
      {"eq1.11-r-curvature-like",
       [](Analysis<T>& a) {
         const auto cl = curvature_like_check(a.curvature().R);
         return judged(cl.antisym.merged(cl.bianchi));
       }},
      {"eq1.12-k-kahler",
       [](Analysis<T>& a) {
         const auto& K = a.curvature().K_direct;
         return judged(curvature_like_check(K).antisym.merged(kahler_residual(K, a.structure().J)));
       }},
      {"eq2.8-p-kahler",
       [](Analysis<T>& a) {
         const auto& P = a.curvature().P;
         return judged(curvature_like_check(P).antisym.merged(kahler_residual(P, a.structure().J)));
       }},
      {"thm2.2-k-crosscheck",
       [](Analysis<T>& a) {
         const auto& c = a.curvature();
         return judged(residual_of(c.K_direct - c.K_formula, {&c.K_direct, &c.K_formula}));
       }},
      {"eq2.10-l2-class",
       [](Analysis<T>& a) {
         return judged(l2_residual(a.curvature().R, a.structure().J), "is_L2=" + bool_str(a.is_L2()));
       }},
      {"thm2.3-kahler-k",
       [](Analysis<T>& a) {
         const auto& c = a.curvature();
         const auto r = thm23_check(c.R, c.P, a.structure().J, c.K_direct);
         return Outcome{r.left.merged(r.right).str(), true,
                        "eq2.9=" + r.left.str() + " bianchi(K)=" + r.right.str() + " kahler=" + bool_str(r.holds)};
       }},
      {"thm2.4-kahler-p",
       [](Analysis<T>& a) {
         const auto& c = a.curvature();
         const auto r = thm24_check(c.P, c.K_direct);
         return Outcome{r.left.merged(r.right).str(), true,
                        "bianchi(K)=" + r.left.str() + " bianchi(P)=" + r.right.str() + " kahler=" + bool_str(r.holds)};
       }},
      {"cor2.5-h-kahler",
       [](Analysis<T>& a) { return judged(kahler_tensor_residual(a.curvature().H, a.structure().J)); }},
      {"eq1.6-norm", [](Analysis<T>& a) { return value_only(a.scalars().norm_nabla_J); }},
      {"eq1.7-w3-norm", [](Analysis<T>& a) { return judged(w3_norm_identity_residual(a.structure(), a.dJ())); }},
      {"eq1.9-tau-star",
       [](Analysis<T>& a) {
         const auto& R = a.scalars().R;
         return value_only(R.tau_star, "g^ij rho(e_i,Je_j)=" + ScalarTraits<T>::str(R.tau_star) +
                                           " g^ij rho*(e_i,e_j)=" + ScalarTraits<T>::str(R.tau_star_alt));
       }},
      {"eq3.1-ricci-relation",
       [](Analysis<T>& a) { return judged(section3_relations(a.scalars(), a.structure().J).ricci_relation); }},
      {"eq3.2-scalar-relation",
       [](Analysis<T>& a) { return judged(section3_relations(a.scalars(), a.structure().J).scalar_relation); }},
      {"norm-tau-relation",
       [](Analysis<T>& a) { return judged(section3_relations(a.scalars(), a.structure().J).norm_tau_relation); }},
      {"eq3.3-tau-relation",
       [](Analysis<T>& a) { return judged(section3_relations(a.scalars(), a.structure().J).tau_relation); }},
      {"eq3.4-tau-p",
       [](Analysis<T>& a) { return judged(section3_relations(a.scalars(), a.structure().J).tau_p_relation); }},
      {"eq3.5-tau-k",
       [](Analysis<T>& a) { return judged(section3_relations(a.scalars(), a.structure().J).tau_k_relation); }},
      {"prop3.1-isotropic-kahler",
       [](Analysis<T>& a) {
         const auto& sc = a.scalars();
         const auto r = isotropic_kahler_check(sc);
         const auto gap = scalar_residual<T>(sc.R.tau, sc.K.tau);
         return Outcome{scalar_residual<T>(sc.norm_nabla_J, ScalarTraits<T>::zero()).merged(gap).str(), true,
                        "isotropic=" + bool_str(r.isotropic) + " tau=tau(K):" + bool_str(r.tau_equals_tau_K)};
       }},
      {"eq3.6-pi-basis",
       [](Analysis<T>& a) {
         const auto& pi = a.pi();
         const auto& J = a.structure().J;
         return judged(kahler_tensor_residual(pi.pi12(), J).merged(kahler_tensor_residual(pi.pi3, J)));
       }},
      {"eq3.6-h-decomposition",
       [](Analysis<T>& a) {
         const auto d = decompose_kahler(a.curvature().H, a.structure());
         return judged(d.residual, "nu=" + ScalarTraits<T>::str(d.nu) + " nu*=" + ScalarTraits<T>::str(d.nu_star));
       }},
      {"prop3.2-h-form",
       [](Analysis<T>& a) { return judged(h_closed_form_residual(a.curvature().H, a.scalars(), a.pi())); }},
  };
  return table;
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

}  // namespace

template <Field T>
IdentityReport run_checks(Analysis<T>& a, const std::vector<std::string>& only) {
  require_known_checks(only);
  const auto& table = runners<T>();
  IdentityReport report;
  for (const auto& info : check_catalogue()) {
    if (!only.empty() && std::find(only.begin(), only.end(), info.id) == only.end()) continue;
    ReportEntry e{info.id, info.anchor, CheckStatus::Pass, "", info.gates, ""};
    try {
      std::vector<std::string> failed;
      for (const auto& g : info.gates)
        if (!a.gate(g)) failed.push_back(g);
      if (!failed.empty() && !info.informational_when_gated) {
        e.status = CheckStatus::NotApplicable;
        e.residual = "-";
        e.note = "gate failed: " + join(failed, ",");
      } else {
        auto out = table.at(info.id)(a);
        e.residual = std::move(out.residual);
        e.note = std::move(out.note);
        if (info.informational) {
          e.status = CheckStatus::Informational;
        } else if (!failed.empty()) {
          e.status = CheckStatus::Informational;
          e.note = "gate failed: " + join(failed, ",") + (e.note.empty() ? "" : "; " + e.note);
        } else {
          e.status = out.pass ? CheckStatus::Pass : CheckStatus::Fail;
        }
      }
    } catch (const std::exception& ex) {
      e.status = CheckStatus::Fail;
      if (e.residual.empty()) e.residual = "-";
      e.note = ex.what();
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

IdentityReport verify_spec(const RawSpec& raw, ScalarMode mode, const std::vector<std::string>& only) {
  require_known_checks(only);
  if (mode == ScalarMode::Float) {
    Analysis<double> a(validate<double>(raw));
    return run_checks(a, only);
  }
  Analysis<Rational> a(validate<Rational>(raw));
  return run_checks(a, only);
}

std::string format_text(const IdentityReport& r) {
  std::size_t w_id = 8, w_anchor = 6, w_status = 6, w_res = 8;
  for (const auto& e : r.entries) {
    w_id = std::max(w_id, e.check_id.size());
    w_anchor = std::max(w_anchor, e.anchor.size());
    w_status = std::max(w_status, to_string(e.status).size());
    w_res = std::max(w_res, e.residual.size());
  }
  std::ostringstream os;
  auto row = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d,
                 const std::string& note) {
    os << a << std::string(w_id - a.size() + 2, ' ') << b << std::string(w_anchor - b.size() + 2, ' ') << c
       << std::string(w_status - c.size() + 2, ' ') << d;
    if (!note.empty()) os << std::string(w_res - d.size() + 2, ' ') << note;
    os << '\n';
  };
  row("CHECK", "ANCHOR", "STATUS", "RESIDUAL", "NOTE");
  int counts[4] = {0, 0, 0, 0};
  for (const auto& e : r.entries) {
    row(e.check_id, e.anchor, to_string(e.status), e.residual, e.note);
    ++counts[static_cast<int>(e.status)];
  }
  os << '\n'
     << counts[0] << " pass, " << counts[1] << " fail, " << counts[2] << " not-applicable, " << counts[3]
     << " informational\n";
  return os.str();
}

std::string format_machine(const IdentityReport& r) {
  std::ostringstream os;
  for (const auto& e : r.entries) {
    std::string residual = e.residual;
    if (e.status == CheckStatus::NotApplicable) {
      const std::string prefix = "gate failed: ";
      residual = "gate=" + e.note.substr(e.note.rfind(prefix, 0) == 0 ? prefix.size() : 0);
    }
    os << e.check_id << '\t' << e.anchor << '\t' << to_string(e.status) << '\t' << residual << '\n';
  }
  return os.str();
}

template IdentityReport run_checks(Analysis<Rational>&, const std::vector<std::string>&);
template IdentityReport run_checks(Analysis<double>&, const std::vector<std::string>&);

}  // namespace norden
