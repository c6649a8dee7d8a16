#include "norden/structure.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

namespace norden {

RawSpec::RawSpec(int dim, ScalarMode mode)
    : dim_(dim),
      mode_(mode),
      C_(static_cast<std::size_t>(dim * dim * dim)),
      g_(static_cast<std::size_t>(dim * dim)),
      J_(static_cast<std::size_t>(dim * dim)) {}

void RawSpec::set_bracket(int i, int j, int k, const Rational& v) {
  C_[c_index(k, i, j)] = v;
  C_[c_index(k, j, i)] = -v;
}

void RawSpec::set_g(int i, int j, const Rational& v) {
  g_[m_index(i, j)] = v;
  g_[m_index(j, i)] = v;
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

Rational ten_power(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

std::optional<Rational> parse_decimal(std::string_view t) {
  bool negative = false;
  if (!t.empty() && (t.front() == '+' || t.front() == '-')) {
    negative = t.front() == '-';
    t.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = t.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp = t.substr(e + 1);
    t = t.substr(0, e);
    bool exp_neg = false;
    if (!exp.empty() && (exp.front() == '+' || exp.front() == '-')) {
      exp_neg = exp.front() == '-';
      exp.remove_prefix(1);
    }
    if (!all_digits(exp) || exp.size() > 4) return std::nullopt;
    exponent = std::stol(std::string(exp)) * (exp_neg ? -1 : 1);
  }
  std::string_view whole = t, frac;
  if (auto dot = t.find('.'); dot != std::string_view::npos) {
    whole = t.substr(0, dot);
    frac = t.substr(dot + 1);
  }
  if (whole.empty() && frac.empty()) return std::nullopt;
  if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) return std::nullopt;
  std::string digits = std::string(whole) + std::string(frac);
  Rational v(mpz_class(digits.empty() ? "0" : digits, 10));
  v *= ten_power(exponent - static_cast<long>(frac.size()));
  v.canonicalize();
  return negative ? Rational(-v) : v;
}

struct Entry {
  Rational value;
  int line;
};

using Key = std::tuple<int, int, int>;

void record(std::map<Key, Entry>& table, const Key& key, const Rational& value, int line, const char* what) {
  auto [it, inserted] = table.try_emplace(key, Entry{value, line});
  if (!inserted && it->second.value != value) {
    throw ParseError(std::string("conflicting duplicate '") + what + "' entry", {it->second.line, line});
  }
}

}  // namespace

Rational parse_value(std::string_view token, bool allow_decimal) {
  std::string_view body = token;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) body.remove_prefix(1);
  if (all_digits(body)) {
    Rational v{mpz_class(std::string(body), 10)};
    return token.front() == '-' ? Rational(-v) : v;
  }
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash), den = body.substr(slash + 1);
    if (all_digits(num) && all_digits(den)) {
      mpz_class d(std::string{den}, 10);
      if (d == 0) throw ParseError("zero denominator in '" + std::string(token) + "'", {});
      Rational v{mpz_class(std::string(num), 10), d};
      v.canonicalize();
      return token.front() == '-' ? Rational(-v) : v;
    }
  }
  if (auto dec = parse_decimal(token)) {
    if (!allow_decimal) throw ParseError("decimal literal '" + std::string(token) + "' requires 'scalar float'", {});
    return *dec;
  }
  throw ParseError("malformed value '" + std::string(token) + "'", {});
}

RawSpec parse_spec(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::optional<int> dim;
  std::optional<ScalarMode> mode;
  std::optional<int> first_decimal_line;
  std::map<Key, Entry> c_entries, g_entries, j_entries;

  auto index = [&](const std::string& tok) {
    if (!all_digits(tok) || tok.size() > 3) throw ParseError("malformed index '" + tok + "'", {line_no});
    const int v = std::stoi(tok);
    if (v < 1 || v > *dim) throw ParseError("index " + tok + " out of range 1.." + std::to_string(*dim), {line_no});
    return v - 1;
  };
  auto value = [&](const std::string& tok) {
    try {
      Rational v = parse_value(tok, true);
      if (!first_decimal_line && tok.find_first_of(".eE") != std::string::npos) first_decimal_line = line_no;
      return v;
    } catch (const ParseError& e) {
      throw ParseError(e.what(), {line_no});
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    const std::string& kw = tok.front();
    auto expect_args = [&](std::size_t n) {
      if (tok.size() != n + 1)
        throw ParseError("'" + kw + "' expects " + std::to_string(n) + " arguments", {line_no});
    };

    if (!dim) {
      if (kw != "dim") throw ParseError("first directive must be 'dim'", {line_no});
      expect_args(1);
      if (!all_digits(tok[1]) || tok[1].size() > 3) throw ParseError("malformed dimension '" + tok[1] + "'", {line_no});
      const int d = std::stoi(tok[1]);
      if (d < 1) throw ParseError("dimension must be positive", {line_no});
      if (d > kMaxDim) throw ParseError("dimension exceeds cap " + std::to_string(kMaxDim), {line_no});
      dim = d;
      continue;
    }
    if (kw == "dim") throw ParseError("duplicate 'dim' directive", {line_no});
    if (kw == "scalar") {
      expect_args(1);
      if (mode) throw ParseError("duplicate 'scalar' directive", {line_no});
      if (tok[1] == "rational") {
        mode = ScalarMode::Rational;
      } else if (tok[1] == "float") {
        mode = ScalarMode::Float;
      } else {
        throw ParseError("scalar mode must be 'rational' or 'float'", {line_no});
      }
    } else if (kw == "C") {
      expect_args(4);
      int i = index(tok[1]), j = index(tok[2]), k = index(tok[3]);
      Rational v = value(tok[4]);
      if (i > j) {
        std::swap(i, j);
        v = -v;
      }
      record(c_entries, {i, j, k}, v, line_no, "C");
    } else if (kw == "g") {
      expect_args(3);
      int i = index(tok[1]), j = index(tok[2]);
      record(g_entries, {std::min(i, j), std::max(i, j), 0}, value(tok[3]), line_no, "g");
    } else if (kw == "J") {
      expect_args(3);
      record(j_entries, {index(tok[1]), index(tok[2]), 0}, value(tok[3]), line_no, "J");
    } else {
      throw ParseError("unknown directive '" + kw + "'", {line_no});
    }
  }
  if (!dim) throw ParseError("missing 'dim' directive", {line_no});
  const ScalarMode m = mode.value_or(ScalarMode::Rational);
  if (m == ScalarMode::Rational && first_decimal_line)
    throw ParseError("decimal literal requires 'scalar float'", {*first_decimal_line});

  RawSpec spec(*dim, m);
  for (const auto& [key, e] : c_entries) {
    const auto [i, j, k] = key;
    if (i == j) {
      spec.set_C_raw(k, i, j, e.value);
    } else {
      spec.set_bracket(i, j, k, e.value);
    }
  }
  for (const auto& [key, e] : g_entries) spec.set_g(std::get<0>(key), std::get<1>(key), e.value);
  for (const auto& [key, e] : j_entries) spec.set_J(std::get<0>(key), std::get<1>(key), e.value);
  return spec;
}

RawSpec parse_spec(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_spec(in);
}

RawSpec read_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", {});
  return parse_spec(in);
}

std::string export_spec(const RawSpec& spec) {
  std::ostringstream os;
  const int n = spec.dim();
  os << "dim " << n << '\n';
  if (spec.mode() == ScalarMode::Float) os << "scalar float\n";
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (sgn(spec.C(k, i, j)) != 0) os << "C " << i + 1 << ' ' << j + 1 << ' ' << k + 1 << ' ' << spec.C(k, i, j).get_str() << '\n';
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (sgn(spec.g(i, j)) != 0) os << "g " << i + 1 << ' ' << j + 1 << ' ' << spec.g(i, j).get_str() << '\n';
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (sgn(spec.J(i, j)) != 0) os << "J " << i + 1 << ' ' << j + 1 << ' ' << spec.J(i, j).get_str() << '\n';
  return os.str();
}

void write_spec_file(const std::filesystem::path& path, const RawSpec& spec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << export_spec(spec);
}

RawSpec canonical_norden(int dim) {
  RawSpec spec(dim);
  const int n = dim / 2;
  for (int i = 0; i < n; ++i) {
    spec.set_g(i, i, 1);
    spec.set_g(i + n, i + n, -1);
    spec.set_J(i + n, i, 1);
    spec.set_J(i, i + n, -1);
  }
  return spec;
}

template <Field T>
FrameTensor<T> jacobiator(const FrameTensor<T>& C) {
  const int n = C.dim();
  FrameTensor<T> out(n, 1, 3);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          T s = ScalarTraits<T>::zero();
          for (int m = 0; m < n; ++m) {
            s += C(m, i, j) * C(l, m, k);
            s += C(m, j, k) * C(l, m, i);
            s += C(m, k, i) * C(l, m, j);
          }
          out(l, i, j, k) = s;
        }
  return out;
}

namespace {

template <Field T>
bool negligible(const T& x, const T& scale) {
  Residual<T> r;
  r.value = ScalarTraits<T>::abs(x);
  r.scale = scale;
  return r.vanishes();
}

}  // namespace

template <Field T>
NordenStructure<T> validate(const RawSpec& raw) {
  const int n = raw.dim();
  if (n <= 0 || n % 2 != 0) throw ValidationError(ValidationCode::OddDimension, {n}, "dimension must be even");

  FrameTensor<T> C(n, 1, 2), J(n, 1, 1), g(n, 0, 2);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) C(k, i, j) = ScalarTraits<T>::from_rational(raw.C(k, i, j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      J(i, j) = ScalarTraits<T>::from_rational(raw.J(i, j));
      g(i, j) = ScalarTraits<T>::from_rational(raw.g(i, j));
    }

  const T c_scale = max_abs(C);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!negligible<T>(C(k, i, j) + C(k, j, i), c_scale))
          throw ValidationError(ValidationCode::BrokenAntisymmetry, {i + 1, j + 1, k + 1}, "C^k_ij != -C^k_ji");

  const auto jac = jacobiator(C);
  const T jac_scale = c_scale * c_scale;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          if (!negligible<T>(jac(l, i, j, k), jac_scale))
            throw ValidationError(ValidationCode::JacobiViolation, {i + 1, j + 1, k + 1, l + 1});

  const auto J2 = compose(J, J);
  const T j_scale = max_abs(J) * max_abs(J);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      T expected = i == j ? T(-1) : ScalarTraits<T>::zero();
      if (!negligible<T>(J2(i, j) - expected, j_scale))
        throw ValidationError(ValidationCode::NotAlmostComplex, {i + 1, j + 1}, "J^2 != -I");
    }

  const T g_scale = max_abs(g);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!negligible<T>(g(i, j) - g(j, i), g_scale))
        throw ValidationError(ValidationCode::NotNorden, {i + 1, j + 1}, "g is not symmetric");

  // g(J e_i, J e_j) = J^a_i J^b_j g_ab must equal -g_ij.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      T s = ScalarTraits<T>::zero();
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) s += J(a, i) * J(b, j) * g(a, b);
      if (!negligible<T>(s + g(i, j), g_scale * j_scale))
        throw ValidationError(ValidationCode::NotNorden, {i + 1, j + 1}, "g(Je_i, Je_j) != -g(e_i, e_j)");
    }

  const Inertia sig = inertia(to_matrix(g));
  if (sig.zero != 0) throw ValidationError(ValidationCode::DegenerateMetric, {}, "g is singular");
  if (sig.positive != n / 2 || sig.negative != n / 2)
    throw ValidationError(ValidationCode::WrongSignature, {sig.positive, sig.negative});

  MetricPair<T> metric(std::move(g));
  metric.attach_complex_structure(J);
  return NordenStructure<T>{LieFrame<T>{std::move(C)}, std::move(J), std::move(metric), sig};
}

template <Field T>
FrameTensor<T> associated_metric(const NordenStructure<T>& s) {
  return *s.metric.g_tilde();
}

template NordenStructure<Rational> validate(const RawSpec&);
template NordenStructure<double> validate(const RawSpec&);
template FrameTensor<Rational> associated_metric(const NordenStructure<Rational>&);
template FrameTensor<double> associated_metric(const NordenStructure<double>&);
template FrameTensor<Rational> jacobiator(const FrameTensor<Rational>&);
template FrameTensor<double> jacobiator(const FrameTensor<double>&);

}  // namespace norden
