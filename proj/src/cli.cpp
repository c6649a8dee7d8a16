#include "norden/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "norden/report.hpp"
#include "norden/search.hpp"

namespace norden {

namespace {

/// Bad flags or values; reported with exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

ScalarMode parse_mode(const std::string& s, const char* where) {
  if (s == "rational") return ScalarMode::Rational;
  if (s == "float") return ScalarMode::Float;
  throw UsageError(std::string(where) + ": expected 'rational' or 'float', got '" + s + "'");
}

/// --mode beats NORDEN_MODE, which beats the file's own `scalar` line.
ScalarMode resolve_mode(const std::string& flag, const RawSpec& raw) {
  if (!flag.empty()) return parse_mode(flag, "--mode");
  if (const char* env = std::getenv("NORDEN_MODE"); env && *env) return parse_mode(env, "NORDEN_MODE");
  return raw.mode();
}

std::vector<std::string> split_ids(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string class_summary(Analysis<Rational>& a) {
  const auto& f = a.flags();
  if (f.is_W0) return "W0 (Kähler)";
  if (f.is_W3) return "W3 (quasi-Kähler)";
  return "not W3";
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  const RawSpec raw = read_spec_file(path);
  try {
    Analysis<Rational> a(validate<Rational>(raw));
    const auto& sig = a.structure().signature;
    out << "valid: dim " << raw.dim() << ", signature (" << sig.positive << "," << sig.negative << "), class "
        << class_summary(a) << '\n';
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "invalid: " << e.what() << '\n';
    return kExitFail;
  }
}

int cmd_verify(const std::string& path, const std::string& checks, const std::string& mode, const std::string& format,
               std::ostream& out) {
  if (format != "text" && format != "machine") throw UsageError("--format: expected 'text' or 'machine'");
  const auto ids = split_ids(checks);
  try {
    require_known_checks(ids);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const RawSpec raw = read_spec_file(path);
  const auto report = verify_spec(raw, resolve_mode(mode, raw), ids);
  out << (format == "machine" ? format_machine(report) : format_text(report));
  return report.any_fail() ? kExitFail : kExitOk;
}

int cmd_search(const std::string& target, int dim, std::uint64_t seed, std::uint64_t budget, std::uint64_t max_hits,
               const std::string& out_dir, std::ostream& out) {
  if (dim <= 0 || dim % 2 != 0) throw UsageError("dimension must be even");
  if (dim > kMaxDim) throw UsageError("dimension must be at most " + std::to_string(kMaxDim));
  HuntOptions opt;
  try {
    opt.target = parse_target(target);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  opt.dim = dim;
  opt.seed = seed;
  opt.budget = budget;
  opt.max_hits = max_hits;
  opt.out_dir = out_dir;
  out << hunt(opt).summary();
  return kExitOk;
}

int cmd_export(const std::string& path, std::ostream& out) {
  const RawSpec raw = read_spec_file(path);
  (void)validate<Rational>(raw);
  out << export_spec(raw);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of Norden-geometry identities on Lie algebra frames", "norden"};
  app.require_subcommand(1);

  std::string file;
  auto* validate_cmd = app.add_subcommand("validate", "check a structure file");
  validate_cmd->add_option("file", file, "structure file")->required();

  std::string checks, mode, format = "text";
  auto* verify_cmd = app.add_subcommand("verify", "run the identity checks");
  verify_cmd->add_option("file", file, "structure file")->required();
  verify_cmd->add_option("--checks", checks, "comma-separated check ids");
  verify_cmd->add_option("--mode", mode, "rational or float (default: NORDEN_MODE, then the file)");
  verify_cmd->add_option("--format", format, "text or machine");

  std::string target, out_dir;
  int dim = 4;
  std::uint64_t seed = 1, budget = 2000, max_hits = 10;
  auto* search_cmd = app.add_subcommand("search", "hunt for certified examples");
  search_cmd->add_option("--target", target, "one of: " + [] {
    std::string s;
    for (const auto& n : target_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }())->required();
  search_cmd->add_option("--dim", dim, "even dimension");
  search_cmd->add_option("--seed", seed, "random seed");
  search_cmd->add_option("--budget", budget, "number of candidates to try");
  search_cmd->add_option("--max-hits", max_hits, "stop after this many examples");
  search_cmd->add_option("--out-dir", out_dir, "directory for examples and summary.txt")->required();

  auto* export_cmd = app.add_subcommand("export", "print the canonical form of a structure file");
  export_cmd->add_option("file", file, "structure file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (*validate_cmd) return cmd_validate(file, out, err);
    if (*verify_cmd) return cmd_verify(file, checks, mode, format, out);
    if (*search_cmd) return cmd_search(target, dim, seed, budget, max_hits, out_dir, out);
    if (*export_cmd) return cmd_export(file, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ValidationError& e) {
    err << "invalid: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace norden
