#pragma once

#include <string>
#include <vector>

#include "norden/analysis.hpp"

namespace norden {

enum class CheckStatus { Pass, Fail, NotApplicable, Informational };

std::string to_string(CheckStatus s);

struct CheckInfo {
  std::string id;
  std::string anchor;
  std::string description;
  std::vector<std::string> gates;
  /// When a gate fails the residual is still computed and shown, but the
  /// entry only informs (used where the hypothesis is a theorem's, not the
  /// quantity's).
  bool informational_when_gated = false;
  /// Never judged: the entry reports a value.
  bool informational = false;
};

/// The frozen check catalogue, in execution order.
const std::vector<CheckInfo>& check_catalogue();

/// Throws Error when an id is not in the catalogue.
void require_known_checks(const std::vector<std::string>& ids);

struct ReportEntry {
  std::string check_id;
  std::string anchor;
  CheckStatus status = CheckStatus::Pass;
  std::string residual;
  std::vector<std::string> gates;  ///< gates the check depends on
  std::string note;                ///< failed gate names, error text, extra values
};

struct IdentityReport {
  std::vector<ReportEntry> entries;

  [[nodiscard]] bool any_fail() const;
  [[nodiscard]] const ReportEntry* find(std::string_view id) const;
};

/// Runs the catalogue (or the listed subset, kept in catalogue order) against
/// one structure. Module errors become fail entries.
template <Field T>
IdentityReport run_checks(Analysis<T>& a, const std::vector<std::string>& only = {});

/// Validates in the requested mode and runs the checks. Throws
/// ValidationError for invalid input.
IdentityReport verify_spec(const RawSpec& raw, ScalarMode mode, const std::vector<std::string>& only = {});

/// Aligned table for people.
std::string format_text(const IdentityReport& r);
/// One line per entry: check_id TAB anchor TAB status TAB residual. For
/// not-applicable entries the residual field is "gate=<names>".
std::string format_machine(const IdentityReport& r);

}  // namespace norden
