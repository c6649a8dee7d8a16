#include "norden/errors.hpp"

#include <sstream>

namespace norden {

std::string ParseError::format(const std::string& message, const std::vector<int>& lines) {
  std::ostringstream os;
  if (lines.size() == 1) {
    os << "line " << lines.front() << ": ";
  } else if (!lines.empty()) {
    os << "lines ";
    for (std::size_t i = 0; i < lines.size(); ++i) {
      os << (i ? " and " : "") << lines[i];
    }
    os << ": ";
  }
  os << message;
  return os.str();
}

const char* to_string(ValidationCode code) {
  switch (code) {
    case ValidationCode::OddDimension: return "OddDimension";
    case ValidationCode::BrokenAntisymmetry: return "BrokenAntisymmetry";
    case ValidationCode::JacobiViolation: return "JacobiViolation";
    case ValidationCode::NotAlmostComplex: return "NotAlmostComplex";
    case ValidationCode::NotNorden: return "NotNorden";
    case ValidationCode::DegenerateMetric: return "DegenerateMetric";
    case ValidationCode::WrongSignature: return "WrongSignature";
  }
  return "Unknown";
}

namespace {

std::string describe(ValidationCode code, const std::vector<int>& witness, const std::string& detail) {
  std::ostringstream os;
  os << to_string(code);
  if (!witness.empty()) {
    os << " at (";
    for (std::size_t i = 0; i < witness.size(); ++i) {
      os << (i ? "," : "") << witness[i];
    }
    os << ")";
  }
  if (!detail.empty()) os << ": " << detail;
  return os.str();
}

}  // namespace

ValidationError::ValidationError(ValidationCode code, std::vector<int> witness, const std::string& detail)
    : Error(describe(code, witness, detail)), code_(code), witness_(std::move(witness)) {}

}  // namespace norden
