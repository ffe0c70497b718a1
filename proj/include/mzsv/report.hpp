#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mzsv/types.hpp"

namespace mzsv {

using ParamList = std::vector<std::pair<std::string, std::string>>;

/// One checked identity. Numbers are decimal strings at full working
/// precision so a report reloads without binary rounding.
struct VerificationReport {
  std::string check_name;
  ParamList params;
  std::string lhs, rhs, abs_err, rel_err, tol;
  bool pass = false;
  long long elapsed_ms = 0;
};

/// Fills the decimal fields and sets pass: rel_err <= tol when rhs != 0,
/// abs_err <= tol otherwise.
VerificationReport make_report(std::string check_name, ParamList params, const Real& lhs, const Real& rhs,
                               const Real& tol, int digits, long long elapsed_ms = 0);

/// Recomputes the pass flag from the decimal fields.
bool recompute_pass(const VerificationReport& r);

enum class ReportFormat { json, csv };

ReportFormat parse_format(const std::string& name);

std::string render_reports(std::span<const VerificationReport> reports, ReportFormat format);

void emit_reports(std::span<const VerificationReport> reports, ReportFormat format, std::ostream& out);

/// Writes to `path`; throws Error naming the path on I/O failure.
void emit_reports(std::span<const VerificationReport> reports, ReportFormat format, const std::string& path);

/// Parses a JSON report array; pass flags are recomputed, not trusted.
std::vector<VerificationReport> parse_reports_json(const std::string& text);

/// "k=4;s=2"
std::string render_params(const ParamList& params);

}  // namespace mzsv
