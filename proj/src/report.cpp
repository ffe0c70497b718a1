#include "mzsv/report.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace mzsv {

namespace bm = boost::multiprecision;
using nlohmann::ordered_json;

namespace {

// Enough for any report written at up to a few hundred digits.
constexpr int kParseDigits = 400;

}  // namespace

VerificationReport make_report(std::string check_name, ParamList params, const Real& lhs, const Real& rhs,
                               const Real& tol, int digits, long long elapsed_ms) {
  VerificationReport r;
  r.check_name = std::move(check_name);
  r.params = std::move(params);
  const Real abs_err = bm::abs(lhs - rhs);
  r.lhs = to_decimal(lhs, digits);
  r.rhs = to_decimal(rhs, digits);
  r.abs_err = to_decimal(abs_err, 6);
  r.tol = to_decimal(tol, 6);
  if (rhs != 0) {
    const Real rel = abs_err / bm::abs(rhs);
    r.rel_err = to_decimal(rel, 6);
    r.pass = rel <= tol;
  } else {
    r.rel_err = "inf";
    r.pass = abs_err <= tol;
  }
  r.elapsed_ms = elapsed_ms;
  return r;
}

bool recompute_pass(const VerificationReport& r) {
  PrecisionScope scope(kParseDigits);
  const Real rhs(r.rhs);
  const Real tol(r.tol);
  if (rhs != 0) return Real(r.rel_err) <= tol;
  return Real(r.abs_err) <= tol;
}

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw DomainError("unknown report format '" + name + "' (json|csv)");
}

std::string render_params(const ParamList& params) {
  std::string out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ';';
    out += params[i].first + '=' + params[i].second;
  }
  return out;
}

std::string render_reports(std::span<const VerificationReport> reports, ReportFormat format) {
  if (format == ReportFormat::csv) {
    std::string out = "check_name,params,lhs,rhs,abs_err,rel_err,tol,pass,elapsed_ms\n";
    for (const auto& r : reports) {
      out += r.check_name + ',' + render_params(r.params) + ',' + r.lhs + ',' + r.rhs + ',' + r.abs_err + ',' +
             r.rel_err + ',' + r.tol + ',' + (r.pass ? "true" : "false") + ',' + std::to_string(r.elapsed_ms) + '\n';
    }
    return out;
  }
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json params = ordered_json::object();
    for (const auto& [key, value] : r.params) params[key] = value;
    arr.push_back({{"check_name", r.check_name},
                   {"params", params},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"abs_err", r.abs_err},
                   {"rel_err", r.rel_err},
                   {"tol", r.tol},
                   {"pass", r.pass},
                   {"elapsed_ms", r.elapsed_ms}});
  }
  return arr.empty() ? std::string("[]") : arr.dump(2);
}

void emit_reports(std::span<const VerificationReport> reports, ReportFormat format, std::ostream& out) {
  out << render_reports(reports, format);
  if (format == ReportFormat::json) out << '\n';
  if (!out) throw Error("emit_reports: write failed");
}

void emit_reports(std::span<const VerificationReport> reports, ReportFormat format, const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("emit_reports: cannot open '" + path + "' for writing");
  emit_reports(reports, format, file);
  file.close();
  if (!file) throw Error("emit_reports: write to '" + path + "' failed");
}

std::vector<VerificationReport> parse_reports_json(const std::string& text) {
  ordered_json arr;
  try {
    arr = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw Error(std::string("parse_reports_json: ") + e.what());
  }
  if (!arr.is_array()) throw Error("parse_reports_json: expected an array");
  std::vector<VerificationReport> out;
  for (const auto& obj : arr) {
    VerificationReport r;
    try {
      r.check_name = obj.at("check_name").get<std::string>();
      for (const auto& [key, value] : obj.at("params").items()) r.params.emplace_back(key, value.get<std::string>());
      r.lhs = obj.at("lhs").get<std::string>();
      r.rhs = obj.at("rhs").get<std::string>();
      r.abs_err = obj.at("abs_err").get<std::string>();
      r.rel_err = obj.at("rel_err").get<std::string>();
      r.tol = obj.at("tol").get<std::string>();
      r.elapsed_ms = obj.at("elapsed_ms").get<long long>();
    } catch (const ordered_json::exception& e) {
      throw Error(std::string("parse_reports_json: malformed report: ") + e.what());
    }
    r.pass = recompute_pass(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mzsv
