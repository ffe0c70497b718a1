#include "mzsv/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "mzsv/relations.hpp"

namespace mzsv::cli {

namespace {

constexpr const char* kGrammar = R"(usage:
  mzsv eval mzsv --index k1,k2,... [--digits D] [--terms N] [--ladder L] [--method convolution|nested]
  mzsv eval mzv  --index k1,k2,... [same flags]
  mzsv eval xi --k K --n N [same flags]
  mzsv enumerate --weight K --height S [--admissible] [--format csv|json]
  mzsv verify theorem1 --kmax K [--tol T] [--format json|csv] [--out PATH] [--jobs J]
  mzsv verify theorem2 --x X --z Z [--digits D]
  mzsv verify corollary --kmax K [--tol T]
  mzsv verify remark --x X --z Z [--digits D]
  mzsv oracle --tmax N --degree D [--coeffs-out PATH]
common: --timing records elapsed_ms in reports (0 otherwise)
env: MZV_DEFAULT_DIGITS sets the default --digits
)";

// Flags shared by every evaluating command.
struct EvalFlags {
  std::optional<int> digits;
  std::size_t terms = EvalConfig{}.terms;
  int ladder = EvalConfig{}.ladder;
  std::string method = "convolution";

  void attach(CLI::App* app) {
    app->add_option("--digits", digits, "decimal digits");
    app->add_option("--terms", terms, "nested method: truncation N");
    app->add_option("--ladder", ladder, "nested method: doublings");
    app->add_option("--method", method, "convolution|nested")->check(CLI::IsMember({"convolution", "nested"}));
  }

  PrecisionConfig precision(PrecisionConfig base) const {
    if (digits) base.digits = *digits;
    base.validate();
    return base;
  }

  EvalConfig eval(const PrecisionConfig& base) const {
    EvalConfig ec;
    ec.terms = terms;
    ec.ladder = ladder;
    ec.precision = precision(base);
    ec.method = method == "nested" ? EvalMethod::nested : EvalMethod::convolution;
    ec.validate();
    return ec;
  }
};

struct OutputFlags {
  std::string format = "json";
  std::string out;

  void attach(CLI::App* app) {
    app->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--out", out, "write reports to PATH");
  }
};

int emit(const std::vector<VerificationReport>& reports, const OutputFlags& flags, std::ostream& out) {
  const ReportFormat format = parse_format(flags.format);
  if (flags.out.empty())
    emit_reports(reports, format, out);
  else
    emit_reports(reports, format, flags.out);
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
  return ok ? 0 : 1;
}

std::string general(const Real& v, int digits) { return v.str(static_cast<std::streamsize>(digits)); }

hypergeom::XZPoint parse_point(const std::string& x, const std::string& z) {
  auto parse = [](const std::string& text, const char* name) {
    try {
      return Real(text);
    } catch (const std::exception&) {
      throw DomainError(std::string("--") + name + ": not a number: '" + text + "'");
    }
  };
  return {parse(x, "x"), parse(z, "z")};
}

void write_coefficients(const std::string& path, int tmax, int degree) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open '" + path + "' for writing");
  const auto a = a_series_upto(tmax, degree);
  file << "[\n";
  for (int n = 1; n <= tmax; ++n)
    file << "  " << coeff_json(n, a[static_cast<std::size_t>(n) - 1]) << (n < tmax ? ",\n" : "\n");
  file << "]\n";
  if (!file) throw Error("write to '" + path + "' failed");
}

}  // namespace

std::string grammar() { return kGrammar; }

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"multiple zeta-star value sums and their generating function", "mzsv"};
  app.require_subcommand(1);
  app.fallthrough();
  bool timing = false;
  app.add_flag("--timing", timing, "record elapsed_ms")->group("");

  // eval
  CLI::App* eval = app.add_subcommand("eval", "evaluate zeta*, zeta or xi");
  eval->require_subcommand(1);
  std::string index_text;
  EvalFlags star_flags, mzv_flags, xi_flags;
  CLI::App* eval_star = eval->add_subcommand("mzsv", "zeta*(k1,...,kn)");
  eval_star->add_option("--index", index_text, "k1,k2,...")->required();
  star_flags.attach(eval_star);
  CLI::App* eval_mzv = eval->add_subcommand("mzv", "zeta(k1,...,kn)");
  eval_mzv->add_option("--index", index_text, "k1,k2,...")->required();
  mzv_flags.attach(eval_mzv);
  int xi_k = 0, xi_n = 0;
  CLI::App* eval_xi = eval->add_subcommand("xi", "xi_k(n)");
  eval_xi->add_option("--k", xi_k)->required();
  eval_xi->add_option("--n", xi_n)->required();
  xi_flags.attach(eval_xi);

  // enumerate
  CLI::App* enumerate = app.add_subcommand("enumerate", "list indices of given weight and height");
  int weight = 0, height = 0;
  bool admissible = false;
  std::string enum_format = "csv";
  enumerate->add_option("--weight", weight)->required();
  enumerate->add_option("--height", height)->required();
  enumerate->add_flag("--admissible", admissible);
  enumerate->add_option("--format", enum_format)->check(CLI::IsMember({"csv", "json"}));

  // verify
  CLI::App* verify = app.add_subcommand("verify", "run a verification campaign");
  verify->require_subcommand(1);
  int kmax = 0;
  std::optional<double> tol;
  unsigned jobs = 0;
  std::string x_text, z_text;
  EvalFlags t1_flags, cor_flags, t2_flags, rem_flags;
  OutputFlags t1_out, cor_out, t2_out, rem_out, oracle_out;

  CLI::App* v_t1 = verify->add_subcommand("theorem1", "height-s sums of zeta* against the zeta(k) closed form");
  v_t1->add_option("--kmax", kmax)->required();
  v_t1->add_option("--tol", tol);
  v_t1->add_option("--jobs", jobs);
  t1_flags.attach(v_t1);
  t1_out.attach(v_t1);

  CLI::App* v_t2 = verify->add_subcommand("theorem2", "hypergeometric integral against the pole series");
  v_t2->add_option("--x", x_text)->required();
  v_t2->add_option("--z", z_text)->required();
  v_t2->add_option("--tol", tol);
  t2_flags.attach(v_t2);
  t2_out.attach(v_t2);

  CLI::App* v_cor = verify->add_subcommand("corollary", "sums of xi values against the zeta(k) closed form");
  v_cor->add_option("--kmax", kmax)->required();
  v_cor->add_option("--tol", tol);
  v_cor->add_option("--jobs", jobs);
  cor_flags.attach(v_cor);
  cor_out.attach(v_cor);

  CLI::App* v_rem = verify->add_subcommand("remark", "digamma form against the pole series");
  v_rem->add_option("--x", x_text)->required();
  v_rem->add_option("--z", z_text)->required();
  v_rem->add_option("--tol", tol);
  rem_flags.attach(v_rem);
  rem_out.attach(v_rem);

  // oracle
  CLI::App* oracle = app.add_subcommand("oracle", "exact coefficient, ODE and recurrence checks");
  int tmax = 0, degree = 0;
  oracle->add_option("--tmax", tmax)->required();
  oracle->add_option("--degree", degree)->required();
  std::string coeffs_out;
  oracle->add_option("--coeffs-out", coeffs_out, "also write exact a_n coefficients as JSON to PATH");
  oracle_out.attach(oracle);

  // CLI11 consumes the vector from the back
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help() << kGrammar;
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << kGrammar;
    return 2;
  }

  try {
    const PrecisionConfig base = PrecisionConfig::from_env();

    if (eval_star->parsed() || eval_mzv->parsed()) {
      const bool star = eval_star->parsed();
      const EvalConfig ec = (star ? star_flags : mzv_flags).eval(base);
      PrecisionScope scope(ec.precision);
      const MultiIndex idx = MultiIndex::parse(index_text);
      if (idx.empty()) throw DomainError("--index: empty index");
      ZetaEvaluator evaluator(ec);
      Estimate e = star ? evaluator.zeta_star(idx) : evaluator.zeta(idx);
      out << (star ? "zeta*(" : "zeta(") << idx.to_string() << ") = " << general(e.value, ec.precision.digits) << "\n";
      out << "error_estimate = " << to_decimal(e.error, 2) << "\n";
      return 0;
    }
    if (eval_xi->parsed()) {
      const EvalConfig ec = xi_flags.eval(base);
      PrecisionScope scope(ec.precision);
      relations::XiValue v = relations::xi_value(xi_k, xi_n, ec);
      out << "xi_" << v.k << "(" << v.n << ") = " << general(v.value, ec.precision.digits) << "\n";
      out << "error_estimate = " << to_decimal(v.error, 2) << "\n";
      return 0;
    }
    if (enumerate->parsed()) {
      if (weight < 0 || height < 0) throw DomainError("enumerate: weight and height must be >= 0");
      const auto list = enum_indices(weight, height, admissible);
      out << (enum_format == "json" ? to_json(list) + "\n" : to_csv(list));
      return 0;
    }
    if (v_t1->parsed() || v_cor->parsed()) {
      const bool t1 = v_t1->parsed();
      const EvalConfig ec = (t1 ? t1_flags : cor_flags).eval(base);
      relations::SweepOptions opts;
      opts.tol = tol;
      opts.jobs = jobs;
      opts.timing = timing;
      auto reports = t1 ? relations::verify_theorem1(kmax, ec, opts) : relations::verify_corollary(kmax, ec, opts);
      return emit(reports, t1 ? t1_out : cor_out, out);
    }
    if (v_t2->parsed() || v_rem->parsed()) {
      const bool t2 = v_t2->parsed();
      const PrecisionConfig cfg = (t2 ? t2_flags : rem_flags).precision(base);
      PrecisionScope scope(cfg);
      const hypergeom::XZPoint p = parse_point(x_text, z_text);
      VerificationReport r =
          t2 ? relations::verify_theorem2(p, cfg, tol, timing) : relations::verify_remark(p, cfg, tol, timing);
      return emit({r}, t2 ? t2_out : rem_out, out);
    }
    if (oracle->parsed()) {
      auto reports = relations::verify_oracle(tmax, degree, timing);
      if (!coeffs_out.empty()) write_coefficients(coeffs_out, tmax, degree);
      return emit(reports, oracle_out, out);
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n" << kGrammar;
    return 2;
  } catch (const PoleError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (best estimate " << to_decimal(e.best_estimate(), 20) << ")\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << kGrammar;
  return 2;
}

int parse_and_dispatch(const std::vector<std::string>& args) { return parse_and_dispatch(args, std::cout, std::cerr); }

}  // namespace mzsv::cli
