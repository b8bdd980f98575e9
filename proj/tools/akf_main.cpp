// akf: average-case approximation complexity of additive random fields with
// Korobov-kernel marginals. Subcommands expose the spectrum, the information
// complexity n(eps), tractability verdicts and tau-sum scans, growth-regime
// comparisons, a brute-force cross-check, and a Monte Carlo verifier.
//
// Exit codes: 0 success (including flagged-but-non-fatal ambiguity),
// 2 usage/config errors, 3 numeric errors or --strict failures.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "akf/asymptotics.hpp"
#include "akf/complexity.hpp"
#include "akf/errors.hpp"
#include "akf/family_json.hpp"
#include "akf/montecarlo.hpp"
#include "akf/oracle.hpp"
#include "akf/special.hpp"
#include "akf/spectrum.hpp"
#include "akf/tractability.hpp"
#include "akf/util.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct GlobalOptions {
  std::string family_path;
  std::string out_path;
  std::string format = "csv";
  double tol = 1e-15;
  bool strict = false;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

void write_output(const GlobalOptions& g, const std::string& text) {
  if (g.out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(g.out_path, std::ios::binary);
  if (!out) throw akf::validation_error("cannot open output file: " + g.out_path);
  out << text;
}

akf::ParameterFamily load_family(const GlobalOptions& g) {
  if (g.family_path.empty()) {
    throw akf::validation_error("--family is required for this command");
  }
  return akf::load_family_file(g.family_path);
}

std::string fmt(double x) { return akf::format_double(x); }

json bounded_json(const akf::BoundedValue& b) {
  return {{"value", b.value}, {"abs_error", b.abs_error}};
}

const char* criterion_name(akf::Criterion c) {
  return c == akf::Criterion::ABS ? "abs" : "nor";
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const GlobalOptions& g, std::uint64_t d, std::uint64_t top) {
  akf::ParameterFamily family = load_family(g);
  akf::require_valid(family, d);

  std::ostringstream out;
  if (g.format == "csv") {
    out << "rank,value,kind,j,k,parity\n";
  }
  json rows = json::array();
  akf::EigenStream stream(family, d);
  for (std::uint64_t r = 1; r <= top; ++r) {
    akf::Emission e = stream.next();
    bool osc = e.label.kind == akf::EigenLabel::Kind::Oscillatory;
    if (g.format == "csv") {
      out << r << ',' << fmt(e.value) << ','
          << (osc ? "oscillatory" : "constant") << ',';
      if (osc) {
        out << e.label.j << ',' << e.label.k << ','
            << (e.label.parity == akf::Parity::Cos ? "cos" : "sin");
      } else {
        out << ",,";
      }
      out << '\n';
    } else {
      json row = {{"rank", r},
                  {"value", e.value},
                  {"kind", osc ? "oscillatory" : "constant"}};
      if (osc) {
        row["j"] = e.label.j;
        row["k"] = e.label.k;
        row["parity"] = e.label.parity == akf::Parity::Cos ? "cos" : "sin";
      }
      rows.push_back(row);
    }
  }
  write_output(g, g.format == "csv" ? out.str() : rows.dump(2) + "\n");
  return kExitOk;
}

// -------------------------------------------------------------- complexity

int cmd_complexity(const GlobalOptions& g, const std::vector<std::uint64_t>& ds,
                   const std::vector<double>& epses, akf::Criterion crit,
                   const std::string& path_choice,
                   std::uint64_t heap_budget) {
  akf::ParameterFamily family = load_family(g);
  for (double eps : epses) {
    if (!(eps > 0.0 && eps < 1.0)) {
      throw akf::validation_error("eps must lie in (0,1)");
    }
  }
  for (std::uint64_t d : ds) akf::require_valid(family, d);

  akf::ComplexityOptions options;
  options.zeta_tol = g.tol;
  options.heap_budget = heap_budget;
  if (path_choice == "heap") options.force_path = akf::ComplexityPath::Heap;
  if (path_choice == "levelset") {
    options.force_path = akf::ComplexityPath::LevelSet;
  }

  bool any_ambiguous = false;
  std::ostringstream out;
  json rows = json::array();
  if (g.format == "csv") {
    out << "d,eps,criterion,n,n_upper,tail,tail_err,threshold,threshold_err,"
           "certified\n";
  }
  for (std::uint64_t d : ds) {
    for (double eps : epses) {
      akf::ComplexityResult r = akf::info_complexity(family, d, eps, crit, options);
      if (!r.certified) any_ambiguous = true;
      if (g.format == "csv") {
        out << d << ',' << fmt(eps) << ',' << criterion_name(crit) << ','
            << r.n << ',' << r.n_upper << ',' << fmt(r.tail_at_n.value) << ','
            << fmt(r.tail_at_n.abs_error) << ',' << fmt(r.threshold.value)
            << ',' << fmt(r.threshold.abs_error) << ','
            << (r.certified ? "true" : "false") << '\n';
      } else {
        rows.push_back({{"d", d},
                        {"eps", eps},
                        {"criterion", criterion_name(crit)},
                        {"n", r.n},
                        {"n_upper", r.n_upper},
                        {"tail", bounded_json(r.tail_at_n)},
                        {"threshold", bounded_json(r.threshold)},
                        {"certified", r.certified}});
      }
    }
  }
  write_output(g, g.format == "csv" ? out.str() : rows.dump(2) + "\n");
  if (any_ambiguous && g.strict) {
    std::cerr << "ambiguous-at-tolerance rows present; failing under --strict\n";
    return kExitNumeric;
  }
  return kExitOk;
}

// ------------------------------------------------------------ tractability

json hypothesis_json(const akf::HypothesisStatus& h) {
  const char* state = "undecidable";
  switch (h.state) {
    case akf::HypothesisStatus::State::HoldsAnalytic: state = "holds-analytic"; break;
    case akf::HypothesisStatus::State::HoldsEmpirical: state = "holds-empirical"; break;
    case akf::HypothesisStatus::State::Fails: state = "fails"; break;
    case akf::HypothesisStatus::State::Undecidable: state = "undecidable"; break;
  }
  json out = {{"name", h.name}, {"state", state}, {"note", h.note}};
  if (std::isfinite(h.constant)) out["constant"] = h.constant;
  return out;
}

json decay_json(const akf::DecayIndex& di) {
  json out;
  if (std::isinf(di.value)) {
    out["value"] = di.value > 0 ? "inf" : "-inf";
  } else {
    out["value"] = di.value;
  }
  out["provenance"] =
      di.provenance == akf::Provenance::Analytic ? "analytic" : "empirical";
  return out;
}

int cmd_tractability(const GlobalOptions& g, akf::Criterion crit, bool scan,
                     std::vector<double> tau_grid,
                     std::vector<std::uint64_t> d_grid) {
  akf::ParameterFamily family = load_family(g);
  akf::TractabilityVerdict v = akf::spt_verdict(family, crit);

  json doc;
  doc["criterion"] = criterion_name(crit);
  doc["pt"] = v.pt;
  doc["derived"] = {{"qpt", v.qpt}, {"uwt", v.uwt}, {"wt", v.wt}};
  doc["spt"] = v.spt == akf::SptStatus::True
                   ? "true"
                   : (v.spt == akf::SptStatus::False ? "false" : "unknown");
  if (v.a_star) doc["a_star"] = decay_json(*v.a_star);
  if (v.b_star) doc["b_star"] = decay_json(*v.b_star);
  if (v.exponent) doc["exponent"] = *v.exponent;
  doc["clause"] = v.clause;
  doc["hypotheses"] = json::array();
  for (const auto& h : v.hypotheses) doc["hypotheses"].push_back(hypothesis_json(h));

  if (scan) {
    if (tau_grid.empty()) tau_grid = {0.75};
    if (d_grid.empty()) {
      for (std::uint64_t d = 10; d <= 1'000'000; d *= 10) d_grid.push_back(d);
    }
    json rows = json::array();
    for (const akf::TauScanRow& row :
         akf::tau_criterion_scan(family, crit, tau_grid, d_grid,
                                 std::max(g.tol, 1e-13))) {
      rows.push_back({{"tau", row.tau},
                      {"witness", row.witness},
                      {"sup_value", row.sup_value},
                      {"sup_at_d", row.sup_at_d},
                      {"bounded", row.bounded},
                      {"heuristic", true},
                      {"last_decade_growth", row.last_decade_growth}});
    }
    doc["scan"] = rows;
  }
  write_output(g, doc.dump(2) + "\n");
  return kExitOk;
}

// ------------------------------------------------------------- asymptotics

int cmd_asymptotics(const GlobalOptions& g, std::vector<std::uint64_t> d_grid,
                    double eps) {
  akf::ParameterFamily family = load_family(g);
  if (!(eps > 0.0 && eps < 1.0)) {
    throw akf::validation_error("eps must lie in (0,1)");
  }

  akf::Classification cls = akf::classify(family);
  if (!cls.regime) {
    if (g.format == "json") {
      json doc = {{"applicable", false}, {"reason", cls.reason}};
      write_output(g, doc.dump(2) + "\n");
    } else {
      write_output(g, "# not applicable: " + cls.reason +
                          "\nd,n_computed,n_predicted,ratio\n");
    }
    return kExitOk;
  }
  if (cls.regime->case_id != 1 && !(eps < cls.regime->eps0)) {
    throw akf::validation_error("eps = " + fmt(eps) +
                                " is at or above eps0 = " +
                                fmt(cls.regime->eps0));
  }

  akf::ComplexityOptions options;
  options.zeta_tol = g.tol;
  std::vector<akf::CompareRow> rows = akf::compare(family, d_grid, eps, options);

  std::ostringstream out;
  json jrows = json::array();
  if (g.format == "csv") out << "d,n_computed,n_predicted,ratio\n";
  for (const akf::CompareRow& row : rows) {
    if (g.format == "csv") {
      out << row.d << ',' << row.n_computed << ',' << fmt(row.n_predicted)
          << ',' << fmt(row.ratio) << '\n';
    } else {
      jrows.push_back({{"d", row.d},
                       {"n_computed", row.n_computed},
                       {"n_predicted", row.n_predicted},
                       {"ratio", row.ratio}});
    }
  }
  if (g.format == "json") {
    json doc = {{"applicable", true},
                {"case", cls.regime->case_id},
                {"eps0", cls.regime->eps0},
                {"rows", jrows}};
    write_output(g, doc.dump(2) + "\n");
  } else {
    write_output(g, out.str());
  }
  return kExitOk;
}

// ------------------------------------------------------------------- check

int cmd_check(const GlobalOptions& g, std::uint64_t cases, std::uint64_t K,
              bool inject_fault) {
  std::mt19937_64 rng(g.seed);
  std::uniform_real_distribution<double> eps_dist(0.15, 0.95);
  std::uniform_real_distribution<double> beta_c(0.05, 1.0);
  std::uniform_real_distribution<double> beta_s(0.0, 3.0);
  std::uniform_real_distribution<double> alpha_c(0.0, 2.0);
  std::uniform_real_distribution<double> sigma_c(2.0, 4.0);

  json report;
  report["cases"] = json::array();
  std::uint64_t conclusive = 0, mismatches = 0;

  for (std::uint64_t i = 0; i < cases; ++i) {
    akf::SequenceRule alpha = (rng() % 2 == 0)
                                  ? akf::SequenceRule::constant(alpha_c(rng))
                                  : akf::SequenceRule::power(alpha_c(rng), beta_s(rng));
    akf::SequenceRule beta = (rng() % 2 == 0)
                                 ? akf::SequenceRule::constant(beta_c(rng))
                                 : akf::SequenceRule::power(beta_c(rng), beta_s(rng));
    akf::ParameterFamily family{alpha, beta,
                                akf::SequenceRule::constant(sigma_c(rng))};
    std::uint64_t d = 1 + rng() % 4;
    double eps = eps_dist(rng);
    akf::Criterion crit = (rng() % 2 == 0) ? akf::Criterion::ABS : akf::Criterion::NOR;

    akf::MaterializedSpectrum spec = akf::materialize(family, d, K);
    akf::OracleComplexity oracle = akf::oracle_info_complexity(spec, eps, crit);

    json c = {{"id", i},
              {"d", d},
              {"eps", eps},
              {"criterion", criterion_name(crit)},
              {"conclusive", oracle.conclusive}};
    if (oracle.conclusive) {
      ++conclusive;
      akf::ComplexityOptions heap_opt, level_opt;
      heap_opt.force_path = akf::ComplexityPath::Heap;
      level_opt.force_path = akf::ComplexityPath::LevelSet;
      std::uint64_t heap_n = akf::info_complexity(family, d, eps, crit, heap_opt).n;
      std::uint64_t level_n =
          akf::info_complexity(family, d, eps, crit, level_opt).n;
      std::uint64_t oracle_n = oracle.n;
      if (inject_fault && i == 0) ++oracle_n;  // negative control
      bool agree = heap_n == oracle_n && level_n == oracle_n;
      if (!agree) ++mismatches;
      c["oracle_n"] = oracle_n;
      c["heap_n"] = heap_n;
      c["levelset_n"] = level_n;
      c["agree"] = agree;
    }
    report["cases"].push_back(c);
  }

  report["total"] = cases;
  report["conclusive"] = conclusive;
  report["mismatches"] = mismatches;
  bool pass = mismatches == 0 && conclusive > 0;
  report["pass"] = pass;
  write_output(g, report.dump(2) + "\n");
  if (!pass && g.strict) return kExitNumeric;
  return kExitOk;
}

// --------------------------------------------------------------- verify-mc

int cmd_verify_mc(const GlobalOptions& g, std::uint64_t d, std::uint64_t K,
                  std::uint64_t n, std::uint64_t samples) {
  akf::ParameterFamily family = load_family(g);
  if (samples == 0) throw akf::validation_error("--samples must be positive");
  akf::require_valid(family, d);

  akf::ProjectionError est = akf::empirical_projection_error(
      family, d, K, n, samples, g.seed, g.threads);

  akf::BoundedValue tr = akf::trace(family, d, g.tol);
  akf::EigenStream stream(family, d);
  for (std::uint64_t i = 0; i < n; ++i) stream.next();
  akf::BoundedValue tail = tr - stream.emitted_sum();

  akf::BoundedValue remainder{0.0, 0.0};
  for (std::uint64_t j = 1; j <= d; ++j) {
    akf::BoundedValue t =
        akf::tail_power_sum(K, family.sigma_at(j), std::max(g.tol, 1e-15));
    remainder = remainder + akf::scale(t, 2.0 * family.beta_at(j));
  }

  double lo = tail.lower() - remainder.upper();
  double hi = tail.upper() - remainder.lower();
  bool pass = est.mean_sq_error + 3.0 * est.std_error >= lo &&
              est.mean_sq_error - 3.0 * est.std_error <= hi;

  json doc = {{"family", akf::family_to_json(family)},
              {"d", d},
              {"K", K},
              {"n", n},
              {"samples", samples},
              {"empirical", est.mean_sq_error},
              {"analytic_lo", lo},
              {"analytic_hi", hi},
              {"std_error", est.std_error},
              {"pass", pass}};
  write_output(g, doc.dump(2) + "\n");
  if (!pass && g.strict) return kExitNumeric;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"average-case approximation complexity for additive Korobov fields"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--family", g.family_path, "family descriptor JSON file");
  app.add_option("--out", g.out_path, "output path (default stdout)");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", g.tol, "zeta tolerance")->check(CLI::PositiveNumber);
  app.add_flag("--strict", g.strict, "numeric failures become exit code 3");
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--threads", g.threads, "worker threads")
      ->check(CLI::PositiveNumber);

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "top eigenvalues with labels");
  sp->fallthrough();
  std::uint64_t sp_d = 1, sp_top = 10;
  sp->add_option("--d", sp_d, "dimension")->required()->check(CLI::PositiveNumber);
  sp->add_option("--top", sp_top, "number of eigenvalues");

  // complexity
  auto* cx = app.add_subcommand("complexity", "information complexity n(eps)");
  cx->fallthrough();
  std::vector<std::uint64_t> cx_d;
  std::vector<double> cx_eps;
  std::string cx_crit = "abs", cx_path = "auto";
  std::uint64_t cx_budget = 1'000'000;
  cx->add_option("--d", cx_d, "dimension(s)")->required();
  cx->add_option("--eps", cx_eps, "accuracy target(s)")->required();
  cx->add_option("--crit", cx_crit, "error criterion")
      ->check(CLI::IsMember({"abs", "nor"}));
  cx->add_option("--path", cx_path, "algorithm path")
      ->check(CLI::IsMember({"auto", "heap", "levelset"}));
  cx->add_option("--heap-budget", cx_budget, "heap path emission budget");

  // tractability
  auto* tr = app.add_subcommand("tractability", "SPT/PT verdict");
  tr->fallthrough();
  std::string tr_crit = "abs";
  bool tr_scan = false;
  std::vector<double> tr_tau;
  std::vector<std::uint64_t> tr_dgrid;
  tr->add_option("--crit", tr_crit, "error criterion")
      ->check(CLI::IsMember({"abs", "nor"}));
  tr->add_flag("--scan", tr_scan, "include the tau-sum boundedness scan");
  tr->add_option("--tau", tr_tau, "tau grid for the scan");
  tr->add_option("--d-grid", tr_dgrid, "d grid for the scan");

  // asymptotics
  auto* as = app.add_subcommand("asymptotics", "growth-regime comparison");
  as->fallthrough();
  std::vector<std::uint64_t> as_dgrid;
  double as_eps = 0.5;
  as->add_option("--d-grid", as_dgrid, "dimensions to probe")->required();
  as->add_option("--eps", as_eps, "accuracy target")->required();

  // check
  auto* ck = app.add_subcommand("check", "brute-force cross-check");
  ck->fallthrough();
  std::uint64_t ck_cases = 25, ck_K = 2000;
  bool ck_fault = false;
  ck->add_option("--cases", ck_cases, "number of random cases")
      ->check(CLI::PositiveNumber);
  ck->add_option("--K", ck_K, "oracle truncation depth")
      ->check(CLI::Range(std::uint64_t{1}, akf::kOracleMaxK));
  ck->add_flag("--inject-fault", ck_fault)->group("");  // test harness only

  // verify-mc
  auto* mc = app.add_subcommand("verify-mc", "Monte Carlo projection check");
  mc->fallthrough();
  std::uint64_t mc_d = 3, mc_K = 1000, mc_n = 10, mc_samples = 10'000;
  mc->add_option("--d", mc_d, "dimension")->check(CLI::PositiveNumber);
  mc->add_option("--K", mc_K, "frequency cutoff")->check(CLI::PositiveNumber);
  mc->add_option("--n", mc_n, "projection rank");
  mc->add_option("--samples", mc_samples, "sample count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sp->parsed()) return cmd_spectrum(g, sp_d, sp_top);
    if (cx->parsed()) {
      akf::Criterion crit =
          cx_crit == "abs" ? akf::Criterion::ABS : akf::Criterion::NOR;
      return cmd_complexity(g, cx_d, cx_eps, crit, cx_path, cx_budget);
    }
    if (tr->parsed()) {
      akf::Criterion crit =
          tr_crit == "abs" ? akf::Criterion::ABS : akf::Criterion::NOR;
      return cmd_tractability(g, crit, tr_scan, tr_tau, tr_dgrid);
    }
    if (as->parsed()) return cmd_asymptotics(g, as_dgrid, as_eps);
    if (ck->parsed()) return cmd_check(g, ck_cases, ck_K, ck_fault);
    if (mc->parsed()) return cmd_verify_mc(g, mc_d, mc_K, mc_n, mc_samples);
  } catch (const akf::validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const akf::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}
