// Command-line surface for the quantum-disk numerical laboratory: property
// suites, norm reports, derivation lifting, Mobius diagnostics, functional
// calculus, and index pairings.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "qdisk/calculus.hpp"
#include "qdisk/derivations.hpp"
#include "qdisk/errors.hpp"
#include "qdisk/json_io.hpp"
#include "qdisk/khomology.hpp"
#include "qdisk/mobius.hpp"
#include "qdisk/norms.hpp"
#include "qdisk/operators.hpp"
#include "qdisk/suite.hpp"

namespace {

using qdisk::Json;

Json read_json_input(const std::string& path) {
  if (path.empty() || path == "-") return Json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw qdisk::ConfigError("cannot open input file: " + path);
  return Json::parse(in);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw qdisk::ConfigError("cannot open output file: " + out_path);
  out << text << "\n";
}

int default_dim() {
  if (const char* env = std::getenv("QDISK_DIM")) {
    const int d = std::atoi(env);
    if (d > 0) return d;
  }
  return 64;
}

// Accepts either a bare operator JSON or {"symbol":..., "compact":...}.
qdisk::ToeplitzElem parse_operand(const Json& j, int dim) {
  if (j.contains("symbol")) return qdisk::toeplitz_from_json(j);
  if (j.contains("entries")) return qdisk::from_compact(qdisk::compact_from_json(j));
  if (j.contains("coeffs")) return qdisk::toeplitz(qdisk::symbol_from_json(j), dim);
  throw qdisk::ConfigError("operand JSON must be a symbol, compact, or Toeplitz element");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the smooth Toeplitz algebra on the quantum disk"};
  app.require_subcommand(1);

  // ---- suite ----
  auto* suite_cmd = app.add_subcommand("suite", "run property suites and emit a report");
  qdisk::SuiteConfig cfg;
  cfg.dim = default_dim();
  std::string suites_arg, out_path, format = "json";
  suite_cmd->add_option("--seed", cfg.seed, "deterministic seed");
  suite_cmd->add_option("--dim", cfg.dim, "window size");
  suite_cmd->add_option("--max-mn", cfg.max_mn, "cap on M and N in norm checks");
  suite_cmd->add_option("--tolerance", cfg.tolerance, "relative tolerance");
  suite_cmd->add_option("--suites", suites_arg, "comma-separated suite names (default all)");
  suite_cmd->add_option("--out", out_path, "output path (default stdout)");
  suite_cmd->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // ---- norms ----
  auto* norms_cmd = app.add_subcommand("norms", "norm reports for an operator");
  std::string norms_in;
  int norm_m = 0, norm_n = 0;
  bool all_inequalities = false;
  int norms_dim = default_dim();
  norms_cmd->add_option("--in", norms_in, "operator JSON file, - for stdin");
  norms_cmd->add_option("--M", norm_m, "M parameter");
  norms_cmd->add_option("--N", norm_n, "N parameter");
  norms_cmd->add_option("--dim", norms_dim, "window size");
  norms_cmd->add_flag("--all-inequalities", all_inequalities,
                      "also run the norm inequality suite");
  norms_cmd->add_option("--out", out_path, "output path");

  // ---- lift ----
  auto* lift_cmd = app.add_subcommand("lift", "solve delta = [alpha,.] from generator data");
  std::string lift_in;
  lift_cmd->add_option("--in", lift_in, "JSON {\"b\": CompactOp, \"c\": CompactOp}");
  lift_cmd->add_option("--out", out_path, "output path");

  // ---- mobius ----
  auto* mobius_cmd = app.add_subcommand("mobius", "SU(1,1) action diagnostics");
  double are = 1.0, aim = 0.0, bre = 0.0, bim = 0.0;
  int mobius_dim = default_dim();
  mobius_cmd->add_option("--alpha-re", are, "Re alpha")->required();
  mobius_cmd->add_option("--alpha-im", aim, "Im alpha");
  mobius_cmd->add_option("--beta-re", bre, "Re beta")->required();
  mobius_cmd->add_option("--beta-im", bim, "Im beta");
  mobius_cmd->add_option("--dim", mobius_dim, "window size");
  mobius_cmd->add_option("--out", out_path, "output path");

  // ---- calculus ----
  auto* calc_cmd = app.add_subcommand("calculus", "functional calculus of an operand");
  std::string calc_in, function = "exp", fourier_in;
  double calc_l = 0.0;
  int nodes = 64;
  int calc_dim = default_dim();
  calc_cmd->add_option("--in", calc_in, "operand JSON file, - for stdin");
  calc_cmd
      ->add_option("--function", function,
                   "exp | inverse-shift | square | sine | user (smooth calculus uses the "
                   "periodic-extension route)")
      ->check(CLI::IsMember({"exp", "inverse-shift", "square", "sine", "user"}));
  calc_cmd->add_option("--fourier", fourier_in,
                       "user Fourier data {L, radius, coeffs:[{n,re,im}]} for --function user");
  calc_cmd->add_option("--L", calc_l, "period override for the smooth route");
  calc_cmd->add_option("--nodes", nodes, "contour nodes for the holomorphic route");
  calc_cmd->add_option("--dim", calc_dim, "window size");
  calc_cmd->add_option("--out", out_path, "output path");

  // ---- index ----
  auto* index_cmd = app.add_subcommand("index", "Fredholm index pairings");
  std::string module = "odd-circle", index_in;
  int index_dim = default_dim(), band = 3;
  index_cmd
      ->add_option("--module", module,
                   "odd-circle | even-K | weighted-shift | spectral-D | even-circle")
      ->check(CLI::IsMember({"odd-circle", "even-K", "weighted-shift", "spectral-D",
                             "even-circle"}));
  index_cmd->add_option("--in", index_in, "symbol JSON for odd-circle");
  index_cmd->add_option("--dim", index_dim, "window size / half-width");
  index_cmd->add_option("--band", band, "mode band for spectral-D");
  index_cmd->add_option("--out", out_path, "output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*suite_cmd) {
      if (!suites_arg.empty()) {
        std::string token;
        for (char ch : suites_arg + ",") {
          if (ch == ',') {
            if (!token.empty()) cfg.suites.push_back(token);
            token.clear();
          } else {
            token += ch;
          }
        }
      }
      const qdisk::SuiteReport rep = qdisk::run_property_suite(cfg);
      emit(format == "json" ? qdisk::report_to_json(rep).dump(2) : qdisk::report_to_csv(rep),
           out_path);
      return rep.all_pass() ? 0 : 1;
    }

    if (*norms_cmd) {
      const qdisk::ToeplitzElem a = parse_operand(read_json_input(norms_in), norms_dim);
      Json reports = Json::array();
      const bool compact_only = a.symbol.is_zero();
      if (compact_only) {
        reports.push_back(qdisk::to_json(
            qdisk::NormReport{"opN", 0, norm_n, 0, 0, qdisk::norm_0N(a.compact, norm_n)}));
        reports.push_back(qdisk::to_json(qdisk::NormReport{
            "hsN", 0, norm_n, 0, 0, qdisk::hs_weighted(a.compact, 0, norm_n)}));
        reports.push_back(qdisk::to_json(qdisk::NormReport{
            "MN", norm_m, norm_n, 0, 0, qdisk::norm_MN(a.compact, norm_m, norm_n)}));
      }
      reports.push_back(qdisk::to_json(qdisk::NormReport{
          "toeplitzMN", norm_m, norm_n, 0, 0, qdisk::toeplitz_norm_MN(a, norm_m, norm_n)}));
      if (all_inequalities) {
        qdisk::SuiteConfig icfg;
        icfg.dim = norms_dim;
        icfg.suites = {"norms"};
        reports.push_back(qdisk::report_to_json(qdisk::run_property_suite(icfg)));
      }
      emit(reports.dump(2), out_path);
      return 0;
    }

    if (*lift_cmd) {
      const Json j = read_json_input(lift_in);
      const qdisk::CompactOp b = qdisk::compact_from_json(j.at("b"));
      const qdisk::CompactOp c = qdisk::compact_from_json(j.at("c"));
      const qdisk::LiftResult lift = qdisk::lift_derivation(b, c);
      const Json out = {{"f", qdisk::to_json(lift.f)},
                        {"alpha_tilde", qdisk::to_json(lift.alpha_tilde)},
                        {"residuals",
                         {{"compatibility", lift.residuals.compatibility},
                          {"comm_u", lift.residuals.comm_u},
                          {"comm_ustar", lift.residuals.comm_ustar}}}};
      emit(out.dump(2), out_path);
      return 0;
    }

    if (*mobius_cmd) {
      const qdisk::SU11Element g{qdisk::cplx{are, aim}, qdisk::cplx{bre, bim}};
      emit(qdisk::to_json(qdisk::mobius_report(g, mobius_dim)).dump(2), out_path);
      return 0;
    }

    if (*calc_cmd) {
      const qdisk::ToeplitzElem a = parse_operand(read_json_input(calc_in), calc_dim);
      Json out;
      if (calc_cmd->count("--nodes") > 0 && (function == "exp" || function == "square")) {
        // explicit node count selects the contour-integral route; the
        // residual is the node-doubling difference
        const qdisk::ScalarFn f = function == "exp"
                                      ? qdisk::ScalarFn([](qdisk::cplx z) { return std::exp(z) - 1.0; })
                                      : qdisk::ScalarFn([](qdisk::cplx z) { return z * z; });
        const qdisk::Matrix window = qdisk::realize(a, calc_dim);
        qdisk::Contour contour = qdisk::default_contour(window);
        contour.nodes = nodes;
        qdisk::Contour finer = contour;
        finer.nodes = 2 * nodes;
        if (a.symbol.is_zero()) {
          const qdisk::CompactOp r = qdisk::holo_calc(a.compact, f, contour);
          const qdisk::CompactOp r2 = qdisk::holo_calc(a.compact, f, finer);
          out = {{"result", qdisk::to_json(r)},
                 {"residuals", {{"node_doubling", (r - r2).max_abs()}}}};
        } else {
          const qdisk::ToeplitzElem r = qdisk::holo_calc(a, f, contour);
          const qdisk::ToeplitzElem r2 = qdisk::holo_calc(a, f, finer);
          out = {{"result", qdisk::to_json(r)},
                 {"residuals",
                  {{"node_doubling", (r.compact - r2.compact).max_abs()}}}};
        }
      } else if (function == "inverse-shift") {
        // (I + a)^{-1} - I on a compact operand, a^{-1} on an element
        if (a.symbol.is_zero()) {
          const qdisk::CompactOp r = qdisk::invert_one_plus(a.compact);
          out = {{"result", qdisk::to_json(r)}};
        } else {
          const qdisk::ToeplitzInverse inv = qdisk::invert_toeplitz(a);
          out = {{"result", qdisk::to_json(inv.value)},
                 {"residuals",
                  {{"symbol", inv.symbol_residual},
                   {"window", inv.window_residual},
                   {"decay_profile", inv.decay_profile}}}};
        }
      } else if (function == "exp" && a.symbol.is_zero()) {
        out = {{"result", qdisk::to_json(qdisk::exp_compact(a.compact))},
               {"note", "returns e^c - I"}};
      } else {
        const qdisk::Matrix window = qdisk::realize(a, calc_dim);
        const double radius = qdisk::op_norm(window) + 0.5;
        qdisk::PeriodicExtension ext;
        if (function == "user") {
          // trusted user Fourier data in place of the built extension
          const Json j = read_json_input(fourier_in);
          ext.L = j.at("L").get<double>();
          ext.spectral_radius = j.at("radius").get<double>();
          int n_max = 0;
          for (const auto& e : j.at("coeffs"))
            n_max = std::max(n_max, std::abs(e.at("n").get<int>()));
          ext.n_max = n_max;
          ext.coeffs.assign(2 * n_max + 1, qdisk::cplx{0.0, 0.0});
          for (const auto& e : j.at("coeffs"))
            ext.coeffs[e.at("n").get<int>() + n_max] +=
                qdisk::cplx{e.at("re").get<double>(), e.value("im", 0.0)};
        } else {
          qdisk::RealFn fn;
          if (function == "exp")
            fn = [](double x) { return std::exp(x) - 1.0; };
          else if (function == "square")
            fn = [](double x) { return x * x; };
          else
            fn = [radius](double x) { return std::sin(x / (radius + 1.0)); };
          ext = qdisk::make_periodic_extension(fn, radius, calc_l);
        }
        if (a.symbol.is_zero()) {
          const qdisk::CompactOp r = qdisk::smooth_calc_sa(a.compact, ext);
          out = {{"result", qdisk::to_json(r)},
                 {"extension",
                  {{"L", ext.L}, {"modes", ext.n_max}, {"reproduction", ext.reproduction_error}}}};
        } else {
          const qdisk::ToeplitzElem r = qdisk::smooth_calc_sa(a, ext);
          out = {{"result", qdisk::to_json(r)},
                 {"extension",
                  {{"L", ext.L}, {"modes", ext.n_max}, {"reproduction", ext.reproduction_error}}}};
        }
      }
      emit(out.dump(2), out_path);
      return 0;
    }

    if (*index_cmd) {
      Json out;
      if (module == "odd-circle") {
        const qdisk::Symbol f =
            index_in.empty() ? qdisk::Symbol::mode(1)
                             : qdisk::symbol_from_json(read_json_input(index_in));
        out = {{"module", module},
               {"winding", qdisk::winding_number(f)},
               {"result", qdisk::to_json(qdisk::index_odd_circle(f, index_dim))}};
      } else if (module == "even-K") {
        const qdisk::EvenModulePairings p = qdisk::even_module_over_K(index_dim);
        out = {{"module", module},
               {"pairing_P00", qdisk::to_json(p.pairing_p00)},
               {"pairing_I", qdisk::to_json(p.pairing_identity)},
               {"relation_residual", p.relation_residual},
               {"completeness_residual", p.completeness_residual}};
      } else if (module == "weighted-shift") {
        const auto spec = qdisk::WeightedShiftSpec::defaults(2 * index_dim + 8);
        out = {{"module", module},
               {"result", qdisk::to_json(qdisk::weighted_shift_index(spec, index_dim))}};
      } else if (module == "spectral-D") {
        const auto spec = qdisk::WeightedShiftSpec::defaults(4 * index_dim + 8);
        const qdisk::DIndexResult d = qdisk::spectral_triple_D_index(spec, band, index_dim);
        out = {{"module", module},
               {"result", qdisk::to_json(d.numerical)},
               {"proxy_N", d.proxy_N}};
      } else {
        const qdisk::CirclePairingResult cp = qdisk::even_module_circle_pairing();
        out = {{"module", module},
               {"circle", qdisk::to_json(cp.circle)},
               {"toeplitz_pullback", qdisk::to_json(cp.toeplitz_pullback)},
               {"grading_residual", cp.grading_residual}};
      }
      emit(out.dump(2), out_path);
      return 0;
    }
  } catch (const qdisk::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qdisk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
