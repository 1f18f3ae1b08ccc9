#include "nrt/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "nrt/frac_power.hpp"
#include "nrt/matrix_io.hpp"
#include "nrt/range_radius.hpp"
#include "nrt/verify.hpp"

namespace nrt {

namespace {

using nlohmann::json;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write output file: " + path);
  out << text;
}

void emit_json(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    write_text(out_path, j.dump(2) + "\n");
  }
}

json radius_to_json(const RadiusReport& r) {
  json j;
  j["omega"] = r.omega;
  j["gamma"] = r.gamma;
  j["theta_star"] = r.theta_star;
  json wre = json::array(), wim = json::array();
  for (Eigen::Index i = 0; i < r.witness.size(); ++i) {
    wre.push_back(r.witness(i).real());
    wim.push_back(r.witness(i).imag());
  }
  j["witness_re"] = std::move(wre);
  j["witness_im"] = std::move(wim);
  j["grid_size"] = r.grid_size;
  j["refinement_iters"] = r.refinement_iters;
  return j;
}

json sector_to_json(const SectorReport& s) {
  json j;
  j["accretive"] = s.accretive;
  j["dissipative"] = s.dissipative;
  j["accretive_dissipative"] = s.accretive_dissipative;
  if (s.alpha) {
    j["alpha"] = *s.alpha;
  }
  j["min_re"] = s.min_re;
  j["min_im"] = s.min_im;
  j["zero_in_range"] = s.zero_in_range;
  j["zero_inconclusive"] = s.zero_inconclusive;
  j["crosses_negative_axis"] = s.crosses_negative_axis;
  return j;
}

int cmd_analyze(const std::string& input, const std::string& out, int grid, int boundary_m) {
  const ComplexMatrix A = read_matrix_file(input);
  RangeOptions ro;
  ro.grid = grid;
  json j;
  j["radius"] = radius_to_json(numerical_radius(A, ro));
  j["sector"] = sector_to_json(classify(A, boundary_m));
  emit_json(j, out);
  return 0;
}

int cmd_range(const std::string& input, const std::string& out, int m,
              const std::string& format) {
  const ComplexMatrix A = read_matrix_file(input);
  const std::vector<BoundaryPoint> pts = range_boundary(A, m);
  if (format == "json") {
    json arr = json::array();
    for (const BoundaryPoint& p : pts) {
      arr.push_back(json{{"theta", p.theta}, {"re", p.z.real()}, {"im", p.z.imag()}});
    }
    emit_json(json{{"boundary", std::move(arr)}}, out);
  } else {
    std::ostringstream os;
    write_boundary_csv(os, pts);
    if (out.empty()) {
      std::cout << os.str();
    } else {
      write_text(out, os.str());
    }
  }
  return 0;
}

int cmd_power(const std::string& input, const std::string& out, double t, long k,
              double tol) {
  const ComplexMatrix A = read_matrix_file(input);
  ComplexMatrix value;
  json meta;
  if (k > 0) {
    value = matrix_power_int(A, k);
    meta["k"] = k;
    meta["method"] = "integer";
  } else {
    QuadratureOptions qo;
    if (tol > 0.0) qo.target_tol = tol;
    const PowerResult r = fractional_power(A, t, qo);
    value = r.value;
    meta["t"] = r.t;
    meta["method"] = to_string(r.method);
    meta["discrepancy"] = r.discrepancy;
    meta["quad_nodes"] = r.quad_nodes;
    meta["truncation"] = r.truncation;
  }
  const json extra = json{{"power_meta", std::move(meta)}};
  if (out.empty()) {
    json j = matrix_to_json(value);
    j["power_meta"] = extra["power_meta"];
    std::cout << j.dump(2) << '\n';
  } else {
    write_matrix_file(out, value, &extra);
  }
  return 0;
}

int cmd_verify(const SuiteConfig& cfg, const std::string& out) {
  const VerificationReport rep = run_suite(cfg);
  emit_json(report_to_json(rep), out);
  return total_violations(rep) == 0 ? 0 : 4;
}

int cmd_hunt(const HuntConfig& cfg, const std::string& out) {
  const HuntReport rep = hunt_counterexample(cfg);
  emit_json(hunt_to_json(rep), out);
  return rep.counterexample ? 3 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& argv) {
  CLI::App app{"numerical range / radius / fractional power toolkit"};
  app.require_subcommand(1);

  std::string input, out, format = "csv", klass = "generic";
  double t = 0.0, tol = 0.0, alpha = 1.0;
  long k = 0;
  int grid = 2048, m = 512, samples = 100, n_min = 1, n_max = 8;
  int hunt_n_min = 2, hunt_n_max = 6;
  std::uint64_t seed = 0;
  long budget = 1000;
  double t_min = 0.5, t_max = 0.95, perturb = 0.1;
  std::vector<std::string> pid_names;
  std::vector<double> t_grid;
  std::vector<long> k_set;

  CLI::App* analyze = app.add_subcommand("analyze", "radius + sector report for a matrix");
  analyze->add_option("--input", input, "matrix JSON file")->required();
  analyze->add_option("--out", out, "output JSON path (stdout if omitted)");
  analyze->add_option("--grid", grid, "radius sweep grid size");
  analyze->add_option("--m", m, "boundary directions for the hull tests");

  CLI::App* range = app.add_subcommand("range", "numerical range boundary export");
  range->add_option("--input", input, "matrix JSON file")->required();
  range->add_option("--out", out, "output path (stdout if omitted)");
  range->add_option("--m", m, "boundary directions");
  range->add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* power = app.add_subcommand("power", "principal matrix power");
  power->add_option("--input", input, "matrix JSON file")->required();
  power->add_option("--out", out, "output matrix JSON path (stdout if omitted)");
  power->add_option("--t", t, "fractional exponent in (0, 1]");
  power->add_option("--k", k, "integer exponent (overrides --t)");
  power->add_option("--tol", tol, "quadrature target tolerance");

  CLI::App* verify = app.add_subcommand("verify", "property suite over seeded instances");
  verify->add_option("--class", klass, "hpd|accretive|dissipative|ad|sectorial|generic")
      ->check(CLI::IsMember({"hpd", "accretive", "dissipative", "ad", "sectorial", "generic"}));
  verify->add_option("--pid", pid_names, "property ids (repeatable), e.g. P3");
  verify->add_option("--samples", samples, "instances per run");
  verify->add_option("--seed", seed, "master seed");
  verify->add_option("--n-min", n_min, "smallest dimension");
  verify->add_option("--n-max", n_max, "largest dimension");
  verify->add_option("--t", t_grid, "exponent grid (repeatable)");
  verify->add_option("--k", k_set, "integer power set (repeatable)");
  verify->add_option("--tol", tol, "violation tolerance on normalized margins");
  verify->add_option("--alpha", alpha, "sectorial target angle");
  verify->add_option("--out", out, "report JSON path (stdout if omitted)");

  CLI::App* hunt = app.add_subcommand("hunt", "conjecture counterexample search");
  hunt->add_option("--budget", budget, "margin evaluations");
  hunt->add_option("--seed", seed, "master seed");
  hunt->add_option("--n-min", hunt_n_min, "smallest dimension");
  hunt->add_option("--n-max", hunt_n_max, "largest dimension");
  hunt->add_option("--t-min", t_min, "lower end of the exponent range");
  hunt->add_option("--t-max", t_max, "upper end of the exponent range");
  hunt->add_option("--class", klass, "accretive|ad|hpd")
      ->check(CLI::IsMember({"accretive", "ad", "hpd"}));
  hunt->add_option("--perturb-scale", perturb, "initial hill-climb step scale");
  hunt->add_option("--out", out, "report JSON path (stdout if omitted)");

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    // --help and friends exit 0; every actual parse failure is a usage error.
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (analyze->parsed()) {
      return cmd_analyze(input, out, grid, m);
    }
    if (range->parsed()) {
      return cmd_range(input, out, m, format);
    }
    if (power->parsed()) {
      if (k <= 0 && !(t > 0.0)) {
        throw InvalidInput("power: pass --t in (0, 1] or an integer --k >= 1");
      }
      return cmd_power(input, out, t, k, tol);
    }
    if (verify->parsed()) {
      SuiteConfig cfg;
      const auto kind = generator_kind_from_string(klass);
      if (!kind) throw InvalidInput("verify: unknown class " + klass);
      cfg.kind = *kind;
      cfg.samples = samples;
      cfg.seed = seed;
      cfg.n_min = n_min;
      cfg.n_max = n_max;
      if (!t_grid.empty()) cfg.t_grid = t_grid;
      if (!k_set.empty()) cfg.k_set = k_set;
      if (tol > 0.0) cfg.tol = tol;
      cfg.alpha = alpha;
      for (const std::string& name : pid_names) {
        const auto pid = property_from_string(name);
        if (!pid) throw InvalidInput("verify: unknown property id " + name);
        cfg.pids.push_back(*pid);
      }
      return cmd_verify(cfg, out);
    }
    if (hunt->parsed()) {
      HuntConfig cfg;
      const auto kind = generator_kind_from_string(klass == "generic" ? "accretive" : klass);
      if (!kind) throw InvalidInput("hunt: unknown class " + klass);
      cfg.kind = *kind;
      cfg.budget = budget;
      cfg.seed = seed;
      cfg.n_min = hunt_n_min;
      cfg.n_max = hunt_n_max;
      cfg.t_min = t_min;
      cfg.t_max = t_max;
      cfg.perturb_scale = perturb;
      return cmd_hunt(cfg, out);
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace nrt
