#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hexstab/bench.hpp"

namespace {

std::vector<double> grid_or_value(const std::string& grid, const std::optional<double>& v) {
  if (!grid.empty()) return hexstab::parse_grid(grid);
  return {*v};
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace hexstab;

  CLI::App app{"Hexahedral element integration benchmarks"};
  std::string study_arg, schemes_arg, config_path, summary_path, bulk_arg;
  std::string nu_grid, d_grid, load_grid;
  std::optional<int> nx, ny, nz, level, refine_levels, load_steps;
  std::optional<double> nu, d, E, load;
  std::optional<std::string> out;

  app.add_option("study", study_arg,
                 "cantilever | refine | load-sweep | nu-sweep | distortion | linear-distortion")
      ->required();
  app.add_option("--scheme", schemes_arg, "comma-separated schemes, e.g. Full,1-PStab");
  app.add_option("--nx", nx, "level-0 elements along x1");
  app.add_option("--ny", ny, "level-0 elements along x2");
  app.add_option("--nz", nz, "level-0 elements along x3");
  app.add_option("--level", level, "uniform refinement level");
  app.add_option("--refine-levels", refine_levels, "refine study: levels 0..k");
  auto* nu_opt = app.add_option("--nu", nu, "Poisson ratio");
  app.add_option("--nu-grid", nu_grid, "Poisson ratio sweep a:b:n")->excludes(nu_opt);
  auto* d_opt = app.add_option("--d", d, "distortion parameter");
  app.add_option("--d-grid", d_grid, "distortion sweep a:b:n")->excludes(d_opt);
  app.add_option("--load-steps", load_steps, "Newton load steps");
  app.add_option("--load-grid", load_grid, "load factor sweep a:b:n");
  app.add_option("--E", E, "Young's modulus in Pa");
  app.add_option("--load", load, "body force x3 component in N/m^3");
  app.add_option("--bulk", bulk_arg, "bulk modulus convention")
      ->check(CLI::IsMember({"one-minus-nu", "one-minus-two-nu"}));
  app.add_option("--out", out, "CSV output path (stdout if omitted)");
  app.add_option("--config", config_path, "JSON config; flags override it");
  app.add_option("--summary", summary_path, "write a JSON run summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  StudySpec spec;
  std::vector<StudyRow> rows;
  try {
    const auto study = parse_study(study_arg);
    if (!study) throw std::invalid_argument("unknown study " + study_arg);
    spec = StudySpec::defaults(*study);
    if (!config_path.empty()) apply_config(spec, read_file(config_path));

    if (!schemes_arg.empty()) {
      spec.schemes.clear();
      std::stringstream ss(schemes_arg);
      for (std::string name; std::getline(ss, name, ',');) {
        const auto s = parse_scheme(name);
        if (!s) throw std::invalid_argument("unknown scheme " + name);
        spec.schemes.push_back(*s);
      }
    }
    if (nx) spec.mesh.nx = *nx;
    if (ny) spec.mesh.ny = *ny;
    if (nz) spec.mesh.nz = *nz;
    if (level) spec.level = *level;
    if (refine_levels) spec.refine_levels = *refine_levels;
    if (E) spec.E = *E;
    if (load) spec.load = *load;
    if (load_steps) spec.newton.n_load_steps = *load_steps;
    if (!bulk_arg.empty())
      spec.bulk = bulk_arg == "one-minus-nu" ? BulkConvention::OneMinusNu
                                             : BulkConvention::OneMinusTwoNu;
    if (!nu_grid.empty() || nu) {
      if (*study == Study::NuSweep) spec.nu_grid = grid_or_value(nu_grid, nu);
      else if (nu) spec.nu = *nu;
      else throw std::invalid_argument("--nu-grid only applies to nu-sweep");
    }
    if (!d_grid.empty() || d) spec.d_grid = grid_or_value(d_grid, d);
    if (!load_grid.empty()) spec.load_grid = parse_grid(load_grid);
    if (out) spec.out = *out;

    rows = run_study(spec);
    if (spec.out.empty()) {
      write_csv(std::cout, spec.study, rows);
    } else {
      emit_csv(spec.study, rows, spec.out);
    }
    if (!summary_path.empty()) {
      std::ofstream f(summary_path);
      f << summary_json(spec, rows) << '\n';
      if (!f) throw std::runtime_error("cannot write " + summary_path);
    }
  } catch (const std::exception& ex) {
    std::cerr << "hexstab: " << ex.what() << '\n';
    return 1;
  }

  int failed = 0;
  for (const StudyRow& r : rows)
    if (!r.ok()) {
      ++failed;
      std::cerr << scheme_name(r.scheme) << " @ " << r.param << ": " << r.status << ": "
                << r.message << '\n';
    }
  return failed == 0 ? 0 : 2;
}
