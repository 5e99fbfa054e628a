#include "hexstab/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hexstab {

namespace {

using Clock = std::chrono::steady_clock;
using json = nlohmann::json;

struct RunOutcome {
  Eigen::VectorXd u;
  int iterations = 0;
};

// Fills status/message from the exception currently being handled.
void record_failure(StudyRow& row) {
  try {
    throw;
  } catch (const NewtonDivergence& ex) {
    row.status = "newton_divergence";
    row.newton_iters = ex.report().total_iterations();
    row.message = ex.what();
  } catch (const NewtonElementInverted& ex) {
    row.status = "element_inverted";
    row.newton_iters = ex.report().total_iterations();
    row.message = ex.what();
  } catch (const ElementInverted& ex) {
    row.status = "element_inverted";
    row.message = ex.what();
  } catch (const SolveFailure& ex) {
    row.status = "solve_failure";
    row.message = ex.what();
  } catch (const std::exception& ex) {
    row.status = "error";
    row.message = ex.what();
  }
}

template <class Solve>
StudyRow run_point(IntegrationScheme scheme, double param, const HexMesh& mesh,
                   Solve&& solve) {
  StudyRow row;
  row.scheme = scheme;
  row.param = param;
  row.n_elements = static_cast<int>(mesh.n_elements());
  const auto t0 = Clock::now();
  try {
    const RunOutcome out = solve();
    const TipDisplacement tip = extract_tip_displacement(mesh, out.u);
    row.u_tip_z = tip.mean[2];
    row.U_r = tip.U_r;
    row.newton_iters = out.iterations;
  } catch (...) {
    record_failure(row);
  }
  row.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return row;
}

RunOutcome newton_run(const HexMesh& mesh, const MaterialParams& mp,
                      IntegrationScheme scheme, double load, const NewtonConfig& cfg) {
  NewtonResult r = solve_newton(mesh, mp, scheme, Vec3(0.0, 0.0, load), cfg);
  return {std::move(r.u), r.report.total_iterations()};
}

void append_number(std::string& s, double v) {
  if (std::isnan(v)) {
    s += "nan";
    return;
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  s.append(buf, res.ptr);
}

std::vector<double> grid_from_json(const json& j, const char* key) {
  if (j.is_string()) return parse_grid(j.get<std::string>());
  if (j.is_array()) return j.get<std::vector<double>>();
  if (j.is_number()) return {j.get<double>()};
  throw std::invalid_argument(std::string("config key ") + key +
                              " must be an array, a number or an \"a:b:n\" string");
}

BulkConvention parse_bulk(const std::string& s) {
  if (s == "one-minus-nu") return BulkConvention::OneMinusNu;
  if (s == "one-minus-two-nu") return BulkConvention::OneMinusTwoNu;
  throw std::invalid_argument("bulk must be \"one-minus-nu\" or \"one-minus-two-nu\"");
}

const char* bulk_name(BulkConvention b) {
  return b == BulkConvention::OneMinusNu ? "one-minus-nu" : "one-minus-two-nu";
}

}  // namespace

std::string_view study_name(Study s) {
  switch (s) {
    case Study::Cantilever: return "cantilever";
    case Study::Refine: return "refine";
    case Study::LoadSweep: return "load-sweep";
    case Study::NuSweep: return "nu-sweep";
    case Study::Distortion: return "distortion";
    case Study::LinearDistortion: return "linear-distortion";
  }
  return "?";
}

std::optional<Study> parse_study(std::string_view name) {
  for (Study s : {Study::Cantilever, Study::Refine, Study::LoadSweep, Study::NuSweep,
                  Study::Distortion, Study::LinearDistortion})
    if (study_name(s) == name) return s;
  return std::nullopt;
}

StudySpec StudySpec::defaults(Study s) {
  using IS = IntegrationScheme;
  StudySpec spec;
  spec.study = s;
  spec.schemes = {IS::Full, IS::OnePVol, IS::OnePStab, IS::OnePStabIso};
  switch (s) {
    case Study::Cantilever:
      spec.level = 2;
      break;
    case Study::Refine:
      break;
    case Study::LoadSweep:
      spec.load_grid = parse_grid("0.1:1.0:10");
      break;
    case Study::NuSweep:
      spec.bulk = BulkConvention::OneMinusTwoNu;
      spec.nu_grid = {0.33, 0.4, 0.45, 0.48, 0.49, 0.495, 0.499};
      break;
    case Study::Distortion:
      spec.schemes = {IS::Full,        IS::OnePVol,        IS::OnePStab,
                      IS::OnePStabIso, IS::OnePStabConstJ, IS::OnePStabIsoConstJ};
      spec.d_grid = {0.0, 0.04, 0.08, 0.12, 0.16, 0.20};
      break;
    case Study::LinearDistortion:
      spec.schemes = {IS::Full, IS::OnePStab, IS::OnePStabConstJ};
      spec.d_grid = {0.0, 0.04, 0.08, 0.12, 0.16, 0.20};
      spec.load = -1e9;
      break;
  }
  return spec;
}

MaterialParams StudySpec::material(double nu_value) const {
  return MaterialParams::benchmark(E, nu_value, bulk);
}

std::vector<double> parse_grid(std::string_view text) {
  const auto bad = [&] {
    return std::invalid_argument("grid must be \"start:stop:count\", got \"" +
                                 std::string(text) + "\"");
  };
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw bad();
  double a = 0, b = 0;
  int n = 0;
  const auto parse = [&](std::string_view part, auto& value) {
    const auto res = std::from_chars(part.data(), part.data() + part.size(), value);
    if (res.ec != std::errc() || res.ptr != part.data() + part.size()) throw bad();
  };
  parse(text.substr(0, c1), a);
  parse(text.substr(c1 + 1, c2 - c1 - 1), b);
  parse(text.substr(c2 + 1), n);
  if (n < 1) throw bad();
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  if (n > 1) g.back() = b;
  return g;
}

std::vector<StudyRow> run_study(const StudySpec& spec) {
  spec.newton.validate();
  if (spec.schemes.empty()) throw std::invalid_argument("no schemes selected");
  const Vec3 body(0.0, 0.0, spec.load);
  std::vector<StudyRow> rows;

  switch (spec.study) {
    case Study::Cantilever:
    case Study::Refine: {
      const bool sweep = spec.study == Study::Refine;
      const int lo = sweep ? 0 : spec.level;
      const int hi = sweep ? spec.refine_levels : spec.level;
      const MaterialParams mp = spec.material(spec.nu);
      for (IntegrationScheme s : spec.schemes)
        for (int level = lo; level <= hi; ++level) {
          const HexMesh mesh = uniform_refine(spec.mesh, level);
          rows.push_back(run_point(s, level, mesh, [&] {
            return newton_run(mesh, mp, s, spec.load, spec.newton);
          }));
        }
      break;
    }
    case Study::LoadSweep: {
      const HexMesh mesh = uniform_refine(spec.mesh, spec.level);
      const MaterialParams mp = spec.material(spec.nu);
      for (IntegrationScheme s : spec.schemes)
        for (double factor : spec.load_grid)
          rows.push_back(run_point(s, factor, mesh, [&] {
            return newton_run(mesh, mp, s, factor * spec.load, spec.newton);
          }));
      break;
    }
    case Study::NuSweep: {
      const HexMesh mesh = uniform_refine(spec.mesh, spec.level);
      for (IntegrationScheme s : spec.schemes)
        for (double nu : spec.nu_grid)
          rows.push_back(run_point(s, nu, mesh, [&] {
            return newton_run(mesh, spec.material(nu), s, spec.load, spec.newton);
          }));
      break;
    }
    case Study::Distortion:
    case Study::LinearDistortion: {
      const bool linear = spec.study == Study::LinearDistortion;
      const MaterialParams mp =
          linear ? MaterialParams::from_E_nu(spec.E, spec.nu) : spec.material(spec.nu);
      BoxMeshParams base = spec.mesh;
      base.nx <<= spec.level;
      base.ny <<= spec.level;
      base.nz <<= spec.level;

      const auto solve_at = [&](IntegrationScheme s, double d) {
        StudyRow row;
        HexMesh mesh;
        try {
          mesh = distorted_beam_mesh(base, d);
        } catch (...) {
          row.scheme = s;
          row.param = d;
          record_failure(row);
          return row;
        }
        if (linear && !supports_linear(s)) {
          row.scheme = s;
          row.param = d;
          row.n_elements = static_cast<int>(mesh.n_elements());
          row.status = "unsupported";
          row.message = "scheme is not defined for linear elasticity";
          return row;
        }
        return run_point(s, d, mesh, [&] {
          if (linear) return RunOutcome{solve_linear(mesh, mp, s, body), 0};
          return newton_run(mesh, mp, s, spec.load, spec.newton);
        });
      };

      for (IntegrationScheme s : spec.schemes) {
        std::vector<StudyRow> scheme_rows;
        std::optional<StudyRow> reference;
        for (double d : spec.d_grid) {
          scheme_rows.push_back(solve_at(s, d));
          if (d == 0.0 && !reference) reference = scheme_rows.back();
        }
        if (!reference) reference = solve_at(s, 0.0);
        for (StudyRow& row : scheme_rows) {
          if (!row.ok()) continue;
          if (reference->ok() && reference->U_r > 0.0) {
            row.U_r_rel = 1.0 - row.U_r / reference->U_r;
          } else {
            row.status = "no_reference";
            row.message = "d = 0 reference run failed: " + reference->status;
          }
        }
        rows.insert(rows.end(), scheme_rows.begin(), scheme_rows.end());
      }
      break;
    }
  }
  return rows;
}

std::string csv_header(Study s) {
  switch (s) {
    case Study::Cantilever: return "scheme,level,u_tip_z,U_r,newton_iters_total,status";
    case Study::Refine:
      return "scheme,level,u_tip_z,U_r,newton_iters_total,status,n_elements";
    case Study::LoadSweep: return "scheme,load_factor,u_tip_z,status";
    case Study::NuSweep: return "scheme,nu,u_tip_z,status";
    case Study::Distortion:
    case Study::LinearDistortion: return "scheme,d,U_r,U_r_rel,status";
  }
  return {};
}

void write_csv(std::ostream& os, Study s, const std::vector<StudyRow>& rows) {
  std::string out = csv_header(s);
  out += '\n';
  for (const StudyRow& r : rows) {
    out += scheme_name(r.scheme);
    out += ',';
    switch (s) {
      case Study::Cantilever:
      case Study::Refine:
        out += std::to_string(static_cast<int>(r.param));
        out += ',';
        append_number(out, r.u_tip_z);
        out += ',';
        append_number(out, r.U_r);
        out += ',' + std::to_string(r.newton_iters) + ',' + r.status;
        if (s == Study::Refine) out += ',' + std::to_string(r.n_elements);
        break;
      case Study::LoadSweep:
      case Study::NuSweep:
        append_number(out, r.param);
        out += ',';
        append_number(out, r.u_tip_z);
        out += ',' + r.status;
        break;
      case Study::Distortion:
      case Study::LinearDistortion:
        append_number(out, r.param);
        out += ',';
        append_number(out, r.U_r);
        out += ',';
        append_number(out, r.U_r_rel);
        out += ',' + r.status;
        break;
    }
    out += '\n';
  }
  os << out;
}

void emit_csv(Study s, const std::vector<StudyRow>& rows, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("refusing to write an empty table");
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write_csv(f, s, rows);
  f.close();
  if (!f) throw std::runtime_error("error writing " + path);
}

void apply_config(StudySpec& spec, std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& ex) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + ex.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");

  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "study") {
        const auto s = parse_study(v.get<std::string>());
        if (!s || *s != spec.study)
          throw std::invalid_argument("config study \"" + v.get<std::string>() +
                                      "\" does not match \"" +
                                      std::string(study_name(spec.study)) + "\"");
      } else if (key == "schemes") {
        spec.schemes.clear();
        for (const auto& name : v) {
          const auto s = parse_scheme(name.get<std::string>());
          if (!s)
            throw std::invalid_argument("unknown scheme " + name.get<std::string>());
          spec.schemes.push_back(*s);
        }
      } else if (key == "nx") {
        spec.mesh.nx = v.get<int>();
      } else if (key == "ny") {
        spec.mesh.ny = v.get<int>();
      } else if (key == "nz") {
        spec.mesh.nz = v.get<int>();
      } else if (key == "dims") {
        const auto d = v.get<std::vector<double>>();
        if (d.size() != 3) throw std::invalid_argument("dims needs 3 entries");
        spec.mesh.dims = Vec3(d[0], d[1], d[2]);
      } else if (key == "level") {
        spec.level = v.get<int>();
      } else if (key == "refine_levels") {
        spec.refine_levels = v.get<int>();
      } else if (key == "E") {
        spec.E = v.get<double>();
      } else if (key == "nu") {
        spec.nu = v.get<double>();
      } else if (key == "bulk") {
        spec.bulk = parse_bulk(v.get<std::string>());
      } else if (key == "load") {
        spec.load = v.get<double>();
      } else if (key == "nu_grid") {
        spec.nu_grid = grid_from_json(v, "nu_grid");
      } else if (key == "d_grid") {
        spec.d_grid = grid_from_json(v, "d_grid");
      } else if (key == "load_grid") {
        spec.load_grid = grid_from_json(v, "load_grid");
      } else if (key == "load_steps") {
        spec.newton.n_load_steps = v.get<int>();
      } else if (key == "rel_tol") {
        spec.newton.rel_tol = v.get<double>();
      } else if (key == "abs_tol") {
        spec.newton.abs_tol = v.get<double>();
      } else if (key == "max_iters") {
        spec.newton.max_iters = v.get<int>();
      } else if (key == "out") {
        spec.out = v.get<std::string>();
      } else {
        throw std::invalid_argument("unknown config key \"" + key + "\"");
      }
    }
  } catch (const json::type_error& ex) {
    throw std::invalid_argument(std::string("config value has wrong type: ") + ex.what());
  }
}

std::string summary_json(const StudySpec& spec, const std::vector<StudyRow>& rows) {
  const auto num = [](double v) -> json { return std::isnan(v) ? json(nullptr) : json(v); };
  json j;
  j["study"] = study_name(spec.study);
  j["E"] = spec.E;
  j["nu"] = spec.nu;
  j["bulk"] = bulk_name(spec.bulk);
  j["load"] = spec.load;
  j["level"] = spec.level;
  j["mesh"] = {spec.mesh.nx, spec.mesh.ny, spec.mesh.nz};
  j["load_steps"] = spec.newton.n_load_steps;
  int failed = 0;
  double wall = 0.0;
  json jr = json::array();
  for (const StudyRow& r : rows) {
    failed += r.ok() ? 0 : 1;
    wall += r.wall_seconds;
    jr.push_back({{"scheme", scheme_name(r.scheme)},
                  {"param", r.param},
                  {"n_elements", r.n_elements},
                  {"u_tip_z", num(r.u_tip_z)},
                  {"U_r", num(r.U_r)},
                  {"U_r_rel", num(r.U_r_rel)},
                  {"newton_iters", r.newton_iters},
                  {"wall_seconds", r.wall_seconds},
                  {"status", r.status},
                  {"message", r.message}});
  }
  j["rows"] = std::move(jr);
  j["n_rows"] = rows.size();
  j["n_failed"] = failed;
  j["wall_seconds"] = wall;
  if (!spec.out.empty()) j["out"] = spec.out;
  return j.dump(2);
}

}  // namespace hexstab
