#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hexstab/element.hpp"
#include "hexstab/material.hpp"
#include "hexstab/mesh.hpp"
#include "hexstab/solver.hpp"

namespace hexstab {

enum class Study { Cantilever, Refine, LoadSweep, NuSweep, Distortion, LinearDistortion };

/// CLI/CSV name: cantilever, refine, load-sweep, nu-sweep, distortion,
/// linear-distortion.
std::string_view study_name(Study s);
std::optional<Study> parse_study(std::string_view name);

struct StudySpec {
  Study study = Study::Cantilever;
  std::vector<IntegrationScheme> schemes;
  BoxMeshParams mesh;        ///< level-0 mesh, 10 x 2 x 2 on 0.5 x 0.1 x 0.1 m
  int level = 0;             ///< refinement level of the mesh (all but refine)
  int refine_levels = 2;     ///< refine study runs levels 0..refine_levels
  double E = 200e9;
  double nu = 0.33;
  BulkConvention bulk = BulkConvention::OneMinusNu;
  double load = -10e9;       ///< x3 component of the body force, N/m^3
  std::vector<double> nu_grid;
  std::vector<double> d_grid;
  std::vector<double> load_grid;  ///< fractions of load
  NewtonConfig newton;
  std::string out;

  /// Defaults of each study. All studies use the cantilever setup
  /// (E = 200 GPa, nu = 0.33, K1 = E/(2(1+nu)), K2 = 0, f = (0,0,-10) GN/m^3)
  /// with these exceptions: cantilever runs on level 2; nu-sweep uses
  /// K = E/(3(1-2nu)) so that nu -> 1/2 is near-incompressible;
  /// linear-distortion loads with -1 GN/m^3.
  static StudySpec defaults(Study s);

  /// Material of one run at Poisson ratio nu (benchmark parametrization).
  MaterialParams material(double nu_value) const;
};

/// Parses "a:b:n" into n equally spaced values from a to b inclusive.
/// Throws std::invalid_argument on malformed input or n < 1.
std::vector<double> parse_grid(std::string_view text);

/// One result line: a (scheme, sweep point) pair.
struct StudyRow {
  IntegrationScheme scheme = IntegrationScheme::Full;
  /// Sweep coordinate: mesh level, load factor, nu or d.
  double param = 0.0;
  int n_elements = 0;
  double u_tip_z = std::numeric_limits<double>::quiet_NaN();
  double U_r = std::numeric_limits<double>::quiet_NaN();
  double U_r_rel = std::numeric_limits<double>::quiet_NaN();
  int newton_iters = 0;
  double wall_seconds = 0.0;
  /// "ok", or the failure kind: solve_failure, newton_divergence,
  /// element_inverted, unsupported, no_reference, error.
  std::string status = "ok";
  std::string message;

  bool ok() const { return status == "ok"; }
};

/// Runs every (scheme, sweep point) of the study. Failures are recorded in
/// the row status and do not stop the sweep. Rows are ordered by scheme, then
/// by sweep index. Distortion studies also solve d = 0 for the U_r reference
/// when the grid does not contain it.
std::vector<StudyRow> run_study(const StudySpec& spec);

/// Exact CSV header line of a study (no trailing newline).
std::string csv_header(Study s);

/// Writes header and rows. Numbers use shortest round-trip formatting with
/// '.' as decimal point, independent of locale.
void write_csv(std::ostream& os, Study s, const std::vector<StudyRow>& rows);

/// Throws std::invalid_argument for an empty table (nothing is written) and
/// std::runtime_error naming the path when the file cannot be written.
void emit_csv(Study s, const std::vector<StudyRow>& rows, const std::string& path);

/// Applies a JSON config document to spec. Keys mirror StudySpec: study,
/// schemes, nx, ny, nz, dims, level, refine_levels, E, nu, bulk, load,
/// nu_grid, d_grid, load_grid (arrays or "a:b:n" strings), load_steps,
/// rel_tol, abs_tol, max_iters, out. Unknown keys throw
/// std::invalid_argument.
void apply_config(StudySpec& spec, std::string_view json_text);

/// Machine-readable run summary (JSON text).
std::string summary_json(const StudySpec& spec, const std::vector<StudyRow>& rows);

}  // namespace hexstab
