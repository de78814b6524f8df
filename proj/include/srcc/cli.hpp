#pragma once
// Scenario runner behind the command-line tool: config parsing, CSV I/O,
// series comparison and table generation.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srcc/exact.hpp"
#include "srcc/sr.hpp"

namespace srcc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitGateFailure = 2;

struct ObservableSpec {
  enum class Kind { dipole, energy, level_population, probability, coherence };
  Kind kind = Kind::dipole;
  char level = 'a';  // level_population
  int i = 0;         // probability, coherence
  int j = 0;         // coherence

  /// dipole, energy, population_a, probability_3, coherence_7_8
  std::string name() const;
  /// Parse the name form above. Throws ConfigParse.
  static ObservableSpec parse(const std::string& text);
};

struct Gates {
  double rel_rms = 0.01;  // dipole, energy, level populations
  double max_abs = 0.02;  // probabilities, coherences
};

struct ScenarioConfig {
  ModelParams params;
  Complex s{0.0, 0.0};
  std::map<int, Complex> c;
  std::vector<ObservableSpec> observables;
  bool run_exact = true;
  bool run_sr = true;
  ProjectorMode projector_mode = ProjectorMode::exact;
  std::string output_dir = ".";
  std::size_t output_stride = 1;
  Gates gates;
};

/// INI-style text:
///   [model]  preset = A|B, delta_eps, b, w0, u0, d0, f0, t_pulse, t_final, n_steps, alpha
///   [state]  s = <re> [<im>], c1 .. c8 = <re> [<im>]
///   [run]    observables, engines, projector_mode, output_dir, output_stride
///   [gates]  rel_rms_pct, max_abs
/// Unknown keys are rejected. Throws ConfigParse naming the offending key.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig parse_config_file(const std::string& path);

enum class Metric { rel_rms, max_abs };

struct SeriesComparison {
  std::string name;
  double max_abs = 0.0;
  double rms = 0.0;
  std::optional<double> rel_rms;  // empty when the reference series is constant
  Metric metric = Metric::rel_rms;
  double gate = 0.0;
  bool pass = false;
};

/// Deviations of `test` from `reference`. rel_rms is normalized by the
/// peak-to-peak range of Re(reference). Throws GridMismatch.
SeriesComparison compare_series(const std::string& name, const TimeSeries& test,
                                const TimeSeries& reference, Metric metric, double gate);

struct ComparisonReport {
  std::vector<SeriesComparison> entries;
  bool pass() const;
  std::string format() const;
};

struct ScenarioResult {
  std::map<std::string, TimeSeries> exact;
  std::map<std::string, TimeSeries> sr;
  ComparisonReport report;
};

ScenarioResult run_scenario(const ScenarioConfig& config);

/// Header t_fs,value_re,value_im; 17 significant digits.
void write_csv(const std::string& path, const TimeSeries& series);
TimeSeries read_csv(const std::string& path);

struct Tables {
  std::vector<double> alphas_ev;
  RealVector exact_energies;                  // 9
  std::vector<std::string> dominant_configs;  // 9
  std::vector<RealVector> regularized_energies;  // per alpha, 9
  RealVector amplitudes;                      // alpha = 0
  std::vector<RealVector> regularized_amplitudes;  // per alpha, 8
};

/// Determinant indices carrying at least a quarter of the largest weight,
/// ordered by weight, e.g. "6, 2".
std::string dominant_configurations(const ComplexVector& state);

Tables compute_tables(const ModelParams& base, const std::vector<double>& alphas_ev);
std::string format_energy_table(const Tables& tables);
std::string format_amplitude_table(const Tables& tables);

// Subcommands. Each returns a process exit code and reports errors on stderr.
int run_command(const std::string& config_path);
int tables_command(const std::string& preset, const std::vector<double>& alphas_ev,
                   const std::string& output_dir);
int compare_command(const std::string& path_a, const std::string& path_b, double gate_pct);

/// SRCC_OUTPUT_DIR if set, otherwise `fallback`.
std::string resolve_output_dir(const std::string& fallback);

}  // namespace srcc::cli
