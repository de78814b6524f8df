#include "srcc/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace srcc::cli {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return s;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  // strtod rather than stod: subnormals written by write_csv must read back.
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (!t.empty() && end == t.c_str() + t.size() && std::isfinite(v)) return v;
  throw ConfigParse("key '" + key + "': expected a number, got '" + text + "'");
}

int parse_int(const std::string& key, const std::string& text) {
  const double v = parse_number(key, text);
  if (v != std::floor(v) || v < 0 || v > 1e9)
    throw ConfigParse("key '" + key + "': expected a non-negative integer, got '" + text + "'");
  return static_cast<int>(v);
}

Complex parse_complex(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> parts;
  std::string p;
  while (in >> p) parts.push_back(p);
  if (parts.empty() || parts.size() > 2)
    throw ConfigParse("key '" + key + "': expected '<re>' or '<re> <im>', got '" + text + "'");
  const double re = parse_number(key, parts[0]);
  const double im = parts.size() == 2 ? parse_number(key, parts[1]) : 0.0;
  return {re, im};
}

int parse_index(const std::string& key, const std::string& text, int lo, int hi) {
  const int v = parse_int(key, text);
  if (v < lo || v > hi)
    throw ConfigParse("key '" + key + "': index " + text + " outside " + std::to_string(lo) + ".." +
                      std::to_string(hi));
  return v;
}

void apply_model_key(ModelParams& p, const std::string& key, const std::string& value) {
  const std::string full = "model." + key;
  if (key == "delta_eps") p.delta_eps = parse_number(full, value);
  else if (key == "b") p.b = parse_number(full, value);
  else if (key == "w0") p.w0 = parse_number(full, value);
  else if (key == "u0") p.u0 = parse_number(full, value);
  else if (key == "d0") p.d0 = parse_number(full, value);
  else if (key == "f0") p.f0 = parse_number(full, value);
  else if (key == "t_pulse") p.t_pulse = parse_number(full, value);
  else if (key == "t_final") p.t_final = parse_number(full, value);
  else if (key == "n_steps") p.n_steps = static_cast<std::size_t>(parse_int(full, value));
  else if (key == "alpha") p.alpha = parse_number(full, value);
  else throw ConfigParse("unknown key '" + full + "'");
}

ModelParams preset_by_name(const std::string& key, const std::string& name) {
  const std::string n = lower(trim(name));
  if (n == "a") return ModelParams::preset_a();
  if (n == "b") return ModelParams::preset_b();
  throw ConfigParse("key '" + key + "': preset must be A or B, got '" + name + "'");
}

WaveTrajectory thin(const WaveTrajectory& traj, std::size_t stride) {
  if (stride <= 1) return traj;
  WaveTrajectory out;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    if (k % stride == 0 || k + 1 == traj.states.size()) {
      out.times.push_back(traj.times[k]);
      out.states.push_back(traj.states[k]);
    }
  }
  return out;
}

TimeSeries real_part(TimeSeries s) {
  for (auto& v : s.values) v = Complex(v.real(), 0.0);
  return s;
}

Metric metric_for(const ObservableSpec& o) {
  using K = ObservableSpec::Kind;
  return (o.kind == K::probability || o.kind == K::coherence) ? Metric::max_abs : Metric::rel_rms;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

}  // namespace

std::string ObservableSpec::name() const {
  switch (kind) {
    case Kind::dipole: return "dipole";
    case Kind::energy: return "energy";
    case Kind::level_population: return std::string("population_") + level;
    case Kind::probability: return "probability_" + std::to_string(i);
    case Kind::coherence: return "coherence_" + std::to_string(i) + "_" + std::to_string(j);
  }
  return "";
}

ObservableSpec ObservableSpec::parse(const std::string& text) {
  const std::string key = "run.observables";
  const std::string t = lower(trim(text));
  ObservableSpec o;
  if (t == "dipole") return o;
  if (t == "energy") {
    o.kind = Kind::energy;
    return o;
  }
  if (t.rfind("population_", 0) == 0 && t.size() == 12 &&
      std::string("jia").find(t.back()) != std::string::npos) {
    o.kind = Kind::level_population;
    o.level = t.back();
    return o;
  }
  if (t.rfind("probability_", 0) == 0) {
    o.kind = Kind::probability;
    o.i = parse_index(key, t.substr(12), 0, 8);
    return o;
  }
  if (t.rfind("coherence_", 0) == 0) {
    const std::string rest = t.substr(10);
    const auto sep = rest.find('_');
    if (sep != std::string::npos) {
      o.kind = Kind::coherence;
      o.i = parse_index(key, rest.substr(0, sep), 0, 8);
      o.j = parse_index(key, rest.substr(sep + 1), 0, 8);
      return o;
    }
  }
  throw ConfigParse("key '" + key + "': unknown observable '" + text + "'");
}

ScenarioConfig parse_config_text(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigParse(std::string("malformed config: ") + e.message() + " (line " +
                      std::to_string(e.line()) + ")");
  }

  ScenarioConfig cfg;
  const std::set<std::string> sections = {"model", "state", "run", "gates"};
  for (const auto& [name, node] : tree) {
    if (node.empty()) throw ConfigParse("key '" + name + "' is outside any section");
    if (!sections.count(name)) throw ConfigParse("unknown section '[" + name + "]'");
  }

  if (auto model = tree.get_child_optional("model")) {
    if (auto preset = model->get_optional<std::string>("preset"))
      cfg.params = preset_by_name("model.preset", *preset);
    for (const auto& [key, node] : *model)
      if (key != "preset") apply_model_key(cfg.params, key, node.data());
  }
  try {
    cfg.params.validate();
  } catch (const InvalidParameter& e) {
    throw ConfigParse(std::string("key 'model.") + e.what());
  }

  bool have_state = false;
  if (auto state = tree.get_child_optional("state")) {
    for (const auto& [key, node] : *state) {
      const std::string full = "state." + key;
      have_state = true;
      if (key == "s") {
        cfg.s = parse_complex(full, node.data());
      } else if (key.size() == 2 && key[0] == 'c' && key[1] >= '1' && key[1] <= '8') {
        cfg.c[key[1] - '0'] = parse_complex(full, node.data());
      } else {
        throw ConfigParse("unknown key '" + full + "'");
      }
    }
  }
  if (!have_state) throw ConfigParse("key 'state': no superposition coefficients given");

  bool have_observables = false;
  if (auto run = tree.get_child_optional("run")) {
    for (const auto& [key, node] : *run) {
      const std::string full = "run." + key;
      const std::string value = trim(node.data());
      if (key == "observables") {
        for (const auto& item : split_list(value)) cfg.observables.push_back(ObservableSpec::parse(item));
        have_observables = !cfg.observables.empty();
      } else if (key == "engines") {
        cfg.run_exact = cfg.run_sr = false;
        for (const auto& item : split_list(lower(value))) {
          if (item == "exact") cfg.run_exact = true;
          else if (item == "sr") cfg.run_sr = true;
          else throw ConfigParse("key '" + full + "': unknown engine '" + item + "'");
        }
      } else if (key == "projector_mode") {
        const std::string m = lower(value);
        if (m == "exact") cfg.projector_mode = ProjectorMode::exact;
        else if (m == "paper") cfg.projector_mode = ProjectorMode::paper;
        else throw ConfigParse("key '" + full + "': expected exact or paper");
      } else if (key == "output_dir") {
        cfg.output_dir = value;
      } else if (key == "output_stride") {
        cfg.output_stride = static_cast<std::size_t>(parse_int(full, value));
        if (cfg.output_stride == 0) throw ConfigParse("key '" + full + "': must be >= 1");
      } else {
        throw ConfigParse("unknown key '" + full + "'");
      }
    }
  }
  if (!have_observables) throw ConfigParse("key 'run.observables': at least one observable required");
  if (!cfg.run_exact && !cfg.run_sr) throw ConfigParse("key 'run.engines': at least one engine required");

  if (auto gates = tree.get_child_optional("gates")) {
    for (const auto& [key, node] : *gates) {
      const std::string full = "gates." + key;
      if (key == "rel_rms_pct") cfg.gates.rel_rms = parse_number(full, node.data()) / 100.0;
      else if (key == "max_abs") cfg.gates.max_abs = parse_number(full, node.data());
      else throw ConfigParse("unknown key '" + full + "'");
    }
  }
  return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigParse("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

SeriesComparison compare_series(const std::string& name, const TimeSeries& test,
                                const TimeSeries& reference, Metric metric, double gate) {
  if (test.size() != reference.size() || test.times.size() != reference.times.size())
    throw GridMismatch(name + ": series lengths differ (" + std::to_string(test.size()) + " vs " +
                       std::to_string(reference.size()) + ")");
  for (std::size_t k = 0; k < test.times.size(); ++k)
    if (std::abs(test.times[k] - reference.times[k]) > 1e-9 * std::max(1.0, std::abs(reference.times[k])))
      throw GridMismatch(name + ": time grids differ at sample " + std::to_string(k));

  SeriesComparison out;
  out.name = name;
  out.metric = metric;
  out.gate = gate;
  if (reference.size() == 0) throw GridMismatch(name + ": empty series");
  double sum = 0.0;
  double lo = reference.values.front().real();
  double hi = lo;
  for (std::size_t k = 0; k < test.size(); ++k) {
    const double dev = std::abs(test.values[k] - reference.values[k]);
    out.max_abs = std::max(out.max_abs, dev);
    sum += dev * dev;
    lo = std::min(lo, reference.values[k].real());
    hi = std::max(hi, reference.values[k].real());
  }
  out.rms = std::sqrt(sum / static_cast<double>(test.size()));
  if (hi > lo) out.rel_rms = out.rms / (hi - lo);
  if (metric == Metric::rel_rms)
    out.pass = out.rel_rms ? *out.rel_rms <= gate : out.max_abs <= 1e-12;
  else
    out.pass = out.max_abs <= gate;
  return out;
}

bool ComparisonReport::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
}

std::string ComparisonReport::format() const {
  std::ostringstream out;
  for (const auto& e : entries) {
    out << std::left << std::setw(18) << e.name << " metric="
        << (e.metric == Metric::rel_rms ? "rel_rms" : "max_abs") << " max_abs=" << fmt(e.max_abs)
        << " rms=" << fmt(e.rms) << " rel_rms=" << (e.rel_rms ? fmt(*e.rel_rms) : "undefined")
        << " gate=" << fmt(e.gate) << ' ' << (e.pass ? "PASS" : "FAIL") << '\n';
  }
  out << "overall " << (pass() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  ScenarioResult result;
  try {
    const Model model = build_model(config.params);
    const Superposition sup = Superposition::normalized(config.s, config.c);

    auto operator_for = [&](const ObservableSpec& o) -> ComplexMatrix {
      switch (o.kind) {
        case ObservableSpec::Kind::dipole: return model.dipole;
        case ObservableSpec::Kind::energy: return model.h0;
        case ObservableSpec::Kind::level_population: return level_population(model.basis, o.level);
        default: return {};
      }
    };

    if (config.run_exact) {
      const Spectrum spec = diagonalize(model.h0);
      const WaveTrajectory traj = thin(
          propagate(initial_state(spec, sup), config.params, model.h0, model.dipole), config.output_stride);
      for (const auto& o : config.observables) {
        TimeSeries s;
        if (o.kind == ObservableSpec::Kind::probability) s = real_part(coherence_exact(traj, spec, o.i, o.i));
        else if (o.kind == ObservableSpec::Kind::coherence) s = coherence_exact(traj, spec, o.i, o.j);
        else s = observable(traj, operator_for(o));
        result.exact[o.name()] = std::move(s);
      }
    }

    if (config.run_sr) {
      const GroundSolution ground = solve_ground(config.params, model.h0, model.exc);
      const EomSolution eom = build_eom(ground, model.h0, model.exc);
      const SrTrajectory traj = propagate_sr(init_sr(sup, eom), config.params, model.h0,
                                             model.dipole, model.exc, config.output_stride);
      for (const auto& o : config.observables) {
        TimeSeries s;
        if (o.kind == ObservableSpec::Kind::probability)
          s = probability_sr(traj, o.i, eom, model.exc, config.projector_mode);
        else if (o.kind == ObservableSpec::Kind::coherence)
          s = coherence_sr(traj, o.i, o.j, eom, model.exc, config.projector_mode);
        else
          s = sr_observable(traj, operator_for(o), model.exc);
        result.sr[o.name()] = std::move(s);
      }
    }
  } catch (const ConfigParse&) {
    throw;
  } catch (const Error& e) {
    throw ScenarioFailure(std::string("scenario failed: ") + e.what());
  }

  if (config.run_exact && config.run_sr) {
    for (const auto& o : config.observables) {
      const Metric m = metric_for(o);
      TimeSeries test = result.sr.at(o.name());
      TimeSeries ref = result.exact.at(o.name());
      if (m == Metric::rel_rms) {
        test = real_part(std::move(test));
        ref = real_part(std::move(ref));
      }
      result.report.entries.push_back(compare_series(
          o.name(), test, ref, m, m == Metric::rel_rms ? config.gates.rel_rms : config.gates.max_abs));
    }
  }
  return result;
}

void write_csv(const std::string& path, const TimeSeries& series) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw ScenarioFailure("cannot write '" + path + "'");
  std::fputs("t_fs,value_re,value_im\n", f);
  for (std::size_t k = 0; k < series.size(); ++k)
    std::fprintf(f, "%.16e,%.16e,%.16e\n", units::au_to_fs(series.times[k]),
                 series.values[k].real(), series.values[k].imag());
  if (std::fclose(f) != 0) throw ScenarioFailure("cannot write '" + path + "'");
}

TimeSeries read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioFailure("cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || trim(line) != "t_fs,value_re,value_im")
    throw ScenarioFailure("'" + path + "': expected header t_fs,value_re,value_im");
  TimeSeries out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cols = split_list(line);
    if (cols.size() != 3) throw ScenarioFailure("'" + path + "' line " + std::to_string(row) + ": expected 3 columns");
    const std::string where = path + ":" + std::to_string(row);
    out.times.push_back(units::fs_to_au(parse_number(where, cols[0])));
    out.values.emplace_back(parse_number(where, cols[1]), parse_number(where, cols[2]));
  }
  return out;
}

std::string dominant_configurations(const ComplexVector& state) {
  const Eigen::VectorXd w = state.cwiseAbs2();
  std::vector<int> order(static_cast<std::size_t>(w.size()));
  for (int k = 0; k < static_cast<int>(order.size()); ++k) order[static_cast<std::size_t>(k)] = k;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return w(a) > w(b); });
  std::string out;
  for (int k : order) {
    if (w(k) < 0.25 * w(order.front())) break;
    if (!out.empty()) out += ", ";
    out += std::to_string(k);
  }
  return out;
}

Tables compute_tables(const ModelParams& base, const std::vector<double>& alphas_ev) {
  Tables t;
  t.alphas_ev = alphas_ev;
  ModelParams p = base;
  p.alpha = 0.0;
  const Model model = build_model(p);
  const Spectrum spec = diagonalize(model.h0);
  t.exact_energies = spec.energies;
  for (Eigen::Index k = 0; k < spec.states.cols(); ++k)
    t.dominant_configs.push_back(dominant_configurations(spec.states.col(k)));
  t.amplitudes = solve_ground(p, model.h0, model.exc).t_amp;
  for (double a : alphas_ev) {
    p.alpha = a;
    const GroundSolution g = solve_ground(p, model.h0, model.exc);
    const EomCore core = solve_eom(jacobian(g, model.h0, model.exc));
    RealVector e(core.omegas.size() + 1);
    e(0) = g.energy;
    e.tail(core.omegas.size()) = core.omegas.array() + g.energy;
    t.regularized_energies.push_back(e);
    t.regularized_amplitudes.push_back(g.t_amp);
  }
  return t;
}

std::string format_energy_table(const Tables& t) {
  std::ostringstream out;
  out << std::left << std::setw(8) << "WF No." << std::setw(16) << "Energy (a.u.)" << std::setw(10)
      << "Config.";
  for (double a : t.alphas_ev) {
    std::ostringstream h;
    h << "E_N, alpha=" << a << " eV";
    out << std::setw(24) << h.str();
  }
  out << '\n' << std::fixed << std::setprecision(8);
  for (Eigen::Index n = 0; n < t.exact_energies.size(); ++n) {
    out << std::setw(8) << n << std::setw(16) << t.exact_energies(n) << std::setw(10)
        << t.dominant_configs[static_cast<std::size_t>(n)];
    for (const auto& col : t.regularized_energies) out << std::setw(24) << col(n);
    out << '\n';
  }
  return out.str();
}

std::string format_amplitude_table(const Tables& t) {
  std::ostringstream out;
  out << std::left << std::setw(16) << "Configuration" << std::setw(16) << "t_mu";
  for (double a : t.alphas_ev) {
    std::ostringstream h;
    h << "t'_mu, alpha=" << a << " eV";
    out << std::setw(24) << h.str();
  }
  out << '\n' << std::fixed << std::setprecision(8);
  for (Eigen::Index mu = 0; mu < t.amplitudes.size(); ++mu) {
    out << std::setw(16) << mu + 1 << std::setw(16) << t.amplitudes(mu);
    for (const auto& col : t.regularized_amplitudes) out << std::setw(24) << col(mu);
    out << '\n';
  }
  return out.str();
}

std::string resolve_output_dir(const std::string& fallback) {
  const char* env = std::getenv("SRCC_OUTPUT_DIR");
  return (env && *env) ? std::string(env) : fallback;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw ScenarioFailure("cannot write '" + path.string() + "'");
}

}  // namespace

int run_command(const std::string& config_path) {
  try {
    const ScenarioConfig cfg = parse_config_file(config_path);
    const std::filesystem::path dir = resolve_output_dir(cfg.output_dir);
    std::filesystem::create_directories(dir);
    const ScenarioResult result = run_scenario(cfg);
    for (const auto& [name, s] : result.exact) write_csv((dir / ("exact_" + name + ".csv")).string(), s);
    for (const auto& [name, s] : result.sr) write_csv((dir / ("sr_" + name + ".csv")).string(), s);
    const std::string report = result.report.format();
    write_text(dir / "report.txt", report);
    std::cout << report;
    return result.report.pass() ? kExitOk : kExitGateFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int tables_command(const std::string& preset, const std::vector<double>& alphas_ev,
                   const std::string& output_dir) {
  try {
    const ModelParams base = preset_by_name("--preset", preset);
    const Tables t = compute_tables(base, alphas_ev);
    const std::string energies = format_energy_table(t);
    const std::string amplitudes = format_amplitude_table(t);
    const std::filesystem::path dir = resolve_output_dir(output_dir);
    std::filesystem::create_directories(dir);
    const std::string tag = lower(trim(preset)) == "a" ? "A" : "B";
    write_text(dir / ("energies_" + tag + ".txt"), energies);
    write_text(dir / ("amplitudes_" + tag + ".txt"), amplitudes);
    std::cout << energies << '\n' << amplitudes;
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int compare_command(const std::string& path_a, const std::string& path_b, double gate_pct) {
  try {
    const TimeSeries a = read_csv(path_a);
    const TimeSeries b = read_csv(path_b);
    ComparisonReport report;
    report.entries.push_back(compare_series(std::filesystem::path(path_a).filename().string(), a, b,
                                            Metric::rel_rms, gate_pct / 100.0));
    std::cout << report.format();
    return report.pass() ? kExitOk : kExitGateFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace srcc::cli
