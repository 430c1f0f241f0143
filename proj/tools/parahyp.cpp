#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "parahyp/experiments.hpp"
#include "parahyp/io.hpp"
#include "parahyp/norms.hpp"
#include "parahyp/random_fields.hpp"

namespace {

using namespace parahyp;

// Every knob of a run, flat and text-serializable: the echoed config file in
// the output directory re-runs to identical bytes.
struct RunConfig {
  std::string command;  // solve | experiment | suite | envelope
  std::string system = "burgers";
  int dim = 1;
  int n = 256;
  std::string scheme = "euler_reg";
  double epsilon = 1e-3;
  double T = 0.5;
  double s = 3.0;
  double inner_dt = 0.0;
  double nu = 1e-4;
  int diss_order = 1;
  int h_cut = 6;
  int gap = 8;
  std::string profile = "sharp";
  std::string quantization = "arg_lowpass";
  bool drop_zeroth = false;
  int monitor_every = 1;
  int store_every = 0;
  double blowup_factor = 1e6;
  int max_iterations = 12;
  double contraction_rtol = 1e-10;
  double cfl_fraction = 0.25;
  std::string experiment = "energy_growth";
  std::uint64_t seed = 42;
  std::string out = "out";
  bool emit_plotscript = false;
  std::string datum = "standard";
  double delta = 0.25;
  double delta_up = -1.0;  // < 0: symmetric (use delta)
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::pair<std::string, std::string>> serialize(
    const RunConfig& rc) {
  std::vector<std::pair<std::string, std::string>> kv;
  const auto put = [&](const char* k, const std::string& v) {
    kv.emplace_back(k, v);
  };
  const auto putd = [&](const char* k, double v) {
    kv.emplace_back(k, format_double(v));
  };
  const auto puti = [&](const char* k, long long v) {
    kv.emplace_back(k, std::to_string(v));
  };
  put("command", rc.command);
  put("system", rc.system);
  puti("dim", rc.dim);
  puti("n", rc.n);
  put("scheme", rc.scheme);
  putd("epsilon", rc.epsilon);
  putd("T", rc.T);
  putd("s", rc.s);
  putd("inner_dt", rc.inner_dt);
  putd("nu", rc.nu);
  puti("diss_order", rc.diss_order);
  puti("h_cut", rc.h_cut);
  puti("gap", rc.gap);
  put("profile", rc.profile);
  put("quantization", rc.quantization);
  put("drop_zeroth", rc.drop_zeroth ? "true" : "false");
  puti("monitor_every", rc.monitor_every);
  puti("store_every", rc.store_every);
  putd("blowup_factor", rc.blowup_factor);
  puti("max_iterations", rc.max_iterations);
  putd("contraction_rtol", rc.contraction_rtol);
  putd("cfl_fraction", rc.cfl_fraction);
  put("experiment", rc.experiment);
  put("seed", std::to_string(rc.seed));
  put("out", rc.out);
  put("emit_plotscript", rc.emit_plotscript ? "true" : "false");
  put("datum", rc.datum);
  putd("delta", rc.delta);
  putd("delta_up", rc.delta_up);
  return kv;
}

std::string echo_text(const RunConfig& rc) {
  std::string out = "# resolved run configuration; re-run with --config\n";
  for (const auto& kv : serialize(rc)) out += kv.first + " = " + kv.second + "\n";
  return out;
}

bool parse_bool(const std::string& v, const std::string& where) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(where + ": expected a boolean, got '" + v + "'");
}

void apply_config_file(RunConfig& rc, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = path + ":" + std::to_string(lineno);
    std::string text = line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    const std::size_t hash = text.find('#');
    if (hash != std::string::npos) text.erase(hash);
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    text.erase(text.begin(),
               std::find_if(text.begin(), text.end(), notspace));
    text.erase(std::find_if(text.rbegin(), text.rend(), notspace).base(),
               text.end());
    if (text.empty()) continue;
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError(where + ": expected key = value");
    std::string key = text.substr(0, eq), val = text.substr(eq + 1);
    key.erase(std::find_if(key.rbegin(), key.rend(), notspace).base(),
              key.end());
    val.erase(val.begin(), std::find_if(val.begin(), val.end(), notspace));
    if (key.empty()) throw ConfigError(where + ": empty key");

    try {
      if (key == "command") rc.command = val;
      else if (key == "system") rc.system = val;
      else if (key == "dim") rc.dim = std::stoi(val);
      else if (key == "n") rc.n = std::stoi(val);
      else if (key == "scheme") rc.scheme = val;
      else if (key == "epsilon") rc.epsilon = parse_double(val);
      else if (key == "T") rc.T = parse_double(val);
      else if (key == "s") rc.s = parse_double(val);
      else if (key == "inner_dt") rc.inner_dt = parse_double(val);
      else if (key == "nu") rc.nu = parse_double(val);
      else if (key == "diss_order") rc.diss_order = std::stoi(val);
      else if (key == "h_cut") rc.h_cut = std::stoi(val);
      else if (key == "gap") rc.gap = std::stoi(val);
      else if (key == "profile") rc.profile = val;
      else if (key == "quantization") rc.quantization = val;
      else if (key == "drop_zeroth") rc.drop_zeroth = parse_bool(val, where);
      else if (key == "monitor_every") rc.monitor_every = std::stoi(val);
      else if (key == "store_every") rc.store_every = std::stoi(val);
      else if (key == "blowup_factor") rc.blowup_factor = parse_double(val);
      else if (key == "max_iterations") rc.max_iterations = std::stoi(val);
      else if (key == "contraction_rtol") rc.contraction_rtol = parse_double(val);
      else if (key == "cfl_fraction") rc.cfl_fraction = parse_double(val);
      else if (key == "experiment") rc.experiment = val;
      else if (key == "seed") rc.seed = std::stoull(val);
      else if (key == "out") rc.out = val;
      else if (key == "emit_plotscript")
        rc.emit_plotscript = parse_bool(val, where);
      else if (key == "datum") rc.datum = val;
      else if (key == "delta") rc.delta = parse_double(val);
      else if (key == "delta_up") rc.delta_up = parse_double(val);
      else
        throw ConfigError(where + ": unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw ConfigError(where + ": cannot parse value '" + val + "' for '" +
                        key + "'");
    } catch (const InvalidArgument&) {
      throw ConfigError(where + ": cannot parse value '" + val + "' for '" +
                        key + "'");
    } catch (const std::out_of_range&) {
      throw ConfigError(where + ": value '" + val + "' out of range for '" +
                        key + "'");
    }
  }
}

Profile profile_from_string(const std::string& v) {
  if (v == "sharp") return Profile::sharp;
  if (v == "smooth") return Profile::smooth;
  throw ConfigError("profile: expected sharp|smooth, got '" + v + "'");
}

Quantization quant_from_string(const std::string& v) {
  if (v == "coeff_lowpass") return Quantization::coeff_lowpass;
  if (v == "arg_lowpass") return Quantization::arg_lowpass;
  if (v == "double_lowpass") return Quantization::double_lowpass;
  throw ConfigError(
      "quantization: expected coeff_lowpass|arg_lowpass|double_lowpass, "
      "got '" + v + "'");
}

SolveConfig solve_config(const RunConfig& rc) {
  SolveConfig sc;
  try {
    sc.scheme = scheme_from_string(rc.scheme);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  sc.epsilon = rc.epsilon;
  sc.T = rc.T;
  sc.s = rc.s;
  sc.inner_dt = rc.inner_dt;
  sc.nu = rc.nu;
  sc.diss_order = rc.diss_order;
  sc.h_cut = rc.h_cut;
  sc.para.gap = rc.gap;
  sc.para.profile = profile_from_string(rc.profile);
  sc.para.quantization = quant_from_string(rc.quantization);
  sc.para.drop_zeroth_order = rc.drop_zeroth;
  sc.monitor_every = rc.monitor_every;
  sc.store_states_every = rc.store_every;
  sc.blowup_factor = rc.blowup_factor;
  sc.max_iterations = rc.max_iterations;
  sc.contraction_rtol = rc.contraction_rtol;
  sc.cfl_fraction = rc.cfl_fraction;
  return sc;
}

Field make_datum(const RunConfig& rc, const GridSpec& g, int components) {
  if (rc.datum == "random") {
    RandomFieldSpec spec;
    spec.decay = rc.s + 1.0;
    return random_field(g, components, derive_seed(rc.seed, "cli-datum"),
                        spec);
  }
  const bool rough = rc.datum == "rough";
  if (!rough && rc.datum != "standard")
    throw ConfigError("datum: expected standard|rough|random, got '" +
                      rc.datum + "'");
  if (g.dim == 1) {
    const int nyq = g.nyquist();
    return Field::from_function(g, components, [&](double x, int c) {
      if (c != 0) return 0.5 * std::cos(x);
      double v = std::sin(x);
      if (rough && nyq > 17) v += 0.05 * std::sin(17.0 * x);
      if (rough && nyq > 53) v += 0.01 * std::sin(53.0 * x);
      return v;
    });
  }
  return Field::from_function2(g, components, [](double x, double y, int c) {
    return c == 0 ? std::sin(x) + 0.5 * std::sin(y) : 0.5 * std::cos(x);
  });
}

int thread_limit() {
  const char* env = std::getenv("PARAHYP_THREADS");
  if (!env) return 1;
  const int v = std::atoi(env);
  return v >= 1 ? v : 1;
}

int cmd_solve(const RunConfig& rc) {
  const HyperbolicSystem& sys = system_registry(rc.system);
  const GridSpec g(rc.dim, rc.n);
  if (sys.dim != g.dim)
    throw ConfigError("system '" + rc.system + "' is " +
                      std::to_string(sys.dim) + "D but dim=" +
                      std::to_string(g.dim) + " was requested");
  const SolveConfig sc = solve_config(rc);
  const Field u0 = make_datum(rc, g, sys.components);

  Trajectory traj;
  if (sc.scheme == Scheme::iteration) {
    auto [t, rep] = iteration_solve(sys, u0, sc);
    traj = std::move(t);
    std::cout << "iteration: passes=" << rep.iterations
              << " kappa=" << format_double(rep.kappa)
              << (rep.converged ? " converged" : " budget exhausted")
              << "\n";
  } else {
    traj = solve(sys, u0, sc);
  }
  write_trajectory_csv(traj, rc.out + "/trajectory.csv");
  write_state_dump(traj, rc.out + "/states.bin");
  if (rc.emit_plotscript) {
    std::vector<std::string> cols = {"t", "Hs", "L2", "A", "B", "intB"};
    write_plotscript(rc.out + "/trajectory.csv", cols);
  }
  std::cout << "solve " << rc.system << " n=" << rc.n << " scheme=" << rc.scheme
            << ": final t=" << format_double(traj.final_time())
            << " Hs=" << format_double(traj.diag.back().hs);
  if (traj.blown_up)
    std::cout << " BLOWUP at t=" << format_double(traj.blowup_time);
  std::cout << "\n";
  return traj.blown_up ? 1 : 0;
}

int cmd_envelope(const RunConfig& rc) {
  const HyperbolicSystem& sys = system_registry(rc.system);
  const GridSpec g(rc.dim, rc.n);
  const Field u0 = make_datum(rc, g, sys.components);
  const Profile prof = profile_from_string(rc.profile);
  const double dup = rc.delta_up > 0.0 ? rc.delta_up : rc.delta;
  const std::vector<double> a = shell_norms(u0, rc.s, prof);
  const FrequencyEnvelope env =
      envelope_from_shell_norms(a, rc.s, rc.delta, dup);
  write_envelope_csv(env, a, rc.out + "/envelope.csv");
  std::cout << "envelope: shells=" << a.size()
            << " tail0=" << format_double(tail(env, 0)) << " unresolved="
            << format_double(unresolved_shell_mass(u0, rc.s, prof)) << "\n";
  return 0;
}

int run_named_experiments(const RunConfig& rc,
                          const std::vector<std::string>& names) {
  HarnessConfig hc;
  hc.grid = GridSpec(rc.dim, rc.n);
  hc.s = rc.s;
  hc.seed = rc.seed;
  hc.solve = solve_config(rc);

  std::vector<ExperimentResult> results(names.size());
  const int workers =
      std::min<int>(thread_limit(), static_cast<int>(names.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < names.size(); ++i)
      results[i] = run_experiment(names[i], hc);
  } else {
    std::vector<std::future<void>> futs;
    for (int w = 0; w < workers; ++w)
      futs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < names.size(); i += workers)
          results[i] = run_experiment(names[i], hc);
      }));
    for (auto& f : futs) f.get();
  }

  bool all = true;
  for (const ExperimentResult& r : results) {
    const std::string path = write_experiment(r, rc.out, rc.emit_plotscript);
    std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << " -> " << path
              << "\n";
    all = all && r.pass;
  }
  write_summary(results, rc.out);
  return all ? 0 : 1;
}

int dispatch(const RunConfig& rc) {
  ensure_directory(rc.out);
  const std::string echo = echo_text(rc);
  atomic_write_text(rc.out + "/config.txt", echo);
  std::cout << echo;

  if (rc.command == "solve") return cmd_solve(rc);
  if (rc.command == "envelope") return cmd_envelope(rc);
  if (rc.command == "experiment") {
    const auto names = experiment_names();
    if (std::find(names.begin(), names.end(), rc.experiment) == names.end())
      throw ConfigError("experiment: unknown name '" + rc.experiment + "'");
    return run_named_experiments(rc, {rc.experiment});
  }
  if (rc.command == "suite") return run_named_experiments(rc, experiment_names());
  throw ConfigError("command: expected solve|experiment|suite|envelope, got '" +
                    rc.command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig rc;

  // The config file (if any) seeds the defaults; explicit flags then override.
  std::string config_path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) config_path = argv[i + 1];
    else if (arg.rfind("--config=", 0) == 0) config_path = arg.substr(9);
  }
  try {
    if (!config_path.empty()) apply_config_file(rc, config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{
      "Pseudospectral laboratory for first-order symmetric hyperbolic "
      "systems on the torus"};
  std::string config_opt;
  app.add_option("--config", config_opt,
                 "key = value file; flags given here override it");
  app.add_option("command", rc.command,
                 "solve | experiment | suite | envelope");
  app.add_option("--system", rc.system, "registered system name");
  app.add_option("--dim", rc.dim, "space dimension (1 or 2)");
  app.add_option("--n", rc.n, "grid points per axis (power of two >= 16)");
  app.add_option("--scheme", rc.scheme,
                 "euler_reg | iteration | parabolic | galerkin");
  app.add_option("--epsilon", rc.epsilon, "outer step for euler_reg");
  app.add_option("--T", rc.T, "time horizon");
  app.add_option("--s", rc.s, "Sobolev index");
  app.add_option("--inner-dt", rc.inner_dt, "inner RK4 step; 0 = auto CFL");
  app.add_option("--nu", rc.nu, "parabolic viscosity");
  app.add_option("--diss-order", rc.diss_order, "parabolic dissipation order");
  app.add_option("--h-cut", rc.h_cut, "Galerkin shell cutoff");
  app.add_option("--gap", rc.gap, "paraproduct low-high gap (octaves)");
  app.add_option("--profile", rc.profile, "sharp | smooth");
  app.add_option("--quantization", rc.quantization,
                 "coeff_lowpass | arg_lowpass | double_lowpass");
  app.add_flag("--drop-zeroth", rc.drop_zeroth,
               "paradifferential flow without the zeroth-order term");
  app.add_option("--monitor-every", rc.monitor_every, "diagnostic cadence");
  app.add_option("--store-every", rc.store_every,
                 "state snapshot cadence (0 = about 64 per run)");
  app.add_option("--blowup-factor", rc.blowup_factor,
                 "stop when Hs exceeds this multiple of the start");
  app.add_option("--max-iterations", rc.max_iterations,
                 "fixed-point iteration budget");
  app.add_option("--contraction-rtol", rc.contraction_rtol,
                 "fixed-point stop tolerance (relative to ||u0||_L2)");
  app.add_option("--cfl-fraction", rc.cfl_fraction, "auto step CFL fraction");
  app.add_option("--experiment", rc.experiment, "experiment name");
  app.add_option("--seed", rc.seed, "64-bit seed for all randomness");
  app.add_option("--out", rc.out, "output directory");
  app.add_flag("--emit-plotscript", rc.emit_plotscript,
               "write a gnuplot script next to each csv");
  app.add_option("--datum", rc.datum, "standard | rough | random");
  app.add_option("--delta", rc.delta, "envelope slack exponent");
  app.add_option("--delta-up", rc.delta_up,
                 "upward envelope slack; < 0 uses --delta");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return dispatch(rc);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
