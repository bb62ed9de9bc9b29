// Command-line front end: classify, solve-dyson, spectrum, wavefunctions, observables, verify,
// double-scaling. JSON in, JSON or CSV out.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "e2qes/e2qes.hpp"

namespace {

using namespace e2qes;

struct Options {
  std::string input;
  std::string output;
  std::optional<int> truncation;
  std::optional<int> quadrature;
  std::optional<double> tolerance;
  std::vector<double> probe_times;
};

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    write_file_atomic(o.output, text);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json require_input(const Options& o) {
  if (o.input.empty()) throw ParseError("--input is required for this command");
  return read_json_file(o.input);
}

std::vector<double> probe_times_or(const Options& o, const Json& cfg, const char* key, std::vector<double> fallback) {
  if (!o.probe_times.empty()) return o.probe_times;
  if (cfg.is_object() && cfg.contains(key)) return get_number_list(cfg, key, "config");
  return fallback;
}

Json numbers(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(x);
  return a;
}

// ------------------------------------------------------------------------------------------

int run_classify(const Options& o) {
  const Json cfg = require_input(o);
  CoefficientSet c;
  Json wrapper = Json::object();
  if (cfg.is_object() && cfg.contains("coefficients")) {
    check_keys(cfg, {"coefficients", "probeTimes"}, {"coefficients"}, "classify");
    c = parse_coefficient_set(cfg.at("coefficients"));
    wrapper = cfg;
  } else {
    c = parse_coefficient_set(cfg);
  }
  const auto times = probe_times_or(o, wrapper, "probeTimes", default_probe_times());
  Json out = Json::array();
  for (PtClass k : classify_pt(c, times)) out.push_back(to_string(k));
  emit(o, dump(out));
  return 0;
}

int run_solve(const Options& o) {
  const Json cfg = require_input(o);
  check_keys(cfg, {"class", "coefficients", "lambda", "tau", "probeTimes"}, {"class", "coefficients"}, "solve-dyson");
  if (!cfg.at("class").is_string()) throw ParseError("solve-dyson: 'class' must be a string");
  const PtClass cls = parse_pt_class(cfg.at("class").get<std::string>());
  const CoefficientSet H = parse_coefficient_set(cfg.at("coefficients"));
  FreeParameters free;
  if (cfg.contains("lambda")) free.lambda = parse_expression(cfg.at("lambda"), "solve-dyson.lambda");
  if (cfg.contains("tau")) free.tau = parse_expression(cfg.at("tau"), "solve-dyson.tau");
  SolveOptions opts;
  opts.probe_times = probe_times_or(o, cfg, "probeTimes", default_probe_times());
  if (o.truncation) opts.truncation = *o.truncation;
  if (o.tolerance) opts.tolerance = *o.tolerance;

  const DysonSolution sol = solve_dyson(cls, H, free, opts);
  Json out;
  out["class"] = to_string(cls);
  out["reading"] = sol.reading;
  out["freeParameters"] = sol.free_parameters;
  out["map"] = {{"tau", sol.params.tau.to_string()},
                {"lambda", sol.params.lambda.to_string()},
                {"rho", sol.params.rho.to_string()},
                {"lambdaImaginary", sol.params.lambda_imaginary()},
                {"tauImaginary", sol.params.tau_imaginary()}};
  out["h"] = to_json(sol.h_coeffs);
  Json constraints = Json::array();
  for (const auto& c : sol.constraints) constraints.push_back(c.name);
  out["constraints"] = constraints;
  Json readings = Json::array();
  for (const auto& r : sol.readings)
    readings.push_back({{"name", r.name}, {"maxResidual", r.max_residual}, {"hermitian", r.hermitian}, {"accepted", r.accepted}});
  out["readings"] = readings;
  Json residuals = Json::array();
  for (double t : opts.probe_times)
    residuals.push_back({{"t", t},
                         {"tdde", tdde_residual(H, sol.h_coeffs, sol.params, t, opts.truncation)},
                         {"hermitian", is_hermitian(sol.h_coeffs, t, opts.truncation, 1e-10)}});
  out["residuals"] = residuals;
  emit(o, dump(out));
  return 0;
}

struct SpectrumInput {
  Sector sector;
  int n_hat;
  double zeta, beta;
};

SpectrumInput parse_spectrum_input(const Json& cfg, std::initializer_list<std::string_view> extra, const char* ctx) {
  std::vector<std::string_view> allowed{"sector", "nHat", "zeta", "beta"};
  allowed.insert(allowed.end(), extra.begin(), extra.end());
  if (!cfg.is_object()) throw ParseError(std::string(ctx) + ": expected a JSON object");
  for (const auto& [key, _] : cfg.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ParseError(std::string(ctx) + ": unknown key '" + key + "'");
  for (const char* key : {"sector", "nHat", "zeta", "beta"})
    if (!cfg.contains(key)) throw ParseError(std::string(ctx) + ": missing key '" + key + "'");
  if (!cfg.at("sector").is_string()) throw ParseError(std::string(ctx) + ": 'sector' must be a string");
  return {parse_sector(cfg.at("sector").get<std::string>()), get_int(cfg, "nHat", ctx), get_number(cfg, "zeta", ctx),
          get_number(cfg, "beta", ctx)};
}

int run_spectrum(const Options& o) {
  const SpectrumInput in = parse_spectrum_input(require_input(o), {}, "spectrum");
  const QesSpectrum sp =
      quantization_eigenvalues(in.sector, in.n_hat, in.zeta, in.beta, RootPolicy::ClosedFormWhereAvailable);
  Json out;
  out["sector"] = to_string(sp.sector);
  out["nHat"] = sp.n_hat;
  out["zeta"] = sp.params.zeta;
  out["beta"] = sp.params.beta;
  out["lambdas"] = numbers(sp.lambdas);
  out["energies"] = numbers(sp.energies);
  emit(o, dump(out));
  return 0;
}

int run_wavefunctions(const Options& o) {
  const Json cfg = require_input(o);
  const SpectrumInput in = parse_spectrum_input(cfg, {"frame", "lambda", "t"}, "wavefunctions");
  Frame frame = Frame::H;
  if (cfg.contains("frame")) {
    const Json& f = cfg.at("frame");
    if (!f.is_string() || (f != "H" && f != "h")) throw ParseError("wavefunctions: 'frame' must be \"H\" or \"h\"");
    frame = f == "H" ? Frame::H : Frame::h;
  }
  double shift = 0.0;
  if (frame == Frame::h) {
    if (!cfg.contains("lambda")) throw ParseError("wavefunctions: the h frame needs 'lambda'");
    const TimeFunction lam = parse_expression(cfg.at("lambda"), "wavefunctions.lambda");
    shift = lam(cfg.contains("t") ? get_number(cfg, "t", "wavefunctions") : 0.0);
  } else if (cfg.contains("lambda") || cfg.contains("t")) {
    throw ParseError("wavefunctions: 'lambda' and 't' apply to the h frame only");
  }
  const int order = o.truncation.value_or(32);
  const QuadratureGrid grid(o.quadrature.value_or(256));
  if (order > grid.max_order()) throw PreconditionError("wavefunctions: truncation exceeds the quadrature resolution");

  const QesSpectrum sp = quantization_eigenvalues(in.sector, in.n_hat, in.zeta, in.beta);
  std::vector<std::string> header{"theta"};
  std::vector<Vector> samples;
  for (std::size_t k = 0; k < sp.lambdas.size(); ++k) {
    const Vector modes = eigenfunction_series(in.sector, in.n_hat, sp.lambdas[k], sp.params, frame, shift, order);
    samples.push_back(grid.from_modes(modes / std::sqrt(kTwoPi * modes.squaredNorm())));
    header.push_back("re_psi" + std::to_string(k));
    header.push_back("im_psi" + std::to_string(k));
  }
  CsvWriter csv(header);
  for (int i = 0; i < grid.size(); ++i) {
    std::vector<double> row{grid.node(i)};
    for (const auto& s : samples) {
      row.push_back(s(i).real());
      row.push_back(s(i).imag());
    }
    csv.numbers(row);
  }
  emit(o, csv.str());
  return 0;
}

int run_observables(const Options& o) {
  const Json cfg = require_input(o);
  check_keys(cfg, {"zeta", "beta", "lambda", "times"}, {"zeta", "beta", "lambda", "times"}, "observables");
  const ThreeLevelSystem sys =
      ThreeLevelSystem::create(get_number(cfg, "zeta", "observables"), get_number(cfg, "beta", "observables"),
                               parse_expression(cfg.at("lambda"), "observables.lambda"));
  const QuadratureGrid grid(o.quadrature.value_or(2048));
  CsvWriter csv({"t", "exp_u_plus", "exp_v_plus", "exp_J_plus", "exp_u_minus", "exp_v_minus", "exp_J_minus",
                 "exp_u_zero", "exp_v_zero", "exp_J_zero"});
  for (double t : get_number_list(cfg, "times", "observables")) {
    const ExpectationTable e = quadrature_expectations(sys, t, grid);
    std::vector<double> row{t};
    for (int i = 0; i < 3; ++i) row.insert(row.end(), {e.u[i], e.v[i], e.J[i]});
    csv.numbers(row);
  }
  emit(o, csv.str());
  return 0;
}

int run_verify(const Options& o) {
  VerifyConfig vc;
  if (!o.input.empty()) {
    const Json cfg = read_json_file(o.input);
    check_keys(cfg, {"truncation", "quadrature", "tolerance", "probeTimes", "seed", "draws", "model", "gammas"}, {},
               "verify");
    if (cfg.contains("truncation")) vc.truncation = get_int(cfg, "truncation", "verify");
    if (cfg.contains("quadrature")) vc.quadrature = get_int(cfg, "quadrature", "verify");
    if (cfg.contains("tolerance")) vc.tolerance = get_number(cfg, "tolerance", "verify");
    if (cfg.contains("probeTimes")) vc.probe_times = get_number_list(cfg, "probeTimes", "verify");
    if (cfg.contains("seed")) {
      if (!cfg.at("seed").is_number_unsigned()) throw ParseError("verify: 'seed' must be a non-negative integer");
      vc.seed = cfg.at("seed").get<std::uint64_t>();
    }
    if (cfg.contains("draws")) vc.draws = get_int(cfg, "draws", "verify");
    if (cfg.contains("gammas")) vc.gammas = get_number_list(cfg, "gammas", "verify");
    if (cfg.contains("model")) {
      const Json& m = cfg.at("model");
      check_keys(m, {"zeta", "beta", "N"}, {"zeta", "beta", "N"}, "verify.model");
      vc.model = {get_number(m, "zeta", "verify.model"), get_number(m, "beta", "verify.model"),
                  get_number(m, "N", "verify.model")};
    }
  }
  if (o.truncation) vc.truncation = *o.truncation;
  if (o.quadrature) vc.quadrature = *o.quadrature;
  if (o.tolerance) vc.tolerance = *o.tolerance;
  if (!o.probe_times.empty()) vc.probe_times = o.probe_times;
  if (vc.truncation < 8) throw PreconditionError("verify: truncation must be >= 8");
  if (vc.draws < 1) throw PreconditionError("verify: draws must be >= 1");

  const Json out = to_json(run_verification(vc));
  emit(o, dump(out));
  return out.at("pass").get<bool>() ? 0 : 1;
}

int run_double_scaling(const Options& o) {
  const Json cfg = require_input(o);
  check_keys(cfg, {"g", "beta", "zetas", "kLow"}, {"g", "beta", "zetas", "kLow"}, "double-scaling");
  const auto rows = double_scaling_compare(get_number(cfg, "g", "double-scaling"),
                                           get_number_list(cfg, "zetas", "double-scaling"), o.truncation.value_or(64),
                                           get_int(cfg, "kLow", "double-scaling"), get_number(cfg, "beta", "double-scaling"));
  CsvWriter csv({"zeta", "k", "eig_H", "eig_limit", "deviation"});
  for (const auto& r : rows) {
    // eig_H is reported as its real part; the imaginary part is folded into the deviation
    csv.row(std::vector<std::string>{format_double(r.zeta), std::to_string(r.k), format_double(r.eig_H.real()),
                                     format_double(r.eig_limit), format_double(r.deviation)});
  }
  emit(o, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-dependent quasi-exactly solvable E2 models"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--input", o.input, "input JSON file");
  app.add_option("--output", o.output, "output file (stdout if absent)");
  app.add_option("--truncation", o.truncation, "Fourier truncation order M")->check(CLI::Range(4, 4096));
  app.add_option("--quadrature", o.quadrature, "quadrature nodes K")->check(CLI::Range(4, 1 << 20));
  app.add_option("--tolerance", o.tolerance, "residual tolerance")->check(CLI::PositiveNumber);
  app.add_option("--probe-times", o.probe_times, "comma separated probe times")->delimiter(',');

  int (*handler)(const Options&) = nullptr;
  auto sub = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    app.add_subcommand(name, help)->callback([&handler, fn] { handler = fn; });
  };
  sub("classify", "PT classes of a coefficient set", run_classify);
  sub("solve-dyson", "Dyson map and Hermitian counterpart for one class", run_solve);
  sub("spectrum", "quantization eigenvalues and energies", run_spectrum);
  sub("wavefunctions", "sampled eigenfunctions on the theta grid", run_wavefunctions);
  sub("observables", "three-level expectation values over time", run_observables);
  sub("verify", "run every self-check", run_verify);
  sub("double-scaling", "deviation from the Mathieu limit", run_double_scaling);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return handler(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
