#pragma once

// Named self-checks across all modules. Each check pairs a closed form with an independent
// numerical path and compares against a fixed threshold.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "e2qes/invariants.hpp"
#include "e2qes/io.hpp"
#include "e2qes/observables.hpp"
#include "e2qes/sampling.hpp"

namespace e2qes {

struct CheckResult {
  enum class Compare { AtMost, AtLeast, Within };
  std::string name;
  double value;
  double lower;  // Within / AtLeast
  double upper;  // Within / AtMost
  Compare compare;

  bool pass() const {
    if (!std::isfinite(value)) return false;
    switch (compare) {
      case Compare::AtMost: return value <= upper;
      case Compare::AtLeast: return value >= lower;
      case Compare::Within: return value >= lower && value <= upper;
    }
    return false;
  }
};

inline CheckResult at_most(std::string name, double value, double bound) {
  return {std::move(name), value, 0.0, bound, CheckResult::Compare::AtMost};
}
inline CheckResult at_least(std::string name, double value, double bound) {
  return {std::move(name), value, bound, 0.0, CheckResult::Compare::AtLeast};
}
inline CheckResult within(std::string name, double value, double lo, double hi) {
  return {std::move(name), value, lo, hi, CheckResult::Compare::Within};
}

struct VerifyConfig {
  int truncation = 32;
  int quadrature = 2048;
  double tolerance = 1e-8;
  std::vector<double> probe_times{0.0, 0.3, 1.7};
  std::uint64_t seed = 20170501;
  int draws = 5;
  ModelParams model{0.5, 0.3, 2.3};
  std::vector<double> gammas{0.5, 1.0, 2.0};
};

/// Factored forms of the low-order recurrence polynomials, written out coefficient by coefficient.
inline std::vector<LambdaPolynomial> reference_cos_polynomials(const ModelParams& p) {
  const double z2 = p.zeta * p.zeta, N = p.N, b = p.beta;
  return {
      LambdaPolynomial({1.0}),
      LambdaPolynomial({0.0, 1.0}),
      LambdaPolynomial({-2.0 * z2 * (N - 1.0) * (b + N), -4.0, 1.0}),
      LambdaPolynomial({32.0 * z2 * (N - 1.0) * (b + N),
                        z2 * (2.0 * b * b + 7.0 * b - 3.0 * N * N - 3.0 * (b - 1.0) * N + 2.0) + 64.0, -20.0, 1.0}),
  };
}

inline std::vector<LambdaPolynomial> reference_sin_polynomials(const ModelParams& p) {
  const double z2 = p.zeta * p.zeta, N = p.N, b = p.beta;
  return {
      LambdaPolynomial(),
      LambdaPolynomial({1.0}),
      LambdaPolynomial({-4.0, 1.0}),
      LambdaPolynomial({z2 * (b - N + 2.0) * (2.0 * b + N + 1.0) + 64.0, -20.0, 1.0}),
      LambdaPolynomial({8.0 * z2 * (5.0 * N * N + 5.0 * (b - 1.0) * N - 12.0 - b * (12.0 * b + 29.0)) - 2304.0,
                        2.0 * z2 * (4.0 * b * b + 9.0 * b - N * N - b * N + N + 4.0) + 784.0, -56.0, 1.0}),
  };
}

namespace detail {

inline double algebra_check(int order) {
  const Generators g = build_generators(order);
  return std::max({interior_norm(commutator(g.u, g.J) - kI * g.v, kResidualPad),
                   interior_norm(commutator(g.v, g.J) + kI * g.u, kResidualPad),
                   interior_norm(commutator(g.u, g.v), kResidualPad)});
}

inline double adjoint_check(int order, Sampler& s, int draws) {
  double worst = 0.0;
  for (int i = 0; i < draws; ++i) {
    const PtClass cls = kPtClasses[static_cast<std::size_t>(s.uniform(0.0, 5.0))];
    const double lam_range = cls == PtClass::PT1 ? 0.3 : 1.2;
    const DysonParams p{cls, s.uniform(-0.8, 0.8), s.uniform(-lam_range, lam_range), s.uniform(-0.8, 0.8)};
    const MapSlots slots = map_slots(p, 0.0);
    const int big = order + kExpGuard;
    const OperatorMatrix eta = detail::eta_product(slots, big, false);
    const OperatorMatrix inv = detail::eta_product(slots, big, true);
    const Generators gb = build_generators(big);
    const Generators gs = build_generators(order);
    for (Generator gen : {Generator::J, Generator::u, Generator::v}) {
      const auto c = adjoint_closed_form(gen, slots);
      const OperatorMatrix& x = gen == Generator::J ? gb.J : gen == Generator::u ? gb.u : gb.v;
      const OperatorMatrix direct = crop(eta * x * inv, order);
      const OperatorMatrix closed = realize(E2Element::linear(c[0], c[1], c[2]), gs);
      worst = std::max(worst, interior_norm(direct - closed, kResidualPad));
    }
  }
  return worst;
}

}  // namespace detail

inline std::vector<CheckResult> run_verification(const VerifyConfig& cfg) {
  std::vector<CheckResult> out;
  const int M = cfg.truncation;
  const TimeFunction t = TimeFunction::time();
  const std::vector<TimeFunction> lambdas{0.5 * t, sin(t)};
  Sampler sampler(cfg.seed);

  // algebra
  out.push_back(at_most("algebra.commutators", detail::algebra_check(M), 1e-14));
  {
    const Generators g = build_generators(M);
    out.push_back(at_most("algebra.casimir_identity",
                          interior_norm(casimir(g) - OperatorMatrix::identity(g.J.basis()), 2), 1e-14));
  }

  // dyson
  out.push_back(at_most("dyson.adjoint_actions", detail::adjoint_check(M, sampler, 50), 1e-10));
  {
    const MetricModel mm = MetricModel::from(cfg.model);
    const CoefficientSet H = metric_hamiltonian(mm);
    double worst = 0.0, control = INFINITY, energy = 0.0;
    for (const auto& lam : lambdas) {
      const DysonParams p = metric_dyson_params(mm, lam);
      DysonParams flipped = p;
      flipped.rho = -p.rho;
      const CoefficientSet h = metric_hermitian_hamiltonian(mm, lam);
      for (double tt : cfg.probe_times) {
        worst = std::max(worst, tdde_residual(H, h, p, tt, M));
        control = std::min(control, tdde_residual(H, h, flipped, tt, M));
        const OperatorMatrix a = energy_operator(H, p, tt, M);
        energy = std::max({energy, interior_norm(a - realize(metric_energy_operator(mm, lam), tt, M), kResidualPad),
                           interior_norm(a - similarity_matrix(h.evaluate(tt), p, tt, M, true), kResidualPad)});
      }
    }
    out.push_back(at_most("dyson.tdde_metric_model", worst, cfg.tolerance));
    out.push_back(at_least("dyson.tdde_flipped_rho_detected", control, 1e-2));
    out.push_back(at_most("dyson.energy_operator_two_paths", energy, cfg.tolerance));
  }
  for (PtClass cls : kPtClasses) {
    double worst = 0.0;
    bool hermitian = true;
    SolveOptions opts;
    opts.truncation = M;
    for (int i = 0; i < cfg.draws; ++i) {
      const ClassSample cs = sample_compliant(cls, sampler);
      const DysonSolution sol = solve_dyson(cls, cs.H, cs.free, opts);
      for (double tt : opts.probe_times) {
        worst = std::max(worst, tdde_residual(cs.H, sol.h_coeffs, sol.params, tt, M));
        hermitian = hermitian && is_hermitian(sol.h_coeffs, tt, M, 1e-10);
      }
    }
    out.push_back(at_most("dyson.class_solution." + to_string(cls), worst, cfg.tolerance));
    out.push_back(at_least("dyson.class_hermitian." + to_string(cls), hermitian ? 1.0 : 0.0, 1.0));
  }

  // qes
  {
    double poly = 0.0;
    for (int i = 0; i < 10; ++i) {
      const ModelParams p{sampler.uniform(0.1, 2.0), sampler.uniform(-0.5, 1.5), sampler.uniform(0.5, 6.0)};
      const auto P = recurrence_polynomials(Sector::Cos, 3, p);
      const auto Q = recurrence_polynomials(Sector::Sin, 4, p);
      const auto RP = reference_cos_polynomials(p);
      const auto RQ = reference_sin_polynomials(p);
      for (int n = 1; n <= 3; ++n) poly = std::max(poly, relative_coefficient_distance(P[n], RP[n]));
      for (int n = 2; n <= 4; ++n) poly = std::max(poly, relative_coefficient_distance(Q[n], RQ[n]));
    }
    out.push_back(at_most("qes.reference_polynomials", poly, 1e-12));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double gamma = sampler.uniform(0.0, 3.0);
      const double beta = sampler.uniform(0.0, 1.0);
      const double zeta = gamma / (1.0 + beta);
      for (auto [sec, lo, hi] : {std::tuple{Sector::Cos, 1, 3}, std::tuple{Sector::Sin, 2, 4}}) {
        for (int n = lo; n <= hi; ++n) {
          const auto roots = quantization_eigenvalues(sec, n, zeta, beta).lambdas;
          const auto exact = closed_form_eigenvalues(sec, n, gamma);
          for (std::size_t k = 0; k < exact.size(); ++k) worst = std::max(worst, std::abs(roots[k] - exact[k]));
        }
      }
    }
    out.push_back(at_most("qes.closed_form_roots", worst, 1e-10));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      const double zeta = sampler.uniform(0.1, 2.0), beta = sampler.uniform(-0.5, 1.5);
      for (Sector sec : {Sector::Cos, Sector::Sin})
        for (int n = 1; n <= 4; ++n)
          for (int ell = 1; ell <= 2; ++ell)
            worst = std::max(worst, factorization_residual(sec, n, ell, ModelParams::quantized(n, zeta, beta)));
    }
    out.push_back(at_most("qes.factorization", worst, 1e-12));
  }
  {
    double worst = 0.0;
    const int big = 64;
    for (auto [sec, n] : {std::pair{Sector::Cos, 2}, std::pair{Sector::Cos, 3}, std::pair{Sector::Sin, 3}}) {
      const QesSpectrum sp = quantization_eigenvalues(sec, n, cfg.model.zeta, cfg.model.beta);
      InvariantSpec is;
      is.model = sp.params;
      const OperatorMatrix I = invariant_H(is, big);
      for (double L : sp.lambdas) {
        const Vector psi = eigenfunction_series(sec, n, L, sp.params, Frame::H, 0.0, big);
        worst = std::max(worst, interior_vector_norm(I.basis(), I * psi - L * psi, kResidualPad) / psi.norm());
      }
    }
    out.push_back(at_most("qes.eigen_residual", worst, 1e-8));
  }

  // invariants
  {
    InvariantSpec is;
    is.model = cfg.model;
    out.push_back(at_most("invariants.symmetry", symmetry_residual(is, M), 1e-10));
    double lr = 0.0, sim = 0.0;
    for (const auto& lam : lambdas) {
      InvariantSpec ih = is;
      ih.frame = Frame::h;
      ih.lambda = lam;
      for (double tt : cfg.probe_times) {
        lr = std::max(lr, lr_residual(ih, tt, M));
        sim = std::max(sim, similarity_residual(ih, tt, M));
      }
    }
    out.push_back(at_most("invariants.lewis_riesenfeld", lr, cfg.tolerance));
    out.push_back(at_most("invariants.similarity", sim, cfg.tolerance));
  }

  // observables
  {
    double gram = 0.0, expect = 0.0, angular = 0.0, tdse = 0.0;
    for (double gamma : cfg.gammas) {
      for (const auto& lam : lambdas) {
        const ThreeLevelSystem sys = ThreeLevelSystem::create(gamma / (1.0 + cfg.model.beta), cfg.model.beta, lam);
        for (double theta0 : {0.0, 1.1}) {
          const QuadratureGrid grid(cfg.quadrature, theta0);
          for (double tt : {0.0, 0.9}) {
            gram = std::max(gram, (gram_matrix(three_level_wavefunctions(sys, tt, grid), grid) -
                                   Matrix::Identity(3, 3)).cwiseAbs().maxCoeff());
            const auto a = closed_form_expectations(sys, tt);
            const auto b = quadrature_expectations(sys, tt, grid);
            for (int i = 0; i < 3; ++i) {
              expect = std::max({expect, std::abs(a.u[i] - b.u[i]), std::abs(a.v[i] - b.v[i])});
              angular = std::max(angular, std::abs(b.J[i]));
            }
          }
        }
        const QuadratureGrid grid(256);
        const CoefficientSet h = model_hermitian_hamiltonian(sys.model, lam);
        for (int i = 0; i < 3; ++i)
          for (double tt : {0.0, 0.4, 1.3})
            tdse = std::max(tdse, tdse_residual([&](double s) { return three_level_wavefunctions(sys, s, grid)[i]; },
                                                h, tt, grid));
      }
    }
    out.push_back(at_most("observables.orthonormality", gram, 1e-10));
    out.push_back(at_most("observables.expectations", expect, 1e-10));
    out.push_back(at_most("observables.angular_momentum", angular, 1e-10));
    out.push_back(at_most("observables.tdse", tdse, 1e-6));
  }
  {
    double diff = 0.0;
    const ModelParams& p = cfg.model;
    const auto c = quantization_eigenvalues(Sector::Cos, 2, p.zeta, p.beta, RootPolicy::ClosedFormWhereAvailable);
    const auto s = quantization_eigenvalues(Sector::Sin, 2, p.zeta, p.beta, RootPolicy::ClosedFormWhereAvailable);
    const ThreeLevelSystem sys = ThreeLevelSystem::create(p.zeta, p.beta, 0.0);
    diff = std::max({std::abs(c.energies[0] - (closed_form_eigenvalues(Sector::Cos, 2, p.gamma())[0] - p.beta * p.zeta * p.zeta)),
                     std::abs(c.energies[1] - (closed_form_eigenvalues(Sector::Cos, 2, p.gamma())[1] - p.beta * p.zeta * p.zeta)),
                     std::abs(s.energies[0] - sys.energy_zero())});
    out.push_back(at_most("observables.energies_exact", diff, 0.0));
  }
  {
    const auto rows = double_scaling_compare(1.0, {1e-1, 1e-2, 1e-3}, 64, 4, 0.3);
    double lo = INFINITY, hi = 0.0;
    for (int k = 0; k < 4; ++k) {
      for (int z = 0; z + 1 < 3; ++z) {
        const double ratio = rows[z * 4 + k].deviation / rows[(z + 1) * 4 + k].deviation;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
    }
    out.push_back(within("observables.double_scaling_min_ratio", lo, 3.0, 30.0));
    out.push_back(within("observables.double_scaling_max_ratio", hi, 3.0, 30.0));
  }
  {
    double worst = 0.0;
    for (double z : {0.5, 2.0, 10.0, 30.0})
      for (int n = 1; n <= 6; ++n)
        worst = std::max(worst, std::abs(bessel_i(n - 1, z) - bessel_i(n + 1, z) - 2.0 * n / z * bessel_i(n, z)) /
                                    bessel_i(n - 1, z));
    out.push_back(at_most("observables.bessel_recurrence", worst, 1e-10));
  }
  return out;
}

inline Json to_json(const std::vector<CheckResult>& checks) {
  Json arr = Json::array();
  bool all = true;
  for (const auto& c : checks) {
    Json j;
    j["name"] = c.name;
    j["value"] = c.value;
    switch (c.compare) {
      case CheckResult::Compare::AtMost: j["atMost"] = c.upper; break;
      case CheckResult::Compare::AtLeast: j["atLeast"] = c.lower; break;
      case CheckResult::Compare::Within: j["within"] = {c.lower, c.upper}; break;
    }
    j["pass"] = c.pass();
    all = all && c.pass();
    arr.push_back(std::move(j));
  }
  Json out;
  out["pass"] = all;
  out["checks"] = std::move(arr);
  return out;
}

}  // namespace e2qes
