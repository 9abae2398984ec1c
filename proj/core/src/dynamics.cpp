#include "canonq/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "canonq/poisson.hpp"

namespace canonq {

namespace {

/// PhasePoly flattened to double coefficients for repeated evaluation.
class CompiledPoly {
 public:
  CompiledPoly(const PhasePoly& f, double hbar) {
    for (const auto& [e, c] : f.terms()) {
      double coeff = 0.0;
      for (const auto& [k, g] : c.coefficients()) {
        if (!g.is_real()) throw std::invalid_argument("flow generator must have real coefficients");
        coeff += g.re().get_d() * std::pow(hbar, static_cast<int>(k));
      }
      terms_.push_back({coeff, e});
    }
  }

  double operator()(const std::vector<double>& z) const {
    double acc = 0.0;
    for (const auto& [c, e] : terms_) {
      double v = c;
      for (std::size_t k = 0; k < e.size(); ++k)
        for (unsigned j = 0; j < e[k]; ++j) v *= z[k];
      acc += v;
    }
    return acc;
  }

 private:
  std::vector<std::pair<double, Exponents>> terms_;
};

using Rhs = std::function<void(double, const std::vector<double>&, std::vector<double>&)>;

/// One Dormand-Prince 5(4) step; returns the 5th-order solution and the error estimate.
void dopri_step(const Rhs& rhs, double t, const std::vector<double>& y, double h, std::vector<double>& y_out,
                std::vector<double>& err) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                          b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  const std::size_t n = y.size();
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n);
  rhs(t, y, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
  rhs(t + c2 * h, tmp, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  rhs(t + c3 * h, tmp, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  rhs(t + c4 * h, tmp, k4);
  for (std::size_t i = 0; i < n; ++i)
    tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  rhs(t + c5 * h, tmp, k5);
  for (std::size_t i = 0; i < n; ++i)
    tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
  rhs(t + h, tmp, k6);
  y_out.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    y_out[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
  rhs(t + h, y_out, k7);
  err.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
}

struct IntegrationOutcome {
  bool completed = true;
  double t_last = 0.0;
  double h_last = 0.0;
};

/// Adaptive integration of y' = rhs(t, y) on [0, t_end]; `accept` sees every accepted state.
IntegrationOutcome integrate(const Rhs& rhs, std::vector<double> y, double t_end, double rtol, double atol,
                             double step_floor, double overflow_guard, std::size_t max_steps,
                             const std::function<void(double, const std::vector<double>&)>& accept) {
  double t = 0.0;
  double h = std::min(t_end, 1e-3);
  std::vector<double> y_new, err;
  accept(t, y);
  for (std::size_t step = 0; step < max_steps && t < t_end; ++step) {
    if (h < step_floor) return {false, t, h};
    const bool last = t + h >= t_end;
    const double h_try = last ? t_end - t : h;
    dopri_step(rhs, t, y, h_try, y_new, err);

    double norm = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (!std::isfinite(y_new[i]) || !std::isfinite(err[i])) finite = false;
      const double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      norm = std::max(norm, std::abs(err[i]) / scale);
    }
    if (!finite) {
      h = h_try * 0.2;
      continue;
    }
    if (norm <= 1.0) {
      t = last ? t_end : t + h_try;
      y = y_new;
      accept(t, y);
      for (double v : y)
        if (std::abs(v) > overflow_guard) return {false, t, h_try};
    }
    const double factor = norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
    h = h_try * factor;
  }
  return {t >= t_end, t, h};
}

}  // namespace

FlowResult integrate_flow(const PhasePoly& f, const std::vector<double>& z0, double t_max, double tol,
                          const FlowOptions& options) {
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const int n = f.n();
  if (z0.size() != static_cast<std::size_t>(2 * n))
    throw std::invalid_argument("z0 must have 2n = " + std::to_string(2 * n) + " entries");

  const HamiltonianField x = hamiltonian_field(f);
  std::vector<CompiledPoly> field;
  for (int i = 0; i < n; ++i) field.emplace_back(x.coeff_q[i], options.hbar);
  for (int i = 0; i < n; ++i) field.emplace_back(x.coeff_p[i], options.hbar);
  const CompiledPoly energy(f, options.hbar);

  Rhs rhs = [&field](double, const std::vector<double>& z, std::vector<double>& dz) {
    dz.resize(z.size());
    for (std::size_t k = 0; k < field.size(); ++k) dz[k] = field[k](z);
  };

  FlowResult result;
  const double e0 = energy(z0);
  auto accept = [&](double t, const std::vector<double>& z) {
    FlowSample s;
    s.t = t;
    s.q.assign(z.begin(), z.begin() + n);
    s.p.assign(z.begin() + n, z.end());
    result.samples.push_back(std::move(s));
    const double drift = std::abs(energy(z) - e0);
    if (std::isfinite(drift)) result.energy_drift = std::max(result.energy_drift, drift);
  };

  const IntegrationOutcome outcome = integrate(rhs, z0, t_max, tol, tol, options.step_floor,
                                               options.overflow_guard, options.max_steps, accept);
  if (!outcome.completed) {
    result.status = FlowStatus::Blowup;
    result.t_star_estimate = outcome.t_last;
    result.t_star_bracket = std::make_pair(outcome.t_last, std::min(t_max, outcome.t_last + outcome.h_last));
  }
  return result;
}

MonodromyResult monodromy(double E, double r, double hbar, double tol) {
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const double amplitude = 0.5 * r * r;
  Rhs rhs = [=](double phi, const std::vector<double>& psi, std::vector<double>& d) {
    // psi' = -(i/hbar) V psi with V = E - (r^2/2) cos(2 phi)
    const double v = (E - amplitude * std::cos(2.0 * phi)) / hbar;
    d.resize(2);
    d[0] = v * psi[1];
    d[1] = -v * psi[0];
  };
  const double integration_tol = std::clamp(tol * 1e-3, 1e-13, 1e-8);
  std::vector<double> final_state;
  integrate(rhs, {1.0, 0.0}, 2.0 * std::numbers::pi, integration_tol, integration_tol, 1e-14, 1e12,
            10'000'000, [&](double, const std::vector<double>& psi) { final_state = psi; });

  MonodromyResult out;
  out.E = E;
  out.r = r;
  out.hbar = hbar;
  out.defect = std::hypot(final_state[0] - 1.0, final_state[1]);
  out.modulus_drift = std::abs(std::hypot(final_state[0], final_state[1]) - 1.0);
  out.single_valued = out.defect < tol;
  return out;
}

std::vector<SpectrumPoint> spectrum_scan(double e_min, double e_max, double step, double r, double hbar,
                                         double tol) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  if (!(e_max >= e_min)) throw std::invalid_argument("empty energy range");

  const auto count = static_cast<std::size_t>(std::floor((e_max - e_min) / step + 1e-9)) + 1;
  std::vector<double> grid(count), defect(count);
  for (std::size_t k = 0; k < count; ++k) {
    grid[k] = std::min(e_max, e_min + static_cast<double>(k) * step);
    defect[k] = monodromy(grid[k], r, hbar, tol).defect;
  }

  auto objective = [&](double e) { return monodromy(e, r, hbar, tol).defect; };
  std::vector<SpectrumPoint> accepted;
  for (std::size_t k = 0; k < count; ++k) {
    const bool left_ok = k == 0 || defect[k] <= defect[k - 1];
    const bool right_ok = k + 1 == count || defect[k] <= defect[k + 1];
    if (!left_ok || !right_ok) continue;

    // Golden-section refinement on the neighbouring grid cells.
    double a = k == 0 ? grid[k] : grid[k - 1];
    double b = k + 1 == count ? grid[k] : grid[k + 1];
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
    double f1 = objective(x1), f2 = objective(x2);
    for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_phi * (b - a);
        f1 = objective(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (b - a);
        f2 = objective(x2);
      }
    }
    SpectrumPoint best{grid[k], defect[k]};
    for (const SpectrumPoint cand : {SpectrumPoint{x1, f1}, SpectrumPoint{x2, f2}})
      if (cand.defect < best.defect) best = cand;
    if (best.defect >= tol) continue;
    if (!accepted.empty() && std::abs(accepted.back().E - best.E) < 0.5 * step) {
      if (best.defect < accepted.back().defect) accepted.back() = best;
      continue;
    }
    accepted.push_back(best);
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const SpectrumPoint& x, const SpectrumPoint& y) { return x.E < y.E; });
  return accepted;
}

std::vector<double> schrodinger_oscillator_levels(int count, double hbar, double half_width, int grid) {
  if (count < 1 || grid < count) throw std::invalid_argument("need 1 <= count <= grid");
  if (!(hbar > 0.0) || !(half_width > 0.0)) throw std::invalid_argument("hbar and half_width must be positive");
  const double h = 2.0 * half_width / (grid + 1);
  const double kinetic = hbar * hbar / (2.0 * h * h);
  Eigen::VectorXd diag(grid);
  Eigen::VectorXd off(grid - 1);
  for (int k = 0; k < grid; ++k) {
    const double x = -half_width + (k + 1) * h;
    diag[k] = 2.0 * kinetic + 0.5 * x * x;
  }
  off.setConstant(-kinetic);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& values = solver.eigenvalues();
  return {values.data(), values.data() + count};
}

}  // namespace canonq
