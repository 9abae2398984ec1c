#pragma once

// Numeric Hamiltonian flows and the prequantum harmonic oscillator spectrum.
//
// Flows integrate zdot = X_f(z), i.e. qdot_i = df/dp_i, pdot_i = -df/dq_i, with
// an adaptive Dormand-Prince 5(4) pair. A flow that leaves every compact set in
// finite time (an incomplete Hamiltonian vector field) is reported as BLOWUP.
//
// For H = (p^2 + q^2)/2 the prequantum operator in polar coordinates is
// i hbar d/dphi + (r^2/2) cos(2 phi); an eigenfunction obeys
//   dpsi/dphi = -(i/hbar) (E - (r^2/2) cos(2 phi)) psi
// and is single valued exactly when its angular monodromy psi(2pi)/psi(0) is 1.

#include <optional>
#include <vector>

#include "canonq/algebra.hpp"

namespace canonq {

struct FlowSample {
  double t = 0.0;
  std::vector<double> q;
  std::vector<double> p;
};

enum class FlowStatus { Completed, Blowup };

struct FlowResult {
  std::vector<FlowSample> samples;
  FlowStatus status = FlowStatus::Completed;
  /// Last accepted time before the integration broke down (BLOWUP only).
  std::optional<double> t_star_estimate;
  /// Bracket [last accepted t, last attempted t] around the breakdown (BLOWUP only).
  std::optional<std::pair<double, double>> t_star_bracket;
  double energy_drift = 0.0;

  const FlowSample& final_state() const { return samples.back(); }
};

struct FlowOptions {
  double step_floor = 1e-12;
  double overflow_guard = 1e12;
  double hbar = 1.0;  ///< value substituted for hbar in f
  std::size_t max_steps = 2'000'000;
};

/// Throws std::invalid_argument for t_max <= 0, tol <= 0, a wrong z0 length or
/// a non-real f.
FlowResult integrate_flow(const PhasePoly& f, const std::vector<double>& z0, double t_max, double tol,
                          const FlowOptions& options = {});

struct MonodromyResult {
  double E = 0.0;
  double r = 0.0;
  double hbar = 1.0;
  double defect = 0.0;          ///< |psi(2pi)/psi(0) - 1|
  double modulus_drift = 0.0;   ///< | |psi(2pi)| - |psi(0)| |
  bool single_valued = false;   ///< defect < tol
};

/// Throws std::invalid_argument for hbar <= 0 or tol <= 0.
MonodromyResult monodromy(double E, double r, double hbar, double tol);

struct SpectrumPoint {
  double E = 0.0;
  double defect = 0.0;
};

/// Scans E over [e_min, e_max] in steps of `step`, refines every local minimum of
/// the monodromy defect and keeps those with defect < tol. Output is sorted by E.
/// Throws std::invalid_argument for step <= 0 or e_max < e_min.
std::vector<SpectrumPoint> spectrum_scan(double e_min, double e_max, double step, double r, double hbar,
                                         double tol);

/// Lowest `count` eigenvalues of -hbar^2/2 d^2/dq^2 + q^2/2 from a second-order
/// finite-difference discretisation on [-half_width, half_width] with Dirichlet ends.
std::vector<double> schrodinger_oscillator_levels(int count, double hbar, double half_width = 10.0,
                                                  int grid = 2000);

}  // namespace canonq
