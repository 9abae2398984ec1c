#pragma once

// First-class constraint analysis on flat phase space R^{2n}.
//
// A constraint set {phi_a} cuts out the surface P^ = {phi_a = 0}. For
// affine-linear constraints every question is decided exactly: brackets are
// constants, tangent spaces are rational subspaces and "vanishes on P^" is
// decided by evaluating on a grid inside the affine surface. For nonlinear
// constraints P^ is sampled numerically and weak vanishing is tested on the
// samples.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "canonq/algebra.hpp"

namespace canonq {

struct SamplingOptions {
  unsigned count = 64;
  std::uint64_t seed = 1;
  double residual_tol = 1e-9;
  double box = 5.0;  ///< random starts drawn from [-box, box]^{2n}
};

struct SurfaceSamples {
  std::vector<std::vector<double>> points;
  unsigned requested = 0;
  double max_residual = 0.0;
};

/// Random starts plus damped Gauss-Newton descent on sum phi_a^2. Returns the
/// points whose residual max |phi_a| is below options.residual_tol (possibly fewer
/// than requested). Throws NoPointsFound if none converge, std::invalid_argument for
/// count == 0 or an empty constraint list.
SurfaceSamples sample_surface(const std::vector<PhasePoly>& phis, const SamplingOptions& options = {});

struct ConstraintSet {
  int n = 1;
  std::vector<PhasePoly> phis;
  std::vector<std::vector<double>> surface_samples;
  double max_residual = 0.0;
  bool linear = false;  ///< every phi has degree <= 1
};

/// Builds the set; samples the surface unless every constraint is affine-linear.
ConstraintSet make_constraint_set(std::vector<PhasePoly> phis, const SamplingOptions& options = {});

struct BracketWitness {
  std::size_t alpha = 0;
  std::size_t beta = 0;
  std::vector<double> point;  ///< empty for exact (linear) witnesses
  double value = 0.0;
  std::string bracket;        ///< {phi_alpha, phi_beta} in canonical text
};

struct ConstraintReport {
  bool first_class = true;
  bool exact = false;  ///< decided by the linear path
  std::vector<std::vector<PhasePoly>> bracket_matrix;
  std::vector<BracketWitness> witnesses;
  std::optional<bool> coisotropic;  ///< linear path only
};

/// Throws std::invalid_argument when a nonlinear set carries no samples.
ConstraintReport first_class_check(const ConstraintSet& cs, double tol = 1e-6);

struct CoisotropyResult {
  bool coisotropic = false;
  std::vector<std::vector<Rational>> tangent;     ///< basis of T P^ (kernel of the differentials)
  std::vector<std::vector<Rational>> orthogonal;  ///< basis of the symplectic complement
};

/// Exact symplectic linear algebra with omega = dq^i ^ dp_i. Throws
/// std::invalid_argument for nonlinear input or linearly dependent differentials.
CoisotropyResult coisotropy_check_linear(const std::vector<PhasePoly>& phis, int n);

struct MembershipWitness {
  std::size_t alpha = 0;
  std::string multiplier;  ///< canonical text of m in {f, m phi_alpha}
  std::vector<double> point;
  double value = 0.0;
  std::string bracket;
};

struct MembershipResult {
  bool member = true;
  bool exact = false;
  std::vector<MembershipWitness> witnesses;
};

/// Lie idealiser test: {f, m phi_a} vanishes on P^ for every generator phi_a and
/// every monomial multiplier m of degree <= multiplier_degree.
MembershipResult idealiser_member(const PhasePoly& f, const ConstraintSet& cs, double tol = 1e-6,
                                  unsigned multiplier_degree = 2);

/// Strong centraliser test: {f, m phi_a} == 0 identically for every generator and
/// every monomial multiplier of degree <= multiplier_degree.
MembershipResult centraliser_member(const PhasePoly& f, const ConstraintSet& cs,
                                    unsigned multiplier_degree = 2);

/// Exact test that f vanishes on the affine surface cut out by linear phis.
/// Throws std::invalid_argument if the surface is empty or the phis are not linear.
bool vanishes_on_linear_surface(const PhasePoly& f, const std::vector<PhasePoly>& phis);

/// All monomials in 2n variables of total degree <= degree, constant first.
std::vector<PhasePoly> monomial_basis(int n, unsigned degree);

}  // namespace canonq
