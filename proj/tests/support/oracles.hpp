#pragma once

// Independent reference implementations used by the tests. None of these call
// into the code path they check.

#include <random>
#include <vector>

#include "canonq/algebra.hpp"
#include "canonq/weyl.hpp"

namespace canonq::oracle {

/// Normal-orders a product by rewriting adjacent letters one at a time
/// (d_i x_i -> x_i d_i + 1, plus reordering of commuting letters), choosing the
/// next rewrite position at random. Returns the normal form as a WeylOp.
WeylOp rewrite_product(const WeylOp& a, const WeylOp& b, std::mt19937_64& strategy);

/// Applies a WeylOp to a polynomial wave function by literal differentiation.
/// Schrodinger: position k is q_k. PhaseSpace: positions 0..n-1 are q, n..2n-1 are p.
PhasePoly act(const WeylOp& op, const PhasePoly& psi);

/// Position and momentum generators applied directly: psi -> q_i psi and
/// psi -> -i hbar d psi / d q_i.
PhasePoly apply_q(int i, const PhasePoly& psi);
PhasePoly apply_p(int i, const PhasePoly& psi);

/// Central-difference Poisson bracket at a point (hbar = 1).
double numeric_bracket(const PhasePoly& f, const PhasePoly& g, const std::vector<double>& z, double h = 1e-4);

/// Exact rank of a rational matrix given as rows.
std::size_t exact_rank(std::vector<std::vector<Rational>> rows);

/// Dimension of the ideal of sl(2, Q) generated by a E+ + b E- + c H, in exact arithmetic.
int exact_sl2_ideal_dimension(const Rational& a, const Rational& b, const Rational& c);

}  // namespace canonq::oracle
