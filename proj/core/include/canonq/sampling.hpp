#pragma once

// Seeded generators for random exact polynomials and operators. Each case of a
// property suite gets its own stream derived from (seed, case index), so the
// run is reproducible however the cases are scheduled.

#include <cstdint>
#include <random>

#include "canonq/algebra.hpp"

namespace canonq {

class WeylOp;
enum class OperatorSpace;

using Rng = std::mt19937_64;

/// SplitMix64 mix of (seed, index); used to fork an independent stream per case.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);
Rng case_rng(std::uint64_t seed, std::uint64_t index);

struct PolySpec {
  int n = 1;
  unsigned max_degree = 4;
  unsigned max_terms = 4;
  long coeff_bound = 5;      ///< numerators in [-bound, bound], denominators in [1, bound]
  bool with_hbar = false;    ///< coefficients may carry hbar^1 terms
  bool with_imaginary = false;
};

Rational random_rational(Rng& rng, long bound);
GaussRational random_coefficient(Rng& rng, long bound, bool with_imaginary);
Exponents random_exponents(Rng& rng, int slots, unsigned degree);

PhasePoly random_poly(Rng& rng, const PolySpec& spec);
/// Every monomial of total degree exactly `degree`.
PhasePoly random_homogeneous(Rng& rng, int n, unsigned degree, unsigned max_terms, long bound = 5);
/// Real element of span{1, q_i, p_i, q_i q_j, q_i p_j, p_i p_j}.
PhasePoly random_pol2(Rng& rng, int n, unsigned max_terms = 5, long bound = 5);
/// Real g(q) + sum_i h_i(q) p_i with deg g, deg h_i <= max_q_degree.
PhasePoly random_pol_inf_1(Rng& rng, int n, unsigned max_q_degree = 4, unsigned max_terms = 5,
                           long bound = 5);
/// Random element of the real span of {1, q_i, p_i}.
PhasePoly random_pol1(Rng& rng, int n, long bound = 5);

struct OpSpec {
  int positions = 1;
  unsigned max_degree = 3;  ///< total degree of a word x^a d^b
  unsigned max_terms = 3;
  long coeff_bound = 4;
  bool with_hbar = true;
  bool with_imaginary = true;
};

WeylOp random_op(Rng& rng, const OpSpec& spec);

}  // namespace canonq
