#include "canonq/sampling.hpp"

#include "canonq/weyl.hpp"

namespace canonq {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Rng case_rng(std::uint64_t seed, std::uint64_t index) { return Rng(derive_seed(seed, index)); }

Rational random_rational(Rng& rng, long bound) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, bound);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

GaussRational random_coefficient(Rng& rng, long bound, bool with_imaginary) {
  Rational re = random_rational(rng, bound);
  Rational im = with_imaginary ? random_rational(rng, bound) : Rational(0);
  if (sgn(re) == 0 && sgn(im) == 0) re = 1;
  return {re, im};
}

Exponents random_exponents(Rng& rng, int slots, unsigned degree) {
  Exponents e(static_cast<std::size_t>(slots), 0);
  std::uniform_int_distribution<int> pick(0, slots - 1);
  for (unsigned k = 0; k < degree; ++k) ++e[static_cast<std::size_t>(pick(rng))];
  return e;
}

namespace {

HbarPoly random_hbar_coefficient(Rng& rng, long bound, bool with_hbar, bool with_imaginary) {
  HbarPoly c(random_coefficient(rng, bound, with_imaginary));
  if (with_hbar && std::bernoulli_distribution(0.3)(rng))
    c += HbarPoly::term(1, random_coefficient(rng, bound, with_imaginary));
  return c;
}

}  // namespace

PhasePoly random_poly(Rng& rng, const PolySpec& spec) {
  PhasePoly f(spec.n);
  std::uniform_int_distribution<unsigned> terms(1, spec.max_terms);
  std::uniform_int_distribution<unsigned> degree(0, spec.max_degree);
  const unsigned count = terms(rng);
  for (unsigned t = 0; t < count; ++t) {
    f.add_term(random_exponents(rng, 2 * spec.n, degree(rng)),
               random_hbar_coefficient(rng, spec.coeff_bound, spec.with_hbar, spec.with_imaginary));
  }
  return f;
}

PhasePoly random_homogeneous(Rng& rng, int n, unsigned degree, unsigned max_terms, long bound) {
  PhasePoly f(n);
  std::uniform_int_distribution<unsigned> terms(1, max_terms);
  const unsigned count = terms(rng);
  for (unsigned t = 0; t < count; ++t)
    f.add_term(random_exponents(rng, 2 * n, degree), HbarPoly(random_coefficient(rng, bound, false)));
  return f;
}

PhasePoly random_pol2(Rng& rng, int n, unsigned max_terms, long bound) {
  PolySpec spec;
  spec.n = n;
  spec.max_degree = 2;
  spec.max_terms = max_terms;
  spec.coeff_bound = bound;
  return random_poly(rng, spec);
}

PhasePoly random_pol_inf_1(Rng& rng, int n, unsigned max_q_degree, unsigned max_terms, long bound) {
  PhasePoly f(n);
  std::uniform_int_distribution<unsigned> terms(1, max_terms);
  std::uniform_int_distribution<unsigned> degree(0, max_q_degree);
  std::uniform_int_distribution<int> momentum(-1, n - 1);  // -1: no momentum factor
  const unsigned count = terms(rng);
  for (unsigned t = 0; t < count; ++t) {
    Exponents e = random_exponents(rng, n, degree(rng));
    e.resize(static_cast<std::size_t>(2 * n), 0);
    const int j = momentum(rng);
    if (j >= 0) e[static_cast<std::size_t>(n + j)] = 1;
    f.add_term(e, HbarPoly(random_coefficient(rng, bound, false)));
  }
  return f;
}

PhasePoly random_pol1(Rng& rng, int n, long bound) {
  PhasePoly f = PhasePoly::constant(n, HbarPoly(GaussRational(random_rational(rng, bound))));
  for (int i = 0; i < n; ++i) {
    f += PhasePoly::q(n, i) * HbarPoly(GaussRational(random_rational(rng, bound)));
    f += PhasePoly::p(n, i) * HbarPoly(GaussRational(random_rational(rng, bound)));
  }
  return f;
}

WeylOp random_op(Rng& rng, const OpSpec& spec) {
  WeylOp a(spec.positions);
  std::uniform_int_distribution<unsigned> terms(1, spec.max_terms);
  std::uniform_int_distribution<unsigned> degree(0, spec.max_degree);
  const unsigned count = terms(rng);
  for (unsigned t = 0; t < count; ++t) {
    a.add_term(random_exponents(rng, 2 * spec.positions, degree(rng)),
               random_hbar_coefficient(rng, spec.coeff_bound, spec.with_hbar, spec.with_imaginary));
  }
  return a;
}

}  // namespace canonq
