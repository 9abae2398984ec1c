#include "canonq/quantise.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "canonq/errors.hpp"
#include "canonq/lang.hpp"
#include "canonq/sampling.hpp"

namespace canonq {

namespace {

const HbarPoly kHalf{GaussRational(Rational(1, 2))};

HbarPoly i_hbar() { return HbarPoly::term(1, GaussRational::i()); }

HbarPoly rational(long num, long den = 1) { return HbarPoly(GaussRational(Rational(num, den))); }

WeylOp quantise_quadratic(int n, const PhasePoly& f) {
  WeylOp out(n);
  for (const auto& [e, c] : f.terms()) {
    WeylOp positions = WeylOp::identity(n);
    WeylOp momenta = WeylOp::identity(n);
    for (int i = 0; i < n; ++i) {
      positions *= pow(WeylOp::q_hat(n, i), e[i]);
      momenta *= pow(WeylOp::p_hat(n, i), e[n + i]);
    }
    out += (positions * momenta + momenta * positions) * kHalf * c;
  }
  return out;
}

WeylOp quantise_schrodinger_linear(int n, const PhasePoly& f) {
  // f = g(q) + sum_i h_i(q) p_i
  PhasePoly g = f;
  WeylOp out(n);
  for (int i = 0; i < n; ++i) {
    const PhasePoly h = f.diff_p(i);
    g -= h * PhasePoly::p(n, i);
    const WeylOp transport = WeylOp::of_position_poly(h.diff_q(i)) * kHalf +
                             WeylOp::of_position_poly(h) * WeylOp::derivative(n, i);
    out -= transport * i_hbar();
  }
  out += WeylOp::of_position_poly(g);
  return out;
}

WeylOp quantise_prequant(int n, const PhasePoly& f) {
  const int m = 2 * n;
  WeylOp flow(m, OperatorSpace::PhaseSpace);
  PhasePoly potential = f;
  for (int i = 0; i < n; ++i) {
    const PhasePoly dq = f.diff_q(i);
    const PhasePoly dp = f.diff_p(i);
    flow += WeylOp::multiplication(dq) * WeylOp::derivative(m, n + i, OperatorSpace::PhaseSpace);
    flow -= WeylOp::multiplication(dp) * WeylOp::derivative(m, i, OperatorSpace::PhaseSpace);
    potential -= dp * PhasePoly::p(n, i);
  }
  return flow * i_hbar() + WeylOp::multiplication(potential);
}

void require_domain(const QuantMap& map, const PhasePoly& f, std::string_view what) {
  if (f.n() != map.n)
    throw DimensionMismatch("map defined for n=" + std::to_string(map.n) + ", got n=" + std::to_string(f.n()));
  if (!subalgebra_member(f, map.domain()))
    throw DomainViolation(std::string(what) + " = " + to_string(f) + " is outside the domain " +
                          std::string(to_string(map.domain())) + " of the " +
                          std::string(to_string(map.kind)) + " map");
}

}  // namespace

std::string_view to_string(MapKind kind) {
  switch (kind) {
    case MapKind::Quadratic: return "quadratic";
    case MapKind::SchrodingerLinear: return "schrodinger";
    case MapKind::Prequant: return "prequant";
  }
  return "?";
}

MapKind parse_map_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "quadratic") return MapKind::Quadratic;
  if (lower == "schrodinger" || lower == "schrodinger-linear" || lower == "schrodinger_linear")
    return MapKind::SchrodingerLinear;
  if (lower == "prequant" || lower == "prequantisation") return MapKind::Prequant;
  throw std::invalid_argument("unknown quantisation map '" + std::string(name) + "'");
}

SubalgebraTag QuantMap::domain() const {
  switch (kind) {
    case MapKind::Quadratic: return SubalgebraTag::POL2;
    case MapKind::SchrodingerLinear: return SubalgebraTag::POL_INF_1;
    case MapKind::Prequant: return SubalgebraTag::POL;
  }
  return SubalgebraTag::POL;
}

OperatorSpace QuantMap::space() const {
  return kind == MapKind::Prequant ? OperatorSpace::PhaseSpace : OperatorSpace::Schrodinger;
}

int QuantMap::positions() const { return kind == MapKind::Prequant ? 2 * n : n; }

WeylOp QuantMap::position_operator(int index) const {
  return kind == MapKind::Prequant ? WeylOp::position(2 * n, index, OperatorSpace::PhaseSpace)
                                   : WeylOp::q_hat(n, index);
}

WeylOp QuantMap::momentum_operator(int index) const {
  if (kind != MapKind::Prequant) return WeylOp::p_hat(n, index);
  return WeylOp::derivative(2 * n, index, OperatorSpace::PhaseSpace) * HbarPoly::term(1, -GaussRational::i());
}

WeylOp apply_map(const QuantMap& map, const PhasePoly& f) {
  require_domain(map, f, "f");
  switch (map.kind) {
    case MapKind::Quadratic: return quantise_quadratic(map.n, f);
    case MapKind::SchrodingerLinear: return quantise_schrodinger_linear(map.n, f);
    case MapKind::Prequant: return quantise_prequant(map.n, f);
  }
  return WeylOp(map.positions(), map.space());
}

bool check_homomorphism(const QuantMap& map, const PhasePoly& f, const PhasePoly& g) {
  const PhasePoly fg = bracket(f, g);
  require_domain(map, f, "f");
  require_domain(map, g, "g");
  require_domain(map, fg, "{f,g}");
  try {
    return apply_map(map, fg) == lie_bracket(apply_map(map, f), apply_map(map, g));
  } catch (const NotDivisible&) {
    return false;
  }
}

// ---------------------------------------------------------------- GvH

GvhReport gvh_contradiction(bool hbar_symbolic) {
  const WeylOp q = WeylOp::q_hat(1, 0);
  const WeylOp p = WeylOp::p_hat(1, 0);
  const WeylOp q2 = q * q;
  const WeylOp p2 = p * p;

  // Squaring laws: Q(q^3) = q^3, Q(p^3) = p^3, Q(q^2 p) and Q(p^2 q) symmetrised.
  const WeylOp route_a = lie_bracket(q2 * q, p2 * p) * rational(1, 9);
  const WeylOp sym_q2p = (q2 * p + p * q2) * kHalf;
  const WeylOp sym_p2q = (p2 * q + q * p2) * kHalf;
  const WeylOp route_b = lie_bracket(sym_q2p, sym_p2q) * rational(1, 3);

  const PhasePoly cq = PhasePoly::q(1, 0);
  const PhasePoly cp = PhasePoly::p(1, 0);
  GvhReport report{route_a, route_b, route_a - route_b,
                   bracket(cq.pow(3), cp.pow(3)) * rational(1, 9),
                   bracket(cq * cq * cp, cp * cp * cq) * rational(1, 3)};
  if (!hbar_symbolic) {
    const Rational one = 1;
    report.route_a = report.route_a.substitute_hbar(one);
    report.route_b = report.route_b.substitute_hbar(one);
    report.discrepancy = report.discrepancy.substitute_hbar(one);
  }
  return report;
}

bool check_generalized_squaring(unsigned k, SquaringLaw which, unsigned bound) {
  const bool power_law = which == SquaringLaw::PositionPower || which == SquaringLaw::MomentumPower;
  if (k > bound) throw std::invalid_argument("exponent exceeds the configured bound");
  if (power_law && k < 1) throw std::invalid_argument("power laws need exponent >= 1");

  const WeylOp q = WeylOp::q_hat(1, 0);
  const WeylOp p = WeylOp::p_hat(1, 0);
  const WeylOp dilation = (q * p + p * q) * kHalf;
  const PhasePoly cq = PhasePoly::q(1, 0);
  const PhasePoly cp = PhasePoly::p(1, 0);
  const auto kk = static_cast<long>(k);

  switch (which) {
    case SquaringLaw::PositionPower: {
      const bool classical = bracket(cq.pow(k), cp) == cq.pow(k - 1) * rational(kk) &&
                             bracket(cq.pow(k), cq * cp) == cq.pow(k) * rational(kk);
      const bool shift = commutator(pow(q, k), p) == pow(q, k - 1) * (i_hbar() * rational(kk));
      const bool dilate = lie_bracket(pow(q, k), dilation) * rational(1, kk) == pow(q, k);
      return classical && shift && dilate;
    }
    case SquaringLaw::MomentumPower: {
      const bool classical = bracket(cq, cp.pow(k)) == cp.pow(k - 1) * rational(kk) &&
                             bracket(cq * cp, cp.pow(k)) == cp.pow(k) * rational(kk);
      const bool shift = commutator(q, pow(p, k)) == pow(p, k - 1) * (i_hbar() * rational(kk));
      const bool dilate = lie_bracket(dilation, pow(p, k)) * rational(1, kk) == pow(p, k);
      return classical && shift && dilate;
    }
    case SquaringLaw::PositionLinear: {
      const long factor = 2 * (kk + 1);
      const bool classical = bracket(cq.pow(k + 1), cp * cp) == cq.pow(k) * cp * rational(factor);
      const WeylOp target = (pow(q, k) * p + p * pow(q, k)) * kHalf;
      return classical && lie_bracket(pow(q, k + 1), p * p) * rational(1, factor) == target;
    }
    case SquaringLaw::MomentumLinear: {
      const long factor = 2 * (kk + 1);
      const bool classical = bracket(cq * cq, cp.pow(k + 1)) == cp.pow(k) * cq * rational(factor);
      const WeylOp target = (pow(p, k) * q + q * pow(p, k)) * kHalf;
      return classical && lie_bracket(q * q, pow(p, k + 1)) * rational(1, factor) == target;
    }
  }
  return false;
}

// ---------------------------------------------------------------- axiom suite

const AxiomResult* AxiomReport::find(std::string_view axiom) const {
  for (const auto& r : results)
    if (r.axiom == axiom) return &r;
  return nullptr;
}

bool AxiomReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.passed; });
}

namespace {

PhasePoly draw_domain_member(const QuantMap& map, Rng& rng) {
  switch (map.kind) {
    case MapKind::Quadratic: return random_pol2(rng, map.n);
    case MapKind::SchrodingerLinear: return random_pol_inf_1(rng, map.n);
    case MapKind::Prequant: {
      PolySpec spec;
      spec.n = map.n;
      spec.max_degree = 6;
      spec.max_terms = 3;
      return random_poly(rng, spec);
    }
  }
  return PhasePoly(map.n);
}

void fail_once(AxiomResult& r, const std::string& why) {
  if (!r.passed) return;
  r.passed = false;
  r.counterexample = why;
}

}  // namespace

AxiomReport check_axiom_suite(const QuantMap& map, unsigned samples, std::uint64_t seed) {
  AxiomReport report;
  report.kind = map.kind;
  report.n = map.n;
  report.samples = samples;
  report.seed = seed;

  AxiomResult linearity{"linearity", true, std::nullopt};
  AxiomResult unit{"unit", true, std::nullopt};
  AxiomResult symmetry{"symmetry", true, std::nullopt};
  AxiomResult homomorphism{"homomorphism", true, std::nullopt};
  AxiomResult consistency{"schrodinger-consistency", true, std::nullopt};

  const WeylOp one = apply_map(map, PhasePoly::constant(map.n, 1));
  if (one != WeylOp::identity(map.positions(), map.space()))
    fail_once(unit, "Q(1) = " + to_string(one));

  for (int i = 0; i < map.n; ++i) {
    const PhasePoly qi = PhasePoly::q(map.n, i);
    const PhasePoly pi = PhasePoly::p(map.n, i);
    const WeylOp qhat = apply_map(map, qi);
    const WeylOp phat = apply_map(map, pi);
    if (qhat != map.position_operator(i))
      fail_once(consistency, "Q(" + to_string(qi) + ") = " + to_string(qhat) + " is not multiplication");
    if (phat != map.momentum_operator(i))
      fail_once(consistency, "Q(" + to_string(pi) + ") = " + to_string(phat) + " is not -i*hbar*d/dq");
  }

  for (unsigned c = 0; c < samples; ++c) {
    Rng rng = case_rng(seed, c);
    const PhasePoly f = draw_domain_member(map, rng);
    const PhasePoly g = draw_domain_member(map, rng);
    const HbarPoly lambda(GaussRational(random_rational(rng, 7)));

    const WeylOp qf = apply_map(map, f);
    const WeylOp qg = apply_map(map, g);
    if (apply_map(map, f + g * lambda) != qf + qg * lambda)
      fail_once(linearity, "f = " + to_string(f) + ", g = " + to_string(g) + ", lambda = " + to_string(lambda));
    if (!is_symmetric(qf)) fail_once(symmetry, "Q(" + to_string(f) + ") = " + to_string(qf));
    if (!check_homomorphism(map, f, g))
      fail_once(homomorphism, "f = " + to_string(f) + ", g = " + to_string(g));
  }

  report.results = {linearity, unit, symmetry, homomorphism, consistency};
  return report;
}

}  // namespace canonq
