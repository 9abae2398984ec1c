#include "canonq/algebra.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "canonq/errors.hpp"

namespace canonq {

// ---------------------------------------------------------------- GaussRational

GaussRational::GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussRational& GaussRational::operator+=(const GaussRational& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& rhs) {
  if (sgn(im_) == 0 && sgn(rhs.im_) == 0) {
    re_ *= rhs.re_;
    return *this;
  }
  Rational re = re_ * rhs.re_ - im_ * rhs.im_;
  Rational im = re_ * rhs.im_ + im_ * rhs.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  const Rational norm = rhs.re_ * rhs.re_ + rhs.im_ * rhs.im_;
  *this *= rhs.conj();
  re_ /= norm;
  im_ /= norm;
  return *this;
}

// ---------------------------------------------------------------- HbarPoly

HbarPoly::HbarPoly(const GaussRational& constant) {
  if (!constant.is_zero()) coeffs_.emplace(0u, constant);
}

HbarPoly HbarPoly::term(unsigned power, const GaussRational& c) {
  HbarPoly out;
  out.add_term(power, c);
  return out;
}

GaussRational HbarPoly::coefficient(unsigned power) const {
  auto it = coeffs_.find(power);
  return it == coeffs_.end() ? GaussRational{} : it->second;
}

bool HbarPoly::is_real() const {
  for (const auto& [k, c] : coeffs_)
    if (!c.is_real()) return false;
  return true;
}

int HbarPoly::degree() const { return coeffs_.empty() ? -1 : static_cast<int>(coeffs_.rbegin()->first); }

int HbarPoly::min_power() const { return coeffs_.empty() ? -1 : static_cast<int>(coeffs_.begin()->first); }

HbarPoly HbarPoly::conj() const {
  HbarPoly out;
  for (const auto& [k, c] : coeffs_) out.coeffs_.emplace(k, c.conj());
  return out;
}

HbarPoly HbarPoly::divide_by_hbar(unsigned k) const {
  if (!coeffs_.empty() && coeffs_.begin()->first < k)
    throw NotDivisible("coefficient not divisible by hbar^" + std::to_string(k));
  HbarPoly out;
  for (const auto& [power, c] : coeffs_) out.coeffs_.emplace(power - k, c);
  return out;
}

GaussRational HbarPoly::evaluate(const Rational& hbar) const {
  GaussRational acc;
  unsigned last = 0;
  Rational power = 1;
  for (const auto& [k, c] : coeffs_) {
    for (; last < k; ++last) power *= hbar;
    acc += c * GaussRational(power);
  }
  return acc;
}

void HbarPoly::add_term(unsigned power, const GaussRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(power, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

HbarPoly& HbarPoly::operator+=(const HbarPoly& rhs) {
  for (const auto& [k, c] : rhs.coeffs_) add_term(k, c);
  return *this;
}

HbarPoly& HbarPoly::operator-=(const HbarPoly& rhs) {
  for (const auto& [k, c] : rhs.coeffs_) add_term(k, -c);
  return *this;
}

HbarPoly operator*(const HbarPoly& a, const HbarPoly& b) {
  HbarPoly out;
  for (const auto& [ka, ca] : a.coeffs_)
    for (const auto& [kb, cb] : b.coeffs_) out.add_term(ka + kb, ca * cb);
  return out;
}

HbarPoly& HbarPoly::operator*=(const HbarPoly& rhs) { return *this = *this * rhs; }

HbarPoly& HbarPoly::operator*=(const GaussRational& rhs) {
  if (rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [k, c] : coeffs_) c *= rhs;
  return *this;
}

HbarPoly HbarPoly::operator-() const {
  HbarPoly out;
  for (const auto& [k, c] : coeffs_) out.coeffs_.emplace(k, -c);
  return out;
}

// ---------------------------------------------------------------- monomials

unsigned total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

bool GradedLex::operator()(const Exponents& a, const Exponents& b) const {
  const unsigned da = total_degree(a);
  const unsigned db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

// ---------------------------------------------------------------- PhasePoly

PhasePoly::PhasePoly(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("PhasePoly needs at least one degree of freedom");
}

PhasePoly PhasePoly::constant(int n, const HbarPoly& c) {
  PhasePoly out(n);
  out.add_term(Exponents(2 * n, 0), c);
  return out;
}

PhasePoly PhasePoly::q(int n, int index) {
  if (index < 0 || index >= n) throw std::out_of_range("q index out of range");
  Exponents e(2 * n, 0);
  e[index] = 1;
  return monomial(n, std::move(e));
}

PhasePoly PhasePoly::p(int n, int index) {
  if (index < 0 || index >= n) throw std::out_of_range("p index out of range");
  Exponents e(2 * n, 0);
  e[n + index] = 1;
  return monomial(n, std::move(e));
}

PhasePoly PhasePoly::hbar(int n) { return constant(n, HbarPoly::term(1)); }

PhasePoly PhasePoly::monomial(int n, Exponents exponents, const HbarPoly& c) {
  if (exponents.size() != static_cast<std::size_t>(2 * n))
    throw DimensionMismatch("monomial exponent vector must have length 2n");
  PhasePoly out(n);
  out.add_term(exponents, c);
  return out;
}

HbarPoly PhasePoly::coefficient(const Exponents& exponents) const {
  auto it = terms_.find(exponents);
  return it == terms_.end() ? HbarPoly{} : it->second;
}

int PhasePoly::degree() const {
  return terms_.empty() ? -1 : static_cast<int>(total_degree(terms_.rbegin()->first));
}

bool PhasePoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return total_degree(terms_.begin()->first) == total_degree(terms_.rbegin()->first);
}

bool PhasePoly::is_real() const {
  for (const auto& [e, c] : terms_)
    if (!c.is_real()) return false;
  return true;
}

void PhasePoly::add_term(const Exponents& exponents, const HbarPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exponents, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void PhasePoly::require_same_n(const PhasePoly& other) const {
  if (n_ != other.n_)
    throw DimensionMismatch("phase-space dimension mismatch: n=" + std::to_string(n_) +
                            " vs n=" + std::to_string(other.n_));
}

namespace {

PhasePoly differentiate(const PhasePoly& f, std::size_t slot) {
  PhasePoly out(f.n());
  for (const auto& [e, c] : f.terms()) {
    if (e[slot] == 0) continue;
    Exponents d = e;
    const long power = d[slot]--;
    out.add_term(d, c * GaussRational(power));
  }
  return out;
}

}  // namespace

PhasePoly PhasePoly::diff_q(int index) const {
  if (index < 0 || index >= n_) throw std::out_of_range("q index out of range");
  return differentiate(*this, static_cast<std::size_t>(index));
}

PhasePoly PhasePoly::diff_p(int index) const {
  if (index < 0 || index >= n_) throw std::out_of_range("p index out of range");
  return differentiate(*this, static_cast<std::size_t>(n_ + index));
}

PhasePoly PhasePoly::conj() const {
  PhasePoly out(n_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, c.conj());
  return out;
}

PhasePoly PhasePoly::pow(unsigned k) const {
  PhasePoly result = constant(n_, 1);
  PhasePoly base = *this;
  while (k > 0) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k > 0) base *= base;
  }
  return result;
}

GaussRational PhasePoly::evaluate(std::span<const Rational> point, const Rational& hbar) const {
  if (point.size() != static_cast<std::size_t>(2 * n_))
    throw DimensionMismatch("evaluation point must have length 2n");
  GaussRational acc;
  for (const auto& [e, c] : terms_) {
    Rational value = 1;
    for (std::size_t k = 0; k < e.size(); ++k)
      for (unsigned j = 0; j < e[k]; ++j) value *= point[k];
    acc += c.evaluate(hbar) * GaussRational(value);
  }
  return acc;
}

double PhasePoly::evaluate_real(std::span<const double> point, double hbar) const {
  if (point.size() != static_cast<std::size_t>(2 * n_))
    throw DimensionMismatch("evaluation point must have length 2n");
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double coeff = 0.0;
    for (const auto& [k, g] : c.coefficients()) coeff += g.re().get_d() * std::pow(hbar, k);
    double value = coeff;
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k] != 0) value *= std::pow(point[k], static_cast<int>(e[k]));
    acc += value;
  }
  return acc;
}

PhasePoly& PhasePoly::operator+=(const PhasePoly& rhs) {
  require_same_n(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

PhasePoly& PhasePoly::operator-=(const PhasePoly& rhs) {
  require_same_n(rhs);
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

PhasePoly operator*(const PhasePoly& a, const PhasePoly& b) {
  a.require_same_n(b);
  PhasePoly out(a.n_);
  Exponents e(2 * a.n_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

PhasePoly& PhasePoly::operator*=(const PhasePoly& rhs) { return *this = *this * rhs; }

PhasePoly& PhasePoly::operator*=(const HbarPoly& rhs) {
  if (rhs.is_zero()) {
    terms_.clear();
    return *this;
  }
  Terms out;
  for (auto& [e, c] : terms_) {
    HbarPoly product = c * rhs;
    if (!product.is_zero()) out.emplace(e, std::move(product));
  }
  terms_ = std::move(out);
  return *this;
}

PhasePoly PhasePoly::operator-() const {
  PhasePoly out(n_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

}  // namespace canonq
