#include "canonq/matrixlab.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "canonq/errors.hpp"

namespace canonq {

namespace {

IntMatrix2 mul(const IntMatrix2& x, const IntMatrix2& y) {
  IntMatrix2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) out[i][j] += x[i][k] * y[k][j];
  return out;
}

IntMatrix2 combine(const IntMatrix2& x, long long s, const IntMatrix2& y, long long t) {
  IntMatrix2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = s * x[i][j] + t * y[i][j];
  return out;
}

IntMatrix2 bracket(const IntMatrix2& x, const IntMatrix2& y) { return combine(mul(x, y), 1, mul(y, x), -1); }

long long max_entry(const IntMatrix2& x) {
  long long m = 0;
  for (const auto& row : x)
    for (long long v : row) m = std::max(m, v < 0 ? -v : v);
  return m;
}

using Coords = Eigen::Vector3d;  // (a, b, c) for a E+ + b E- + c H

Eigen::Matrix2d to_matrix(const Coords& x) {
  Eigen::Matrix2d m;
  m << x[2], x[0], x[1], -x[2];
  return m;
}

Coords to_coords(const Eigen::Matrix2d& m) { return Coords(m(0, 1), m(1, 0), m(0, 0)); }

Coords ad(const Coords& x, const Coords& y) {
  const Eigen::Matrix2d mx = to_matrix(x), my = to_matrix(y);
  return to_coords(mx * my - my * mx);
}

int rank_of(const std::vector<Coords>& span, double tol) {
  if (span.empty()) return 0;
  Eigen::MatrixXd m(3, static_cast<Eigen::Index>(span.size()));
  for (std::size_t k = 0; k < span.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = span[k];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(tol);
  return static_cast<int>(lu.rank());
}

void require_square(const ComplexMatrix& m, Eigen::Index dim, const char* name) {
  if (m.rows() != dim || m.cols() != dim)
    throw DimensionMismatch(std::string(name) + " must be " + std::to_string(dim) + "x" + std::to_string(dim));
}

}  // namespace

Sl2BasisResiduals check_sl2_basis() {
  const Sl2Basis s;
  Sl2BasisResiduals r;
  r.residuals[0] = max_entry(combine(bracket(s.H, s.E_plus), 1, s.E_plus, -2));
  r.residuals[1] = max_entry(combine(bracket(s.H, s.E_minus), 1, s.E_minus, 2));
  r.residuals[2] = max_entry(combine(bracket(s.E_plus, s.E_minus), 1, s.H, -1));
  return r;
}

int simplicity_probe(double a, double b, double c, double tol) {
  if (a == 0.0 && b == 0.0 && c == 0.0) throw std::invalid_argument("simplicity probe needs a nonzero element");
  const std::array<Coords, 3> generators{Coords(0, 0, 1), Coords(1, 0, 0), Coords(0, 1, 0)};
  std::vector<Coords> span{Coords(a, b, c).normalized()};
  for (std::size_t k = 0; k < span.size() && span.size() < 3; ++k) {
    for (const Coords& g : generators) {
      const Coords y = ad(g, span[k]);
      if (y.norm() < tol) continue;
      std::vector<Coords> trial = span;
      trial.push_back(y.normalized());
      if (rank_of(trial, tol) > rank_of(span, tol)) span = std::move(trial);
    }
  }
  return rank_of(span, tol);
}

std::string to_string(RepVerdict v) {
  switch (v) {
    case RepVerdict::VALID_REP: return "VALID_REP";
    case RepVerdict::FORCED_ZERO: return "FORCED_ZERO";
    case RepVerdict::NOT_A_REP: return "NOT_A_REP";
  }
  return "NOT_A_REP";
}

Sl2CheckReport antiunitary_rep_check(const ComplexMatrix& A, const ComplexMatrix& Bp, const ComplexMatrix& Bm,
                                     double tol) {
  const Eigen::Index dim = A.rows();
  require_square(A, dim, "A");
  require_square(Bp, dim, "B+");
  require_square(Bm, dim, "B-");

  Sl2CheckReport r;
  r.relation_residuals = {(A * Bp - Bp * A - 2.0 * Bp).norm(), (A * Bm - Bm * A + 2.0 * Bm).norm(),
                          (Bp * Bm - Bm * Bp - A).norm()};
  r.hermiticity_residuals = {(A + A.adjoint()).norm(), (Bp + Bp.adjoint()).norm(), (Bm + Bm.adjoint()).norm()};
  r.norms = {A.norm(), Bp.norm(), Bm.norm()};
  r.trace_b_plus_sq = (Bp * Bp).trace();
  r.trace_identity_rhs = 0.5 * (Bp * (A * Bp - Bp * A)).trace();

  bool ok = true;
  for (int k = 0; k < 3; ++k) ok = ok && r.relation_residuals[k] < tol && r.hermiticity_residuals[k] < tol;
  if (!ok) r.verdict = RepVerdict::NOT_A_REP;
  else if (r.norms[0] < kZeroThreshold && r.norms[1] < kZeroThreshold && r.norms[2] < kZeroThreshold)
    r.verdict = RepVerdict::VALID_REP;
  else r.verdict = RepVerdict::FORCED_ZERO;
  return r;
}

UncertaintyResult uncertainty_check(const ComplexMatrix& f, const ComplexMatrix& g, const ComplexVector& psi,
                                    double tol) {
  const Eigen::Index dim = psi.size();
  require_square(f, dim, "f");
  require_square(g, dim, "g");
  if (std::abs(psi.norm() - 1.0) > 1e-9) throw std::invalid_argument("state is not normalised");
  if ((f - f.adjoint()).norm() > tol || (g - g.adjoint()).norm() > tol)
    throw std::invalid_argument("observables must be Hermitean");

  auto expect = [&](const ComplexMatrix& m) { return psi.dot(m * psi); };
  const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix f0 = f - expect(f) * id;
  const ComplexMatrix g0 = g - expect(g) * id;

  UncertaintyResult r;
  r.lhs = expect(f0 * f0).real() * expect(g0 * g0).real();
  r.rhs = 0.25 * (std::norm(expect(f * g - g * f)) + std::norm(expect(f0 * g0 + g0 * f0)));
  r.holds = r.lhs >= r.rhs - tol;
  return r;
}

ComplexMatrix random_hermitian(Rng& rng, int dim) {
  std::normal_distribution<double> gauss;
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  return 0.5 * (m + m.adjoint());
}

ComplexMatrix random_anti_hermitian(Rng& rng, int dim) { return Complex(0, 1) * random_hermitian(rng, dim); }

ComplexVector random_state(Rng& rng, int dim) {
  std::normal_distribution<double> gauss;
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = Complex(gauss(rng), gauss(rng));
  return v.normalized();
}

UncertaintyTrials uncertainty_trials(int dim_min, int dim_max, unsigned trials, std::uint64_t seed, double tol) {
  if (dim_min < 1 || dim_max < dim_min) throw std::invalid_argument("invalid dimension range");
  UncertaintyTrials out;
  out.worst_margin = INFINITY;
  const int span = dim_max - dim_min + 1;
  for (unsigned t = 0; t < trials; ++t) {
    Rng rng = case_rng(seed, t);
    const int dim = dim_min + static_cast<int>(t % static_cast<unsigned>(span));
    const ComplexMatrix f = random_hermitian(rng, dim);
    const ComplexMatrix g = random_hermitian(rng, dim);
    const ComplexVector psi = random_state(rng, dim);
    const UncertaintyResult r = uncertainty_check(f, g, psi, tol);
    ++out.trials;
    if (r.holds) ++out.passed;
    out.worst_margin = std::min(out.worst_margin, r.lhs - r.rhs);
  }
  if (trials == 0) out.worst_margin = 0.0;
  return out;
}

RepMatrices read_rep(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next = [&]() -> std::istringstream {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return std::istringstream(line);
    }
    throw ParseError("unexpected end of matrix file", line_no + 1, 1);
  };

  long dim = 0;
  {
    auto s = next();
    std::string rest;
    if (!(s >> dim) || dim < 1 || (s >> rest)) throw ParseError("expected a positive dimension", line_no, 1);
  }
  auto read_matrix = [&]() {
    ComplexMatrix m(dim, dim);
    for (long i = 0; i < dim; ++i)
      for (long j = 0; j < dim; ++j) {
        auto s = next();
        double re = 0, im = 0;
        std::string rest;
        if (!(s >> re >> im) || (s >> rest)) throw ParseError("expected \"re im\"", line_no, 1);
        m(i, j) = Complex(re, im);
      }
    return m;
  };
  RepMatrices out;
  out.A = read_matrix();
  out.Bp = read_matrix();
  out.Bm = read_matrix();
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      throw ParseError("trailing data after three matrices", line_no, 1);
  }
  return out;
}

RepMatrices read_rep_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_rep(in);
}

}  // namespace canonq
