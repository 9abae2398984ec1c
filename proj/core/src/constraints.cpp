#include "canonq/constraints.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "canonq/errors.hpp"
#include "canonq/lang.hpp"
#include "canonq/poisson.hpp"
#include "canonq/sampling.hpp"

namespace canonq {

namespace {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(Matrix& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.size() && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[row], a[pivot]);
    const Rational lead = a[row][col];
    for (auto& x : a[row]) x /= lead;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || sgn(a[r][col]) == 0) continue;
      const Rational factor = a[r][col];
      for (std::size_t c = 0; c < a[r].size(); ++c) a[r][c] -= factor * a[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Basis of {x : A x = 0} for A with `cols` columns.
Matrix nullspace(Matrix a, std::size_t cols) {
  const std::vector<std::size_t> pivots = row_reduce(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

struct AffineSurface {
  Vector origin;
  Matrix directions;
};

/// Gradient rows and constant terms of affine-linear real constraints.
void linear_data(const std::vector<PhasePoly>& phis, int n, Matrix& gradients, Vector& constants) {
  const auto dim = static_cast<std::size_t>(2 * n);
  for (const PhasePoly& phi : phis) {
    if (phi.n() != n) throw DimensionMismatch("constraints must share n");
    if (phi.degree() > 1) throw std::invalid_argument("constraint " + to_string(phi) + " is not linear");
    Vector row(dim, Rational(0));
    Rational c0 = 0;
    for (const auto& [e, c] : phi.terms()) {
      if (c.degree() > 0 || !c.is_real())
        throw std::invalid_argument("linear constraints need real hbar-free coefficients");
      const Rational value = c.coefficient(0).re();
      const auto it = std::find(e.begin(), e.end(), 1u);
      if (it == e.end()) c0 = value;
      else row[static_cast<std::size_t>(it - e.begin())] = value;
    }
    gradients.push_back(std::move(row));
    constants.push_back(std::move(c0));
  }
}

AffineSurface linear_surface(const std::vector<PhasePoly>& phis, int n) {
  const auto dim = static_cast<std::size_t>(2 * n);
  Matrix gradients;
  Vector constants;
  linear_data(phis, n, gradients, constants);

  Matrix augmented = gradients;
  for (std::size_t r = 0; r < augmented.size(); ++r) augmented[r].push_back(-constants[r]);
  const std::vector<std::size_t> pivots = row_reduce(augmented, dim + 1);
  if (!pivots.empty() && pivots.back() == dim) throw std::invalid_argument("constraint surface is empty");

  AffineSurface s;
  s.origin.assign(dim, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) s.origin[pivots[r]] = augmented[r][dim];
  s.directions = nullspace(gradients, dim);
  return s;
}

bool all_linear(const std::vector<PhasePoly>& phis) {
  return std::all_of(phis.begin(), phis.end(), [](const PhasePoly& p) { return p.degree() <= 1; });
}

std::vector<double> to_double(const Vector& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(x.get_d());
  return out;
}

}  // namespace

// ---------------------------------------------------------------- sampling

SurfaceSamples sample_surface(const std::vector<PhasePoly>& phis, const SamplingOptions& options) {
  if (options.count == 0) throw std::invalid_argument("sample count must be positive");
  if (phis.empty()) throw std::invalid_argument("no constraints given");
  const int n = phis.front().n();
  const auto dim = static_cast<std::size_t>(2 * n);
  const auto c = phis.size();

  std::vector<std::vector<PhasePoly>> gradient(c);
  for (std::size_t a = 0; a < c; ++a) {
    if (phis[a].n() != n) throw DimensionMismatch("constraints must share n");
    for (int i = 0; i < n; ++i) gradient[a].push_back(phis[a].diff_q(i));
    for (int i = 0; i < n; ++i) gradient[a].push_back(phis[a].diff_p(i));
  }

  auto residual = [&](const std::vector<double>& z, Eigen::VectorXd& f) {
    f.resize(static_cast<Eigen::Index>(c));
    for (std::size_t a = 0; a < c; ++a) f[static_cast<Eigen::Index>(a)] = phis[a].evaluate_real(z);
    return f.cwiseAbs().maxCoeff();
  };

  SurfaceSamples out;
  out.requested = options.count;
  Rng rng(options.seed);
  std::uniform_real_distribution<double> start(-options.box, options.box);
  const unsigned attempts = options.count * 10;
  for (unsigned attempt = 0; attempt < attempts && out.points.size() < options.count; ++attempt) {
    std::vector<double> z(dim);
    for (auto& x : z) x = start(rng);
    Eigen::VectorXd f;
    double res = residual(z, f);
    double damping = 1e-10;
    for (int it = 0; it < 200 && res >= options.residual_tol; ++it) {
      Eigen::MatrixXd jac(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(dim));
      for (std::size_t a = 0; a < c; ++a)
        for (std::size_t k = 0; k < dim; ++k)
          jac(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(k)) = gradient[a][k].evaluate_real(z);
      const Eigen::MatrixXd normal =
          jac * jac.transpose() + damping * Eigen::MatrixXd::Identity(jac.rows(), jac.rows());
      const Eigen::VectorXd step = jac.transpose() * normal.ldlt().solve(f);
      if (!step.allFinite() || step.norm() < 1e-300) break;
      std::vector<double> trial(dim);
      for (std::size_t k = 0; k < dim; ++k) trial[k] = z[k] - step[static_cast<Eigen::Index>(k)];
      Eigen::VectorXd f_trial;
      const double res_trial = residual(trial, f_trial);
      if (res_trial < res) {
        z = std::move(trial);
        f = std::move(f_trial);
        res = res_trial;
        damping = std::max(1e-14, damping * 0.1);
      } else {
        damping *= 100.0;
        if (damping > 1e12) break;
      }
    }
    if (res < options.residual_tol) {
      out.max_residual = std::max(out.max_residual, res);
      out.points.push_back(std::move(z));
    }
  }
  if (out.points.empty()) throw NoPointsFound("no points found on the constraint surface within the search box");
  return out;
}

ConstraintSet make_constraint_set(std::vector<PhasePoly> phis, const SamplingOptions& options) {
  if (phis.empty()) throw std::invalid_argument("no constraints given");
  ConstraintSet cs;
  cs.n = phis.front().n();
  for (const auto& phi : phis)
    if (phi.n() != cs.n) throw DimensionMismatch("constraints must share n");
  if (phis.size() > static_cast<std::size_t>(2 * cs.n))
    throw std::invalid_argument("more constraints than phase-space dimensions");
  cs.linear = all_linear(phis);
  cs.phis = std::move(phis);
  if (!cs.linear) {
    SurfaceSamples s = sample_surface(cs.phis, options);
    cs.surface_samples = std::move(s.points);
    cs.max_residual = s.max_residual;
  }
  return cs;
}

// ---------------------------------------------------------------- linear algebra

CoisotropyResult coisotropy_check_linear(const std::vector<PhasePoly>& phis, int n) {
  const auto dim = static_cast<std::size_t>(2 * n);
  Matrix gradients;
  Vector constants;
  linear_data(phis, n, gradients, constants);
  {
    Matrix copy = gradients;
    if (row_reduce(copy, dim).size() != gradients.size())
      throw std::invalid_argument("constraint differentials are linearly dependent");
  }

  CoisotropyResult out;
  out.tangent = nullspace(gradients, dim);
  // omega(X, Y) = X_q . Y_p - X_p . Y_q = X^T J Y with J = [[0, I], [-I, 0]].
  Matrix rows;
  for (const Vector& y : out.tangent) {
    Vector jy(dim, Rational(0));
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
      jy[i] = y[n + i];
      jy[n + i] = -y[i];
    }
    rows.push_back(std::move(jy));
  }
  out.orthogonal = nullspace(rows, dim);

  out.coisotropic = true;
  for (const Vector& x : out.orthogonal)
    for (const Vector& g : gradients) {
      Rational dot = 0;
      for (std::size_t k = 0; k < dim; ++k) dot += g[k] * x[k];
      if (sgn(dot) != 0) out.coisotropic = false;
    }
  return out;
}

bool vanishes_on_linear_surface(const PhasePoly& f, const std::vector<PhasePoly>& phis) {
  const int n = f.n();
  for (const auto& phi : phis)
    if (phi.n() != n) throw DimensionMismatch("constraints and function must share n");
  if (f.is_zero()) return true;
  const AffineSurface s = linear_surface(phis, n);
  const auto dim = static_cast<std::size_t>(2 * n);
  const std::size_t k = s.directions.size();
  const unsigned d = static_cast<unsigned>(f.degree());

  // Split by hbar power so that each component is tested as a function of z alone.
  std::map<unsigned, PhasePoly> components;
  for (const auto& [e, c] : f.terms())
    for (const auto& [power, g] : c.coefficients()) {
      auto it = components.try_emplace(power, PhasePoly(n)).first;
      it->second.add_term(e, HbarPoly(g));
    }

  // A polynomial of degree <= d on the surface vanishes iff it vanishes on the grid {0..d}^k.
  std::vector<unsigned> t(k, 0);
  Vector z(dim);
  const Rational zero_hbar = 0;
  while (true) {
    for (std::size_t c = 0; c < dim; ++c) {
      z[c] = s.origin[c];
      for (std::size_t j = 0; j < k; ++j) z[c] += Rational(t[j]) * s.directions[j][c];
    }
    for (const auto& [power, comp] : components)
      if (!comp.evaluate(z, zero_hbar).is_zero()) return false;
    std::size_t j = 0;
    for (; j < k; ++j) {
      if (t[j] < d) {
        ++t[j];
        break;
      }
      t[j] = 0;
    }
    if (j == k) break;
  }
  return true;
}

// ---------------------------------------------------------------- checks

ConstraintReport first_class_check(const ConstraintSet& cs, double tol) {
  ConstraintReport report;
  const std::size_t c = cs.phis.size();
  report.bracket_matrix.assign(c, std::vector<PhasePoly>(c, PhasePoly(cs.n)));
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = 0; b < c; ++b) report.bracket_matrix[a][b] = bracket(cs.phis[a], cs.phis[b]);

  if (cs.linear) {
    report.exact = true;
    for (std::size_t a = 0; a < c; ++a)
      for (std::size_t b = a + 1; b < c; ++b) {
        const PhasePoly& pb = report.bracket_matrix[a][b];
        if (pb.is_zero()) continue;
        report.first_class = false;
        const std::vector<double> origin(static_cast<std::size_t>(2 * cs.n), 0.0);
        report.witnesses.push_back({a, b, {}, pb.evaluate_real(origin), to_string(pb)});
      }
    try {
      report.coisotropic = coisotropy_check_linear(cs.phis, cs.n).coisotropic;
      report.first_class = report.first_class && *report.coisotropic;
    } catch (const std::invalid_argument&) {
      // Dependent differentials: the bracket test alone decides.
    }
    return report;
  }

  if (cs.surface_samples.empty()) throw std::invalid_argument("nonlinear constraint set without surface samples");
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = a + 1; b < c; ++b) {
      const PhasePoly& pb = report.bracket_matrix[a][b];
      for (const auto& z : cs.surface_samples) {
        const double v = pb.evaluate_real(z);
        if (std::abs(v) >= tol) {
          report.first_class = false;
          report.witnesses.push_back({a, b, z, v, to_string(pb)});
          break;
        }
      }
    }
  return report;
}

std::vector<PhasePoly> monomial_basis(int n, unsigned degree) {
  const auto slots = static_cast<std::size_t>(2 * n);
  std::vector<PhasePoly> out;
  for (unsigned d = 0; d <= degree; ++d) {
    // enumerate exponent vectors of total degree d in descending lexicographic order
    Exponents e(slots, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t slot, unsigned left) {
      if (slot + 1 == slots) {
        e[slot] = left;
        out.push_back(PhasePoly::monomial(n, e));
        return;
      }
      for (unsigned k = left + 1; k-- > 0;) {
        e[slot] = k;
        rec(slot + 1, left - k);
      }
    };
    rec(0, d);
  }
  return out;
}

MembershipResult idealiser_member(const PhasePoly& f, const ConstraintSet& cs, double tol,
                                  unsigned multiplier_degree) {
  MembershipResult result;
  result.exact = cs.linear;
  if (!cs.linear && cs.surface_samples.empty())
    throw std::invalid_argument("nonlinear constraint set without surface samples");
  const std::vector<PhasePoly> multipliers = monomial_basis(cs.n, multiplier_degree);
  for (std::size_t a = 0; a < cs.phis.size(); ++a) {
    for (const PhasePoly& m : multipliers) {
      const PhasePoly g = bracket(f, m * cs.phis[a]);
      if (cs.linear) {
        if (vanishes_on_linear_surface(g, cs.phis)) continue;
        result.member = false;
        const AffineSurface s = linear_surface(cs.phis, cs.n);
        const std::vector<double> z = to_double(s.origin);
        result.witnesses.push_back({a, to_string(m), z, g.evaluate_real(z), to_string(g)});
      } else {
        for (const auto& z : cs.surface_samples) {
          const double v = g.evaluate_real(z);
          if (std::abs(v) >= tol) {
            result.member = false;
            result.witnesses.push_back({a, to_string(m), z, v, to_string(g)});
            break;
          }
        }
      }
      if (result.witnesses.size() >= 16) return result;
    }
  }
  return result;
}

MembershipResult centraliser_member(const PhasePoly& f, const ConstraintSet& cs, unsigned multiplier_degree) {
  MembershipResult result;
  result.exact = true;
  const std::vector<PhasePoly> multipliers = monomial_basis(cs.n, multiplier_degree);
  for (std::size_t a = 0; a < cs.phis.size(); ++a) {
    for (const PhasePoly& m : multipliers) {
      const PhasePoly g = bracket(f, m * cs.phis[a]);
      if (g.is_zero()) continue;
      result.member = false;
      result.witnesses.push_back({a, to_string(m), {}, 0.0, to_string(g)});
      if (result.witnesses.size() >= 16) return result;
    }
  }
  return result;
}

}  // namespace canonq
