#pragma once

// Finite-dimensional checks around sl(2): the defining relations of the 2x2
// basis, simplicity by bracket closure, the trace obstruction to nonzero
// anti-Hermitean representations, and the Robertson-Schrodinger uncertainty
// inequality for Hermitean matrices.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <istream>
#include <string>

#include "canonq/sampling.hpp"

namespace canonq {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

using IntMatrix2 = std::array<std::array<long long, 2>, 2>;

struct Sl2Basis {
  IntMatrix2 H{{{1, 0}, {0, -1}}};
  IntMatrix2 E_plus{{{0, 1}, {0, 0}}};
  IntMatrix2 E_minus{{{0, 0}, {1, 0}}};
};

/// Max-entry residuals of [H,E+] - 2E+, [H,E-] + 2E-, [E+,E-] - H.
struct Sl2BasisResiduals {
  std::array<long long, 3> residuals{};
  bool exact() const { return residuals[0] == 0 && residuals[1] == 0 && residuals[2] == 0; }
};

Sl2BasisResiduals check_sl2_basis();

/// Dimension of the ideal generated by X = a E+ + b E- + c H. Throws
/// std::invalid_argument for a = b = c = 0.
int simplicity_probe(double a, double b, double c, double tol = 1e-9);

enum class RepVerdict { VALID_REP, FORCED_ZERO, NOT_A_REP };

std::string to_string(RepVerdict v);

struct Sl2CheckReport {
  /// Frobenius norms of [A,B+] - 2B+, [A,B-] + 2B-, [B+,B-] - A.
  std::array<double, 3> relation_residuals{};
  /// Frobenius norms of M + M^dagger for A, B+, B-.
  std::array<double, 3> hermiticity_residuals{};
  /// Frobenius norms of A, B+, B-.
  std::array<double, 3> norms{};
  Complex trace_b_plus_sq{};
  /// (1/2) trace(B+ (A B+ - B+ A)), equal to trace(B+^2) whenever [A,B+] = 2B+.
  Complex trace_identity_rhs{};
  RepVerdict verdict = RepVerdict::NOT_A_REP;
};

inline constexpr double kZeroThreshold = 1e-6;

/// Throws DimensionMismatch unless A, B+, B- are square of one size.
Sl2CheckReport antiunitary_rep_check(const ComplexMatrix& A, const ComplexMatrix& Bp, const ComplexMatrix& Bm,
                                     double tol = 1e-8);

struct UncertaintyResult {
  double lhs = 0.0;  ///< <f0^2> <g0^2>
  double rhs = 0.0;  ///< (|<[f,g]>|^2 + |<[f0,g0]_+>|^2) / 4
  bool holds = false;
};

/// Throws std::invalid_argument if psi is not normalised or f, g are not
/// Hermitean within tol, DimensionMismatch on incompatible sizes.
UncertaintyResult uncertainty_check(const ComplexMatrix& f, const ComplexMatrix& g, const ComplexVector& psi,
                                    double tol = 1e-9);

struct UncertaintyTrials {
  unsigned trials = 0;
  unsigned passed = 0;
  double worst_margin = 0.0;  ///< min over trials of lhs - rhs
};

/// Random Hermitean pairs and states with dims cycling through [dim_min, dim_max].
UncertaintyTrials uncertainty_trials(int dim_min, int dim_max, unsigned trials, std::uint64_t seed,
                                     double tol = 1e-9);

ComplexMatrix random_hermitian(Rng& rng, int dim);
ComplexMatrix random_anti_hermitian(Rng& rng, int dim);
ComplexVector random_state(Rng& rng, int dim);

struct RepMatrices {
  ComplexMatrix A, Bp, Bm;
};

/// Reads "dim" then dim^2 lines "re im" (row-major) for each of A, B+, B-.
/// Throws ParseError with the offending line.
RepMatrices read_rep(std::istream& in);
RepMatrices read_rep_file(const std::string& path);

}  // namespace canonq
