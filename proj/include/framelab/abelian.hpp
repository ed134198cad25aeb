#pragma once

#include <Eigen/Dense>

#include "framelab/group.hpp"
#include "framelab/representation.hpp"
#include "framelab/vn_algebra.hpp"

namespace framelab {

/// A function on the dual group, indexed by character in the same mixed-radix
/// order as the elements. Integrals over the dual group use the normalized
/// counting measure (1/|G|) sum_alpha.
class DualFunction {
 public:
  DualFunction(GroupPtr group, Eigen::VectorXcd values);

  const GroupPtr& group() const { return group_; }
  const Eigen::VectorXcd& values() const { return values_; }
  Complex operator()(int character) const { return values_(character); }
  int size() const { return static_cast<int>(values_.size()); }

  /// Real parts; throws NotRealValued when some |Im| exceeds
  /// tol * max(1, max|value|).
  Eigen::VectorXd real_values(double tol = kDefaultTolerance) const;

 private:
  GroupPtr group_;
  Eigen::VectorXcd values_;
};

/// (F_G u)(alpha) = sum_gamma u(gamma) conj(alpha(gamma))
Eigen::VectorXcd group_fourier_transform(const GroupFunction& u);

/// Lambda(F)(alpha) = sum_gamma F^(gamma) conj(alpha(gamma)); the eigenvalue of
/// F on the character vector alpha.
DualFunction lambda_multiplier(const ConvolutionOperator& f);

/// F^(gamma) = (1/|G|) sum_alpha m(alpha) alpha(gamma)
ConvolutionOperator inverse_lambda(const DualFunction& m);

/// Lambda([phi, psi]) for an abelian representation.
DualFunction scalar_bracket(const UnitaryRepresentation& rep, const Eigen::VectorXcd& phi,
                            const Eigen::VectorXcd& psi);

/// Shift-model bracket from the NM-point DFT of phi and psi:
///   [phi, psi](j) = (1/M) sum_{r<M} Phi(j + rN) conj(Psi(j + rN)),  j in Z_N.
/// Character j of Z_N corresponds to DFT bin j; the 1/M weight was fixed by
/// matching scalar_bracket(shift_model_representation(N, M), ...) on delta_0
/// and random inputs over several grids.
DualFunction periodization_bracket(const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi, int n, int m);
DualFunction periodization_bracket(const Eigen::VectorXcd& psi, int n, int m);

/// Finite Zak transform on C^N, N = L*M: values(n, m) for n in Z_M
/// (position), m in Z_L (frequency),
///   Z psi(n, m) = sum_{k in Z_L} psi((n + kM) mod N) exp(-2 pi i k m / L).
struct ZakArray {
  int l = 0;
  int m = 0;
  Eigen::MatrixXcd values;  // M x L
  int n() const { return l * m; }
};

ZakArray zak_transform(const Eigen::VectorXcd& psi, int l, int m);
/// Z psi(n, m) at an arbitrary integer position n.
Complex zak_value(const Eigen::VectorXcd& psi, int l, int m, long long n, int freq);
Eigen::VectorXcd inverse_zak(const ZakArray& z);

/// Gabor bracket from Zak transforms. The character (a, b) of Z_L x Z_M
/// (index a*M + b) reads the Zak product at position n = b, frequency m = a:
///   [phi, psi](a, b) = M * Z phi(b, a) conj(Z psi(b, a)).
/// Index map and the factor M were fixed against
/// scalar_bracket(gabor_representation(L, M), ...).
DualFunction gabor_bracket_via_zak(const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi, int l, int m);

/// Indicator of {alpha : m(alpha) > tol * max(max_alpha m, 1)}.
DualFunction support_indicator(const DualFunction& m, double tol = kDefaultTolerance);

struct SandwichReport {
  bool operator_side = false;  // A s <= [psi, psi] <= B s
  bool scalar_side = false;    // A chi <= [psi, psi](alpha) <= B chi
  double operator_margin = 0.0;
  double scalar_margin = 0.0;
  bool agree() const { return operator_side == scalar_side; }
};

/// Both sides use the slack tol * max(1, ||[psi, psi]||_inf).
SandwichReport check_sandwich_equivalence(const UnitaryRepresentation& rep, const Eigen::VectorXcd& psi,
                                          double a, double b, double tol = kDefaultTolerance);

}  // namespace framelab
