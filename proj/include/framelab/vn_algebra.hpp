#pragma once

#include <limits>
#include <memory>
#include <mutex>

#include <Eigen/Dense>

#include "framelab/group.hpp"
#include "json.hpp"

namespace framelab {

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// rho(g) delta_h = delta_{h g^-1}
Eigen::MatrixXcd rho_matrix(const FiniteGroup& group, int element);
/// lambda(g) delta_h = delta_{g h}
Eigen::MatrixXcd lambda_matrix(const FiniteGroup& group, int element);

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
struct SpectralData {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
  double tolerance = kDefaultTolerance;

  double max_abs() const;
};

/// Throws NotSelfAdjoint when the matrix is not Hermitian to within
/// tol * max(1, max|m_ij|).
SpectralData hermitian_eigen(const Eigen::MatrixXcd& m, double tol = kDefaultTolerance);

/// An element of the right group von Neumann algebra R(G), stored by its
/// Fourier-coefficient kernel c, so that F = sum_g c(g) rho(g)^* and
/// F u = u * c. The dense matrix is built on first use and shared between
/// copies.
class ConvolutionOperator {
 public:
  explicit ConvolutionOperator(GroupFunction coefficients);

  static ConvolutionOperator identity(GroupPtr group);
  static ConvolutionOperator zero(GroupPtr group);
  /// Reads the kernel back through F^(g) = tau(F rho(g)). Throws
  /// GroupMismatch when the matrix fails to commute with lambda(G) to
  /// within affiliation_tol * max(1, max|m_ij|).
  static ConvolutionOperator from_matrix(GroupPtr group, const Eigen::MatrixXcd& m,
                                         double affiliation_tol = 1e-9);

  const GroupPtr& group() const { return coeffs_.group(); }
  const GroupFunction& coefficients() const { return coeffs_; }
  const Eigen::MatrixXcd& matrix() const;
  int dim() const { return coeffs_.size(); }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& u) const;

  ConvolutionOperator adjoint() const;
  /// max_g |c(g) - conj(c(g^-1))|
  double selfadjoint_defect() const;
  bool is_selfadjoint(double tol = kDefaultTolerance) const;

  friend ConvolutionOperator operator*(const ConvolutionOperator& f, const ConvolutionOperator& g);
  friend ConvolutionOperator operator+(const ConvolutionOperator& f, const ConvolutionOperator& g);
  friend ConvolutionOperator operator-(const ConvolutionOperator& f, const ConvolutionOperator& g);
  friend ConvolutionOperator operator*(Complex a, const ConvolutionOperator& f);

 private:
  struct Cache {
    std::once_flag once;
    Eigen::MatrixXcd matrix;
  };
  GroupFunction coeffs_;
  std::shared_ptr<Cache> cache_;
};

/// max_g ||lambda(g) M - M lambda(g)||_max: zero exactly when M lies in R(G).
double affiliation_defect(const FiniteGroup& group, const Eigen::MatrixXcd& m);

/// <F delta_e, delta_e>
Complex trace_tau(const ConvolutionOperator& f);
/// tau(F rho(g))
Complex fourier_coefficient(const ConvolutionOperator& f, int element);

/// tau(|F|^p)^{1/p}; p = kInfinity gives the operator norm. The trace of each
/// spectral projection of |F| is read off directly (|v_i(e)|^2), so no
/// uniform weight is assumed.
double lp_norm(const ConvolutionOperator& f, double p);

SpectralData spectral_data(const ConvolutionOperator& f, double tol = kDefaultTolerance);

bool is_positive(const ConvolutionOperator& f, double tol = kDefaultTolerance);
/// F <= G, i.e. G - F >= 0 with eigenvalue slack tol.
bool operator_leq(const ConvolutionOperator& f, const ConvolutionOperator& g,
                  double tol = kDefaultTolerance);

class ProjectionOperator {
 public:
  explicit ProjectionOperator(ConvolutionOperator op) : op_(std::move(op)) {}
  const ConvolutionOperator& op() const { return op_; }
  int rank() const;

 private:
  ConvolutionOperator op_;
};

/// s_F: projection onto the eigenspaces with |lambda| > tol * max(1, ||F||_inf).
ProjectionOperator support_projection(const ConvolutionOperator& f, double tol = kDefaultTolerance);

/// {"group_spec": ..., "coefficients": [[re, im], ...]}
nlohmann::json to_json(const ConvolutionOperator& f);
ConvolutionOperator operator_from_json(const nlohmann::json& j, std::size_t max_order = kDefaultMaxOrder);

}  // namespace framelab
