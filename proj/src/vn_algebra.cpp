#include "framelab/vn_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace framelab {

namespace {

void check_element(const FiniteGroup& group, int element) {
  if (!group.contains(element)) {
    throw Error(ErrorCode::IndexOutOfRange, "element " + std::to_string(element) + " not in '" +
                                                group.spec() + "'");
  }
}

double max_abs_entry(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

Eigen::MatrixXcd rho_matrix(const FiniteGroup& group, int element) {
  check_element(group, element);
  const int n = group.order();
  const int inv = group.inverse(element);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int h = 0; h < n; ++h) m(group.product(h, inv), h) = 1.0;
  return m;
}

Eigen::MatrixXcd lambda_matrix(const FiniteGroup& group, int element) {
  check_element(group, element);
  const int n = group.order();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int h = 0; h < n; ++h) m(group.product(element, h), h) = 1.0;
  return m;
}

double SpectralData::max_abs() const {
  return eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
}

SpectralData hermitian_eigen(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimMismatch, "eigen-decomposition needs a square matrix");
  const double defect = m.size() == 0 ? 0.0 : max_abs_entry(m - m.adjoint());
  if (defect > tol * std::max(1.0, max_abs_entry(m))) {
    throw Error(ErrorCode::NotSelfAdjoint, "matrix deviates from its adjoint by " + std::to_string(defect));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NotSelfAdjoint, "eigen-decomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors(), tol};
}

ConvolutionOperator::ConvolutionOperator(GroupFunction coefficients)
    : coeffs_(std::move(coefficients)), cache_(std::make_shared<Cache>()) {}

ConvolutionOperator ConvolutionOperator::identity(GroupPtr group) {
  const int e = group->identity();
  return ConvolutionOperator(GroupFunction::delta(std::move(group), e));
}

ConvolutionOperator ConvolutionOperator::zero(GroupPtr group) {
  return ConvolutionOperator(GroupFunction(std::move(group)));
}

ConvolutionOperator ConvolutionOperator::from_matrix(GroupPtr group, const Eigen::MatrixXcd& m,
                                                     double affiliation_tol) {
  const int n = group->order();
  if (m.rows() != n || m.cols() != n) {
    throw Error(ErrorCode::DimMismatch, "matrix is not |G| x |G|");
  }
  const double defect = affiliation_defect(*group, m);
  if (defect > affiliation_tol * std::max(1.0, max_abs_entry(m))) {
    throw Error(ErrorCode::GroupMismatch,
                "matrix does not commute with lambda(G) (defect " + std::to_string(defect) + ")");
  }
  // tau(F rho(g)) = <F delta_{g^-1}, delta_e>
  const int e = group->identity();
  Eigen::VectorXcd c(n);
  for (int g = 0; g < n; ++g) c(g) = m(e, group->inverse(g));
  return ConvolutionOperator(GroupFunction(std::move(group), std::move(c)));
}

const Eigen::MatrixXcd& ConvolutionOperator::matrix() const {
  std::call_once(cache_->once, [this] {
    const auto& g = *group();
    const int n = g.order();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    // F delta_y = sum_g c(g) rho(g)^* delta_y = sum_g c(g) delta_{y g}
    for (int y = 0; y < n; ++y)
      for (int h = 0; h < n; ++h) m(g.product(y, h), y) = coeffs_(h);
    cache_->matrix = std::move(m);
  });
  return cache_->matrix;
}

Eigen::VectorXcd ConvolutionOperator::apply(const Eigen::VectorXcd& u) const {
  if (u.size() != dim()) throw Error(ErrorCode::DimMismatch, "vector length differs from |G|");
  return convolve(GroupFunction(group(), u), coeffs_).values();
}

ConvolutionOperator ConvolutionOperator::adjoint() const {
  const auto& g = *group();
  Eigen::VectorXcd c(dim());
  for (int h = 0; h < dim(); ++h) c(h) = std::conj(coeffs_(g.inverse(h)));
  return ConvolutionOperator(GroupFunction(group(), std::move(c)));
}

double ConvolutionOperator::selfadjoint_defect() const {
  const auto& g = *group();
  double d = 0.0;
  for (int h = 0; h < dim(); ++h) d = std::max(d, std::abs(coeffs_(h) - std::conj(coeffs_(g.inverse(h)))));
  return d;
}

bool ConvolutionOperator::is_selfadjoint(double tol) const {
  const double scale = std::max(1.0, coeffs_.values().cwiseAbs().maxCoeff());
  return selfadjoint_defect() <= tol * scale;
}

ConvolutionOperator operator*(const ConvolutionOperator& f, const ConvolutionOperator& g) {
  // F G u = (u * c_G) * c_F = u * (c_G * c_F)
  return ConvolutionOperator(convolve(g.coefficients(), f.coefficients()));
}

ConvolutionOperator operator+(const ConvolutionOperator& f, const ConvolutionOperator& g) {
  require_same_group(*f.group(), *g.group());
  return ConvolutionOperator(GroupFunction(f.group(), f.coefficients().values() + g.coefficients().values()));
}

ConvolutionOperator operator-(const ConvolutionOperator& f, const ConvolutionOperator& g) {
  require_same_group(*f.group(), *g.group());
  return ConvolutionOperator(GroupFunction(f.group(), f.coefficients().values() - g.coefficients().values()));
}

ConvolutionOperator operator*(Complex a, const ConvolutionOperator& f) {
  return ConvolutionOperator(GroupFunction(f.group(), a * f.coefficients().values()));
}

double affiliation_defect(const FiniteGroup& group, const Eigen::MatrixXcd& m) {
  const int n = group.order();
  double defect = 0.0;
  // (lambda(g) M)(x, y) = M(g^-1 x, y) and (M lambda(g))(x, y) = M(x, g y);
  // comparing entries directly avoids forming permutation matrices.
  for (int g = 0; g < n; ++g) {
    const int gi = group.inverse(g);
    for (int y = 0; y < n; ++y) {
      const int gy = group.product(g, y);
      for (int x = 0; x < n; ++x) {
        defect = std::max(defect, std::abs(m(group.product(gi, x), y) - m(x, gy)));
      }
    }
  }
  return defect;
}

Complex trace_tau(const ConvolutionOperator& f) {
  const int e = f.group()->identity();
  return f.matrix()(e, e);
}

Complex fourier_coefficient(const ConvolutionOperator& f, int element) {
  const auto& g = *f.group();
  check_element(g, element);
  // (F rho(g))(e, e) = F(e, e g^-1)
  return f.matrix()(g.identity(), g.inverse(element));
}

SpectralData spectral_data(const ConvolutionOperator& f, double tol) {
  if (!f.is_selfadjoint(tol)) {
    throw Error(ErrorCode::NotSelfAdjoint, "operator is not selfadjoint (defect " +
                                               std::to_string(f.selfadjoint_defect()) + ")");
  }
  const Eigen::MatrixXcd& m = f.matrix();
  // Symmetrize so round-off in the kernel cannot reach the eigensolver.
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  return hermitian_eigen(h, tol);
}

double lp_norm(const ConvolutionOperator& f, double p) {
  if (std::isnan(p) || p < 1.0) throw Error(ErrorCode::InvalidP, "p must lie in [1, inf]");
  const Eigen::MatrixXcd& m = f.matrix();
  Eigen::MatrixXcd ff = m.adjoint() * m;
  ff = 0.5 * (ff + ff.adjoint()).eval();
  const SpectralData spec = hermitian_eigen(ff);
  const int e = f.group()->identity();
  if (std::isinf(p)) {
    return std::sqrt(std::max(0.0, spec.eigenvalues.maxCoeff()));
  }
  double total = 0.0;
  for (int i = 0; i < spec.eigenvalues.size(); ++i) {
    const double mu = std::sqrt(std::max(0.0, spec.eigenvalues(i)));
    const double weight = std::norm(spec.eigenvectors(e, i));
    total += weight * std::pow(mu, p);
  }
  return std::pow(total, 1.0 / p);
}

bool is_positive(const ConvolutionOperator& f, double tol) {
  return spectral_data(f, tol).eigenvalues.minCoeff() >= -tol;
}

bool operator_leq(const ConvolutionOperator& f, const ConvolutionOperator& g, double tol) {
  if (!f.is_selfadjoint(tol) || !g.is_selfadjoint(tol)) {
    throw Error(ErrorCode::NotSelfAdjoint, "operator order needs selfadjoint operands");
  }
  return is_positive(g - f, tol);
}

int ProjectionOperator::rank() const {
  return static_cast<int>(std::lround(op_.matrix().trace().real()));
}

ProjectionOperator support_projection(const ConvolutionOperator& f, double tol) {
  const SpectralData spec = spectral_data(f, tol);
  const double threshold = tol * std::max(1.0, spec.max_abs());
  const int n = f.dim();
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < spec.eigenvalues.size(); ++i) {
    if (std::abs(spec.eigenvalues(i)) > threshold) {
      p.noalias() += spec.eigenvectors.col(i) * spec.eigenvectors.col(i).adjoint();
    }
  }
  return ProjectionOperator(ConvolutionOperator::from_matrix(f.group(), p));
}

nlohmann::json to_json(const ConvolutionOperator& f) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (int g = 0; g < f.dim(); ++g) {
    const Complex c = f.coefficients()(g);
    coeffs.push_back({c.real(), c.imag()});
  }
  return {{"group_spec", f.group()->spec()}, {"coefficients", std::move(coeffs)}};
}

ConvolutionOperator operator_from_json(const nlohmann::json& j, std::size_t max_order) {
  try {
    auto group = parse_group_spec(j.at("group_spec").get<std::string>(), max_order);
    const auto& coeffs = j.at("coefficients");
    if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != group->order()) {
      throw Error(ErrorCode::DimMismatch, "coefficient count differs from group order");
    }
    Eigen::VectorXcd c(group->order());
    for (int g = 0; g < group->order(); ++g) {
      c(g) = Complex(coeffs[g].at(0).get<double>(), coeffs[g].at(1).get<double>());
    }
    return ConvolutionOperator(GroupFunction(std::move(group), std::move(c)));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad operator JSON: ") + e.what());
  }
}

}  // namespace framelab
