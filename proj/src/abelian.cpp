#include "framelab/abelian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace framelab {

namespace {

void require_abelian(const FiniteGroup& group) {
  if (!group.abelian_structure()) {
    throw Error(ErrorCode::NotAbelian, "'" + group.spec() + "' has no abelian structure; the multiplier map "
                                       "is defined for abelian groups only");
  }
}

// Row alpha holds alpha(gamma) for every gamma.
Eigen::MatrixXcd character_table(const FiniteGroup& group) {
  const int n = group.order();
  Eigen::MatrixXcd table(n, n);
  for (int a = 0; a < n; ++a)
    for (int g = 0; g < n; ++g) table(a, g) = character_value(group, a, g);
  return table;
}

void check_factorization(int l, int m, Eigen::Index size) {
  if (l < 1 || m < 1) throw Error(ErrorCode::BadFactorization, "L and M must be positive");
  if (static_cast<long long>(l) * m != size) {
    throw Error(ErrorCode::BadFactorization, "vector length " + std::to_string(size) + " is not L*M = " +
                                                 std::to_string(static_cast<long long>(l) * m));
  }
}

Eigen::VectorXcd dft(const Eigen::VectorXcd& v) {
  Eigen::FFT<double> fft;
  std::vector<Complex> in(v.data(), v.data() + v.size());
  std::vector<Complex> out;
  fft.fwd(out, in);
  return Eigen::Map<Eigen::VectorXcd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

}  // namespace

DualFunction::DualFunction(GroupPtr group, Eigen::VectorXcd values)
    : group_(std::move(group)), values_(std::move(values)) {
  require_abelian(*group_);
  if (values_.size() != group_->order()) {
    throw Error(ErrorCode::DimMismatch, "dual function length differs from |G|");
  }
}

Eigen::VectorXd DualFunction::real_values(double tol) const {
  const double scale = std::max(1.0, values_.size() ? values_.cwiseAbs().maxCoeff() : 0.0);
  const double worst = values_.size() ? values_.imag().cwiseAbs().maxCoeff() : 0.0;
  if (worst > tol * scale) {
    throw Error(ErrorCode::NotRealValued, "imaginary part " + std::to_string(worst) + " exceeds tolerance");
  }
  return values_.real();
}

Eigen::VectorXcd group_fourier_transform(const GroupFunction& u) {
  const auto& group = *u.group();
  require_abelian(group);
  return character_table(group).conjugate() * u.values();
}

DualFunction lambda_multiplier(const ConvolutionOperator& f) {
  return DualFunction(f.group(), group_fourier_transform(f.coefficients()));
}

ConvolutionOperator inverse_lambda(const DualFunction& m) {
  const auto& group = *m.group();
  const double weight = 1.0 / static_cast<double>(group.order());
  Eigen::VectorXcd c = weight * (character_table(group).transpose() * m.values());
  return ConvolutionOperator(GroupFunction(m.group(), std::move(c)));
}

DualFunction scalar_bracket(const UnitaryRepresentation& rep, const Eigen::VectorXcd& phi,
                            const Eigen::VectorXcd& psi) {
  require_abelian(*rep.group());
  return lambda_multiplier(bracket_operator(rep, phi, psi));
}

DualFunction periodization_bracket(const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi, int n, int m) {
  if (n < 1 || m < 1) throw Error(ErrorCode::BadLength, "N and M must be positive");
  const long long len = static_cast<long long>(n) * m;
  if (phi.size() != len || psi.size() != len) {
    throw Error(ErrorCode::BadLength, "vectors must have length N*M = " + std::to_string(len));
  }
  const Eigen::VectorXcd phi_hat = dft(phi);
  const Eigen::VectorXcd psi_hat = phi.data() == psi.data() ? phi_hat : dft(psi);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (int j = 0; j < n; ++j) {
    Complex acc{};
    for (int r = 0; r < m; ++r) {
      const auto q = static_cast<Eigen::Index>(j) + static_cast<Eigen::Index>(r) * n;
      acc += phi_hat(q) * std::conj(psi_hat(q));
    }
    out(j) = acc / static_cast<double>(m);
  }
  const int factors[] = {n};
  return DualFunction(make_cyclic_product_group(factors, static_cast<std::size_t>(std::max(n, 1))), std::move(out));
}

DualFunction periodization_bracket(const Eigen::VectorXcd& psi, int n, int m) {
  return periodization_bracket(psi, psi, n, m);
}

Complex zak_value(const Eigen::VectorXcd& psi, int l, int m, long long n, int freq) {
  check_factorization(l, m, psi.size());
  const long long len = psi.size();
  Complex acc{};
  for (int k = 0; k < l; ++k) {
    const long long idx = ((n + static_cast<long long>(k) * m) % len + len) % len;
    // exp(-2 pi i k m / L) with the exponent reduced exactly mod L
    const long long r = (static_cast<long long>(k) * freq) % l;
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(l);
    acc += psi(idx) * Complex(std::cos(angle), std::sin(angle));
  }
  return acc;
}

ZakArray zak_transform(const Eigen::VectorXcd& psi, int l, int m) {
  check_factorization(l, m, psi.size());
  ZakArray z{l, m, Eigen::MatrixXcd(m, l)};
  for (int n = 0; n < m; ++n)
    for (int f = 0; f < l; ++f) z.values(n, f) = zak_value(psi, l, m, n, f);
  return z;
}

Eigen::VectorXcd inverse_zak(const ZakArray& z) {
  if (z.values.rows() != z.m || z.values.cols() != z.l) {
    throw Error(ErrorCode::BadFactorization, "Zak array shape differs from M x L");
  }
  const int len = z.n();
  Eigen::VectorXcd psi(len);
  // psi(n + kM) = (1/L) sum_m Z(n, m) exp(+2 pi i k m / L)
  for (int n = 0; n < z.m; ++n) {
    for (int k = 0; k < z.l; ++k) {
      Complex acc{};
      for (int f = 0; f < z.l; ++f) {
        const double angle =
            2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(k) * f) % z.l) / z.l;
        acc += z.values(n, f) * Complex(std::cos(angle), std::sin(angle));
      }
      psi(n + k * z.m) = acc / static_cast<double>(z.l);
    }
  }
  return psi;
}

DualFunction gabor_bracket_via_zak(const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi, int l, int m) {
  check_factorization(l, m, psi.size());
  if (phi.size() != psi.size()) throw Error(ErrorCode::DimMismatch, "phi and psi differ in length");
  const ZakArray zphi = zak_transform(phi, l, m);
  const ZakArray zpsi = zak_transform(psi, l, m);
  const int len = l * m;
  Eigen::VectorXcd out(len);
  for (int a = 0; a < l; ++a) {
    for (int b = 0; b < m; ++b) {
      out(a * m + b) = static_cast<double>(m) * zphi.values(b, a) * std::conj(zpsi.values(b, a));
    }
  }
  const int factors[] = {l, m};
  return DualFunction(make_cyclic_product_group(factors, static_cast<std::size_t>(len)), std::move(out));
}

DualFunction support_indicator(const DualFunction& m, double tol) {
  const Eigen::VectorXd values = m.real_values(tol);
  const double scale = std::max(1.0, values.size() ? values.maxCoeff() : 0.0);
  Eigen::VectorXcd chi(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) chi(i) = values(i) > tol * scale ? 1.0 : 0.0;
  return DualFunction(m.group(), std::move(chi));
}

SandwichReport check_sandwich_equivalence(const UnitaryRepresentation& rep, const Eigen::VectorXcd& psi,
                                          double a, double b, double tol) {
  require_abelian(*rep.group());
  if (!(a > 0.0) || !(b >= a)) throw Error(ErrorCode::InvalidArgument, "need 0 < A <= B");

  const ConvolutionOperator bracket = bracket_operator(rep, psi, psi);
  const SpectralData spec = spectral_data(bracket, tol);
  const double slack = tol * std::max(1.0, spec.max_abs());
  SandwichReport report;

  // Operator side: A s <= [psi, psi] <= B s in the operator order of R(G).
  const ConvolutionOperator s = support_projection(bracket, tol).op();
  const auto lower = hermitian_eigen(bracket.matrix() - (Complex(a) * s).matrix(), 1e-8);
  const auto upper = hermitian_eigen((Complex(b) * s).matrix() - bracket.matrix(), 1e-8);
  report.operator_margin = std::min(lower.eigenvalues.minCoeff(), upper.eigenvalues.minCoeff());
  report.operator_side = report.operator_margin >= -slack;

  // Scalar side: pointwise on the dual group.
  const DualFunction m = lambda_multiplier(bracket);
  const Eigen::VectorXd values = m.real_values(tol);
  const Eigen::VectorXd chi = support_indicator(m, tol).values().real();
  double margin = kInfinity;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    margin = std::min({margin, values(i) - a * chi(i), b * chi(i) - values(i)});
  }
  report.scalar_margin = margin;
  report.scalar_side = margin >= -slack;
  return report;
}

}  // namespace framelab
