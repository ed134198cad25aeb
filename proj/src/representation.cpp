#include "framelab/representation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>

namespace framelab {

Complex inner(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
  // Eigen's dot is conjugate-linear in its first argument.
  return y.dot(x);
}

UnitaryRepresentation::UnitaryRepresentation(GroupPtr group, std::vector<Eigen::MatrixXcd> matrices,
                                             std::string label)
    : group_(std::move(group)), matrices_(std::move(matrices)), label_(std::move(label)) {
  if (static_cast<int>(matrices_.size()) != group_->order()) {
    throw Error(ErrorCode::DimMismatch, "need one matrix per group element");
  }
  dim_ = static_cast<int>(matrices_.front().rows());
  for (const auto& m : matrices_) {
    if (m.rows() != dim_ || m.cols() != dim_) throw Error(ErrorCode::DimMismatch, "matrices must be n x n");
  }
}

namespace {

void check_storage(std::size_t order, std::size_t dim, std::size_t max_dim) {
  if (dim > max_dim) {
    throw Error(ErrorCode::DimTooLarge, "dimension " + std::to_string(dim) + " exceeds " + std::to_string(max_dim));
  }
  if (order * dim * dim > kMaxStoredEntries) {
    throw Error(ErrorCode::DimTooLarge, "dense storage for |G| = " + std::to_string(order) + ", n = " +
                                            std::to_string(dim) + " is too large");
  }
}

// Cyclic shift (S_a v)(j) = v(j - a) on C^n: column j goes to row j + a.
Eigen::MatrixXcd shift_matrix(int n, int a) {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) s(((j + a) % n + n) % n, j) = 1.0;
  return s;
}

std::pair<int, int> parse_pair(std::string_view text, std::string_view whole) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw Error(ErrorCode::ParseError, "expected 'A,B' in rep spec '" + std::string(whole) + "'");
  }
  auto parse = [&](std::string_view part) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size() || value < 1) {
      throw Error(ErrorCode::ParseError, "bad integer in rep spec '" + std::string(whole) + "'");
    }
    return value;
  };
  return {parse(text.substr(0, comma)), parse(text.substr(comma + 1))};
}

}  // namespace

UnitaryRepresentation regular_representation(GroupPtr group) {
  const auto n = static_cast<std::size_t>(group->order());
  check_storage(n, n, kDefaultMaxDim);
  std::vector<Eigen::MatrixXcd> mats;
  mats.reserve(n);
  for (int g = 0; g < group->order(); ++g) mats.push_back(lambda_matrix(*group, g));
  std::string label = "regular:" + group->spec();
  return UnitaryRepresentation(std::move(group), std::move(mats), std::move(label));
}

UnitaryRepresentation shift_model_representation(int n, int m, std::size_t max_dim) {
  if (n < 1 || m < 1) throw Error(ErrorCode::ParseError, "shift model needs N, M >= 1");
  const auto dim = static_cast<std::size_t>(n) * static_cast<std::size_t>(m);
  check_storage(static_cast<std::size_t>(n), dim, max_dim);
  const int factors[] = {n};
  auto group = make_cyclic_product_group(factors, max_dim);
  std::vector<Eigen::MatrixXcd> mats;
  mats.reserve(n);
  for (int k = 0; k < n; ++k) mats.push_back(shift_matrix(static_cast<int>(dim), k * m));
  return UnitaryRepresentation(std::move(group), std::move(mats),
                               "shift:" + std::to_string(n) + "," + std::to_string(m));
}

UnitaryRepresentation gabor_representation(int l, int m, std::size_t max_dim) {
  if (l < 1 || m < 1) throw Error(ErrorCode::ParseError, "Gabor model needs L, M >= 1");
  const auto dim64 = static_cast<std::size_t>(l) * static_cast<std::size_t>(m);
  check_storage(dim64, dim64, max_dim);
  const int n = static_cast<int>(dim64);
  const int factors[] = {l, m};
  auto group = make_cyclic_product_group(factors, max_dim);

  // Phases come from one table indexed by the exact residue b*j mod N, so
  // equal phases are bit-identical and the lattice commutation is exact.
  std::vector<Complex> twiddle(n);
  constexpr Complex kQuarter[] = {{1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
  for (int r = 0; r < n; ++r) {
    if ((4 * r) % n == 0) {
      twiddle[r] = kQuarter[4 * r / n];
      continue;
    }
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    twiddle[r] = {std::cos(angle), std::sin(angle)};
  }

  std::vector<Eigen::MatrixXcd> mats;
  mats.reserve(n);
  for (int k = 0; k < l; ++k) {
    for (int q = 0; q < m; ++q) {
      const int shift = m * k;
      const long long b = static_cast<long long>(l) * q;
      Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
      // (Mod_b Shift_a v)(j) = w^{b j} v(j - a)
      for (int j = 0; j < n; ++j) {
        const int src = ((j - shift) % n + n) % n;
        u(j, src) = twiddle[static_cast<std::size_t>((b * j) % n)];
      }
      mats.push_back(std::move(u));
    }
  }
  UnitaryRepresentation rep(std::move(group), std::move(mats),
                            "gabor:" + std::to_string(l) + "," + std::to_string(m));
  const auto report = verify_representation(rep, 1e-12);
  if (!report.pass) {
    throw Error(ErrorCode::HomomorphismFailure,
                "Gabor model failed verification (deviation " + std::to_string(report.max_deviation) + ")");
  }
  return rep;
}

UnitaryRepresentation parse_rep_spec(std::string_view spec, std::size_t max_order) {
  constexpr std::string_view kRegular = "regular:", kShift = "shift:", kGabor = "gabor:";
  if (spec.starts_with(kRegular)) {
    return regular_representation(parse_group_spec(spec.substr(kRegular.size()), max_order));
  }
  if (spec.starts_with(kShift)) {
    const auto [n, m] = parse_pair(spec.substr(kShift.size()), spec);
    return shift_model_representation(n, m, std::max(max_order, kDefaultMaxDim));
  }
  if (spec.starts_with(kGabor)) {
    const auto [l, m] = parse_pair(spec.substr(kGabor.size()), spec);
    return gabor_representation(l, m, std::max(max_order, kDefaultMaxDim));
  }
  throw Error(ErrorCode::ParseError, "unknown rep spec '" + std::string(spec) + "'");
}

OrbitSystem::OrbitSystem(UnitaryRepresentation r, Eigen::VectorXcd psi)
    : rep(std::move(r)), generator(std::move(psi)) {
  if (generator.size() != rep.dim()) {
    throw Error(ErrorCode::DimMismatch, "generator has length " + std::to_string(generator.size()) +
                                            ", representation dimension is " + std::to_string(rep.dim()));
  }
}

Eigen::MatrixXcd OrbitSystem::synthesis_matrix() const {
  const int order = rep.group()->order();
  Eigen::MatrixXcd t(rep.dim(), order);
  for (int g = 0; g < order; ++g) t.col(g) = rep(g) * generator;
  return t;
}

GroupFunction correlation_function(const UnitaryRepresentation& rep, const Eigen::VectorXcd& phi,
                                   const Eigen::VectorXcd& psi) {
  if (phi.size() != rep.dim() || psi.size() != rep.dim()) {
    throw Error(ErrorCode::DimMismatch, "vectors must have the representation dimension " +
                                            std::to_string(rep.dim()));
  }
  const int order = rep.group()->order();
  Eigen::VectorXcd g(order);
  for (int k = 0; k < order; ++k) g(k) = inner(phi, rep(k) * psi);
  return GroupFunction(rep.group(), std::move(g));
}

ConvolutionOperator bracket_operator(const UnitaryRepresentation& rep, const Eigen::VectorXcd& phi,
                                     const Eigen::VectorXcd& psi) {
  return ConvolutionOperator(correlation_function(rep, phi, psi));
}

RepresentationReport verify_representation(const UnitaryRepresentation& rep, double tol, std::uint64_t seed) {
  const auto& group = *rep.group();
  const int order = group.order();
  const int n = rep.dim();
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
  RepresentationReport report;

  auto max_abs = [](const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; };
  report.identity_deviation = max_abs(rep(group.identity()) - eye);
  for (int g = 0; g < order; ++g) {
    report.unitarity_deviation = std::max(report.unitarity_deviation, max_abs(rep(g).adjoint() * rep(g) - eye));
  }

  auto check_pair = [&](int a, int b) {
    const double d = max_abs(rep(a) * rep(b) - rep(group.product(a, b)));
    if (!report.worst_pair || d > report.homomorphism_deviation) {
      report.homomorphism_deviation = d;
      report.worst_pair = std::make_pair(a, b);
    }
    ++report.pairs_checked;
  };
  if (order <= 64) {
    report.exhaustive = true;
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b) check_pair(a, b);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, order - 1);
    for (int t = 0; t < 256; ++t) {
      const int a = pick(rng);
      check_pair(a, pick(rng));
    }
  }
  report.max_deviation =
      std::max({report.identity_deviation, report.unitarity_deviation, report.homomorphism_deviation});
  report.pass = report.max_deviation <= tol;
  return report;
}

}  // namespace framelab
