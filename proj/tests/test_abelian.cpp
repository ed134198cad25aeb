#include "doctest.h"
#include "framelab/abelian.hpp"
#include "framelab/frame.hpp"
#include "test_support.hpp"

using namespace framelab;
using testing::max_abs;

namespace {

ConvolutionOperator kernel_op(const GroupPtr& g, std::initializer_list<Complex> values) {
  Eigen::VectorXcd c(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const auto& v : values) c(i++) = v;
  return ConvolutionOperator(GroupFunction(g, c));
}

Eigen::VectorXcd vec(std::initializer_list<Complex> values) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const auto& x : values) v(i++) = x;
  return v;
}

// Unnormalized periodization sum_{r<M} |Psi(j + rN)|^2 from a naive DFT.
Eigen::VectorXd raw_periodization(const Eigen::VectorXcd& psi, int n, int m) {
  const auto hat = testing::naive_dft(psi);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < m; ++r) out(j) += std::norm(hat(j + r * n));
  return out;
}

}  // namespace

TEST_SUITE("abelian") {

TEST_CASE("multiplier examples") {
  auto z4 = make_builtin_group("Z4");
  const auto one = lambda_multiplier(ConvolutionOperator::identity(z4));
  CHECK(max_abs(one.values() - Eigen::VectorXcd::Ones(4)) == 0.0);

  // F = rho(1)^*: kernel delta_1, multiplier conj(alpha(1)) = (1, -i, -1, i)
  const auto shift = lambda_multiplier(ConvolutionOperator(GroupFunction::delta(z4, 1)));
  CHECK(max_abs(shift.values() - vec({1.0, Complex(0, -1), -1.0, Complex(0, 1)})) < 1e-15);

  const auto circ = lambda_multiplier(kernel_op(z4, {1.25, 0.5, 0.0, 0.5}));
  CHECK(max_abs(circ.values() - vec({2.25, 1.25, 0.25, 1.25})) < 1e-15);

  CHECK_THROWS_AS(lambda_multiplier(ConvolutionOperator::identity(make_builtin_group("D4"))), Error);
  CHECK_THROWS_AS(DualFunction(z4, Eigen::VectorXcd::Zero(3)), Error);
}

TEST_CASE("Fourier intertwining and eigenvectors") {
  testing::Rng rng(1);
  for (const char* spec : {"Z5", "Z2xZ4", "Z3xZ4"}) {
    auto g = make_builtin_group(spec);
    const int n = g->order();
    const ConvolutionOperator f(GroupFunction(g, testing::random_vector(n, rng)));
    const GroupFunction u(g, testing::random_vector(n, rng));
    const Eigen::VectorXcd lhs = group_fourier_transform(GroupFunction(g, f.apply(u.values())));
    const Eigen::VectorXcd rhs = lambda_multiplier(f).values().cwiseProduct(group_fourier_transform(u));
    CHECK(max_abs(lhs - rhs) < 1e-11);

    // each character vector is an eigenvector with eigenvalue Lambda(F)(alpha)
    const auto& s = *g->abelian_structure();
    for (int a = 0; a < n; ++a) {
      Eigen::VectorXcd chi(n);
      for (int x = 0; x < n; ++x) chi(x) = testing::character_from_coordinates(s, a, x);
      CHECK(max_abs(f.matrix() * chi - lambda_multiplier(f)(a) * chi) < 1e-11);
    }
  }
}

TEST_CASE("inverse multiplier") {
  testing::Rng rng(2);
  auto g = make_builtin_group("Z2xZ4");
  const int n = g->order();
  const DualFunction m(g, testing::random_vector(n, rng));
  CHECK(max_abs(lambda_multiplier(inverse_lambda(m)).values() - m.values()) < 1e-13);
  const ConvolutionOperator f(GroupFunction(g, testing::random_vector(n, rng)));
  CHECK(max_abs(inverse_lambda(lambda_multiplier(f)).coefficients().values() - f.coefficients().values()) < 1e-13);

  const auto id = inverse_lambda(DualFunction(g, Eigen::VectorXcd::Ones(n)));
  CHECK(max_abs(id.matrix() - Eigen::MatrixXcd::Identity(n, n)) < 1e-15);

  // one character: rank-1 projection with kernel alpha(gamma) / |G|
  const int alpha = 5;
  Eigen::VectorXcd ind = Eigen::VectorXcd::Zero(n);
  ind(alpha) = 1.0;
  const auto p = inverse_lambda(DualFunction(g, ind));
  for (int x = 0; x < n; ++x) {
    CHECK(std::abs(p.coefficients()(x) - testing::character_from_coordinates(*g->abelian_structure(), alpha, x) /
                                             static_cast<double>(n)) < 1e-15);
  }
  CHECK(max_abs((p * p).matrix() - p.matrix()) < 1e-14);
  CHECK(std::abs(p.matrix().trace() - 1.0) < 1e-14);
}

TEST_CASE("scalar brackets") {
  auto regular = [](const char* spec) { return parse_rep_spec(spec); };
  Eigen::VectorXcd d = Eigen::VectorXcd::Zero(6);
  d(0) = 1.0;
  const auto rep6 = regular("regular:Z2xZ3");
  CHECK(max_abs(scalar_bracket(rep6, d, d).values() - Eigen::VectorXcd::Ones(6)) < 1e-15);

  const auto rep4 = regular("regular:Z4");
  const auto z4 = scalar_bracket(rep4, vec({1.0, 0.5, 0.0, 0.0}), vec({1.0, 0.5, 0.0, 0.0}));
  CHECK(max_abs(z4.values() - vec({2.25, 1.25, 0.25, 1.25})) < 1e-15);

  const auto z2 = scalar_bracket(regular("regular:Z2"), vec({1.0, 1.0}), vec({1.0, 1.0}));
  CHECK(max_abs(z2.values() - vec({4.0, 0.0})) < 1e-15);

  CHECK_THROWS_AS(scalar_bracket(regular("regular:D3"), Eigen::VectorXcd::Ones(6), Eigen::VectorXcd::Ones(6)),
                  Error);
  CHECK_THROWS_AS(scalar_bracket(rep4, Eigen::VectorXcd::Ones(3), Eigen::VectorXcd::Ones(4)), Error);
}

TEST_CASE("scalar bracket reproduces correlations") {
  testing::Rng rng(3);
  for (const char* spec : {"regular:Z3xZ4", "shift:4,2", "gabor:2,3", "gabor:3,3"}) {
    CAPTURE(spec);
    const auto rep = parse_rep_spec(spec);
    const auto& g = *rep.group();
    const auto& s = *g.abelian_structure();
    const auto phi = testing::random_vector(rep.dim(), rng);
    const auto psi = testing::random_vector(rep.dim(), rng);
    const auto m = scalar_bracket(rep, phi, psi);
    for (int x = 0; x < g.order(); ++x) {
      Complex integral{};
      for (int a = 0; a < g.order(); ++a) integral += m(a) * testing::character_from_coordinates(s, a, x);
      integral /= static_cast<double>(g.order());
      CHECK(std::abs(integral - testing::inner_product(phi, rep(x) * psi)) < 1e-11);
    }
    const Eigen::VectorXd self = scalar_bracket(rep, psi, psi).real_values();
    CHECK(self.minCoeff() >= -1e-10);
  }
}

TEST_CASE("periodization calibration") {
  // The 1/M weight: scalar bracket divided by the raw periodization sum on
  // delta_0 and one random vector, over two grids.
  testing::Rng rng(4);
  for (auto [n, m] : {std::pair{4, 2}, std::pair{3, 5}}) {
    const auto rep = shift_model_representation(n, m);
    Eigen::VectorXcd d = Eigen::VectorXcd::Zero(n * m);
    d(0) = 1.0;
    for (const auto& psi : {d, testing::random_vector(n * m, rng)}) {
      const Eigen::VectorXd oracle = scalar_bracket(rep, psi, psi).real_values();
      const Eigen::VectorXd raw = raw_periodization(psi, n, m);
      for (int j = 0; j < n; ++j) CHECK(oracle(j) * m == doctest::Approx(raw(j)).epsilon(1e-12));
      CHECK(max_abs(periodization_bracket(psi, n, m).values() - scalar_bracket(rep, psi, psi).values()) < 1e-12);
    }
  }
}

TEST_CASE("periodization examples") {
  Eigen::VectorXcd d = Eigen::VectorXcd::Zero(8);
  d(0) = 1.0;
  const auto c = periodization_bracket(d, 4, 2);
  CHECK(max_abs(c.values() - Eigen::VectorXcd::Ones(4)) < 1e-15);
  CHECK(max_abs(periodization_bracket(vec({1.0, 1.0}), 2, 1).values() - vec({4.0, 0.0})) < 1e-15);

  testing::Rng rng(5);
  const auto phi = testing::random_vector(8, rng);
  const auto psi = testing::random_vector(8, rng);
  const auto rep = shift_model_representation(4, 2);
  CHECK(max_abs(periodization_bracket(phi, psi, 4, 2).values() - scalar_bracket(rep, phi, psi).values()) < 1e-12);

  try {
    periodization_bracket(testing::random_vector(7, rng), 4, 2);
    FAIL("expected BadLength");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadLength);
  }
}

TEST_CASE("Zak transform") {
  Eigen::VectorXcd d = Eigen::VectorXcd::Zero(6);
  d(0) = 1.0;
  const auto zd = zak_transform(d, 2, 3);
  CHECK(zd.values.rows() == 3);
  CHECK(zd.values.cols() == 2);
  for (int n = 0; n < 3; ++n)
    for (int m = 0; m < 2; ++m) CHECK(zd.values(n, m) == Complex(n == 0 ? 1.0 : 0.0));

  testing::Rng rng(6);
  const auto psi = testing::random_vector(5, rng);
  const auto z1 = zak_transform(psi, 1, 5);
  for (int n = 0; n < 5; ++n) CHECK(z1.values(n, 0) == psi(n));

  const auto z = zak_transform(vec({1.0, 0.0, 1.0, 0.0}), 2, 2);
  for (int m = 0; m < 2; ++m) {
    CHECK(std::abs(z.values(0, m) - (1.0 + std::polar(1.0, -M_PI * m))) < 1e-15);
    CHECK(std::abs(z.values(1, m)) < 1e-15);
  }

  for (auto [l, m] : {std::pair{2, 3}, std::pair{4, 3}, std::pair{5, 2}}) {
    const auto v = testing::random_vector(l * m, rng);
    const auto zv = zak_transform(v, l, m);
    CHECK(zv.values.cwiseAbs2().sum() == doctest::Approx(l * v.squaredNorm()).epsilon(1e-12));
    CHECK(max_abs(inverse_zak(zv) - v) < 1e-13);
    for (int n = 0; n < m; ++n) {
      for (int f = 0; f < l; ++f) {
        const Complex shifted = zak_value(v, l, m, n + m, f);
        CHECK(std::abs(shifted - std::polar(1.0, 2.0 * M_PI * f / l) * zv.values(n, f)) < 1e-12);
        CHECK(std::abs(zak_value(v, l, m, n - m, f) - std::polar(1.0, -2.0 * M_PI * f / l) * zv.values(n, f)) <
              1e-12);
      }
    }
    // linearity
    const auto w = testing::random_vector(l * m, rng);
    const Complex a(0.3, -1.2);
    CHECK(max_abs(zak_transform(a * v + w, l, m).values - (a * zv.values + zak_transform(w, l, m).values)) < 1e-12);
  }

  try {
    zak_transform(testing::random_vector(7, rng), 2, 3);
    FAIL("expected BadFactorization");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadFactorization);
  }
  CHECK_THROWS_AS(inverse_zak(ZakArray{2, 3, Eigen::MatrixXcd::Zero(2, 3)}), Error);
}

TEST_CASE("Gabor bracket calibration against the operator side") {
  testing::Rng rng(7);
  for (auto [l, m] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{4, 4}}) {
    const auto rep = gabor_representation(l, m);
    Eigen::VectorXcd d = Eigen::VectorXcd::Zero(l * m);
    d(0) = 1.0;
    for (const auto& psi : {d, testing::random_vector(l * m, rng)}) {
      const auto phi = testing::random_vector(l * m, rng);
      CHECK(max_abs(gabor_bracket_via_zak(phi, psi, l, m).values() - scalar_bracket(rep, phi, psi).values()) < 1e-12);
      CHECK(max_abs(gabor_bracket_via_zak(psi, psi, l, m).values() - scalar_bracket(rep, psi, psi).values()) < 1e-12);
    }
  }
}

TEST_CASE("Gabor orbit generators") {
  const int l = 3, m = 2;
  // delta_0 lands on the lattice points {M k}, so its orbit repeats vectors
  // and the bracket is M on the characters with b = 0 and zero elsewhere.
  Eigen::VectorXcd d = Eigen::VectorXcd::Zero(l * m);
  d(0) = 1.0;
  const auto bd = gabor_bracket_via_zak(d, d, l, m);
  for (int a = 0; a < l; ++a)
    for (int b = 0; b < m; ++b) CHECK(std::abs(bd(a * m + b) - Complex(b == 0 ? m : 0.0)) < 1e-14);
  CHECK(analyze_orbit(OrbitSystem(gabor_representation(l, m), d)).verdict == Verdict::FrameNotRiesz);

  // A normalized box over one block of M samples generates an orthonormal basis.
  Eigen::VectorXcd box = Eigen::VectorXcd::Zero(l * m);
  box.head(m).setConstant(1.0 / std::sqrt(static_cast<double>(m)));
  const auto bb = gabor_bracket_via_zak(box, box, l, m);
  CHECK(max_abs(bb.values() - Eigen::VectorXcd::Ones(l * m)) < 1e-14);
  const auto report = analyze_orbit(OrbitSystem(gabor_representation(l, m), box));
  CHECK(report.verdict == Verdict::Riesz);
  CHECK(report.riesz_bounds->lower == doctest::Approx(1.0));
  CHECK(report.riesz_bounds->upper == doctest::Approx(1.0));
}

TEST_CASE("Gabor bracket vanishes for orthogonal pairs") {
  testing::Rng rng(8);
  const int l = 2, m = 3;
  const auto rep = gabor_representation(l, m);
  // psi spanning a proper subspace: zero out half its Zak array
  ZakArray z = zak_transform(testing::random_vector(l * m, rng), l, m);
  z.values.row(0).setZero();
  const auto psi = inverse_zak(z);
  ZakArray zp = zak_transform(testing::random_vector(l * m, rng), l, m);
  for (int n = 1; n < m; ++n) zp.values.row(n).setZero();
  const auto phi = inverse_zak(zp);
  for (int g = 0; g < rep.group()->order(); ++g) CHECK(std::abs(testing::inner_product(phi, rep(g) * psi)) < 1e-12);
  CHECK(max_abs(gabor_bracket_via_zak(phi, psi, l, m).values()) < 1e-12);

  CHECK_THROWS_AS(gabor_bracket_via_zak(phi, testing::random_vector(5, rng), l, m), Error);
}

TEST_CASE("support indicators") {
  auto z2 = make_builtin_group("Z2");
  CHECK(max_abs(support_indicator(DualFunction(z2, vec({4.0, 0.0}))).values() - vec({1.0, 0.0})) == 0.0);
  CHECK(max_abs(support_indicator(DualFunction(z2, vec({0.2, 0.2}))).values() - vec({1.0, 1.0})) == 0.0);
  CHECK(max_abs(support_indicator(DualFunction(z2, vec({0.0, 0.0}))).values()) == 0.0);
  try {
    support_indicator(DualFunction(z2, vec({1.0, Complex(0, 1e-3)})));
    FAIL("expected NotRealValued");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotRealValued);
  }
  CHECK_NOTHROW(support_indicator(DualFunction(z2, vec({1.0, Complex(0, 1e-12)}))));

  testing::Rng rng(9);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto g = make_builtin_group("Z3xZ4");
  for (int t = 0; t < 20; ++t) {
    Eigen::VectorXcd m(12);
    for (auto& x : m) x = unit(rng) < 0.4 ? 0.0 : unit(rng) + 0.01;
    const DualFunction mult(g, m);
    const auto via_op = lambda_multiplier(support_projection(inverse_lambda(mult)).op()).values();
    CHECK(max_abs(via_op - support_indicator(mult).values()) < 1e-10);
  }
}

TEST_CASE("sandwich equivalence examples") {
  Eigen::VectorXcd d = Eigen::VectorXcd::Zero(4);
  d(0) = 1.0;
  const auto rep4 = parse_rep_spec("regular:Z4");
  const auto unit = check_sandwich_equivalence(rep4, d, 1.0, 1.0);
  CHECK(unit.operator_side);
  CHECK(unit.scalar_side);

  const auto z2 = check_sandwich_equivalence(parse_rep_spec("regular:Z2"), vec({1.0, 1.0}), 4.0, 4.0);
  CHECK(z2.operator_side);
  CHECK(z2.scalar_side);

  const auto psi = vec({1.0, 0.5, 0.0, 0.0});
  const auto off = check_sandwich_equivalence(rep4, psi, 0.3, 2.25);
  CHECK_FALSE(off.operator_side);
  CHECK_FALSE(off.scalar_side);
  CHECK(off.agree());
  const auto on = check_sandwich_equivalence(rep4, psi, 0.25, 2.25);
  CHECK(on.operator_side);
  CHECK(on.scalar_side);
  const auto low_b = check_sandwich_equivalence(rep4, psi, 0.25, 2.0);
  CHECK_FALSE(low_b.operator_side);
  CHECK_FALSE(low_b.scalar_side);

  CHECK_THROWS_AS(check_sandwich_equivalence(rep4, psi, 0.0, 1.0), Error);
  CHECK_THROWS_AS(check_sandwich_equivalence(rep4, psi, 2.0, 1.0), Error);
  try {
    check_sandwich_equivalence(parse_rep_spec("regular:D4"), Eigen::VectorXcd::Ones(8), 1.0, 2.0);
    FAIL("expected NotAbelian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAbelian);
  }
}

}  // TEST_SUITE
