#include <algorithm>
#include <cmath>
#include <random>
#include <string_view>

#include "framelab/abelian.hpp"
#include "framelab/cli.hpp"
#include "framelab/frame.hpp"
#include "framelab/representation.hpp"

namespace framelab::cli {

namespace {

using Rng = std::mt19937_64;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Eigen::VectorXcd random_vector(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(n);
  for (auto& x : v) x = Complex(normal(rng), normal(rng));
  return v;
}

ConvolutionOperator random_operator(const GroupPtr& group, Rng& rng) {
  return ConvolutionOperator(GroupFunction(group, random_vector(group->order(), rng)));
}

double max_abs(const Eigen::VectorXcd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

struct Check {
  double deviation = 0.0;
  double tolerance = 0.0;

  bool pass() const { return deviation <= tolerance; }
  nlohmann::json json() const { return {{"max_deviation", deviation}, {"tolerance", tolerance}, {"pass", pass()}}; }
};

using CheckMap = std::map<std::string, Check>;

void check_representation(const UnitaryRepresentation& rep, CheckMap& checks) {
  checks["representation"] = {verify_representation(rep, 1e-13).max_deviation, 1e-13};
}

void check_bracket_gramian(const UnitaryRepresentation& rep, Rng& rng, CheckMap& checks) {
  Check entry{0.0, 1e-11}, trace{0.0, 1e-12};
  for (int t = 0; t < 10; ++t) {
    const auto c = verify_bracket_equals_gramian(OrbitSystem(rep, random_vector(rep.dim(), rng)));
    entry.deviation = std::max({entry.deviation, c.max_deviation, c.convolution_deviation});
    trace.deviation = std::max(trace.deviation, c.trace_deviation);
  }
  checks["bracket_gramian"] = entry;
  checks["bracket_trace"] = trace;
}

void check_routes(const UnitaryRepresentation& rep, Rng& rng, CheckMap& checks) {
  Check c{0.0, kRouteAgreementTolerance};
  for (int t = 0; t < 5; ++t) {
    const auto report = analyze_orbit(OrbitSystem(rep, random_vector(rep.dim(), rng)));
    for (const auto& [name, route] : report.routes) c.deviation = std::max(c.deviation, route.deviation);
    if (!report.routes_agree) c.deviation = std::max(c.deviation, 1.0);
  }
  checks["route_agreement"] = c;
}

void check_multiplier(const GroupPtr& group, Rng& rng, CheckMap& checks) {
  const double n = group->order();
  Check hom{0.0, 1e-10}, star{0.0, 1e-10}, iso{0.0, 1e-10}, spec{0.0, 1e-10}, inv{0.0, 1e-12};
  for (int t = 0; t < 10; ++t) {
    const auto f = random_operator(group, rng);
    const auto g = random_operator(group, rng);
    const Eigen::VectorXcd lf = lambda_multiplier(f).values();
    const Eigen::VectorXcd lg = lambda_multiplier(g).values();
    const Eigen::VectorXcd prod = lf.cwiseProduct(lg);
    hom.deviation = std::max(hom.deviation, max_abs(lambda_multiplier(f * g).values() - prod) /
                                                std::max(1.0, max_abs(prod)));
    star.deviation = std::max(star.deviation, max_abs(lambda_multiplier(f.adjoint()).values() - lf.conjugate()) /
                                                  std::max(1.0, max_abs(lf)));
    inv.deviation =
        std::max(inv.deviation, max_abs(inverse_lambda(lambda_multiplier(f)).coefficients().values() -
                                        f.coefficients().values()) /
                                    std::max(1.0, max_abs(f.coefficients().values())));

    const auto h = f + f.adjoint();
    const Eigen::VectorXd lh = lambda_multiplier(h).real_values();
    for (double p : {1.0, 2.0, 4.0, kInfinity}) {
      const double scalar = std::isinf(p) ? lh.cwiseAbs().maxCoeff()
                                          : std::pow(lh.cwiseAbs().array().pow(p).sum() / n, 1.0 / p);
      iso.deviation = std::max(iso.deviation, std::abs(lp_norm(h, p) - scalar) / std::max(1.0, scalar));
    }
    Eigen::VectorXd sorted = lh;
    std::sort(sorted.begin(), sorted.end());
    const Eigen::VectorXd eig = spectral_data(h).eigenvalues;
    spec.deviation = std::max(spec.deviation, (sorted - eig).cwiseAbs().maxCoeff() / std::max(1.0, eig.cwiseAbs().maxCoeff()));
  }
  checks["lambda_homomorphism"] = hom;
  checks["lambda_star"] = star;
  checks["lambda_isometry"] = iso;
  checks["lambda_spectrum"] = spec;
  checks["lambda_inverse"] = inv;

  // Support lemma on nonnegative multipliers with forced zeros.
  Check support{0.0, 0.0};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    Eigen::VectorXcd m(group->order());
    for (auto& x : m) x = unit(rng) < 0.3 ? 0.0 : 0.1 + unit(rng);
    const DualFunction mult(group, m);
    const auto f = inverse_lambda(mult);
    const Eigen::VectorXcd chi = support_indicator(mult).values();
    const Eigen::VectorXd from_op = lambda_multiplier(support_projection(f).op()).real_values();
    for (Eigen::Index i = 0; i < chi.size(); ++i) {
      const double rounded = from_op(i) > 0.5 ? 1.0 : 0.0;
      if (std::abs(rounded - from_op(i)) > 1e-9 || rounded != chi(i).real()) support.deviation += 1.0;
    }
  }
  checks["support_lemma"] = support;
}

void check_sandwich(const UnitaryRepresentation& rep, Rng& rng, CheckMap& checks) {
  Check c{0.0, 0.0};
  for (int t = 0; t < 5; ++t) {
    const Eigen::VectorXcd psi = random_vector(rep.dim(), rng);
    const auto s = classify_spectrum(spectral_data(bracket_operator(rep, psi, psi)).eigenvalues);
    if (!s.nonzero_bounds) continue;
    const auto [lo, hi] = *s.nonzero_bounds;
    for (auto [a, b] : {std::pair{lo, hi}, std::pair{lo * 1.1, hi}, std::pair{lo, hi * 0.9}, std::pair{lo * 0.5, hi * 2}}) {
      if (a > b) continue;
      if (!check_sandwich_equivalence(rep, psi, a, b).agree()) c.deviation += 1.0;
    }
  }
  checks["sandwich_agreement"] = c;
}

void check_model_bracket(const UnitaryRepresentation& rep, std::string_view target, Rng& rng, CheckMap& checks) {
  int x = 0, y = 0;
  const auto colon = target.find(':');
  const auto comma = target.find(',');
  x = std::stoi(std::string(target.substr(colon + 1, comma - colon - 1)));
  y = std::stoi(std::string(target.substr(comma + 1)));
  const bool shift = target.starts_with("shift:");
  Check c{0.0, 1e-10};
  for (int t = 0; t < 10; ++t) {
    const Eigen::VectorXcd phi = random_vector(rep.dim(), rng);
    const Eigen::VectorXcd psi = shift ? phi : random_vector(rep.dim(), rng);
    const Eigen::VectorXcd oracle = scalar_bracket(rep, phi, psi).values();
    const Eigen::VectorXcd fast = shift ? periodization_bracket(psi, x, y).values()
                                        : gabor_bracket_via_zak(phi, psi, x, y).values();
    c.deviation = std::max(c.deviation, max_abs(fast - oracle) / std::max(1.0, max_abs(oracle)));
  }
  checks[shift ? "periodization_vs_scalar" : "zak_vs_scalar"] = c;
}

Check check_duallemma_suite(Rng& rng) {
  Check c{0.0, 0.0};
  std::uniform_int_distribution<int> dim(1, 12);
  for (int t = 0; t < 20; ++t) {
    const Eigen::MatrixXcd k = Eigen::MatrixXcd::NullaryExpr(dim(rng), dim(rng), [&] {
      std::normal_distribution<double> normal;
      return Complex(normal(rng), normal(rng));
    });
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(k);
    const Eigen::VectorXd s2 = svd.singularValues().array().square();
    const double lo = s2.minCoeff() > 1e-10 * s2.maxCoeff() ? s2.minCoeff() : s2.maxCoeff();
    const auto exact = check_duallemma(k, lo, s2.maxCoeff());
    if (!exact.consistent() || !exact.holds[0]) c.deviation += 1.0;
    const auto moved = check_duallemma(k, lo * 1.05, std::max(lo * 1.05, s2.maxCoeff()));
    if (!moved.consistent() || moved.holds[0]) c.deviation += 1.0;
  }
  return c;
}

}  // namespace

std::vector<std::string> default_verify_targets() {
  return {"Z2", "Z4", "Z2xZ2", "Z3xZ4", "D4", "H3", "shift:4,2", "gabor:2,3"};
}

SuiteResult run_verify_suite(const std::vector<std::string>& targets, std::uint64_t seed, bool inject_fault) {
  SuiteResult result;
  result.pass = true;
  nlohmann::json entries = nlohmann::json::array();
  const auto max_order = max_order_from_env();

  for (const auto& target : targets) {
    Rng rng(seed ^ fnv1a(target));
    const bool model = target.starts_with("shift:") || target.starts_with("gabor:");
    const UnitaryRepresentation rep =
        model ? parse_rep_spec(target, max_order) : regular_representation(parse_group_spec(target, max_order));
    const GroupPtr& group = rep.group();
    const bool abelian = group->abelian_structure().has_value();

    CheckMap checks;
    nlohmann::json notices = nlohmann::json::array();
    check_representation(rep, checks);
    check_bracket_gramian(rep, rng, checks);
    check_routes(rep, rng, checks);
    if (abelian) {
      check_multiplier(group, rng, checks);
      check_sandwich(rep, rng, checks);
      if (model) check_model_bracket(rep, target, rng, checks);
    } else {
      notices.push_back("multiplier checks skipped: '" + group->spec() +
                        "' is not abelian, and the multiplier map is defined for abelian groups only");
    }
    if (inject_fault && &target == &targets.front()) checks["bracket_gramian"].deviation += 1.0;

    nlohmann::json check_json = nlohmann::json::object();
    for (const auto& [name, c] : checks) {
      check_json[name] = c.json();
      result.pass = result.pass && c.pass();
    }
    entries.push_back({{"target", target},
                       {"group", group->spec()},
                       {"abelian", abelian},
                       {"checks", check_json},
                       {"notices", notices}});
  }

  Rng rng(seed ^ fnv1a("duallemma"));
  const Check dual = check_duallemma_suite(rng);
  result.pass = result.pass && dual.pass();

  result.report = {{"schema", "frame-lab/1"},
                   {"seed", seed},
                   {"targets", entries},
                   {"duallemma", dual.json()},
                   {"pass", result.pass}};
  return result;
}

}  // namespace framelab::cli
