#include "framelab/frame.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "framelab/abelian.hpp"

namespace framelab {

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Eigen::VectorXd sorted_gram_spectrum(const Eigen::MatrixXcd& gram) {
  if (gram.size() == 0) return {};
  const Eigen::MatrixXcd sym = 0.5 * (gram + gram.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double min_eigenvalue(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  const Eigen::MatrixXcd sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

RouteResult route_from_spectrum(Eigen::VectorXd spectrum, const Eigen::VectorXd& reference, double tol) {
  std::sort(spectrum.begin(), spectrum.end());
  RouteResult r;
  if (spectrum.size() == reference.size() && spectrum.size() > 0) {
    const double scale = std::max(reference.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    r.deviation = (spectrum - reference).cwiseAbs().maxCoeff() / scale;
  } else if (spectrum.size() != reference.size()) {
    r.deviation = kInfinity;
  }
  r.summary = classify_spectrum(std::move(spectrum), tol);
  r.verdict = verdict_for(r.summary);
  return r;
}

nlohmann::json bounds_json(const std::optional<Bounds>& b) {
  if (!b) return nullptr;
  return nlohmann::json::array({b->lower, b->upper});
}

}  // namespace

Eigen::MatrixXcd gram_matrix(const VectorSystem& system) { return system.synthesis.adjoint() * system.synthesis; }

Eigen::MatrixXcd frame_operator_matrix(const VectorSystem& system) {
  return system.synthesis * system.synthesis.adjoint();
}

SpectrumSummary classify_spectrum(Eigen::VectorXd sorted_spectrum, double tol) {
  SpectrumSummary s;
  s.spectrum = std::move(sorted_spectrum);
  const auto n = s.spectrum.size();
  if (n == 0) return s;
  const double top = s.spectrum(n - 1);
  if (!(top > 0.0)) {
    s.kernel_dim = static_cast<int>(n);
    return s;
  }
  s.threshold = tol * top;
  Eigen::Index first_nonzero = 0;
  while (first_nonzero < n && s.spectrum(first_nonzero) <= s.threshold) ++first_nonzero;
  s.kernel_dim = static_cast<int>(first_nonzero);
  s.nonzero_bounds = Bounds{s.spectrum(first_nonzero), top};
  if (first_nonzero > 0) s.spectral_gap = s.spectrum(first_nonzero) - s.spectrum(first_nonzero - 1);
  return s;
}

std::optional<Bounds> riesz_bounds(const VectorSystem& system, double tol) {
  const auto s = classify_spectrum(sorted_gram_spectrum(gram_matrix(system)), tol);
  if (s.kernel_dim > 0 || !s.nonzero_bounds) return std::nullopt;
  return s.nonzero_bounds;
}

FrameBoundsResult frame_bounds(const VectorSystem& system, double tol) {
  const auto s = classify_spectrum(sorted_gram_spectrum(gram_matrix(system)), tol);
  return {s.nonzero_bounds, s.kernel_dim};
}

bool DualLemmaReport::consistent() const {
  return std::all_of(holds.begin(), holds.end(), [&](bool h) { return h == holds[0]; });
}

DualLemmaReport check_duallemma(const Eigen::MatrixXcd& k, double a, double b, double tol) {
  if (!(a > 0.0) || !(b >= a)) throw Error(ErrorCode::InvalidArgument, "need 0 < A <= B");
  const Eigen::MatrixXcd g = k.adjoint() * k;
  const Eigen::MatrixXcd f = k * k.adjoint();

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd sigma = svd.singularValues();
  const double top = sigma.size() ? sigma(0) * sigma(0) : 0.0;
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) * sigma(rank) > tol * top) ++rank;
  const Eigen::MatrixXcd u = svd.matrixU().leftCols(rank);
  const Eigen::MatrixXcd v = svd.matrixV().leftCols(rank);
  const Eigen::MatrixXcd p_range = u * u.adjoint();
  const Eigen::MatrixXcd p_corange = v * v.adjoint();

  // Margins are normalized so that each condition holds exactly when its
  // margin is >= -tol.
  const double scale = std::max(top, std::numeric_limits<double>::min());
  auto sandwich = [&](const Eigen::MatrixXcd& op, const Eigen::MatrixXcd& proj) {
    return std::min(min_eigenvalue(op - a * proj), min_eigenvalue(b * proj - op)) / scale;
  };

  DualLemmaReport r;
  r.margins[0] = sandwich(f, p_range);

  const Eigen::MatrixXcd g2 = g * g;
  r.margins[1] = std::min(min_eigenvalue(g2 - a * g) / (scale * a), min_eigenvalue(b * g - g2) / (scale * b));

  const Eigen::VectorXd spec = sorted_gram_spectrum(g);
  double worst = kInfinity;
  for (Eigen::Index i = 0; i < spec.size(); ++i) {
    if (spec(i) <= tol * top) continue;
    worst = std::min({worst, (spec(i) - a) / scale, (b - spec(i)) / scale});
  }
  r.margins[2] = std::isinf(worst) ? 0.0 : worst;

  r.margins[3] = sandwich(g, p_corange);

  for (int i = 0; i < 4; ++i) r.holds[i] = r.margins[i] >= -tol;
  return r;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Riesz: return "riesz";
    case Verdict::FrameNotRiesz: return "frame_not_riesz";
    case Verdict::BesselOnlyDegenerate: return "bessel_only_degenerate";
    case Verdict::ZeroSystem: return "zero_system";
  }
  return "unknown";
}

Verdict verdict_for(const SpectrumSummary& s) {
  if (!s.nonzero_bounds) return Verdict::ZeroSystem;
  if (s.nonzero_bounds->lower <= kDegenerateFactor * s.threshold) return Verdict::BesselOnlyDegenerate;
  return s.kernel_dim == 0 ? Verdict::Riesz : Verdict::FrameNotRiesz;
}

namespace {

void fill_from_gram_route(FrameReport& report, const RouteResult& gram) {
  report.verdict = gram.verdict;
  report.gram_spectrum = gram.summary.spectrum;
  report.kernel_dim = gram.summary.kernel_dim;
  report.spectral_gap = gram.summary.spectral_gap;
  report.frame_bounds = gram.summary.nonzero_bounds;
  if (gram.summary.kernel_dim == 0) report.riesz_bounds = gram.summary.nonzero_bounds;
}

}  // namespace

FrameReport analyze_system(const VectorSystem& system, double tol) {
  FrameReport report;
  report.tolerance = tol;
  const Eigen::VectorXd spectrum = sorted_gram_spectrum(gram_matrix(system));
  const RouteResult gram = route_from_spectrum(spectrum, spectrum, tol);
  fill_from_gram_route(report, gram);
  report.routes.emplace("gram", gram);
  return report;
}

FrameReport analyze_orbit(const OrbitSystem& orbit, double tol) {
  if (orbit.generator.norm() <= 1e-12) throw Error(ErrorCode::ZeroGenerator, "generator is zero");
  FrameReport report = analyze_system(VectorSystem(orbit.synthesis_matrix()), tol);
  report.rep_label = orbit.rep.label();
  const Eigen::VectorXd& reference = report.gram_spectrum;

  const ConvolutionOperator bracket = bracket_operator(orbit.rep, orbit.generator, orbit.generator);
  report.routes.emplace("bracket", route_from_spectrum(spectral_data(bracket, tol).eigenvalues, reference, tol));

  if (orbit.rep.group()->abelian_structure()) {
    const DualFunction scalar = lambda_multiplier(bracket);
    report.routes.emplace("scalar", route_from_spectrum(scalar.real_values(), reference, tol));
  }

  report.routes_agree = std::all_of(report.routes.begin(), report.routes.end(), [&](const auto& kv) {
    return kv.second.verdict == report.verdict && kv.second.deviation <= kRouteAgreementTolerance;
  });
  return report;
}

BracketGramianCheck verify_bracket_equals_gramian(const OrbitSystem& orbit, double tol) {
  BracketGramianCheck check;
  const auto& group = orbit.rep.group();
  const Eigen::MatrixXcd gram = gram_matrix(VectorSystem(orbit.synthesis_matrix()));
  const ConvolutionOperator bracket = bracket_operator(orbit.rep, orbit.generator, orbit.generator);
  check.max_deviation = max_abs(bracket.matrix() - gram);

  const double norm2 = orbit.generator.squaredNorm();
  const int e = group->identity();
  check.trace_deviation =
      std::max(std::abs(gram(e, e) - norm2), std::abs(trace_tau(bracket) - Complex(norm2)));

  // The Gramian acts on l2(G) as right convolution by g(gamma) = <psi, U(gamma) psi>.
  const GroupFunction g = correlation_function(orbit.rep, orbit.generator, orbit.generator);
  std::mt19937_64 rng(0);
  std::normal_distribution<double> normal;
  for (int probe = 0; probe < 4; ++probe) {
    Eigen::VectorXcd f(group->order());
    if (probe == 0) {
      f = GroupFunction::delta(group, e).values();
    } else {
      for (auto& x : f) x = Complex(normal(rng), normal(rng));
    }
    const Eigen::VectorXcd lhs = gram * f;
    const Eigen::VectorXcd rhs = convolve(GroupFunction(group, f), g).values();
    check.convolution_deviation = std::max(check.convolution_deviation, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  check.pass = check.max_deviation <= tol && check.trace_deviation <= tol && check.convolution_deviation <= tol;
  return check;
}

nlohmann::json to_json(const FrameReport& report) {
  nlohmann::json routes = nlohmann::json::object();
  for (const auto& [name, r] : report.routes) {
    routes[name] = {{"verdict", to_string(r.verdict)},
                    {"deviation", r.deviation},
                    {"kernel_dim", r.summary.kernel_dim},
                    {"bounds", bounds_json(r.summary.nonzero_bounds)}};
  }
  nlohmann::json j = {
      {"schema", "frame-lab/1"},
      {"verdict", to_string(report.verdict)},
      {"riesz_bounds", bounds_json(report.riesz_bounds)},
      {"frame_bounds", bounds_json(report.frame_bounds)},
      {"spectrum", std::vector<double>(report.gram_spectrum.begin(), report.gram_spectrum.end())},
      {"kernel_dim", report.kernel_dim},
      {"spectral_gap", report.spectral_gap},
      {"routes", routes},
      {"routes_agree", report.routes_agree},
      {"tolerance", report.tolerance},
  };
  if (!report.rep_label.empty()) j["rep"] = report.rep_label;
  return j;
}

}  // namespace framelab
