#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "framelab/representation.hpp"
#include "framelab/vn_algebra.hpp"
#include "json.hpp"

namespace framelab {

inline constexpr double kRouteAgreementTolerance = 1e-9;

/// Columns of the synthesis matrix T are the vectors psi_j.
struct VectorSystem {
  Eigen::MatrixXcd synthesis;

  VectorSystem() = default;
  explicit VectorSystem(Eigen::MatrixXcd t) : synthesis(std::move(t)) {}

  int dim() const { return static_cast<int>(synthesis.rows()); }
  int size() const { return static_cast<int>(synthesis.cols()); }
};

/// Entry (k, j) = <psi_j, psi_k>, i.e. T^* T.
Eigen::MatrixXcd gram_matrix(const VectorSystem& system);
/// T T^*
Eigen::MatrixXcd frame_operator_matrix(const VectorSystem& system);

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Zero/nonzero split of a sorted PSD spectrum: an eigenvalue counts as zero
/// when it is <= tol * lambda_max.
struct SpectrumSummary {
  Eigen::VectorXd spectrum;
  double threshold = 0.0;
  int kernel_dim = 0;
  std::optional<Bounds> nonzero_bounds;
  /// Smallest nonzero eigenvalue minus the largest zero one (0 when either
  /// side is empty and there is nothing to separate).
  double spectral_gap = 0.0;
};

SpectrumSummary classify_spectrum(Eigen::VectorXd sorted_spectrum, double tol = kDefaultTolerance);

/// Optimal Riesz bounds (lambda_min, lambda_max) of the Gram matrix, absent
/// when lambda_min is classified as zero.
std::optional<Bounds> riesz_bounds(const VectorSystem& system, double tol = kDefaultTolerance);

struct FrameBoundsResult {
  std::optional<Bounds> bounds;  // absent only for the zero system
  int kernel_dim = 0;
};

/// Optimal frame bounds: extrema of the nonzero Gram spectrum.
FrameBoundsResult frame_bounds(const VectorSystem& system, double tol = kDefaultTolerance);

struct DualLemmaReport {
  /// i. A P_Ran(K) <= KK^* <= B P_Ran(K); ii. A G <= G^2 <= B G;
  /// iii. sigma(G) in {0} u [A, B]; iv. A P_Ran(K^*) <= G <= B P_Ran(K^*).
  std::array<bool, 4> holds{};
  /// Worst normalized slack per condition; negative means violated.
  std::array<double, 4> margins{};
  bool consistent() const;
};

/// Evaluates the four equivalent conditions for G = K^*K and F = KK^*
/// independently. Range projections come from the SVD of K with the same
/// zero policy as classify_spectrum.
DualLemmaReport check_duallemma(const Eigen::MatrixXcd& k, double a, double b, double tol = kDefaultTolerance);

enum class Verdict { Riesz, FrameNotRiesz, BesselOnlyDegenerate, ZeroSystem };

std::string_view to_string(Verdict v);

/// Per-route outcome: spectrum, split and verdict as seen by one route.
struct RouteResult {
  Verdict verdict = Verdict::ZeroSystem;
  SpectrumSummary summary;
  double deviation = 0.0;  // max |spectrum - gram spectrum| / lambda_max
};

struct FrameReport {
  Verdict verdict = Verdict::ZeroSystem;
  std::optional<Bounds> riesz_bounds;
  std::optional<Bounds> frame_bounds;
  Eigen::VectorXd gram_spectrum;
  int kernel_dim = 0;
  double spectral_gap = 0.0;
  std::map<std::string, RouteResult> routes;
  bool routes_agree = true;
  double tolerance = kDefaultTolerance;
  std::string rep_label;
};

/// Verdict policy for a classified spectrum. A nonzero eigenvalue sitting
/// within kDegenerateFactor of the zero threshold leaves the {0} u [A, B]
/// split unresolved and yields BesselOnlyDegenerate.
inline constexpr double kDegenerateFactor = 100.0;
Verdict verdict_for(const SpectrumSummary& s);

FrameReport analyze_system(const VectorSystem& system, double tol = kDefaultTolerance);

/// Decides Riesz / frame status of an orbit through the Gram matrix, the
/// operator bracket and, for groups with an abelian structure, the scalar
/// bracket. Throws ZeroGenerator when ||psi|| <= 1e-12.
FrameReport analyze_orbit(const OrbitSystem& orbit, double tol = kDefaultTolerance);

struct BracketGramianCheck {
  /// max |matrix([psi, psi]) - T^* T| entrywise
  double max_deviation = 0.0;
  /// |tau(G) - ||psi||^2|
  double trace_deviation = 0.0;
  /// max |G f - f * g| over a few probe vectors f
  double convolution_deviation = 0.0;
  bool pass = false;
};

BracketGramianCheck verify_bracket_equals_gramian(const OrbitSystem& orbit, double tol = 1e-11);

nlohmann::json to_json(const FrameReport& report);

}  // namespace framelab
