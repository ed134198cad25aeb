#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "framelab/group.hpp"
#include "framelab/vn_algebra.hpp"

namespace framelab {

inline constexpr std::size_t kDefaultMaxDim = 4096;
/// Total complex entries allowed across all stored matrices (|G| * n^2).
inline constexpr std::size_t kMaxStoredEntries = std::size_t{1} << 26;

/// <x, y> = sum_i x_i conj(y_i); linear in the first slot.
Complex inner(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y);

/// gamma -> U(gamma) on C^n, stored densely.
class UnitaryRepresentation {
 public:
  /// Only shapes are checked here; use verify_representation for the algebra.
  UnitaryRepresentation(GroupPtr group, std::vector<Eigen::MatrixXcd> matrices, std::string label);

  const GroupPtr& group() const { return group_; }
  int dim() const { return dim_; }
  const std::string& label() const { return label_; }
  const Eigen::MatrixXcd& operator()(int element) const { return matrices_.at(element); }
  const std::vector<Eigen::MatrixXcd>& matrices() const { return matrices_; }

 private:
  GroupPtr group_;
  int dim_ = 0;
  std::vector<Eigen::MatrixXcd> matrices_;
  std::string label_;
};

/// U(gamma) = lambda(gamma) on l2(G).
UnitaryRepresentation regular_representation(GroupPtr group);

/// Z_N acting on C^{NM} by cyclic shifts of k*M samples.
UnitaryRepresentation shift_model_representation(int n, int m, std::size_t max_dim = kDefaultMaxDim);

/// Z_L x Z_M acting on C^N, N = L*M, by Pi(k, l) = Mod_{L l} Shift_{M k} with
/// (Shift_a v)(j) = v(j - a) and (Mod_b v)(j) = exp(-2 pi i b j / N) v(j).
/// The element (k, l) has index k*M + l.
UnitaryRepresentation gabor_representation(int l, int m, std::size_t max_dim = kDefaultMaxDim);

/// rep := "regular:" group-spec | "shift:" N "," M | "gabor:" L "," M
UnitaryRepresentation parse_rep_spec(std::string_view spec, std::size_t max_order = kDefaultMaxOrder);

struct OrbitSystem {
  UnitaryRepresentation rep;
  Eigen::VectorXcd generator;

  OrbitSystem(UnitaryRepresentation r, Eigen::VectorXcd psi);

  /// n x |G| matrix whose column gamma is U(gamma) psi.
  Eigen::MatrixXcd synthesis_matrix() const;
};

/// g(gamma) = <phi, U(gamma) psi>
GroupFunction correlation_function(const UnitaryRepresentation& rep, const Eigen::VectorXcd& phi,
                                   const Eigen::VectorXcd& psi);

/// [phi, psi]: the operator in R(G) whose Fourier coefficients are the
/// correlation function, tau([phi, psi] rho(gamma)) = <phi, U(gamma) psi>.
ConvolutionOperator bracket_operator(const UnitaryRepresentation& rep, const Eigen::VectorXcd& phi,
                                     const Eigen::VectorXcd& psi);

struct RepresentationReport {
  bool pass = false;
  double max_deviation = 0.0;
  double identity_deviation = 0.0;
  double unitarity_deviation = 0.0;
  double homomorphism_deviation = 0.0;
  /// The (a, b) pair with the largest |U(a)U(b) - U(ab)|, when any pair was checked.
  std::optional<std::pair<int, int>> worst_pair;
  std::size_t pairs_checked = 0;
  bool exhaustive = false;
};

/// Exhaustive pair check for |G| <= 64, otherwise 256 seeded random pairs.
RepresentationReport verify_representation(const UnitaryRepresentation& rep, double tol = 1e-12,
                                           std::uint64_t seed = 0);

}  // namespace framelab
