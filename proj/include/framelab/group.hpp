#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "framelab/error.hpp"

namespace framelab {

using Complex = std::complex<double>;

inline constexpr std::size_t kDefaultMaxOrder = 4096;

enum class GroupKind { CyclicProduct, Dihedral, Heisenberg, CustomTable };

std::string_view to_string(GroupKind kind);

/// Z_{d1} x ... x Z_{dk}. Element coordinates use mixed radix with the last
/// factor varying fastest, so Z_N enumerates as 0..N-1.
struct AbelianStructure {
  std::vector<int> factors;

  int order() const;
  std::vector<int> coordinates(int index) const;
  int index(std::span<const int> coords) const;
};

/// A finite group given by its full multiplication table. Instances are
/// immutable and shared through GroupPtr.
class FiniteGroup {
 public:
  int order() const { return order_; }
  int product(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  int inverse(int a) const { return inverse_[a]; }
  int identity() const { return identity_; }
  bool is_abelian() const { return is_abelian_; }
  GroupKind kind() const { return kind_; }
  const std::optional<AbelianStructure>& abelian_structure() const { return abelian_; }

  /// Canonical group-spec string ("Z2xZ4", "D4", "H3", "table:<path>").
  const std::string& spec() const { return spec_; }

  bool contains(int a) const { return a >= 0 && a < order_; }

  // Factories need the raw constructor; everything else goes through them.
  struct Parts {
    int order = 0;
    std::vector<int> table;
    GroupKind kind = GroupKind::CustomTable;
    std::optional<AbelianStructure> abelian;
    std::string spec;
  };
  explicit FiniteGroup(Parts parts);

 private:
  int order_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
  bool is_abelian_ = false;
  GroupKind kind_;
  std::optional<AbelianStructure> abelian_;
  std::string spec_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr make_abelian_group(std::span<const int> factors,
                            std::size_t max_order = kDefaultMaxOrder);

/// Like make_abelian_group but tolerates unit factors, which are dropped
/// (all-unit input gives the trivial group). Used by the shift and Gabor
/// models, where N = 1 or L = 1 are legitimate degenerate lattices.
GroupPtr make_cyclic_product_group(std::span<const int> factors,
                                   std::size_t max_order = kDefaultMaxOrder);

/// Accepts "Z<n>", "Z<n>x...xZ<m>", "D<n>" (dihedral of order 2n) and
/// "H<p>" (unitriangular 3x3 matrices over Z_p).
GroupPtr make_builtin_group(std::string_view name, std::size_t max_order = kDefaultMaxOrder);

/// Validates closure, identity, inverses and associativity before accepting
/// the table. Associativity is checked exhaustively up to order 512 and on a
/// fixed pseudo-random sample of triples above that.
GroupPtr make_group_from_table(const std::vector<std::vector<int>>& table,
                               std::size_t max_order = kDefaultMaxOrder,
                               std::string label = "table:<inline>");

/// Full group-spec grammar: the built-in names plus "table:PATH", where PATH
/// is a JSON array of arrays of 0-based indices.
GroupPtr parse_group_spec(std::string_view spec, std::size_t max_order = kDefaultMaxOrder);

/// Reads FRAME_LAB_MAX_ORDER when set, otherwise returns kDefaultMaxOrder.
std::size_t max_order_from_env();

class Character {
 public:
  Character(GroupPtr group, std::vector<int> exponents);

  const std::vector<int>& exponents() const { return exponents_; }
  const GroupPtr& group() const { return group_; }

  /// exp(+2 pi i sum_i m_i a_i / d_i)
  Complex operator()(int element) const;

 private:
  GroupPtr group_;
  std::vector<int> exponents_;
};

/// The |G| characters of an abelian group, indexed like the elements
/// (character 0 is trivial). Throws NotAbelian when the group carries no
/// abelian structure.
std::vector<Character> characters(const GroupPtr& group);

/// alpha_m(gamma) for character index m and element index gamma.
Complex character_value(const FiniteGroup& group, int character, int element);

class GroupFunction {
 public:
  GroupFunction(GroupPtr group, Eigen::VectorXcd values);
  explicit GroupFunction(GroupPtr group);  // zero function

  static GroupFunction delta(GroupPtr group, int element);

  const GroupPtr& group() const { return group_; }
  const Eigen::VectorXcd& values() const { return values_; }
  Complex operator()(int element) const { return values_(element); }
  int size() const { return static_cast<int>(values_.size()); }

 private:
  GroupPtr group_;
  Eigen::VectorXcd values_;
};

void require_same_group(const FiniteGroup& a, const FiniteGroup& b);

/// (u * v)(g) = sum_h u(g h^-1) v(h)
GroupFunction convolve(const GroupFunction& u, const GroupFunction& v);

}  // namespace framelab
