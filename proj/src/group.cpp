#include "framelab/group.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>

#include "json.hpp"

namespace framelab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyFactors: return "EmptyFactors";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NoInverse: return "NoInverse";
    case ErrorCode::MalformedTable: return "MalformedTable";
    case ErrorCode::NotAbelian: return "NotAbelian";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorCode::DimTooLarge: return "DimTooLarge";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::HomomorphismFailure: return "HomomorphismFailure";
    case ErrorCode::ZeroGenerator: return "ZeroGenerator";
    case ErrorCode::BadLength: return "BadLength";
    case ErrorCode::BadFactorization: return "BadFactorization";
    case ErrorCode::NotRealValued: return "NotRealValued";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

std::string_view to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::CyclicProduct: return "cyclic-product";
    case GroupKind::Dihedral: return "dihedral";
    case GroupKind::Heisenberg: return "heisenberg";
    case GroupKind::CustomTable: return "custom-table";
  }
  return "unknown";
}

namespace {

void check_order(std::uint64_t order, std::size_t max_order) {
  if (order > max_order) {
    throw Error(ErrorCode::OrderTooLarge, "group order " + std::to_string(order) +
                                              " exceeds the configured maximum " +
                                              std::to_string(max_order));
  }
}

}  // namespace

int AbelianStructure::order() const {
  int n = 1;
  for (int d : factors) n *= d;
  return n;
}

std::vector<int> AbelianStructure::coordinates(int index) const {
  std::vector<int> coords(factors.size());
  for (std::size_t i = factors.size(); i-- > 0;) {
    coords[i] = index % factors[i];
    index /= factors[i];
  }
  return coords;
}

int AbelianStructure::index(std::span<const int> coords) const {
  int idx = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const int d = factors[i];
    idx = idx * d + ((coords[i] % d) + d) % d;
  }
  return idx;
}

FiniteGroup::FiniteGroup(Parts parts)
    : order_(parts.order),
      table_(std::move(parts.table)),
      kind_(parts.kind),
      abelian_(std::move(parts.abelian)),
      spec_(std::move(parts.spec)) {
  const auto n = static_cast<std::size_t>(order_);
  if (order_ < 1 || table_.size() != n * n) {
    throw Error(ErrorCode::MalformedTable, "table size does not match the group order");
  }
  for (int v : table_) {
    if (v < 0 || v >= order_) throw Error(ErrorCode::MalformedTable, "entry out of range");
  }

  identity_ = -1;
  for (int e = 0; e < order_ && identity_ < 0; ++e) {
    bool unit = true;
    for (int a = 0; a < order_ && unit; ++a) {
      unit = product(e, a) == a && product(a, e) == a;
    }
    if (unit) identity_ = e;
  }
  if (identity_ < 0) throw Error(ErrorCode::NoIdentity, "no two-sided identity element");

  inverse_.assign(n, -1);
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) {
      if (product(a, b) == identity_ && product(b, a) == identity_) {
        inverse_[a] = b;
        break;
      }
    }
    if (inverse_[a] < 0) {
      throw Error(ErrorCode::NoInverse, "element " + std::to_string(a) + " has no inverse");
    }
  }

  is_abelian_ = true;
  for (int a = 0; a < order_ && is_abelian_; ++a) {
    for (int b = a + 1; b < order_; ++b) {
      if (product(a, b) != product(b, a)) {
        is_abelian_ = false;
        break;
      }
    }
  }
}

GroupPtr make_abelian_group(std::span<const int> factors, std::size_t max_order) {
  if (factors.empty()) throw Error(ErrorCode::EmptyFactors, "at least one factor is required");
  for (int d : factors) {
    if (d < 2) throw Error(ErrorCode::ParseError, "factors must be at least 2");
  }
  return make_cyclic_product_group(factors, max_order);
}

GroupPtr make_cyclic_product_group(std::span<const int> input, std::size_t max_order) {
  std::vector<int> factors;
  std::uint64_t order = 1;
  for (int d : input) {
    if (d < 1) throw Error(ErrorCode::ParseError, "factors must be positive");
    if (d == 1) continue;
    factors.push_back(d);
    order *= static_cast<std::uint64_t>(d);
    check_order(order, max_order);
  }
  if (factors.empty()) factors.push_back(1);

  AbelianStructure structure{factors};
  const int n = static_cast<int>(order);
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  std::vector<std::vector<int>> coords(n);
  for (int a = 0; a < n; ++a) coords[a] = structure.coordinates(a);
  std::vector<int> sum(factors.size());
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (std::size_t i = 0; i < factors.size(); ++i) sum[i] = coords[a][i] + coords[b][i];
      table[static_cast<std::size_t>(a) * n + b] = structure.index(sum);
    }
  }

  std::string spec;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) spec += "x";
    spec += "Z" + std::to_string(factors[i]);
  }
  return std::make_shared<const FiniteGroup>(FiniteGroup::Parts{
      n, std::move(table), GroupKind::CyclicProduct, std::move(structure), std::move(spec)});
}

namespace {

// Dihedral group of order 2n: index j*n + k stands for r^k s^j, s r s^-1 = r^-1.
GroupPtr make_dihedral(int n, std::size_t max_order) {
  check_order(2ull * static_cast<std::uint64_t>(n), max_order);
  const int order = 2 * n;
  std::vector<int> table(static_cast<std::size_t>(order) * order);
  for (int a = 0; a < order; ++a) {
    const int k1 = a % n, j1 = a / n;
    for (int b = 0; b < order; ++b) {
      const int k2 = b % n, j2 = b / n;
      const int k = ((k1 + (j1 ? -k2 : k2)) % n + n) % n;
      const int j = (j1 + j2) % 2;
      table[static_cast<std::size_t>(a) * order + b] = j * n + k;
    }
  }
  return std::make_shared<const FiniteGroup>(FiniteGroup::Parts{
      order, std::move(table), GroupKind::Dihedral, std::nullopt, "D" + std::to_string(n)});
}

// Heisenberg group over Z_p: (a,b,c) <-> [[1,a,c],[0,1,b],[0,0,1]], index a p^2 + b p + c.
GroupPtr make_heisenberg(int p, std::size_t max_order) {
  const auto p64 = static_cast<std::uint64_t>(p);
  check_order(p64 * p64 * p64, max_order);
  const int order = p * p * p;
  std::vector<int> table(static_cast<std::size_t>(order) * order);
  for (int x = 0; x < order; ++x) {
    const int a1 = x / (p * p), b1 = (x / p) % p, c1 = x % p;
    for (int y = 0; y < order; ++y) {
      const int a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
      const int a = (a1 + a2) % p;
      const int b = (b1 + b2) % p;
      const int c = (c1 + c2 + a1 * b2) % p;
      table[static_cast<std::size_t>(x) * order + y] = (a * p + b) * p + c;
    }
  }
  return std::make_shared<const FiniteGroup>(FiniteGroup::Parts{
      order, std::move(table), GroupKind::Heisenberg, std::nullopt, "H" + std::to_string(p)});
}

int parse_int(std::string_view text, std::string_view whole) {
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last || text.front() == '+' || text.front() == '-') {
    throw Error(ErrorCode::ParseError, "bad integer in group spec '" + std::string(whole) + "'");
  }
  if (value < 2) {
    throw Error(ErrorCode::ParseError, "integers in group spec must be >= 2: '" + std::string(whole) + "'");
  }
  return value;
}

std::vector<std::vector<int>> load_table_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open table file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, "invalid JSON in " + path.string() + ": " + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorCode::MalformedTable, "table must be an array of arrays");
  std::vector<std::vector<int>> table;
  for (const auto& row : doc) {
    if (!row.is_array()) throw Error(ErrorCode::MalformedTable, "table rows must be arrays");
    auto& out = table.emplace_back();
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw Error(ErrorCode::MalformedTable, "table entries must be integers");
      out.push_back(v.get<int>());
    }
  }
  return table;
}

}  // namespace

GroupPtr make_builtin_group(std::string_view name, std::size_t max_order) {
  if (name.empty()) throw Error(ErrorCode::ParseError, "empty group spec");
  switch (name.front()) {
    case 'Z': {
      std::vector<int> factors;
      std::string_view rest = name;
      while (true) {
        if (rest.empty() || rest.front() != 'Z') {
          throw Error(ErrorCode::ParseError, "expected 'Z' in group spec '" + std::string(name) + "'");
        }
        rest.remove_prefix(1);
        const auto cut = rest.find('x');
        factors.push_back(parse_int(rest.substr(0, cut), name));
        if (cut == std::string_view::npos) break;
        rest.remove_prefix(cut + 1);
      }
      return make_abelian_group(factors, max_order);
    }
    case 'D': return make_dihedral(parse_int(name.substr(1), name), max_order);
    case 'H': return make_heisenberg(parse_int(name.substr(1), name), max_order);
    default: break;
  }
  throw Error(ErrorCode::ParseError, "unknown group spec '" + std::string(name) + "'");
}

GroupPtr make_group_from_table(const std::vector<std::vector<int>>& table, std::size_t max_order,
                               std::string label) {
  const std::size_t n = table.size();
  if (n == 0) throw Error(ErrorCode::MalformedTable, "empty table");
  check_order(n, max_order);
  std::vector<int> flat;
  flat.reserve(n * n);
  for (const auto& row : table) {
    if (row.size() != n) throw Error(ErrorCode::MalformedTable, "table is not square");
    for (int v : row) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw Error(ErrorCode::MalformedTable, "entry " + std::to_string(v) + " is not a valid index");
      }
      flat.push_back(v);
    }
  }

  auto group = std::make_shared<const FiniteGroup>(FiniteGroup::Parts{
      static_cast<int>(n), std::move(flat), GroupKind::CustomTable, std::nullopt, std::move(label)});

  const int order = group->order();
  auto assoc = [&](int a, int b, int c) {
    if (group->product(group->product(a, b), c) != group->product(a, group->product(b, c))) {
      throw Error(ErrorCode::NotAssociative, "(" + std::to_string(a) + "*" + std::to_string(b) + ")*" +
                                                 std::to_string(c) + " differs from " + std::to_string(a) +
                                                 "*(" + std::to_string(b) + "*" + std::to_string(c) + ")");
    }
  };
  if (order <= 512) {
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        for (int c = 0; c < order; ++c) assoc(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> pick(0, order - 1);
    for (int t = 0; t < 1'000'000; ++t) assoc(pick(rng), pick(rng), pick(rng));
  }
  return group;
}

GroupPtr parse_group_spec(std::string_view spec, std::size_t max_order) {
  constexpr std::string_view kTable = "table:";
  if (spec.starts_with(kTable)) {
    const std::string path(spec.substr(kTable.size()));
    if (path.empty()) throw Error(ErrorCode::ParseError, "missing path after 'table:'");
    return make_group_from_table(load_table_file(path), max_order, std::string(spec));
  }
  return make_builtin_group(spec, max_order);
}

std::size_t max_order_from_env() {
  const char* env = std::getenv("FRAME_LAB_MAX_ORDER");
  if (!env || !*env) return kDefaultMaxOrder;
  std::size_t value = 0;
  std::string_view text(env);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
    throw Error(ErrorCode::ParseError, "FRAME_LAB_MAX_ORDER must be a positive integer");
  }
  return value;
}

Character::Character(GroupPtr group, std::vector<int> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
  if (!group_->abelian_structure()) throw Error(ErrorCode::NotAbelian, "characters need an abelian structure");
  if (exponents_.size() != group_->abelian_structure()->factors.size()) {
    throw Error(ErrorCode::DimMismatch, "exponent tuple has the wrong length");
  }
}

Complex Character::operator()(int element) const {
  const auto& s = *group_->abelian_structure();
  return character_value(*group_, s.index(exponents_), element);
}

Complex character_value(const FiniteGroup& group, int character, int element) {
  const auto& structure = group.abelian_structure();
  if (!structure) throw Error(ErrorCode::NotAbelian, "group '" + group.spec() + "' has no abelian structure");
  // sum_i m_i a_i / d_i reduced exactly as an integer multiple of 1/|G|.
  const auto order = static_cast<std::int64_t>(group.order());
  std::int64_t numerator = 0;
  int m = character, a = element;
  const auto& f = structure->factors;
  for (std::size_t i = f.size(); i-- > 0;) {
    const int d = f[i];
    const std::int64_t mi = m % d, ai = a % d;
    m /= d;
    a /= d;
    numerator = (numerator + ((mi * ai) % d) * (order / d)) % order;
  }
  // Quarter turns are returned exactly so that real characters stay real.
  if ((4 * numerator) % order == 0) {
    constexpr Complex kQuarter[] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    return kQuarter[(4 * numerator) / order];
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(numerator) / static_cast<double>(order);
  return {std::cos(angle), std::sin(angle)};
}

std::vector<Character> characters(const GroupPtr& group) {
  const auto& structure = group->abelian_structure();
  if (!structure) throw Error(ErrorCode::NotAbelian, "group '" + group->spec() + "' has no abelian structure");
  std::vector<Character> out;
  out.reserve(group->order());
  for (int m = 0; m < group->order(); ++m) out.emplace_back(group, structure->coordinates(m));
  return out;
}

GroupFunction::GroupFunction(GroupPtr group, Eigen::VectorXcd values)
    : group_(std::move(group)), values_(std::move(values)) {
  if (values_.size() != group_->order()) {
    throw Error(ErrorCode::DimMismatch, "group function length " + std::to_string(values_.size()) +
                                            " differs from group order " + std::to_string(group_->order()));
  }
}

GroupFunction::GroupFunction(GroupPtr group)
    : group_(std::move(group)), values_(Eigen::VectorXcd::Zero(group_->order())) {}

GroupFunction GroupFunction::delta(GroupPtr group, int element) {
  if (!group->contains(element)) throw Error(ErrorCode::IndexOutOfRange, "element index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(group->order());
  v(element) = 1.0;
  return GroupFunction(std::move(group), std::move(v));
}

void require_same_group(const FiniteGroup& a, const FiniteGroup& b) {
  if (&a == &b) return;
  bool same = a.order() == b.order();
  for (int x = 0; same && x < a.order(); ++x)
    for (int y = 0; same && y < a.order(); ++y) same = a.product(x, y) == b.product(x, y);
  if (!same) throw Error(ErrorCode::GroupMismatch, "'" + a.spec() + "' vs '" + b.spec() + "'");
}

GroupFunction convolve(const GroupFunction& u, const GroupFunction& v) {
  require_same_group(*u.group(), *v.group());
  const auto& g = *u.group();
  const int n = g.order();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  // (u*v)(x) = sum_h u(x h^-1) v(h); iterate over h so each term lands in x = y h.
  for (int h = 0; h < n; ++h) {
    const Complex vh = v(h);
    if (vh == Complex{}) continue;
    for (int y = 0; y < n; ++y) out(g.product(y, h)) += u(y) * vh;
  }
  return GroupFunction(u.group(), std::move(out));
}

}  // namespace framelab
