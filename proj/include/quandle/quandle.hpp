#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "perm.hpp"

namespace quandle {

using Table = std::vector<std::vector<int>>;

/// A finite quandle stored as its operation table, table[x][y] = x ▷ y.
/// Instances are only obtained through validation (or internal constructions
/// whose axioms are re-checked), so every Quandle satisfies the axioms.
class Quandle {
public:
  int order() const { return order_; }

  /// x ▷ y.
  int operator()(int x, int y) const { return cells_[x * order_ + y]; }

  /// x ▷⁻¹ y: the unique w with w ▷ y = x, read off the column on demand.
  int inverse_op(int x, int y) const {
    for (int w = 0; w < order_; ++w)
      if ((*this)(w, y) == x)
        return w;
    throw InternalError("column is not a bijection");
  }

  Table table() const {
    Table t(order_, std::vector<int>(order_));
    for (int x = 0; x < order_; ++x)
      for (int y = 0; y < order_; ++y)
        t[x][y] = (*this)(x, y);
    return t;
  }

  /// Row-major cells.
  std::span<const std::uint8_t> cells() const& { return cells_; }
  std::span<const std::uint8_t> cells() && = delete;

  friend bool operator==(const Quandle&, const Quandle&) = default;
  friend auto operator<=>(const Quandle&, const Quandle&) = default;

  // Table known to satisfy the axioms; callers re-validate where the
  // construction is not trivially sound.
  static Quandle from_cells_unchecked(int order, std::vector<std::uint8_t> c) {
    Quandle q;
    q.order_ = order;
    q.cells_ = std::move(c);
    return q;
  }

private:
  int order_ = 1;
  std::vector<std::uint8_t> cells_{0};
};

enum class Axiom { Shape, OutOfRange, Idempotence, Invertibility, Distributivity };

inline const char* axiom_name(Axiom a) {
  switch (a) {
  case Axiom::Shape:
    return "Shape";
  case Axiom::OutOfRange:
    return "OutOfRangeEntry";
  case Axiom::Idempotence:
    return "IdempotenceViolation";
  case Axiom::Invertibility:
    return "InvertibilityViolation";
  case Axiom::Distributivity:
    return "DistributivityViolation";
  }
  return "?";
}

/// One failed axiom with its witness cells. Unused witness slots are -1.
/// Idempotence: (x); Invertibility: (column y); Distributivity: (a, b, c);
/// OutOfRange: (row, column).
struct Violation {
  Axiom axiom;
  std::array<int, 3> witness{-1, -1, -1};

  std::string describe() const {
    std::string s = axiom_name(axiom);
    s += '(';
    for (int i = 0; i < 3 && witness[i] >= 0; ++i) {
      if (i)
        s += ',';
      s += std::to_string(witness[i]);
    }
    return s + ')';
  }

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::optional<Quandle> quandle;
  std::vector<Violation> violations;

  bool ok() const { return quandle.has_value(); }
  bool has(Axiom a) const {
    return std::any_of(violations.begin(), violations.end(),
                       [a](const Violation& v) { return v.axiom == a; });
  }
};

class InvalidQuandle : public Error {
public:
  explicit InvalidQuandle(std::vector<Violation> v)
      : Error(summary(v)), violations(std::move(v)) {}
  std::vector<Violation> violations;

private:
  static std::string summary(const std::vector<Violation>& v) {
    std::string s = "invalid quandle: " + std::to_string(v.size()) +
                    " violation(s)";
    if (!v.empty())
      s += ", first " + v.front().describe();
    return s;
  }
};

/// Checks all three axioms and reports every violation found.
inline ValidationReport validate(int order, const Table& table) {
  ValidationReport report;
  auto& out = report.violations;
  if (order < 1 || order > kMaxDegree) {
    out.push_back({Axiom::Shape, {order, -1, -1}});
    return report;
  }
  if (static_cast<int>(table.size()) != order) {
    out.push_back({Axiom::Shape, {static_cast<int>(table.size()), -1, -1}});
    return report;
  }
  for (int x = 0; x < order; ++x)
    if (static_cast<int>(table[x].size()) != order) {
      out.push_back({Axiom::Shape, {x, -1, -1}});
      return report;
    }

  bool in_range = true;
  for (int x = 0; x < order; ++x)
    for (int y = 0; y < order; ++y)
      if (table[x][y] < 0 || table[x][y] >= order) {
        out.push_back({Axiom::OutOfRange, {x, y, -1}});
        in_range = false;
      }
  if (!in_range)
    return report;

  for (int x = 0; x < order; ++x)
    if (table[x][x] != x)
      out.push_back({Axiom::Idempotence, {x, -1, -1}});

  for (int y = 0; y < order; ++y) {
    std::vector<bool> hit(order, false);
    bool bijective = true;
    for (int x = 0; x < order; ++x) {
      if (hit[table[x][y]])
        bijective = false;
      hit[table[x][y]] = true;
    }
    if (!bijective)
      out.push_back({Axiom::Invertibility, {y, -1, -1}});
  }

  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      for (int c = 0; c < order; ++c)
        if (table[table[a][b]][c] != table[table[a][c]][table[b][c]])
          out.push_back({Axiom::Distributivity, {a, b, c}});

  if (out.empty()) {
    std::vector<std::uint8_t> cells;
    cells.reserve(order * order);
    for (const auto& row : table)
      for (int v : row)
        cells.push_back(static_cast<std::uint8_t>(v));
    report.quandle = Quandle::from_cells_unchecked(order, std::move(cells));
  }
  return report;
}

/// Validates and throws InvalidQuandle on any violation.
inline Quandle make_quandle(const Table& table) {
  auto report = validate(static_cast<int>(table.size()), table);
  if (!report.ok())
    throw InvalidQuandle(std::move(report.violations));
  return *report.quandle;
}

/// The trivial quandle of order n: x ▷ y = x.
inline Quandle trivial_quandle(int n) {
  Table t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    std::fill(t[x].begin(), t[x].end(), x);
  return make_quandle(t);
}

/// The Tait quandle on {a, b, c} = {0, 1, 2}.
inline Quandle tait_quandle() {
  return make_quandle({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}});
}

/// S_x : y ↦ y ▷ x. Fixes x.
inline Permutation symmetry(const Quandle& q, int x) {
  std::vector<int> images(q.order());
  for (int y = 0; y < q.order(); ++y)
    images[y] = q(y, x);
  return Permutation(std::span<const int>(images));
}

inline std::vector<Permutation> symmetries(const Quandle& q) {
  std::vector<Permutation> out;
  out.reserve(q.order());
  for (int x = 0; x < q.order(); ++x)
    out.push_back(symmetry(q, x));
  return out;
}

inline PermGroup inner_group(const Quandle& q) {
  return generate_group(symmetries(q), q.order());
}

/// Orbits of the Inn action. Each class sorted; classes ordered by least
/// element.
inline std::vector<std::vector<int>> orbits(const Quandle& q) {
  const int n = q.order();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int a = find(y), b = find(q(y, x));
      if (a != b)
        parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::vector<int>> classes;
  std::vector<int> slot(n, -1);
  for (int x = 0; x < n; ++x) {
    int r = find(x);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[slot[r]].push_back(x);
  }
  return classes;
}

inline bool is_connected(const Quandle& q) { return orbits(q).size() == 1; }

/// Table-preserving test: (x ▷ y)·p = (x·p) ▷ (y·p) for all x, y.
inline bool is_automorphism(const Quandle& q, const Permutation& p) {
  if (p.degree() != q.order())
    return false;
  for (int x = 0; x < q.order(); ++x)
    for (int y = 0; y < q.order(); ++y)
      if (p(q(x, y)) != q(p(x), p(y)))
        return false;
  return true;
}

/// q relabeled by s: the quandle q' with s(x ▷ y) = s(x) ▷' s(y).
inline Quandle relabel(const Quandle& q, const Permutation& s) {
  if (s.degree() != q.order())
    throw DegreeMismatch("relabel: permutation degree differs from order");
  const int n = q.order();
  std::vector<std::uint8_t> cells(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      cells[s(x) * n + s(y)] = static_cast<std::uint8_t>(s(q(x, y)));
  return Quandle::from_cells_unchecked(n, std::move(cells));
}

namespace detail {

// Per-element invariants preserved by isomorphisms.
struct ElementProfile {
  std::vector<int> cycle_type;
  std::size_t orbit_size;
  friend bool operator==(const ElementProfile&, const ElementProfile&) = default;
  friend auto operator<=>(const ElementProfile&, const ElementProfile&) = default;
};

inline std::vector<ElementProfile> element_profiles(const Quandle& q) {
  auto orb = orbits(q);
  std::vector<std::size_t> size_of(q.order());
  for (const auto& c : orb)
    for (int x : c)
      size_of[x] = c.size();
  std::vector<ElementProfile> out;
  for (int x = 0; x < q.order(); ++x)
    out.push_back({symmetry(q, x).cycle_type(), size_of[x]});
  return out;
}

// Depth-first search over maps source → target assigning images to
// 0, 1, ... in increasing order, so witnesses arrive in lexicographic order.
// `visit` returns false to stop the search.
template <class Visit>
void search_isomorphisms(const Quandle& a, const Quandle& b, Visit visit) {
  const int n = a.order();
  if (b.order() != n)
    return;
  auto pa = element_profiles(a);
  auto pb = element_profiles(b);
  {
    auto sa = pa, sb = pb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb)
      return;
  }
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  bool stop = false;

  auto consistent = [&](int k) {
    // Pairs among the assigned prefix 0..k whose product is also assigned.
    for (int x = 0; x <= k; ++x)
      for (int y = 0; y <= k; ++y) {
        if (x != k && y != k)
          continue;
        int p = a(x, y);
        if (map[p] >= 0 && map[p] != b(map[x], map[y]))
          return false;
      }
    // Products landing on k from earlier pairs.
    for (int x = 0; x < k; ++x)
      for (int y = 0; y < k; ++y)
        if (a(x, y) == k && map[k] != b(map[x], map[y]))
          return false;
    return true;
  };

  std::function<void(int)> dfs = [&](int k) {
    if (stop)
      return;
    if (k == n) {
      if (!visit(Permutation(std::span<const int>(map))))
        stop = true;
      return;
    }
    for (int v = 0; v < n && !stop; ++v) {
      if (used[v] || !(pa[k] == pb[v]))
        continue;
      map[k] = v;
      used[v] = true;
      if (consistent(k))
        dfs(k + 1);
      used[v] = false;
      map[k] = -1;
    }
  };
  dfs(0);
}

} // namespace detail

/// Lexicographically least isomorphism ρ with ρ(x ▷ y) = ρ(x) ▷' ρ(y).
inline std::optional<Permutation> find_isomorphism(const Quandle& a,
                                                   const Quandle& b) {
  std::optional<Permutation> found;
  detail::search_isomorphisms(a, b, [&](const Permutation& p) {
    found = p;
    return false;
  });
  return found;
}

inline PermGroup automorphism_group(const Quandle& q) {
  std::vector<Permutation> autos;
  detail::search_isomorphisms(q, q, [&](const Permutation& p) {
    autos.push_back(p);
    return true;
  });
  PermGroup aut = group_from_elements(q.order(), std::move(autos));
  QUANDLE_ENSURE(inner_group(q).is_subgroup_of(aut), "Inn(Q) ⊆ Aut(Q)");
  return aut;
}

/// Lexicographically least table (row-major) over all relabelings.
inline Quandle canonical_form(const Quandle& q) {
  const int n = q.order();
  std::vector<int> s(n);
  std::iota(s.begin(), s.end(), 0);
  std::vector<std::uint8_t> best(q.cells().begin(), q.cells().end());
  std::vector<int> inv(n);
  do {
    // Compare relabeled cells against best, abandoning at the first
    // difference. New cell (i, j) comes from old (inv[i], inv[j]).
    for (int x = 0; x < n; ++x)
      inv[s[x]] = x;
    int cmp = 0;
    for (int i = 0; i < n && cmp == 0; ++i)
      for (int j = 0; j < n; ++j) {
        int v = s[q(inv[i], inv[j])];
        if (v != best[i * n + j]) {
          cmp = v < best[i * n + j] ? -1 : 1;
          break;
        }
      }
    if (cmp < 0)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          best[i * n + j] = static_cast<std::uint8_t>(s[q(inv[i], inv[j])]);
  } while (std::next_permutation(s.begin(), s.end()));
  return Quandle::from_cells_unchecked(n, std::move(best));
}

} // namespace quandle
