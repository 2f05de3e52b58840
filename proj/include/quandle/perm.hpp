#pragma once

// Permutations act on the right throughout: x·(pq) = (x·p)·q, so
// compose(p, q) applies p first and q second.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "config.hpp"
#include "error.hpp"
#include "parallel.hpp"

namespace quandle {

/// Largest supported degree. Images are packed into 4-bit nibbles for keys.
inline constexpr int kMaxDegree = 16;

class Permutation {
public:
  /// Identity of degree 1.
  Permutation() { images_[0] = 0; }

  explicit Permutation(std::span<const int> images) {
    assign(images.begin(), images.end(), static_cast<int>(images.size()));
  }

  Permutation(std::initializer_list<int> images) {
    assign(images.begin(), images.end(), static_cast<int>(images.size()));
  }

  static Permutation identity(int n) {
    check_degree(n);
    Permutation p;
    p.degree_ = static_cast<std::uint8_t>(n);
    for (int i = 0; i < n; ++i)
      p.images_[i] = static_cast<std::uint8_t>(i);
    return p;
  }

  /// Builds a permutation from disjoint cycles, e.g. from_cycles(3, {{0, 1}}).
  static Permutation
  from_cycles(int n, std::initializer_list<std::initializer_list<int>> cycles) {
    Permutation p = identity(n);
    std::vector<bool> used(n, false);
    for (const auto& cycle : cycles) {
      std::vector<int> c(cycle);
      for (int v : c) {
        if (v < 0 || v >= n || used[v])
          throw InvalidPermutation("cycles are not disjoint points of degree " +
                                   std::to_string(n));
        used[v] = true;
      }
      for (std::size_t i = 0; i < c.size(); ++i)
        p.images_[c[i]] = static_cast<std::uint8_t>(c[(i + 1) % c.size()]);
    }
    return p;
  }

  int degree() const { return degree_; }

  /// Image of point x.
  int operator()(int x) const { return images_[x]; }

  std::span<const std::uint8_t> images() const {
    return {images_.data(), degree_};
  }

  std::vector<int> to_vector() const {
    return {images_.begin(), images_.begin() + degree_};
  }

  Permutation inverse() const {
    Permutation r = *this;
    for (int i = 0; i < degree_; ++i)
      r.images_[images_[i]] = static_cast<std::uint8_t>(i);
    return r;
  }

  bool is_identity() const {
    for (int i = 0; i < degree_; ++i)
      if (images_[i] != i)
        return false;
    return true;
  }

  bool fixes(int x) const { return images_[x] == x; }

  /// Cycle lengths in ascending order, fixed points included.
  std::vector<int> cycle_type() const {
    std::vector<int> lengths;
    std::array<bool, kMaxDegree> seen{};
    for (int i = 0; i < degree_; ++i) {
      if (seen[i])
        continue;
      int len = 0;
      for (int j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        ++len;
      }
      lengths.push_back(len);
    }
    std::sort(lengths.begin(), lengths.end());
    return lengths;
  }

  bool is_even() const {
    int transpositions = 0;
    for (int len : cycle_type())
      transpositions += len - 1;
    return transpositions % 2 == 0;
  }

  /// Packs images into nibbles, first image most significant, so that key
  /// order coincides with lexicographic image order at a fixed degree.
  std::uint64_t key() const {
    std::uint64_t k = 0;
    for (int i = 0; i < kMaxDegree; ++i)
      k = (k << 4) | images_[i];
    return k;
  }

  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < degree_; ++i) {
      if (i)
        s += ',';
      s += std::to_string(images_[i]);
    }
    return s + "]";
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  friend Permutation compose(const Permutation& p, const Permutation& q);

private:
  static void check_degree(int n) {
    if (n < 1 || n > kMaxDegree)
      throw InvalidPermutation("degree must be in [1, " +
                               std::to_string(kMaxDegree) + "], got " +
                               std::to_string(n));
  }

  template <class It> void assign(It first, It last, int n) {
    check_degree(n);
    degree_ = static_cast<std::uint8_t>(n);
    std::array<bool, kMaxDegree> hit{};
    int i = 0;
    for (It it = first; it != last; ++it, ++i) {
      int v = *it;
      if (v < 0 || v >= n || hit[v])
        throw InvalidPermutation("image array is not a bijection of {0.." +
                                 std::to_string(n - 1) + "}");
      hit[v] = true;
      images_[i] = static_cast<std::uint8_t>(v);
    }
  }

  // Unused slots stay zero so the defaulted comparisons are exact.
  std::uint8_t degree_ = 1;
  std::array<std::uint8_t, kMaxDegree> images_{};
};

/// Left-to-right product: compose(p, q)(x) = q(p(x)).
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw DegreeMismatch("compose: degrees " + std::to_string(p.degree()) +
                         " and " + std::to_string(q.degree()));
  Permutation r = p;
  for (int x = 0; x < p.degree_; ++x)
    r.images_[x] = q.images_[p.images_[x]];
  return r;
}

inline Permutation operator*(const Permutation& p, const Permutation& q) {
  return compose(p, q);
}

/// s⁻¹ p s.
inline Permutation conjugate(const Permutation& p, const Permutation& s) {
  return compose(compose(s.inverse(), p), s);
}

inline bool commute(const Permutation& a, const Permutation& b) {
  return compose(a, b) == compose(b, a);
}

inline std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int i = 2; i <= n; ++i)
    f *= static_cast<std::size_t>(i);
  return f;
}

class PermGroup;
PermGroup generate_group(const std::vector<Permutation>& gens, int degree);
PermGroup group_from_elements(int degree, std::vector<Permutation> elements);

/// A subgroup of the symmetric group with its full element set materialized.
class PermGroup {
public:
  /// Trivial group of degree 1.
  PermGroup() : PermGroup(1, {}, {Permutation::identity(1)}) {}

  int degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& generators() const& { return generators_; }
  std::vector<Permutation> generators() && { return std::move(generators_); }

  /// Sorted by lexicographic image arrays; identity first.
  const std::vector<Permutation>& elements() const& { return elements_; }
  std::vector<Permutation> elements() && { return std::move(elements_); }

  bool contains(const Permutation& p) const {
    return p.degree() == degree_ &&
           std::binary_search(keys_.begin(), keys_.end(), p.key());
  }

  bool is_subgroup_of(const PermGroup& g) const {
    if (g.degree_ != degree_ || g.order() % order() != 0)
      return false;
    return std::all_of(elements_.begin(), elements_.end(),
                       [&](const Permutation& p) { return g.contains(p); });
  }

  bool is_abelian() const {
    for (std::size_t i = 0; i < generators_.size(); ++i)
      for (std::size_t j = i + 1; j < generators_.size(); ++j)
        if (!commute(generators_[i], generators_[j]))
          return false;
    return true;
  }

  /// Sorted orbit of a point under the group.
  std::vector<int> orbit(int point) const {
    std::vector<bool> seen(degree_, false);
    std::vector<int> out{point};
    seen[point] = true;
    for (std::size_t i = 0; i < out.size(); ++i)
      for (const auto& g : generators_) {
        int y = g(out[i]);
        if (!seen[y]) {
          seen[y] = true;
          out.push_back(y);
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool is_transitive() const {
    return static_cast<int>(orbit(0).size()) == degree_;
  }

  friend bool operator==(const PermGroup& a, const PermGroup& b) {
    return a.degree_ == b.degree_ && a.keys_ == b.keys_;
  }

private:
  PermGroup(int degree, std::vector<Permutation> gens,
            std::vector<Permutation> elems)
      : degree_(degree), generators_(std::move(gens)),
        elements_(std::move(elems)) {
    keys_.reserve(elements_.size());
    for (const auto& e : elements_)
      keys_.push_back(e.key());
  }

  friend PermGroup generate_group(const std::vector<Permutation>&, int);
  friend PermGroup group_from_elements(int, std::vector<Permutation>);
  friend PermGroup extend_group(const PermGroup&, const Permutation&);

  int degree_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::vector<std::uint64_t> keys_;
};

namespace detail {

// Closes `seed` (already a group, or just the identity) under right
// multiplication by `gens`. Finite groups need no inverses for this.
inline std::vector<Permutation> close(int degree,
                                      std::vector<Permutation> seed,
                                      const std::vector<Permutation>& gens) {
  const std::size_t cap = factorial(degree);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(seed.size() * 2);
  for (const auto& s : seed)
    seen.insert(s.key());
  for (std::size_t i = 0; i < seed.size(); ++i) {
    for (const auto& g : gens) {
      Permutation p = compose(seed[i], g);
      if (seen.insert(p.key()).second) {
        seed.push_back(p);
        if (seed.size() > cap)
          throw InternalError("group closure exceeded " + std::to_string(cap) +
                              " elements");
      }
    }
  }
  std::sort(seed.begin(), seed.end(),
            [](const Permutation& a, const Permutation& b) {
              return a.key() < b.key();
            });
  return seed;
}

inline void check_degrees(const std::vector<Permutation>& gens, int degree) {
  for (const auto& g : gens)
    if (g.degree() != degree)
      throw DegreeMismatch("generator " + g.to_string() + " has degree " +
                           std::to_string(g.degree()) + ", expected " +
                           std::to_string(degree));
}

} // namespace detail

/// Closure of `gens`; the empty set yields the trivial group.
inline PermGroup generate_group(const std::vector<Permutation>& gens,
                                int degree) {
  if (degree < 1 || degree > kMaxDegree)
    throw InvalidPermutation("degree must be in [1, " +
                             std::to_string(kMaxDegree) + "]");
  detail::check_degrees(gens, degree);
  auto elements =
      detail::close(degree, {Permutation::identity(degree)}, gens);
  return PermGroup(degree, gens, std::move(elements));
}

/// ⟨g, p⟩ computed by extending the known element set of g.
inline PermGroup extend_group(const PermGroup& g, const Permutation& p) {
  detail::check_degrees({p}, g.degree());
  auto gens = g.generators();
  gens.push_back(p);
  auto elements = detail::close(g.degree(), g.elements(), gens);
  return PermGroup(g.degree(), std::move(gens), std::move(elements));
}

/// Wraps an element set known to be a group, choosing a small generating set
/// greedily. Throws InternalError if the set is not closed.
inline PermGroup group_from_elements(int degree,
                                     std::vector<Permutation> elements) {
  detail::check_degrees(elements, degree);
  std::sort(elements.begin(), elements.end(),
            [](const Permutation& a, const Permutation& b) {
              return a.key() < b.key();
            });
  elements.erase(std::unique(elements.begin(), elements.end()),
                 elements.end());
  PermGroup g = generate_group({}, degree);
  for (const auto& e : elements)
    if (!g.contains(e))
      g = extend_group(g, e);
  QUANDLE_ENSURE(g.order() == elements.size(),
                 "element set is not closed under composition");
  return g;
}

inline PermGroup symmetric_group(int n) {
  std::vector<Permutation> gens;
  if (n >= 2)
    gens.push_back(Permutation::from_cycles(n, {{0, 1}}));
  if (n >= 3) {
    std::vector<int> cycle(n);
    std::iota(cycle.begin(), cycle.end(), 1);
    cycle[n - 1] = 0;
    gens.push_back(Permutation(std::span<const int>(cycle)));
  }
  return generate_group(gens, n);
}

inline PermGroup alternating_group(int n) {
  std::vector<Permutation> even;
  const PermGroup full = symmetric_group(n);
  for (const auto& p : full.elements())
    if (p.is_even())
      even.push_back(p);
  return group_from_elements(n, std::move(even));
}

/// Elements commuting with every element of g, sorted; contains identity.
inline std::vector<Permutation> center(const PermGroup& g) {
  std::vector<Permutation> out;
  for (const auto& e : g.elements()) {
    bool central = std::all_of(
        g.generators().begin(), g.generators().end(),
        [&](const Permutation& s) { return commute(e, s); });
    if (central)
      out.push_back(e);
  }
  return out;
}

inline PermGroup stabilizer(const PermGroup& g, int point) {
  if (point < 0 || point >= g.degree())
    throw InvalidPermutation("stabilizer: point out of range");
  std::vector<Permutation> fixing;
  for (const auto& e : g.elements())
    if (e.fixes(point))
      fixing.push_back(e);
  PermGroup h = group_from_elements(g.degree(), std::move(fixing));
  QUANDLE_ENSURE(g.order() == h.order() * g.orbit(point).size(),
                 "orbit-stabilizer count");
  return h;
}

struct Coset {
  Permutation representative;
  std::vector<Permutation> members;
};

/// Right cosets Hx of h in g. Each representative is the least member, so
/// the coset H itself is represented by the identity.
inline std::vector<Coset> right_cosets(const PermGroup& g, const PermGroup& h) {
  if (!h.is_subgroup_of(g))
    throw NotASubgroup("right_cosets: h is not a subgroup of g");
  std::unordered_set<std::uint64_t> assigned;
  std::vector<Coset> out;
  for (const auto& x : g.elements()) {
    if (assigned.count(x.key()))
      continue;
    Coset c{x, {}};
    for (const auto& s : h.elements()) {
      Permutation m = compose(s, x);
      assigned.insert(m.key());
      c.members.push_back(m);
    }
    std::sort(c.members.begin(), c.members.end(),
              [](const Permutation& a, const Permutation& b) {
                return a.key() < b.key();
              });
    out.push_back(std::move(c));
  }
  return out;
}

/// {s⁻¹ x s : x ∈ g}.
inline PermGroup conjugate_group(const PermGroup& g, const Permutation& s) {
  std::vector<Permutation> gens;
  for (const auto& x : g.generators())
    gens.push_back(conjugate(x, s));
  return generate_group(gens, g.degree());
}

/// Some s in `ambient` with a^s = b, if any.
inline std::optional<Permutation> find_conjugator(const PermGroup& a,
                                                  const PermGroup& b,
                                                  const PermGroup& ambient) {
  if (a.degree() != b.degree() || a.order() != b.order())
    return std::nullopt;
  for (const auto& s : ambient.elements()) {
    bool inside = std::all_of(
        a.generators().begin(), a.generators().end(),
        [&](const Permutation& x) { return b.contains(conjugate(x, s)); });
    if (inside)
      return s;
  }
  return std::nullopt;
}

struct SubgroupSearchOptions {
  /// Overrides the default degree bound (and QUANDLE_MAX_ORDER).
  std::optional<int> bound = std::nullopt;
  /// Worker threads for closure fan-out; 0 means hardware concurrency.
  unsigned threads = 1;
};

namespace detail {

// Conjugation invariants used to bucket candidate subgroups.
inline std::vector<std::size_t> conjugacy_signature(const PermGroup& g) {
  std::map<std::vector<int>, std::size_t> histogram;
  for (const auto& e : g.elements())
    ++histogram[e.cycle_type()];
  std::vector<std::size_t> sig{g.order()};
  for (const auto& [type, count] : histogram) {
    sig.push_back(count);
    for (int len : type)
      sig.push_back(static_cast<std::size_t>(len));
    sig.push_back(0);
  }
  return sig;
}

inline std::vector<std::uint64_t> element_keys(const PermGroup& g) {
  std::vector<std::uint64_t> keys;
  keys.reserve(g.order());
  for (const auto& e : g.elements())
    keys.push_back(e.key());
  return keys;
}

struct KeyVectorHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const {
    std::size_t h = v.size();
    for (auto k : v)
      h ^= std::hash<std::uint64_t>{}(k) + 0x9e3779b97f4a7c15ULL + (h << 6) +
           (h >> 2);
    return h;
  }
};

inline bool group_less(const PermGroup& a, const PermGroup& b) {
  if (a.order() != b.order())
    return a.order() < b.order();
  return element_keys(a) < element_keys(b);
}

} // namespace detail

/// One representative per conjugacy class of subgroups of the symmetric
/// group of degree n, sorted by order and then by element list.
///
/// Breadth-first from the trivial group: each known class representative H
/// is extended by one element g outside H and closed. Only one g per double
/// coset HgH (and per generator of ⟨g⟩) is tried, since those give the same
/// extension. Every subgroup K has a subgroup H with K = ⟨H, g⟩, and H is
/// conjugate to a known representative, so some conjugate of K is reached.
inline std::vector<PermGroup>
subgroup_classes(int n, const SubgroupSearchOptions& options = {}) {
  check_bound(n, effective_bound(options.bound, kDefaultSubgroupBound),
              "subgroup search");
  const PermGroup full = symmetric_group(n);

  std::vector<PermGroup> reps;
  std::multimap<std::vector<std::size_t>, std::size_t> by_signature;
  std::unordered_set<std::vector<std::uint64_t>, detail::KeyVectorHash> known;

  auto admit = [&](PermGroup k) -> bool {
    auto keys = detail::element_keys(k);
    if (!known.insert(std::move(keys)).second)
      return false;
    auto sig = detail::conjugacy_signature(k);
    auto [lo, hi] = by_signature.equal_range(sig);
    for (auto it = lo; it != hi; ++it)
      if (find_conjugator(k, reps[it->second], full))
        return false;
    by_signature.emplace(std::move(sig), reps.size());
    reps.push_back(std::move(k));
    return true;
  };

  admit(generate_group({}, n));
  for (std::size_t next = 0; next < reps.size(); ++next) {
    const PermGroup h = reps[next];
    std::vector<Permutation> candidates;
    std::unordered_set<std::uint64_t> covered;
    for (const auto& g : full.elements()) {
      if (h.contains(g) || covered.count(g.key()))
        continue;
      candidates.push_back(g);
      Permutation power = g;
      std::size_t ord = 1;
      for (Permutation q = g; !q.is_identity(); q = compose(q, g))
        ++ord;
      for (std::size_t e = 1; e <= ord; ++e, power = compose(power, g)) {
        if (std::gcd(e, ord) != 1)
          continue;
        for (const auto& a : h.elements())
          for (const auto& b : h.elements())
            covered.insert(compose(compose(a, power), b).key());
      }
    }
    auto extensions = detail::parallel_map(
        candidates.size(), options.threads,
        [&](std::size_t i) { return extend_group(h, candidates[i]); });
    for (auto& k : extensions)
      admit(std::move(k));
  }

  std::sort(reps.begin(), reps.end(), detail::group_less);
  return reps;
}

/// One representative per conjugacy class of transitive subgroups.
inline std::vector<PermGroup>
transitive_subgroups_up_to_conjugacy(int n,
                                     const SubgroupSearchOptions& options = {}) {
  std::vector<PermGroup> out;
  for (auto& g : subgroup_classes(n, options))
    if (g.is_transitive())
      out.push_back(std::move(g));
  return out;
}

} // namespace quandle
