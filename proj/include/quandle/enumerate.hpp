#pragma once

// Connected quandles from coset data. For G transitive on {0..n-1},
// H = Stab_G(0) and z central in H, the right coset Hg is identified with
// the point 0·g, and Hg_i ▷ Hg_j = H g_i g_j⁻¹ z g_j. This is a connected
// quandle whenever the conjugates g_j⁻¹ z g_j generate G.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "perm.hpp"
#include "quandle.hpp"

namespace quandle {

class InvalidSeed : public Error {
public:
  using Error::Error;
};

struct ConnectedSeed {
  PermGroup g;
  PermGroup h; // stabilizer of 0 in g
  Permutation z;
  /// reps[i] maps 0 to i; reps[0] is the identity.
  std::vector<Permutation> reps;

  int degree() const { return g.degree(); }
};

/// Builds the seed for a transitive g and a candidate z, choosing for each
/// point k the least element of g mapping 0 to k as its coset representative.
inline ConnectedSeed make_seed(const PermGroup& g, const Permutation& z) {
  if (!g.is_transitive())
    throw InvalidSeed("make_seed: group is not transitive");
  PermGroup h = stabilizer(g, 0);
  if (!h.contains(z))
    throw InvalidSeed("make_seed: z " + z.to_string() +
                      " is not in the stabilizer of 0");
  for (const auto& s : h.generators())
    if (!commute(z, s))
      throw InvalidSeed("make_seed: z " + z.to_string() +
                        " is not central in the stabilizer");
  const int n = g.degree();
  std::vector<std::optional<Permutation>> found(n);
  for (const auto& e : g.elements())
    if (!found[e(0)])
      found[e(0)] = e;
  std::vector<Permutation> reps;
  for (auto& r : found)
    reps.push_back(*r);
  QUANDLE_ENSURE(g.order() == h.order() * static_cast<std::size_t>(n),
                 "|G| / |H| = n");
  return {g, std::move(h), z, std::move(reps)};
}

/// The conjugates reps[i]⁻¹ · z · reps[i], one per coset.
inline std::vector<Permutation> conjugate_generators(const ConnectedSeed& s) {
  std::vector<Permutation> out;
  for (const auto& r : s.reps)
    out.push_back(conjugate(s.z, r));
  return out;
}

/// True iff the conjugates of z generate exactly g.
inline bool check_generation(const ConnectedSeed& seed) {
  return generate_group(conjugate_generators(seed), seed.degree()) == seed.g;
}

/// The coset quandle of the seed, on coset indices.
inline Quandle coset_quandle(const ConnectedSeed& seed) {
  if (!check_generation(seed))
    throw GenerationFailure("conjugates of z " + seed.z.to_string() +
                            " do not generate G (order " +
                            std::to_string(seed.g.order()) + ")");
  const int n = seed.degree();
  QUANDLE_ENSURE(static_cast<int>(seed.reps.size()) == n,
                 "one representative per coset");
  // Coset Hw is found through the point 0·w.
  std::vector<int> index(n, -1);
  for (int i = 0; i < n; ++i) {
    QUANDLE_ENSURE(seed.g.contains(seed.reps[i]), "representative lies in G");
    int p = seed.reps[i](0);
    QUANDLE_ENSURE(index[p] < 0, "representatives of distinct cosets");
    index[p] = i;
  }
  Table t(n, std::vector<int>(n));
  for (int j = 0; j < n; ++j) {
    Permutation sj = conjugate(seed.z, seed.reps[j]);
    for (int i = 0; i < n; ++i)
      t[i][j] = index[compose(seed.reps[i], sj)(0)];
  }
  auto report = validate(n, t);
  QUANDLE_ENSURE(report.ok(), "coset construction satisfies the axioms");
  QUANDLE_ENSURE(is_connected(*report.quandle),
                 "coset construction is connected");
  return *report.quandle;
}

/// Coset data of a connected quandle: g = Inn(q), h = Stab(0),
/// z = S_0. Round-trips through coset_quandle.
inline ConnectedSeed realize(const Quandle& q) {
  if (!is_connected(q))
    throw NotConnected("realize: quandle of order " +
                       std::to_string(q.order()) + " is not connected");
  ConnectedSeed seed = make_seed(inner_group(q), symmetry(q, 0));
  QUANDLE_ENSURE(find_isomorphism(coset_quandle(seed), q).has_value(),
                 "coset quandle of the realization is isomorphic to q");
  return seed;
}

struct CensusEntry {
  Quandle quandle; // canonical form
  ConnectedSeed seed;
  std::size_t inner_order;
};

struct EnumerateOptions {
  /// Skip candidate groups excluded by the abelian, symmetric and
  /// alternating-group restrictions on inner automorphism groups.
  bool pruning_filters = true;
  unsigned threads = 1;
  std::optional<int> bound = std::nullopt;
};

/// Why a candidate group can be skipped without losing any class, or
/// nullptr if it must be searched.
inline const char* pruning_exclusion(const PermGroup& g) {
  const int n = g.degree();
  if (n > 1 && g.is_abelian())
    return "abelian";
  if (g.order() == factorial(n) && n != 1 && n != 3)
    return "symmetric";
  if (n > 1 && n != 4 && 2 * g.order() == factorial(n) &&
      std::all_of(g.generators().begin(), g.generators().end(),
                  [](const Permutation& p) { return p.is_even(); }))
    return "alternating";
  return nullptr;
}

/// One entry per isomorphism class of connected quandles of order n,
/// sorted by canonical table.
inline std::vector<CensusEntry>
enumerate_connected(int n, const EnumerateOptions& options = {}) {
  const int bound = effective_bound(options.bound, kDefaultCensusBound);
  check_bound(n, bound, "enumerate_connected");
  auto groups = transitive_subgroups_up_to_conjugacy(
      n, {.bound = std::max(bound, n), .threads = options.threads});

  auto per_group = detail::parallel_map(
      groups.size(), options.threads, [&](std::size_t gi) {
        std::vector<CensusEntry> found;
        const PermGroup& g = groups[gi];
        if (options.pruning_filters && pruning_exclusion(g))
          return found;
        const PermGroup h = stabilizer(g, 0);
        for (const auto& z : center(h)) {
          ConnectedSeed seed = make_seed(g, z);
          if (!check_generation(seed))
            continue;
          Quandle q = coset_quandle(seed);
          if (!(inner_group(q) == g))
            throw InternalError("inner group of coset quandle differs from G "
                                "for z = " + z.to_string());
          found.push_back({canonical_form(q), std::move(seed), g.order()});
        }
        return found;
      });

  std::vector<CensusEntry> all;
  for (auto& batch : per_group)
    for (auto& e : batch)
      all.push_back(std::move(e));
  std::stable_sort(all.begin(), all.end(),
                   [](const CensusEntry& a, const CensusEntry& b) {
                     return a.quandle < b.quandle;
                   });
  all.erase(std::unique(all.begin(), all.end(),
                        [](const CensusEntry& a, const CensusEntry& b) {
                          return a.quandle == b.quandle;
                        }),
            all.end());
  for (const auto& e : all)
    QUANDLE_ENSURE(e.inner_order % static_cast<std::size_t>(n) == 0,
                   "n divides |Inn|");
  return all;
}

} // namespace quandle
