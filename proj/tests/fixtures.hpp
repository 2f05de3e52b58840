#pragma once

// Shared test fixtures and independent oracles. The oracles here avoid the
// library's own algorithms so they can check them.

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "quandle/quandle_all.hpp"

namespace quandle::test {

/// Order 3 with a single nontrivial column S_2 = (0 1).
inline Quandle swap_column_quandle() {
  return make_quandle({{0, 0, 1}, {1, 1, 0}, {2, 2, 2}});
}

inline Permutation cyc(int n, std::initializer_list<std::initializer_list<int>> c) {
  return Permutation::from_cycles(n, c);
}

/// All permutations of degree n by std::next_permutation, in lex order.
inline std::vector<Permutation> all_permutations(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::vector<Permutation> out;
  do
    out.push_back(Permutation(std::span<const int>(v)));
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

/// Closure by multiplying all pairs until nothing new appears.
inline std::set<std::vector<int>> closure_oracle(const std::vector<Permutation>& gens,
                                                 int n) {
  std::set<std::vector<int>> elems;
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  elems.insert(id);
  for (const auto& g : gens)
    elems.insert(g.to_vector());
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::vector<int>> snapshot(elems.begin(), elems.end());
    for (const auto& a : snapshot)
      for (const auto& b : snapshot) {
        std::vector<int> c(n);
        for (int x = 0; x < n; ++x)
          c[x] = b[a[x]];
        grew |= elems.insert(c).second;
      }
  }
  return elems;
}

inline std::set<std::vector<int>> as_set(const PermGroup& g) {
  std::set<std::vector<int>> s;
  for (const auto& e : g.elements())
    s.insert(e.to_vector());
  return s;
}

inline Permutation random_permutation(int n, std::mt19937& rng) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(std::span<const int>(v));
}

/// Direct axiom check on a raw table, without the library's validator.
inline bool table_is_quandle(const Table& t) {
  const int n = static_cast<int>(t.size());
  for (int x = 0; x < n; ++x)
    if (t[x][x] != x)
      return false;
  for (int y = 0; y < n; ++y) {
    std::vector<int> col;
    for (int x = 0; x < n; ++x)
      col.push_back(t[x][y]);
    std::sort(col.begin(), col.end());
    for (int x = 0; x < n; ++x)
      if (col[x] != x)
        return false;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[t[a][c]][t[b][c]])
          return false;
  return true;
}

/// Orbits by repeated application of every column until stable.
inline std::vector<std::set<int>> orbit_oracle(const Quandle& q) {
  const int n = q.order();
  std::vector<std::set<int>> reach(n);
  for (int x = 0; x < n; ++x) {
    reach[x] = {x};
    for (bool grew = true; grew;) {
      grew = false;
      for (int a : std::vector<int>(reach[x].begin(), reach[x].end()))
        for (int y = 0; y < n; ++y) {
          grew |= reach[x].insert(q(a, y)).second;
          grew |= reach[x].insert(q.inverse_op(a, y)).second;
        }
    }
  }
  std::set<std::set<int>> unique(reach.begin(), reach.end());
  return {unique.begin(), unique.end()};
}

/// Census cached per order; the brute-force search is cheap up to 6.
inline const Census& census(int n) {
  static std::vector<std::optional<Census>> cache(9);
  if (!cache[n])
    cache[n] = enumerate_all(n);
  return *cache[n];
}

/// Random mesh input: blocks drawn from the census, off-diagonal assignments
/// identity half the time and otherwise uniform in Aut of the target block.
/// Diagonals are left empty (canonical).
struct MeshInput {
  std::vector<Quandle> blocks;
  AssignmentMatrix homs;
};

inline MeshInput random_mesh(const std::vector<int>& profile, std::mt19937& rng) {
  MeshInput m;
  std::vector<PermGroup> auts;
  for (int n : profile) {
    const auto& tables = census(n).tables;
    std::uniform_int_distribution<std::size_t> pick(0, tables.size() - 1);
    m.blocks.push_back(tables[pick(rng)]);
    auts.push_back(automorphism_group(m.blocks.back()));
  }
  const std::size_t k = profile.size();
  m.homs.assign(k, std::vector<std::optional<Assignment>>(k));
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j)
        continue;
      const auto& elems = auts[j].elements();
      std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
      Assignment a;
      for (int y = 0; y < profile[i]; ++y)
        a.push_back(coin(rng) ? Permutation::identity(profile[j])
                              : elems[pick(rng)]);
      m.homs[i][j] = std::move(a);
    }
  return m;
}

/// Every off-diagonal assignment matrix over the given blocks, using all
/// permutations of each target degree.
template <class Visit>
void for_each_mesh(const std::vector<Quandle>& blocks, Visit&& visit) {
  const int k = static_cast<int>(blocks.size());
  std::vector<std::vector<Permutation>> perms;
  for (const auto& b : blocks)
    perms.push_back(all_permutations(b.order()));
  // One odometer digit per (i, j, y) slot.
  struct Slot { int i, j, y; };
  std::vector<Slot> slots;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j)
        for (int y = 0; y < blocks[i].order(); ++y)
          slots.push_back({i, j, y});
  std::vector<std::size_t> digit(slots.size(), 0);
  for (;;) {
    AssignmentMatrix homs(k, std::vector<std::optional<Assignment>>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (i != j)
          homs[i][j] = Assignment(blocks[i].order(),
                                  Permutation::identity(blocks[j].order()));
    for (std::size_t s = 0; s < slots.size(); ++s)
      (*homs[slots[s].i][slots[s].j])[slots[s].y] = perms[slots[s].j][digit[s]];
    visit(homs);
    std::size_t s = 0;
    while (s < slots.size() && ++digit[s] == perms[slots[s].j].size())
      digit[s++] = 0;
    if (s == slots.size())
      return;
  }
}

/// Mesh acceptance versus a direct axiom check of the composed table.
inline bool mesh_agrees(const std::vector<Quandle>& blocks,
                        const AssignmentMatrix& homs) {
  bool accepted = check_mesh(blocks, homs).empty();
  return accepted == table_is_quandle(naive_compose(blocks, homs));
}

} // namespace quandle::test
