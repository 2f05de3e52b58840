#pragma once

// Semidisjoint unions. A mesh over blocks Q_1..Q_k is a matrix of
// homomorphisms g[i][j] : Γ_{Q_i} → Aut(Q_j) with g[i][i] canonical. The
// composed quandle places the blocks contiguously and, for x in block j and
// y in block i, sets x ▷ y = x · g[i][j](|y|).

#include <algorithm>
#include <array>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "augment.hpp"
#include "error.hpp"
#include "perm.hpp"
#include "quandle.hpp"

namespace quandle {

/// Raw generator assignments; a missing diagonal entry means canonical.
using AssignmentMatrix = std::vector<std::vector<std::optional<Assignment>>>;

struct MeshViolation {
  enum class Kind { Shape, Hom, DiagonalNotCanonical, Condition1, Condition2 };
  Kind kind;
  // Condition1: (i, j, x, y, z); Condition2: (i, j, k, x, y, z);
  // Hom: (i, j); DiagonalNotCanonical: (i). Unused slots are -1.
  std::array<int, 6> witness{-1, -1, -1, -1, -1, -1};
  std::optional<GammaViolation> hom_detail;

  MeshViolation(Kind k, std::initializer_list<int> w,
                std::optional<GammaViolation> detail = std::nullopt)
      : kind(k), hom_detail(std::move(detail)) {
    QUANDLE_ENSURE(w.size() <= witness.size(), "witness fits");
    std::copy(w.begin(), w.end(), witness.begin());
  }

  std::string describe() const {
    static constexpr const char* names[] = {"Shape", "HomViolation",
                                            "DiagonalNotCanonical",
                                            "Condition1Violation",
                                            "Condition2Violation"};
    std::string s = names[static_cast<int>(kind)];
    s += '(';
    for (int i = 0; i < 6 && witness[i] >= 0; ++i) {
      if (i)
        s += ',';
      s += std::to_string(witness[i]);
    }
    s += ')';
    if (hom_detail)
      s += ": " + hom_detail->describe();
    return s;
  }
};

class InvalidMesh : public Error {
public:
  explicit InvalidMesh(std::vector<MeshViolation> v)
      : Error("invalid mesh: " +
              (v.empty() ? std::string("?") : v.front().describe())),
        violations(std::move(v)) {}
  std::vector<MeshViolation> violations;
};

namespace detail {

inline std::vector<int> block_offsets(const std::vector<Quandle>& blocks) {
  std::vector<int> offsets{0};
  for (const auto& b : blocks)
    offsets.push_back(offsets.back() + b.order());
  return offsets;
}

// Fills missing diagonal entries with the canonical assignment. Returns
// false if the matrix shape or any permutation degree is wrong.
inline bool complete_matrix(const std::vector<Quandle>& blocks,
                            const AssignmentMatrix& raw,
                            std::vector<std::vector<Assignment>>& out,
                            std::vector<MeshViolation>& violations) {
  using K = MeshViolation::Kind;
  const int k = static_cast<int>(blocks.size());
  if (k == 0 || static_cast<int>(raw.size()) != k ||
      block_offsets(blocks).back() > kMaxDegree) {
    violations.push_back({K::Shape, {static_cast<int>(raw.size())}});
    return false;
  }
  out.assign(k, std::vector<Assignment>(k));
  for (int i = 0; i < k; ++i) {
    if (static_cast<int>(raw[i].size()) != k) {
      violations.push_back({K::Shape, {i}});
      return false;
    }
    for (int j = 0; j < k; ++j) {
      if (!raw[i][j]) {
        if (i != j) {
          violations.push_back({K::Shape, {i, j}});
          return false;
        }
        out[i][j] = symmetries(blocks[i]);
        continue;
      }
      const auto& a = *raw[i][j];
      bool shape_ok = static_cast<int>(a.size()) == blocks[i].order();
      for (const auto& p : a)
        shape_ok = shape_ok && p.degree() == blocks[j].order();
      if (!shape_ok) {
        violations.push_back({K::Shape, {i, j}});
        return false;
      }
      out[i][j] = a;
    }
  }
  return true;
}

} // namespace detail

/// Composes the table without checking anything beyond shapes. Used by
/// semidisjoint_union and as the direct route in tests.
inline Table naive_compose(const std::vector<Quandle>& blocks,
                           const AssignmentMatrix& raw) {
  std::vector<std::vector<Assignment>> g;
  std::vector<MeshViolation> shape;
  if (!detail::complete_matrix(blocks, raw, g, shape))
    throw InvalidMesh(std::move(shape));
  auto offsets = detail::block_offsets(blocks);
  const int n = offsets.back();
  const int k = static_cast<int>(blocks.size());
  Table t(n, std::vector<int>(n));
  for (int j = 0; j < k; ++j)
    for (int x = 0; x < blocks[j].order(); ++x)
      for (int i = 0; i < k; ++i)
        for (int y = 0; y < blocks[i].order(); ++y) {
          int local = i == j ? blocks[i](x, y) : g[i][j][y](x);
          t[offsets[j] + x][offsets[i] + y] = offsets[j] + local;
        }
  return t;
}

/// Every violated mesh requirement, in lexicographic witness order.
inline std::vector<MeshViolation> check_mesh(const std::vector<Quandle>& blocks,
                                             const AssignmentMatrix& raw) {
  using K = MeshViolation::Kind;
  std::vector<MeshViolation> out;
  std::vector<std::vector<Assignment>> g;
  if (!detail::complete_matrix(blocks, raw, g, out))
    return out;
  const int k = static_cast<int>(blocks.size());

  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (auto& v : check_gamma_hom(blocks[i], blocks[j], g[i][j]))
        out.push_back({K::Hom, {i, j}, v});
  for (int i = 0; i < k; ++i)
    if (g[i][i] != symmetries(blocks[i]))
      out.push_back({K::DiagonalNotCanonical, {i}});

  // (x·g[j][i](|y|)) ▷_i z = (x ▷_i z)·g[j][i](|y·g[i][j](|z|)|)
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j)
        continue;
      const Quandle& qi = blocks[i];
      for (int x = 0; x < qi.order(); ++x)
        for (int y = 0; y < blocks[j].order(); ++y)
          for (int z = 0; z < qi.order(); ++z) {
            int lhs = qi(g[j][i][y](x), z);
            int moved = g[i][j][z](y);
            int rhs = g[j][i][moved](qi(x, z));
            if (lhs != rhs)
              out.push_back({K::Condition1, {i, j, x, y, z}});
          }
    }

  // (x·g[j][i](|y|))·g[k][i](|z|) = (x·g[k][i](|z|))·g[j][i](|y·g[k][j](|z|)|)
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l) {
        if (i == j || j == l || i == l)
          continue;
        for (int x = 0; x < blocks[i].order(); ++x)
          for (int y = 0; y < blocks[j].order(); ++y)
            for (int z = 0; z < blocks[l].order(); ++z) {
              int lhs = g[l][i][z](g[j][i][y](x));
              int moved = g[l][j][z](y);
              int rhs = g[j][i][moved](g[l][i][z](x));
              if (lhs != rhs)
                out.push_back({K::Condition2, {i, j, l, x, y, z}});
            }
      }
  return out;
}

/// A validated mesh.
class Mesh {
public:
  const std::vector<Quandle>& blocks() const& { return blocks_; }
  std::vector<Quandle> blocks() && { return std::move(blocks_); }
  std::size_t size() const { return blocks_.size(); }

  /// homs()[i][j] : Γ_{Q_i} → Aut(Q_j).
  const std::vector<std::vector<GammaHom>>& homs() const& { return homs_; }
  std::vector<std::vector<GammaHom>> homs() && { return std::move(homs_); }

  /// Global index of the first element of each block, plus the total order.
  std::vector<int> offsets() const { return detail::block_offsets(blocks_); }

  AssignmentMatrix assignments() const {
    AssignmentMatrix m(size(), std::vector<std::optional<Assignment>>(size()));
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        m[i][j] = homs_[i][j].assignment();
    return m;
  }

private:
  Mesh(std::vector<Quandle> b, std::vector<std::vector<GammaHom>> h)
      : blocks_(std::move(b)), homs_(std::move(h)) {}
  friend Mesh validate_mesh(std::vector<Quandle>, const AssignmentMatrix&);

  std::vector<Quandle> blocks_;
  std::vector<std::vector<GammaHom>> homs_;
};

/// Throws InvalidMesh listing every violation.
inline Mesh validate_mesh(std::vector<Quandle> blocks,
                          const AssignmentMatrix& raw) {
  auto violations = check_mesh(blocks, raw);
  if (!violations.empty())
    throw InvalidMesh(std::move(violations));
  const std::size_t k = blocks.size();
  std::vector<std::vector<GammaHom>> homs(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      homs[i].push_back(
          raw[i][j] ? validate_gamma_hom(blocks[i], blocks[j], *raw[i][j])
                    : canonical_hom(blocks[i]));
  return Mesh(std::move(blocks), std::move(homs));
}

/// #(Q_1, ..., Q_k, G) with contiguous block layout.
inline Quandle semidisjoint_union(const Mesh& mesh) {
  auto report = validate(mesh.offsets().back(),
                         naive_compose(mesh.blocks(), mesh.assignments()));
  QUANDLE_ENSURE(report.ok(), "semidisjoint union of a mesh is a quandle");
  return *report.quandle;
}

/// Semidisjoint union with the trivial off-diagonal mesh.
inline Quandle disjoint_union(const std::vector<Quandle>& blocks) {
  if (blocks.empty())
    throw InvalidMesh({{MeshViolation::Kind::Shape, {0}}});
  const std::size_t k = blocks.size();
  AssignmentMatrix raw(k, std::vector<std::optional<Assignment>>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j)
        raw[i][j] = Assignment(blocks[i].order(),
                               Permutation::identity(blocks[j].order()));
  return semidisjoint_union(validate_mesh(blocks, raw));
}

/// Orbit decomposition: the mesh plus where each original element went.
struct Decomposition {
  Mesh mesh;
  /// layout[g] = (block, local index) of global element g.
  std::vector<std::pair<int, int>> layout;

  /// Maps contiguous (mesh) indices back to original global indices.
  Permutation placement() const {
    auto offsets = mesh.offsets();
    std::vector<int> images(layout.size());
    for (std::size_t g = 0; g < layout.size(); ++g)
      images[offsets[layout[g].first] + layout[g].second] =
          static_cast<int>(g);
    return Permutation(std::span<const int>(images));
  }

  /// The original quandle, rebuilt from the mesh under the layout.
  Quandle recompose() const {
    return relabel(semidisjoint_union(mesh), placement());
  }
};

/// Splits q into its Inn-orbits, ordered by least element. A connected
/// quandle yields a single block.
inline Decomposition decompose(const Quandle& q) {
  auto classes = orbits(q);
  const int k = static_cast<int>(classes.size());
  std::vector<std::pair<int, int>> layout(q.order());
  for (int b = 0; b < k; ++b)
    for (int l = 0; l < static_cast<int>(classes[b].size()); ++l)
      layout[classes[b][l]] = {b, l};

  std::vector<Quandle> blocks;
  for (const auto& c : classes) {
    const int m = static_cast<int>(c.size());
    Table t(m, std::vector<int>(m));
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) {
        auto [b, l] = layout[q(c[x], c[y])];
        QUANDLE_ENSURE(c[0] == classes[b][0], "orbits are closed under ▷");
        t[x][y] = l;
      }
    auto report = validate(m, t);
    QUANDLE_ENSURE(report.ok(), "orbit subquandle satisfies the axioms");
    blocks.push_back(*report.quandle);
  }

  // homs[i][j] sends y ∈ Q_i to S_y restricted to Q_j, in local indices.
  AssignmentMatrix raw(k, std::vector<std::optional<Assignment>>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Assignment a;
      for (int y : classes[i]) {
        std::vector<int> images;
        for (int x : classes[j])
          images.push_back(layout[q(x, y)].second);
        a.push_back(Permutation(std::span<const int>(images)));
      }
      raw[i][j] = std::move(a);
    }

  Decomposition d{validate_mesh(std::move(blocks), raw), std::move(layout)};
  QUANDLE_ENSURE(d.recompose() == q, "decomposition reproduces the quandle");
  return d;
}

/// Quandle rebuilt from a mesh and a layout, as produced by decompose.
inline Quandle semidisjoint_union(const Mesh& mesh,
                                  std::vector<std::pair<int, int>> layout) {
  return Decomposition{mesh, std::move(layout)}.recompose();
}

/// Recursive orbit decomposition; every leaf is connected.
struct DecompositionTree {
  Quandle quandle;
  std::optional<Decomposition> decomposition; // absent at leaves
  std::vector<DecompositionTree> children;    // one per block

  bool is_leaf() const { return !decomposition.has_value(); }

  int depth() const {
    int d = 0;
    for (const auto& c : children)
      d = std::max(d, c.depth() + 1);
    return d;
  }
};

inline DecompositionTree decomposition_tree(const Quandle& q) {
  DecompositionTree node{q, std::nullopt, {}};
  if (is_connected(q))
    return node;
  node.decomposition = decompose(q);
  for (const auto& block : node.decomposition->mesh.blocks())
    node.children.push_back(decomposition_tree(block));
  return node;
}

/// Rebuilds the root from the leaves by nested semidisjoint unions.
inline Quandle replay(const DecompositionTree& tree) {
  if (tree.is_leaf())
    return tree.quandle;
  std::vector<Quandle> blocks;
  for (const auto& c : tree.children)
    blocks.push_back(replay(c));
  const auto& d = *tree.decomposition;
  Mesh mesh = validate_mesh(std::move(blocks), d.mesh.assignments());
  return semidisjoint_union(mesh, d.layout);
}

} // namespace quandle
