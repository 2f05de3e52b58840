#pragma once

// Homomorphisms out of the universal augmentation group Γ_Q, represented by
// the images of the generators |x|. An assignment satisfying the defining
// relations |x ▷ y| = |y|⁻¹|x||y| extends uniquely to all of Γ_Q, so the
// infinite group itself is never built.

#include <string>
#include <vector>

#include "error.hpp"
#include "perm.hpp"
#include "quandle.hpp"

namespace quandle {

using Assignment = std::vector<Permutation>;

struct GammaViolation {
  enum class Kind { Shape, Relation, NotAnAutomorphism };
  Kind kind;
  int x = -1;
  int y = -1;

  std::string describe() const {
    switch (kind) {
    case Kind::Shape:
      return "Shape(" + std::to_string(x) + ")";
    case Kind::Relation:
      return "RelationViolation(" + std::to_string(x) + "," +
             std::to_string(y) + ")";
    case Kind::NotAnAutomorphism:
      return "NotAnAutomorphism(" + std::to_string(x) + ")";
    }
    return "?";
  }

  friend bool operator==(const GammaViolation&, const GammaViolation&) = default;
};

class InvalidGammaHom : public Error {
public:
  explicit InvalidGammaHom(std::vector<GammaViolation> v)
      : Error("invalid homomorphism: " +
              (v.empty() ? std::string("?") : v.front().describe())),
        violations(std::move(v)) {}
  std::vector<GammaViolation> violations;
};

/// Every violated relation pair and every non-automorphism image.
inline std::vector<GammaViolation> check_gamma_hom(const Quandle& source,
                                                   const Quandle& target,
                                                   const Assignment& a) {
  using K = GammaViolation::Kind;
  std::vector<GammaViolation> out;
  if (static_cast<int>(a.size()) != source.order()) {
    out.push_back({K::Shape, static_cast<int>(a.size())});
    return out;
  }
  for (int x = 0; x < source.order(); ++x)
    if (a[x].degree() != target.order()) {
      out.push_back({K::Shape, x});
      return out;
    }
  for (int x = 0; x < source.order(); ++x)
    for (int y = 0; y < source.order(); ++y)
      if (a[source(x, y)] != conjugate(a[x], a[y]))
        out.push_back({K::Relation, x, y});
  for (int x = 0; x < source.order(); ++x)
    if (!is_automorphism(target, a[x]))
      out.push_back({K::NotAnAutomorphism, x});
  return out;
}

/// A validated homomorphism Γ_source → Aut(target).
class GammaHom {
public:
  const Quandle& source() const { return source_; }
  int target_order() const { return target_order_; }
  const Assignment& assignment() const& { return assignment_; }
  Assignment assignment() && { return std::move(assignment_); }

  /// Image of the generator |x|.
  const Permutation& operator[](int x) const { return assignment_[x]; }

  bool is_trivial() const {
    for (const auto& p : assignment_)
      if (!p.is_identity())
        return false;
    return true;
  }

  friend bool operator==(const GammaHom&, const GammaHom&) = default;

private:
  GammaHom(Quandle s, int t, Assignment a)
      : source_(std::move(s)), target_order_(t), assignment_(std::move(a)) {}

  friend GammaHom validate_gamma_hom(const Quandle&, const Quandle&,
                                     Assignment);
  friend GammaHom canonical_hom(const Quandle&);

  Quandle source_;
  int target_order_;
  Assignment assignment_;
};

inline GammaHom validate_gamma_hom(const Quandle& source, const Quandle& target,
                                   Assignment assignment) {
  auto violations = check_gamma_hom(source, target, assignment);
  if (!violations.empty())
    throw InvalidGammaHom(std::move(violations));
  return GammaHom(source, target.order(), std::move(assignment));
}

/// The homomorphism sending every generator to the identity.
inline GammaHom trivial_hom(const Quandle& source, const Quandle& target) {
  return validate_gamma_hom(
      source, target,
      Assignment(source.order(), Permutation::identity(target.order())));
}

/// x ↦ S_x, the homomorphism Γ_Q → Inn(Q) ⊆ Aut(Q).
inline GammaHom canonical_hom(const Quandle& q) {
  auto images = symmetries(q);
  QUANDLE_ENSURE(check_gamma_hom(q, q, images).empty(),
                 "canonical assignment satisfies the relations");
  return GammaHom(q, q.order(), std::move(images));
}

struct Letter {
  int element;
  int exponent; // +1 or -1
};

using Word = std::vector<Letter>;

/// Left-to-right product of the assigned generators with exponents.
inline Permutation evaluate(const GammaHom& hom, const Word& word) {
  Permutation acc = Permutation::identity(hom.target_order());
  for (const auto& [x, e] : word) {
    if (x < 0 || x >= hom.source().order() || (e != 1 && e != -1))
      throw InvalidPermutation("word letter out of range");
    acc = compose(acc, e == 1 ? hom[x] : hom[x].inverse());
  }
  return acc;
}

} // namespace quandle
