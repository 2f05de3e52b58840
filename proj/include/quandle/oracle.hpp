#pragma once

// Brute-force census of all quandles of a given order. Independent of the
// coset construction; used as ground truth for it.

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "config.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "perm.hpp"
#include "quandle.hpp"

namespace quandle {

struct Census {
  int order = 1;
  std::vector<Quandle> tables; // canonical forms, sorted
  std::vector<bool> connected;

  std::size_t size() const { return tables.size(); }
};

struct OracleOptions {
  unsigned threads = 1;
  std::optional<int> bound = std::nullopt;
};

namespace detail {

// Column-major search: columns[y] is S_y. Whenever S_b and S_c are known the
// rack condition forces S_{b·S_c} = S_c⁻¹ S_b S_c and
// S_{b·S_c⁻¹} = S_c S_b S_c⁻¹; forced columns are propagated to a fixpoint.
class RackSearch {
public:
  explicit RackSearch(int n) : n_(n), columns_(n), choices_(n) {
    const PermGroup full = symmetric_group(n);
    for (const auto& p : full.elements())
      for (int y = 0; y < n; ++y)
        if (p.fixes(y))
          choices_[y].push_back(p);
  }

  const std::vector<Permutation>& choices(int y) const { return choices_[y]; }

  // Canonical forms of all complete tables with the given column 0.
  std::vector<Quandle> run_branch(const Permutation& first) {
    results_.clear();
    std::fill(columns_.begin(), columns_.end(), std::nullopt);
    if (assign(0, first))
      descend();
    return std::move(results_);
  }

private:
  // Sets column y and propagates; false on contradiction.
  bool assign(int y, const Permutation& p) {
    std::vector<int> queue{y};
    columns_[y] = p;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int fresh = queue[qi];
      for (int other = 0; other < n_; ++other) {
        if (!columns_[other])
          continue;
        for (auto [b, c] : {std::pair{fresh, other}, std::pair{other, fresh}}) {
          const Permutation& sb = *columns_[b];
          const Permutation& sc = *columns_[c];
          int fwd = sc(b);
          if (!force(fwd, conjugate(sb, sc), queue))
            return false;
          int back = sc.inverse()(b);
          if (!force(back, conjugate(sb, sc.inverse()), queue))
            return false;
        }
      }
    }
    return true;
  }

  bool force(int d, const Permutation& p, std::vector<int>& queue) {
    if (columns_[d])
      return *columns_[d] == p;
    columns_[d] = p;
    queue.push_back(d);
    return true;
  }

  void descend() {
    int y = 0;
    while (y < n_ && columns_[y])
      ++y;
    if (y == n_) {
      emit();
      return;
    }
    for (const auto& p : choices_[y]) {
      auto saved = columns_;
      if (assign(y, p))
        descend();
      columns_ = std::move(saved);
    }
  }

  void emit() {
    Table t(n_, std::vector<int>(n_));
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y)
        t[x][y] = (*columns_[y])(x);
    auto report = validate(n_, t);
    QUANDLE_ENSURE(report.ok(), "closed rack search yields a quandle");
    results_.push_back(canonical_form(*report.quandle));
  }

  int n_;
  std::vector<std::optional<Permutation>> columns_;
  std::vector<std::vector<Permutation>> choices_;
  std::vector<Quandle> results_;
};

inline Census make_census(int n, std::set<Quandle> classes) {
  Census c;
  c.order = n;
  for (const auto& q : classes) {
    c.tables.push_back(q);
    c.connected.push_back(is_connected(q));
  }
  return c;
}

} // namespace detail

/// Every quandle of order n up to isomorphism, by backtracking search.
inline Census enumerate_all(int n, const OracleOptions& options = {}) {
  check_bound(n, effective_bound(options.bound, kDefaultCensusBound),
              "enumerate_all");
  const detail::RackSearch prototype(n);
  const auto& firsts = prototype.choices(0);
  auto branches = detail::parallel_map(
      firsts.size(), options.threads, [&](std::size_t i) {
        detail::RackSearch search = prototype;
        return search.run_branch(firsts[i]);
      });
  std::set<Quandle> classes;
  for (auto& b : branches)
    classes.insert(b.begin(), b.end());
  return detail::make_census(n, std::move(classes));
}

/// Filters every table with entries in range through validate. Orders ≤ 3.
inline Census enumerate_all_naive(int n) {
  check_bound(n, 3, "enumerate_all_naive");
  const int cells = n * n;
  std::vector<int> digits(cells, 0);
  std::set<Quandle> classes;
  for (;;) {
    Table t(n, std::vector<int>(n));
    for (int c = 0; c < cells; ++c)
      t[c / n][c % n] = digits[c];
    if (auto report = validate(n, t); report.ok())
      classes.insert(canonical_form(*report.quandle));
    int c = 0;
    while (c < cells && ++digits[c] == n)
      digits[c++] = 0;
    if (c == cells)
      break;
  }
  return detail::make_census(n, std::move(classes));
}

inline std::size_t count_connected(const Census& census) {
  return static_cast<std::size_t>(
      std::count(census.connected.begin(), census.connected.end(), true));
}

} // namespace quandle
