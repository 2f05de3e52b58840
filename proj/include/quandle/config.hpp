#pragma once

#include <cstdlib>
#include <optional>
#include <string>

#include "error.hpp"

namespace quandle {

/// Hard ceiling on any exhaustive search order, even when overridden.
inline constexpr int kAbsoluteMaxOrder = 8;

/// Default bound for subgroup searches in the symmetric group.
inline constexpr int kDefaultSubgroupBound = 7;

/// Default bound for both census enumerators.
inline constexpr int kDefaultCensusBound = 6;

/// Reads QUANDLE_MAX_ORDER. Returns nullopt when unset; throws BoundExceeded
/// for values above kAbsoluteMaxOrder and ParseError for non-numeric values.
inline std::optional<int> max_order_from_env() {
  const char* raw = std::getenv("QUANDLE_MAX_ORDER");
  if (raw == nullptr || *raw == '\0')
    return std::nullopt;
  char* end = nullptr;
  long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value < 1)
    throw ParseError("QUANDLE_MAX_ORDER must be a positive integer, got '" +
                     std::string(raw) + "'");
  if (value > kAbsoluteMaxOrder)
    throw BoundExceeded("QUANDLE_MAX_ORDER=" + std::to_string(value) +
                        " refused; the maximum is " +
                        std::to_string(kAbsoluteMaxOrder));
  return static_cast<int>(value);
}

/// Effective bound: explicit value, else the environment, else the fallback.
inline int effective_bound(std::optional<int> explicit_bound, int fallback) {
  if (explicit_bound) {
    if (*explicit_bound > kAbsoluteMaxOrder)
      throw BoundExceeded("bound " + std::to_string(*explicit_bound) +
                          " exceeds the maximum " +
                          std::to_string(kAbsoluteMaxOrder));
    return *explicit_bound;
  }
  if (auto env = max_order_from_env())
    return *env;
  return fallback;
}

inline void check_bound(int n, int bound, const char* what) {
  if (n < 1)
    throw BoundExceeded(std::string(what) + ": order must be positive");
  if (n > bound)
    throw BoundExceeded(std::string(what) + ": order " + std::to_string(n) +
                        " exceeds bound " + std::to_string(bound));
}

} // namespace quandle
