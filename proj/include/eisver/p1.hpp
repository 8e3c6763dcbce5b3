#pragma once

// The projective line over Z/NZ: pairs (c : d) with gcd(c, d, N) = 1 up to
// scaling by units.  Each class is represented by its lexicographically
// least member.

#include "eisver/arith.hpp"

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace eisver {

struct P1Point {
  std::int64_t c = 0;
  std::int64_t d = 0;
  friend auto operator<=>(const P1Point&, const P1Point&) = default;
};

class P1List {
 public:
  explicit P1List(std::int64_t level) : level_(level)
  {
    if (level < 1) throw std::invalid_argument("P1List: level must be positive");
    const std::int64_t n = level;
    table_.assign(static_cast<std::size_t>(n * n), -1);
    std::vector<std::int64_t> units;
    for (std::int64_t u = 0; u < n; ++u)
      if (std::gcd(u, n) == 1) units.push_back(u);
    if (n == 1) units = {0};
    // Row-major scan visits each orbit first at its least member.
    for (std::int64_t c = 0; c < n; ++c)
      for (std::int64_t d = 0; d < n; ++d) {
        if (gcd3(c, d, n) != 1 || table_[slot(c, d)] >= 0) continue;
        const auto idx = static_cast<std::int32_t>(points_.size());
        points_.push_back({c, d});
        for (auto u : units) table_[slot(u * c % n, u * d % n)] = idx;
      }
  }

  std::int64_t level() const { return level_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<P1Point>& points() const { return points_; }
  const P1Point& operator[](std::size_t i) const { return points_[i]; }

  /// Index of the class of (c : d), or -1 when gcd(c, d, N) != 1.
  std::int64_t index(std::int64_t c, std::int64_t d) const
  {
    return table_[slot(mod(c, level_), mod(d, level_))];
  }

  P1Point normalize(std::int64_t c, std::int64_t d) const
  {
    auto i = index(c, d);
    if (i < 0) throw std::invalid_argument("P1List::normalize: not a point of P^1(Z/NZ)");
    return points_[static_cast<std::size_t>(i)];
  }

  /// (c : d) -> (d : -c)
  std::size_t sigma(std::size_t i) const
  {
    const auto& p = points_[i];
    return static_cast<std::size_t>(index(p.d, -p.c));
  }

  /// (c : d) -> (d : -c - d)
  std::size_t tau(std::size_t i) const
  {
    const auto& p = points_[i];
    return static_cast<std::size_t>(index(p.d, -p.c - p.d));
  }

 private:
  std::size_t slot(std::int64_t c, std::int64_t d) const { return static_cast<std::size_t>(c * level_ + d); }

  std::int64_t level_;
  std::vector<P1Point> points_;
  std::vector<std::int32_t> table_;
};

inline P1List p1_list(std::int64_t level) { return P1List(level); }

} // namespace eisver
