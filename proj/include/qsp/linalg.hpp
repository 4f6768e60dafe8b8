#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qsp/qlaurent.hpp"

namespace qsp {

using RMatrix = std::vector<std::vector<RationalFn>>;

/// inverse of a square matrix over Q(q); throws std::domain_error if singular
RMatrix invert(const RMatrix& a);

/// Solve A x = b exactly.  Throws std::domain_error when the system is
/// inconsistent or has more than one solution.
std::vector<RationalFn> solve_unique(const RMatrix& a, const std::vector<RationalFn>& b);

namespace modp {

constexpr uint64_t P = (uint64_t(1) << 61) - 1;

inline uint64_t mul(uint64_t a, uint64_t b) {
  __uint128_t z = __uint128_t(a) * b;
  uint64_t lo = uint64_t(z & P), hi = uint64_t(z >> 61);
  uint64_t s = lo + hi;
  return s >= P ? s - P : s;
}
inline uint64_t add(uint64_t a, uint64_t b) {
  uint64_t s = a + b;
  return s >= P ? s - P : s;
}
inline uint64_t sub(uint64_t a, uint64_t b) { return a >= b ? a - b : a + P - b; }
uint64_t pow(uint64_t a, uint64_t e);
inline uint64_t inv(uint64_t a) { return pow(a, P - 2); }
/// value of z at a fixed specialization point q0
uint64_t eval(const ZPoly& z);

/// Incremental row-echelon basis over F_P.
class Echelon {
 public:
  explicit Echelon(size_t ncols) : ncols_(ncols) {}
  /// reduces v against the basis and inserts it if independent
  bool insert(std::vector<uint64_t> v);
  size_t rank() const { return rows_.size(); }

 private:
  size_t ncols_;
  std::vector<std::vector<uint64_t>> rows_;
  std::vector<size_t> pivots_;
};

}  // namespace modp

}  // namespace qsp
