#include "qsp/linalg.hpp"

#include <stdexcept>

namespace qsp {

RMatrix invert(const RMatrix& a) {
  size_t n = a.size();
  RMatrix m = a, r(n, std::vector<RationalFn>(n));
  for (size_t i = 0; i < n; ++i) r[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) throw std::domain_error("invert: singular matrix");
    std::swap(m[piv], m[c]);
    std::swap(r[piv], r[c]);
    RationalFn s = m[c][c].inverse();
    for (size_t j = 0; j < n; ++j) {
      if (!m[c][j].is_zero()) m[c][j] *= s;
      if (!r[c][j].is_zero()) r[c][j] *= s;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c].is_zero()) continue;
      RationalFn f = m[i][c];
      for (size_t j = 0; j < n; ++j) {
        if (!m[c][j].is_zero()) m[i][j] -= f * m[c][j];
        if (!r[c][j].is_zero()) r[i][j] -= f * r[c][j];
      }
    }
  }
  return r;
}

std::vector<RationalFn> solve_unique(const RMatrix& a, const std::vector<RationalFn>& b) {
  size_t rows = a.size();
  size_t n = rows ? a[0].size() : 0;
  RMatrix m = a;
  for (size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
  size_t prow = 0;
  std::vector<size_t> pivcol;
  for (size_t c = 0; c < n && prow < rows; ++c) {
    size_t piv = prow;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[prow]);
    RationalFn s = m[prow][c].inverse();
    for (size_t j = c; j <= n; ++j)
      if (!m[prow][j].is_zero()) m[prow][j] *= s;
    for (size_t i = 0; i < rows; ++i) {
      if (i == prow || m[i][c].is_zero()) continue;
      RationalFn f = m[i][c];
      for (size_t j = c; j <= n; ++j)
        if (!m[prow][j].is_zero()) m[i][j] -= f * m[prow][j];
    }
    pivcol.push_back(c);
    ++prow;
  }
  for (size_t i = prow; i < rows; ++i)
    if (!m[i][n].is_zero()) throw std::domain_error("solve_unique: inconsistent system");
  if (pivcol.size() < n) throw std::domain_error("solve_unique: underdetermined system");
  std::vector<RationalFn> x(n);
  for (size_t i = 0; i < n; ++i) x[pivcol[i]] = m[i][n];
  return x;
}

namespace modp {

uint64_t pow(uint64_t a, uint64_t e) {
  uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

uint64_t eval(const ZPoly& z) {
  static const uint64_t q0 = 1000003;
  static const uint64_t q0inv = inv(q0);
  if (z.is_zero()) return 0;
  uint64_t base = z.lo() >= 0 ? pow(q0, uint64_t(z.lo())) : pow(q0inv, uint64_t(-z.lo()));
  uint64_t acc = 0, x = base;
  for (int64_t c : z.coeffs()) {
    uint64_t cm = c >= 0 ? uint64_t(c) % P : P - (uint64_t(-c) % P);
    acc = add(acc, mul(cm % P, x));
    x = mul(x, q0);
  }
  return acc;
}

bool Echelon::insert(std::vector<uint64_t> v) {
  for (size_t k = 0; k < rows_.size(); ++k) {
    uint64_t f = v[pivots_[k]];
    if (!f) continue;
    const auto& row = rows_[k];
    for (size_t j = pivots_[k]; j < ncols_; ++j)
      if (row[j]) v[j] = sub(v[j], mul(f, row[j]));
  }
  size_t piv = 0;
  while (piv < ncols_ && !v[piv]) ++piv;
  if (piv == ncols_) return false;
  uint64_t s = inv(v[piv]);
  for (size_t j = piv; j < ncols_; ++j) v[j] = mul(v[j], s);
  // keep rows fully reduced against the new pivot so the reduction order above stays valid
  for (auto& row : rows_) {
    uint64_t f = row[piv];
    if (!f) continue;
    for (size_t j = piv; j < ncols_; ++j)
      if (v[j]) row[j] = sub(row[j], mul(f, v[j]));
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

}  // namespace modp

}  // namespace qsp
