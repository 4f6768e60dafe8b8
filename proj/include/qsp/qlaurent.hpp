#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qsp {

using Rational = mpq_class;

/// Laurent polynomial in q over the rationals, kept in canonical form
/// (exponents strictly increasing, no zero coefficient stored).
class LaurentPoly {
 public:
  using Term = std::pair<int, Rational>;

  LaurentPoly() = default;
  LaurentPoly(long c);  // NOLINT: constants convert implicitly
  LaurentPoly(const Rational& c);  // NOLINT

  static LaurentPoly monomial(const Rational& c, int e);
  static LaurentPoly q(int e = 1) { return monomial(1, e); }
  static LaurentPoly from_terms(std::vector<Term> t);

  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_one() const;
  int min_exp() const;
  int max_exp() const;
  Rational coeff(int e) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly operator-() const;
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }
  // total order on canonical forms, only used for sorting and map keys
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b);

  /// multiply by q^k
  LaurentPoly shift(int k) const;
  /// q -> q^{-1}
  LaurentPoly bar() const;
  Rational eval_at_one() const;
  bool is_integral() const;
  /// every exponent >= 1 (resp. <= -1) and integral coefficients
  bool in_qZq() const;
  bool in_qinvZqinv() const;

  std::string str() const;

 private:
  void add_scaled(const LaurentPoly& o, int sign);
  std::vector<Term> t_;
};

/// exact quotient a / b; throws std::domain_error if b does not divide a
LaurentPoly divide_exact(const LaurentPoly& a, const LaurentPoly& b);
/// gcd in Q[q, q^{-1}], normalized to lowest exponent 0 and leading coefficient 1
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

LaurentPoly qint(int a);
LaurentPoly qfact(int a);
LaurentPoly qbinom(int a, int b);

/// the ubiquitous q^{-1} - q
inline LaurentPoly qq() { return LaurentPoly::q(-1) - LaurentPoly::q(1); }

/// Quotient of Laurent polynomials, reduced; the denominator has lowest
/// exponent 0 and lowest coefficient 1.
class RationalFn {
 public:
  RationalFn() : den_(1) {}
  RationalFn(long c) : num_(c), den_(1) {}  // NOLINT
  RationalFn(const LaurentPoly& p) : num_(p), den_(1) { normalize(); }  // NOLINT
  RationalFn(const LaurentPoly& n, const LaurentPoly& d);

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_laurent() const;
  /// numerator as a Laurent polynomial; throws if the denominator is not a unit monomial
  LaurentPoly to_laurent() const;

  RationalFn& operator+=(const RationalFn& o);
  RationalFn& operator-=(const RationalFn& o);
  RationalFn& operator*=(const RationalFn& o);
  RationalFn& operator/=(const RationalFn& o);
  RationalFn operator-() const;
  friend RationalFn operator+(RationalFn a, const RationalFn& b) { return a += b; }
  friend RationalFn operator-(RationalFn a, const RationalFn& b) { return a -= b; }
  friend RationalFn operator*(RationalFn a, const RationalFn& b) { return a *= b; }
  friend RationalFn operator/(RationalFn a, const RationalFn& b) { return a /= b; }
  friend bool operator==(const RationalFn& a, const RationalFn& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFn& a, const RationalFn& b) { return !(a == b); }

  RationalFn inverse() const;
  RationalFn bar() const;
  std::string str() const;

 private:
  void normalize();
  LaurentPoly num_, den_;
};

RationalFn bar(const RationalFn& p);
inline LaurentPoly bar(const LaurentPoly& p) { return p.bar(); }

nlohmann::json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RationalFn& p);

/// Dense Laurent polynomial with machine-integer coefficients.  Used in the
/// hot loops of the intertwiner engine; every operation checks for overflow.
class ZPoly {
 public:
  ZPoly() = default;
  explicit ZPoly(int64_t c) {
    if (c != 0) { lo_ = 0; c_.push_back(c); }
  }
  static ZPoly monomial(int64_t c, int e) {
    ZPoly z(c);
    z.lo_ = e;
    return z;
  }
  bool is_zero() const { return c_.empty(); }
  int lo() const { return lo_; }
  const std::vector<int64_t>& coeffs() const { return c_; }

  void add_shifted(const ZPoly& o, int shift, int64_t scale = 1);
  ZPoly shifted(int k) const {
    ZPoly z = *this;
    if (!z.c_.empty()) z.lo_ += k;
    return z;
  }
  ZPoly operator*(const ZPoly& o) const;
  ZPoly& operator+=(const ZPoly& o) { add_shifted(o, 0); return *this; }
  ZPoly operator-() const {
    ZPoly z = *this;
    for (auto& x : z.c_) x = -x;
    return z;
  }
  /// multiply by q^{-1} - q
  ZPoly times_qq() const;
  friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.lo_ == b.lo_ && a.c_ == b.c_; }

  LaurentPoly to_laurent() const;
  static ZPoly from_laurent(const LaurentPoly& p);

 private:
  void trim();
  int lo_ = 0;
  std::vector<int64_t> c_;
};

}  // namespace qsp
