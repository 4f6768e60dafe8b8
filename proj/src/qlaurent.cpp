#include "qsp/qlaurent.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qsp {

LaurentPoly::LaurentPoly(long c) {
  if (c != 0) t_.emplace_back(0, Rational(c));
}

LaurentPoly::LaurentPoly(const Rational& c) {
  if (c != 0) t_.emplace_back(0, c);
}

LaurentPoly LaurentPoly::monomial(const Rational& c, int e) {
  LaurentPoly p;
  if (c != 0) p.t_.emplace_back(e, c);
  return p;
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> t) {
  std::map<int, Rational> acc;
  for (auto& [e, c] : t) acc[e] += c;
  LaurentPoly p;
  for (auto& [e, c] : acc)
    if (c != 0) p.t_.emplace_back(e, c);
  return p;
}

bool LaurentPoly::is_one() const { return t_.size() == 1 && t_[0].first == 0 && t_[0].second == 1; }

int LaurentPoly::min_exp() const {
  if (t_.empty()) throw std::domain_error("LaurentPoly::min_exp: zero polynomial");
  return t_.front().first;
}

int LaurentPoly::max_exp() const {
  if (t_.empty()) throw std::domain_error("LaurentPoly::max_exp: zero polynomial");
  return t_.back().first;
}

Rational LaurentPoly::coeff(int e) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), e,
                             [](const Term& a, int x) { return a.first < x; });
  if (it != t_.end() && it->first == e) return it->second;
  return 0;
}

void LaurentPoly::add_scaled(const LaurentPoly& o, int sign) {
  if (o.t_.empty()) return;
  std::vector<Term> out;
  out.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    if (j == o.t_.size() || (i < t_.size() && t_[i].first < o.t_[j].first)) {
      out.push_back(std::move(t_[i++]));
    } else if (i == t_.size() || o.t_[j].first < t_[i].first) {
      out.emplace_back(o.t_[j].first, sign > 0 ? o.t_[j].second : Rational(-o.t_[j].second));
      ++j;
    } else {
      Rational c = sign > 0 ? Rational(t_[i].second + o.t_[j].second)
                            : Rational(t_[i].second - o.t_[j].second);
      if (c != 0) out.emplace_back(t_[i].first, std::move(c));
      ++i, ++j;
    }
  }
  t_ = std::move(out);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  add_scaled(o, 1);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  add_scaled(o, -1);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.t_.empty() || b.t_.empty()) return {};
  int lo = a.t_.front().first + b.t_.front().first;
  int hi = a.t_.back().first + b.t_.back().first;
  std::vector<Rational> acc(hi - lo + 1);
  for (auto& [ea, ca] : a.t_)
    for (auto& [eb, cb] : b.t_) acc[ea + eb - lo] += ca * cb;
  LaurentPoly p;
  for (int k = 0; k <= hi - lo; ++k)
    if (acc[k] != 0) p.t_.emplace_back(k + lo, std::move(acc[k]));
  return p;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  *this = *this * o;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p = *this;
  for (auto& t : p.t_) t.second = -t.second;
  return p;
}

bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
  size_t n = std::min(a.t_.size(), b.t_.size());
  for (size_t i = 0; i < n; ++i) {
    if (a.t_[i].first != b.t_[i].first) return a.t_[i].first < b.t_[i].first;
    if (a.t_[i].second != b.t_[i].second) return a.t_[i].second < b.t_[i].second;
  }
  return a.t_.size() < b.t_.size();
}

LaurentPoly LaurentPoly::shift(int k) const {
  LaurentPoly p = *this;
  for (auto& t : p.t_) t.first += k;
  return p;
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly p;
  p.t_.reserve(t_.size());
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) p.t_.emplace_back(-it->first, it->second);
  return p;
}

Rational LaurentPoly::eval_at_one() const {
  Rational s = 0;
  for (auto& t : t_) s += t.second;
  return s;
}

bool LaurentPoly::is_integral() const {
  for (auto& t : t_)
    if (t.second.get_den() != 1) return false;
  return true;
}

bool LaurentPoly::in_qZq() const {
  return is_integral() && (t_.empty() || t_.front().first >= 1);
}

bool LaurentPoly::in_qinvZqinv() const {
  return is_integral() && (t_.empty() || t_.back().first <= -1);
}

std::string LaurentPoly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << "q";
    if (e != 1) os << "^" << (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
  }
  return os.str();
}

namespace {

using Dense = std::vector<Rational>;  // coefficient k of q^k, k >= 0

Dense to_dense(const LaurentPoly& p, int shift) {
  Dense d(p.max_exp() - shift + 1);
  for (auto& [e, c] : p.terms()) d[e - shift] = c;
  return d;
}

void trim(Dense& d) {
  while (!d.empty() && d.back() == 0) d.pop_back();
}

// polynomial remainder a mod b, b nonzero with trimmed form
Dense poly_rem(Dense a, const Dense& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
    trim(a);
  }
  return a;
}

LaurentPoly from_dense(const Dense& d, int shift) {
  std::vector<LaurentPoly::Term> t;
  for (size_t k = 0; k < d.size(); ++k)
    if (d[k] != 0) t.emplace_back(int(k) + shift, d[k]);
  return LaurentPoly::from_terms(std::move(t));
}

}  // namespace

LaurentPoly divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::domain_error("divide_exact: division by zero");
  if (a.is_zero()) return {};
  Dense r = to_dense(a, a.min_exp());
  Dense d = to_dense(b, b.min_exp());
  int shift = a.min_exp() - b.min_exp();
  if (r.size() < d.size()) throw std::domain_error("divide_exact: not exact");
  Dense quo(r.size() - d.size() + 1);
  for (size_t k = quo.size(); k-- > 0;) {
    Rational f = r[k + d.size() - 1] / d.back();
    quo[k] = f;
    if (f != 0)
      for (size_t i = 0; i < d.size(); ++i) r[k + i] -= f * d[i];
  }
  for (auto& x : r)
    if (x != 0) throw std::domain_error("divide_exact: not exact");
  return from_dense(quo, shift);
}

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() && b.is_zero()) return {};
  if (a.is_zero()) return poly_gcd(b, b);
  if (b.is_zero()) return poly_gcd(a, a);
  Dense x = to_dense(a, a.min_exp()), y = to_dense(b, b.min_exp());
  trim(x), trim(y);
  while (!y.empty()) {
    Dense r = poly_rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  Rational lead = x.back();
  for (auto& c : x) c /= lead;
  return from_dense(x, 0);
}

LaurentPoly qint(int a) {
  if (a == 0) return {};
  if (a < 0) return -qint(-a);
  std::vector<LaurentPoly::Term> t;
  for (int e = a - 1; e >= 1 - a; e -= 2) t.emplace_back(e, Rational(1));
  return LaurentPoly::from_terms(std::move(t));
}

LaurentPoly qfact(int a) {
  if (a < 0) throw std::invalid_argument("qfact: negative argument");
  LaurentPoly p(1);
  for (int k = 2; k <= a; ++k) p *= qint(k);
  return p;
}

LaurentPoly qbinom(int a, int b) {
  if (b < 0 || b > a) throw std::invalid_argument("qbinom: need 0 <= b <= a");
  return divide_exact(qfact(a), qfact(b) * qfact(a - b));
}

// ---------------------------------------------------------------- RationalFn

RationalFn::RationalFn(const LaurentPoly& n, const LaurentPoly& d) : num_(n), den_(d) {
  if (den_.is_zero()) throw std::domain_error("RationalFn: zero denominator");
  normalize();
}

void RationalFn::normalize() {
  if (num_.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  if (!(den_.terms().size() == 1)) {
    LaurentPoly g = poly_gcd(num_, den_);
    if (g.terms().size() > 1) {
      num_ = divide_exact(num_, g);
      den_ = divide_exact(den_, g);
    }
  }
  int s = den_.min_exp();
  Rational lc = den_.terms().front().second;
  LaurentPoly scale = LaurentPoly::monomial(1 / lc, -s);
  num_ = num_ * scale;
  den_ = den_ * scale;
}

bool RationalFn::is_laurent() const { return den_.is_one(); }

LaurentPoly RationalFn::to_laurent() const {
  if (!is_laurent()) throw std::domain_error("RationalFn::to_laurent: not a Laurent polynomial: " + str());
  return num_;
}

RationalFn& RationalFn::operator+=(const RationalFn& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RationalFn& RationalFn::operator-=(const RationalFn& o) { return *this += -o; }

RationalFn& RationalFn::operator*=(const RationalFn& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RationalFn& RationalFn::operator/=(const RationalFn& o) { return *this *= o.inverse(); }

RationalFn RationalFn::operator-() const {
  RationalFn r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFn RationalFn::inverse() const {
  if (num_.is_zero()) throw std::domain_error("RationalFn::inverse: zero");
  return RationalFn(den_, num_);
}

RationalFn RationalFn::bar() const { return RationalFn(num_.bar(), den_.bar()); }

RationalFn bar(const RationalFn& p) { return p.bar(); }

std::string RationalFn::str() const {
  if (is_laurent()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

nlohmann::json to_json(const LaurentPoly& p) {
  nlohmann::json j = nlohmann::json::object();
  for (auto& [e, c] : p.terms()) j[std::to_string(e)] = c.get_str();
  return j;
}

LaurentPoly laurent_from_json(const nlohmann::json& j) {
  std::vector<LaurentPoly::Term> t;
  for (auto it = j.begin(); it != j.end(); ++it)
    t.emplace_back(std::stoi(it.key()), Rational(it.value().get<std::string>()));
  return LaurentPoly::from_terms(std::move(t));
}

nlohmann::json to_json(const RationalFn& p) {
  if (p.is_laurent()) return to_json(p.num());
  return {{"num", to_json(p.num())}, {"den", to_json(p.den())}};
}

// ---------------------------------------------------------------- ZPoly

namespace {
inline int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("ZPoly: coefficient overflow");
  return r;
}
inline int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("ZPoly: coefficient overflow");
  return r;
}
}  // namespace

void ZPoly::trim() {
  size_t b = 0;
  while (b < c_.size() && c_[b] == 0) ++b;
  if (b == c_.size()) {
    c_.clear();
    lo_ = 0;
    return;
  }
  while (c_.back() == 0) c_.pop_back();
  if (b) {
    c_.erase(c_.begin(), c_.begin() + b);
    lo_ += int(b);
  }
}

void ZPoly::add_shifted(const ZPoly& o, int shift, int64_t scale) {
  if (o.c_.empty() || scale == 0) return;
  int olo = o.lo_ + shift;
  if (c_.empty()) {
    lo_ = olo;
    c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] = checked_mul(o.c_[i], scale);
    return;
  }
  int nlo = std::min(lo_, olo);
  int nhi = std::max(lo_ + int(c_.size()), olo + int(o.c_.size()));
  if (nlo < lo_) c_.insert(c_.begin(), size_t(lo_ - nlo), 0);
  lo_ = nlo;
  c_.resize(size_t(nhi - nlo), 0);
  for (size_t i = 0; i < o.c_.size(); ++i) {
    auto& x = c_[size_t(olo - lo_) + i];
    x = checked_add(x, checked_mul(o.c_[i], scale));
  }
  trim();
}

ZPoly ZPoly::operator*(const ZPoly& o) const {
  ZPoly z;
  if (c_.empty() || o.c_.empty()) return z;
  z.lo_ = lo_ + o.lo_;
  z.c_.assign(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i])
      for (size_t j = 0; j < o.c_.size(); ++j)
        z.c_[i + j] = checked_add(z.c_[i + j], checked_mul(c_[i], o.c_[j]));
  z.trim();
  return z;
}

ZPoly ZPoly::times_qq() const {
  ZPoly z;
  z.add_shifted(*this, -1, 1);
  z.add_shifted(*this, 1, -1);
  return z;
}

LaurentPoly ZPoly::to_laurent() const {
  std::vector<LaurentPoly::Term> t;
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i]) t.emplace_back(lo_ + int(i), Rational(static_cast<long>(c_[i])));
  return LaurentPoly::from_terms(std::move(t));
}

ZPoly ZPoly::from_laurent(const LaurentPoly& p) {
  ZPoly z;
  for (auto& [e, c] : p.terms()) {
    if (c.get_den() != 1 || !c.get_num().fits_slong_p())
      throw std::domain_error("ZPoly::from_laurent: coefficient not a machine integer");
    z.add_shifted(ZPoly::monomial(c.get_num().get_si(), e), 0);
  }
  return z;
}

}  // namespace qsp
