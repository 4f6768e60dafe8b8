#include "qsp/canonical.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "qsp/linalg.hpp"

namespace qsp {

// ---------------------------------------------------------------- bar maps

TypeABar::TypeABar(FAlgebra& fa, TensorSpace s) : fa_(fa), s_(std::move(s)) {
  if (s_.m() >= 2) {
    head_ = std::make_unique<TypeABar>(fa_, TensorSpace(s_.rank(), std::vector<int>(s_.b().begin(), s_.b().end() - 1)));
    theta_ = std::make_unique<ModuleTheta>(fa_, s_);
  }
}

const TensorVector& TypeABar::column(const Idx& f) {
  auto it = cols_.find(f);
  if (it != cols_.end()) return it->second;
  if (!s_.valid(f)) throw std::invalid_argument("TypeABar::column: invalid index " + idx_label(f));
  TensorVector col;
  if (s_.m() <= 1) {
    col = TensorVector::basis(f);
  } else {
    TensorVector x;
    for (auto& [g, c] : head_->column(Idx(f.begin(), f.end() - 1)).terms) {
      Idx h = g;
      h.push_back(f.back());
      x.add(h, c);
    }
    col = theta_->apply(x);
  }
  return cols_.emplace(f, std::move(col)).first->second;
}

TensorVector TypeABar::apply(const TensorVector& v) {
  TensorVector out;
  for (auto& [f, c] : v.terms) out += column(f).scaled(c.bar());
  return out;
}

IotaBar::IotaBar(UpsilonEngine& eng, TensorSpace s)
    : s_(s), psi_(eng.algebra(), s), up_(eng, s) {}

const TensorVector& IotaBar::column(const Idx& f) {
  auto it = cols_.find(f);
  if (it != cols_.end()) return it->second;
  TensorVector col = up_.apply(psi_.column(f));
  return cols_.emplace(f, std::move(col)).first->second;
}

TensorVector IotaBar::apply(const TensorVector& v) {
  TensorVector out;
  for (auto& [f, c] : v.terms) out += column(f).scaled(c.bar());
  return out;
}

// ---------------------------------------------------------------- triangular algorithm

LaurentPoly BarMatrix::entry(const Idx& g, const Idx& f) const {
  auto it = cols.find(f);
  return it == cols.end() ? LaurentPoly() : it->second.coeff(g);
}

BarMatrix make_bar_matrix(const std::vector<Idx>& order, const std::function<TensorVector(const Idx&)>& bar_of) {
  BarMatrix bm;
  bm.order = order;
  for (auto& f : order) bm.cols[f] = bar_of(f);
  return bm;
}

std::string kl_kind_name(KLKind k) { return k == KLKind::canonical ? "canonical" : "dual"; }

LaurentPoly KLTable::entry(const Idx& g, const Idx& f) const {
  auto it = cols.find(f);
  return it == cols.end() ? LaurentPoly() : it->second.coeff(g);
}

namespace {

nlohmann::json idx_json(const Idx& f) {
  nlohmann::json a = nlohmann::json::array();
  for (int x : f) a.push_back(half_label(x));
  return a;
}

// p - bar(p) = alpha with p in qZ[q] (canonical) or q^{-1}Z[q^{-1}] (dual)
LaurentPoly split_antisymmetric(const LaurentPoly& alpha, KLKind kind) {
  if (alpha.bar() != -alpha) throw std::domain_error("triangular_solve: right-hand side is not bar-antisymmetric");
  std::vector<LaurentPoly::Term> t;
  for (auto& [e, c] : alpha.terms())
    if (kind == KLKind::canonical ? e > 0 : e < 0) t.emplace_back(e, c);
  return LaurentPoly::from_terms(std::move(t));
}

}  // namespace

nlohmann::json KLTable::to_json() const {
  nlohmann::json ord = nlohmann::json::array(), entries = nlohmann::json::array();
  for (auto& f : order) ord.push_back(idx_json(f));
  for (auto& f : order)
    for (auto& g : order) {
      LaurentPoly p = entry(g, f);
      if (!p.is_zero()) entries.push_back({{"g", idx_json(g)}, {"f", idx_json(f)}, {"poly", qsp::to_json(p)}});
    }
  return {{"kind", kl_kind_name(kind)}, {"order", ord}, {"entries", entries}};
}

std::string KLTable::to_latex() const {
  std::ostringstream os;
  os << "\\begin{tabular}{c|" << std::string(order.size(), 'c') << "}\n";
  os << (kind == KLKind::canonical ? "$t_{gf}$" : "$\\ell_{gf}$");
  for (auto& f : order) os << " & $" << idx_label(f) << "$";
  os << " \\\\\n\\hline\n";
  for (auto& g : order) {
    os << "$" << idx_label(g) << "$";
    for (auto& f : order) {
      LaurentPoly p = entry(g, f);
      os << " & " << (p.is_zero() ? "" : "$" + p.str() + "$");
    }
    os << " \\\\\n";
  }
  os << "\\end{tabular}\n";
  return os.str();
}

KLTable triangular_solve(const BarMatrix& bm, KLKind kind) {
  std::map<Idx, size_t> pos;
  for (size_t i = 0; i < bm.order.size(); ++i) pos[bm.order[i]] = i;
  for (auto& f : bm.order) {
    const TensorVector& col = bm.cols.at(f);
    if (col.coeff(f) != LaurentPoly(1))
      throw std::domain_error("triangular_solve: diagonal entry at " + idx_label(f) + " is not 1");
    for (auto& [g, c] : col.terms) {
      auto it = pos.find(g);
      if (it == pos.end() || it->second > pos[f])
        throw std::domain_error("triangular_solve: bar matrix not unitriangular at " + idx_label(g) + ", " + idx_label(f));
    }
  }
  KLTable tab;
  tab.kind = kind;
  tab.order = bm.order;
  for (size_t fi = 0; fi < bm.order.size(); ++fi) {
    const Idx& f = bm.order[fi];
    // acc_g = sum over processed h != g of r_{gh} bar(t_{hf})
    TensorVector acc, T;
    T.add(f, 1);
    for (auto& [g, c] : bm.cols.at(f).terms)
      if (g != f) acc.add(g, c);
    for (size_t gi = fi; gi-- > 0;) {
      const Idx& g = bm.order[gi];
      LaurentPoly alpha = acc.coeff(g);
      if (alpha.is_zero()) continue;
      LaurentPoly t = split_antisymmetric(alpha, kind);
      if (t.is_zero()) continue;
      T.add(g, t);
      LaurentPoly tb = t.bar();
      for (auto& [h, c] : bm.cols.at(g).terms)
        if (h != g) acc.add(h, c * tb);
    }
    tab.cols[f] = std::move(T);
  }
  return tab;
}

CheckReport check_bar_involutive(const BarMatrix& bm) {
  CheckReport rep;
  for (auto& f : bm.order) {
    TensorVector x;
    for (auto& [h, c] : bm.cols.at(f).terms) {
      auto it = bm.cols.find(h);
      if (it == bm.cols.end()) {
        rep.fail("bar column leaves the index set at " + idx_label(h));
        return rep;
      }
      x += it->second.scaled(c.bar());
    }
    if (x != TensorVector::basis(f)) rep.fail("bar is not involutive at " + idx_label(f));
  }
  return rep;
}

CheckReport check_bar_triangular(const BarMatrix& bm, const std::function<bool(const Idx&, const Idx&)>& leq) {
  CheckReport rep;
  for (auto& f : bm.order)
    for (auto& [g, c] : bm.cols.at(f).terms) {
      if (g == f ? c != LaurentPoly(1) : !leq(g, f))
        rep.fail("bar matrix not unitriangular at " + idx_label(g) + ", " + idx_label(f));
    }
  return rep;
}

CheckReport check_kl_table(const KLTable& t, const BarMatrix& bm) {
  CheckReport rep;
  for (auto& f : t.order) {
    const TensorVector& T = t.cols.at(f);
    for (auto& [g, c] : T.terms) {
      if (g == f) {
        if (c != LaurentPoly(1)) rep.fail("diagonal entry is not 1 at " + idx_label(f));
      } else if (t.kind == KLKind::canonical ? !c.in_qZq() : !c.in_qinvZqinv()) {
        rep.fail("entry out of range at " + idx_label(g) + ", " + idx_label(f) + ": " + c.str());
      }
    }
    TensorVector b;
    for (auto& [h, c] : T.terms) b += bm.cols.at(h).scaled(c.bar());
    if (b != T) rep.fail("basis element not bar-invariant at " + idx_label(f));
  }
  return rep;
}

bool tensor_preceq(const TensorSpace& s, const Idx& g, const Idx& f) {
  return s.rank().order_preceq(s.weight(g), s.weight(f));
}

int super_height(const std::vector<int>& b, const Idx& f) {
  if (b.size() != f.size()) throw std::invalid_argument("super_height: size mismatch");
  int h = 0;
  for (size_t i = 0; i < f.size(); ++i) h -= int(i + 1) * (b[i] ? -f[i] : f[i]);
  return h;
}

std::vector<Idx> tensor_order(const TensorSpace& s, std::vector<Idx> idx) {
  const RankData& rd = s.rank();
  bool pure = s.pure_V();
  struct Key {
    ThetaClass cls;
    int height;
    Idx f;
  };
  std::vector<Key> keys;
  for (auto& f : idx) {
    int h = 0;
    if (pure) {
      for (int a : f) h += a;
    } else {
      h = -super_height(s.b(), f);
    }
    keys.push_back({rd.theta_class(s.weight(f)), h, f});
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.cls != b.cls) return a.cls < b.cls;
    if (a.height != b.height) return a.height > b.height;
    return a.f < b.f;
  });
  std::vector<Idx> out;
  for (auto& k : keys) out.push_back(k.f);
  return out;
}

CanonicalResult canonical_from_bar(BarMatrix bm) {
  CanonicalResult res;
  res.canonical = triangular_solve(bm, KLKind::canonical);
  res.dual = triangular_solve(bm, KLKind::dual);
  res.bar = std::move(bm);
  return res;
}

CanonicalResult icanonical_tensor(UpsilonEngine& eng, const TensorSpace& s) {
  IotaBar bar(eng, s);
  auto order = tensor_order(s, s.basis());
  return canonical_from_bar(make_bar_matrix(order, [&](const Idx& f) { return bar.column(f); }));
}

// ---------------------------------------------------------------- rank one

Rank1Module::Vec Rank1Module::basis(int a) const {
  if (a < 0 || a > s) throw std::invalid_argument("Rank1Module::basis: index out of range");
  Vec v(size_t(s + 1));
  v[size_t(a)] = 1;
  return v;
}

Rank1Module::Vec Rank1Module::act_E(const Vec& v) const {
  Vec out(v.size());
  for (int a = 0; a < s; ++a) out[size_t(a + 1)] += v[size_t(a)] * qint(a + 1);
  return out;
}

Rank1Module::Vec Rank1Module::act_F(const Vec& v) const {
  Vec out(v.size());
  for (int a = 1; a <= s; ++a) out[size_t(a - 1)] += v[size_t(a)] * qint(s - a + 1);
  return out;
}

Rank1Module::Vec Rank1Module::act_K(const Vec& v, int sign) const {
  Vec out(v.size());
  for (int a = 0; a <= s; ++a) out[size_t(a)] = v[size_t(a)].shift(sign * (2 * a - s));
  return out;
}

Rank1Module::Vec Rank1Module::act_t(const Vec& v) const {
  Vec e = act_E(v), f = act_F(act_K(v, -1)), k = act_K(v, -1);
  for (size_t i = 0; i < v.size(); ++i) e[i] += f[i].shift(1) + k[i];
  return e;
}

std::vector<LaurentPoly> rank1_c(int kmax) {
  std::vector<LaurentPoly> c(size_t(std::max(kmax, 0) + 1));
  c[0] = 1;
  for (int k = 1; k <= kmax; ++k) {
    LaurentPoly prev2 = k >= 2 ? c[size_t(k - 2)] : LaurentPoly();
    LaurentPoly inner = (qint(k - 1) * prev2).shift(-1) + c[size_t(k - 1)];
    c[size_t(k)] = -(qq() * inner).shift(k - 1);
  }
  return c;
}

BarMatrix rank1_bar_matrix(int s) {
  if (s < 0) throw std::invalid_argument("rank1_bar_matrix: s must be nonnegative");
  auto c = rank1_c(s);
  BarMatrix bm;
  for (int a = 0; a <= s; ++a) {
    // bar(E^{(a)} xi) = Upsilon(E^{(a)} xi) = sum_k c_k F^{(k)} E^{(a)} xi
    TensorVector col;
    for (int k = 0; k <= a; ++k) col.add({a - k}, c[size_t(k)] * qbinom(s - a + k, k));
    bm.order.push_back({a});
    bm.cols[{a}] = col;
  }
  return bm;
}

KLTable rank1_icanonical(int s) { return triangular_solve(rank1_bar_matrix(s), KLKind::canonical); }

std::string tpoly_str(const TPoly& p) {
  std::string s;
  for (size_t i = p.size(); i-- > 0;) {
    if (p[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + p[i].str() + ")";
    if (i >= 1) s += i == 1 ? "*t" : "*t^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

nlohmann::json tpoly_json(const TPoly& p) {
  nlohmann::json a = nlohmann::json::array();
  for (size_t i = 0; i < p.size(); ++i)
    if (!p[i].is_zero()) a.push_back({{"deg", i}, {"coeff", qsp::to_json(p[i])}});
  return a;
}

namespace {

TPoly tpoly_mul(const TPoly& a, const TPoly& b) {
  TPoly c(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

TPoly trim(TPoly p) {
  while (p.size() > 1 && p.back().is_zero()) p.pop_back();
  return p;
}

}  // namespace

std::vector<RationalFn> tpoly_apply(const Rank1Module& mod, const TPoly& u) {
  std::vector<RationalFn> out(size_t(mod.s + 1));
  Rank1Module::Vec x = mod.basis(0);
  for (size_t i = 0; i < u.size(); ++i) {
    if (!u[i].is_zero())
      for (size_t k = 0; k < x.size(); ++k) out[k] += u[i] * RationalFn(x[k]);
    x = mod.act_t(x);
  }
  return out;
}

TPoly divided_power_conjecture(int a, bool odd) {
  if (a == 0) return {RationalFn(1)};  // empty product
  TPoly p{RationalFn(1)};
  auto factor = [&](int shift) { p = tpoly_mul(p, TPoly{RationalFn(-qint(shift)), RationalFn(1)}); };
  int b = a / 2;
  bool even_deg = a % 2 == 0;
  if (odd) {
    if (even_deg) {
      factor(0);
      for (int j = -b + 1; j <= b - 1; ++j) factor(2 * j);
    } else {
      for (int j = -b; j <= b; ++j) factor(2 * j);
    }
  } else {
    if (!even_deg) factor(0);
    for (int j = -b + 1; j <= b; ++j) factor(2 * j - 1);
  }
  RationalFn d = RationalFn(qfact(a)).inverse();
  for (auto& x : p) x *= d;
  return p;
}

DividedPower rank1_divided_power(int a, bool odd) {
  if (a < 0) throw std::invalid_argument("rank1_divided_power: degree must be nonnegative");
  DividedPower res;
  res.a = a;
  res.odd = odd;
  int s0 = a;
  if ((s0 % 2 == 1) != odd) ++s0;
  for (int s = s0; s <= s0 + 4; s += 2) {
    Rank1Module mod{s};
    KLTable tab = rank1_icanonical(s);
    // columns t^i xi_{-s}, i = 0..a
    RMatrix M(size_t(s + 1), std::vector<RationalFn>(size_t(a + 1)));
    Rank1Module::Vec x = mod.basis(0);
    for (int i = 0; i <= a; ++i) {
      for (int k = 0; k <= s; ++k) M[size_t(k)][size_t(i)] = RationalFn(x[size_t(k)]);
      x = mod.act_t(x);
    }
    std::vector<RationalFn> rhs(size_t(s + 1));
    for (auto& [g, c] : tab.cols.at({a}).terms) rhs[size_t(g[0])] = RationalFn(c);
    TPoly u = trim(solve_unique(M, rhs));
    if (res.s_values.empty()) {
      res.poly = u;
    } else if (u != res.poly) {
      throw std::runtime_error("rank1_divided_power: solutions at s = " + std::to_string(res.s_values.front()) +
                               " and s = " + std::to_string(s) + " differ");
    }
    res.s_values.push_back(s);
  }
  res.conjecture = trim(divided_power_conjecture(a, odd));
  res.conjecture_agrees = res.conjecture == res.poly;
  res.leading_ok = int(res.poly.size()) == a + 1 && res.poly.back() == RationalFn(qfact(a)).inverse();
  return res;
}

nlohmann::json DividedPower::to_json() const {
  return {{"degree", a},
          {"parity", odd ? "odd" : "ev"},
          {"poly", tpoly_json(poly)},
          {"poly_str", tpoly_str(poly)},
          {"s_values", s_values},
          {"leading_term_ok", leading_ok},
          {"conjecture", tpoly_json(conjecture)},
          {"conjecture_agrees", conjecture_agrees}};
}

}  // namespace qsp
