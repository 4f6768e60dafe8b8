#include "qsp/heckeB.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace qsp {

namespace {

std::vector<int> left_gen(std::vector<int> w, int a) {
  // s_a acting on values
  for (int& x : w) {
    int ax = x < 0 ? -x : x, sg = x < 0 ? -1 : 1;
    if (a == 0) {
      if (ax == 1) x = -x;
    } else if (ax == a) {
      x = sg * (a + 1);
    } else if (ax == a + 1) {
      x = sg * a;
    }
  }
  return w;
}

std::vector<int> right_gen(std::vector<int> w, int a) {
  if (a == 0) w[0] = -w[0];
  else std::swap(w[size_t(a - 1)], w[size_t(a)]);
  return w;
}

void check_window(const std::vector<int>& w) {
  std::vector<bool> seen(w.size() + 1, false);
  for (int x : w) {
    int ax = x < 0 ? -x : x;
    if (ax < 1 || ax > int(w.size()) || seen[size_t(ax)])
      throw std::invalid_argument("SignedPerm: not a signed permutation");
    seen[size_t(ax)] = true;
  }
}

LaurentPoly hbar_shift() { return LaurentPoly::q(1) - LaurentPoly::q(-1); }  // q - q^{-1}

}  // namespace

int bm_length(const std::vector<int>& w) {
  int len = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0) ++len;
    for (size_t j = i + 1; j < w.size(); ++j) {
      if (w[i] > w[j]) ++len;
      if (w[i] + w[j] < 0) ++len;
    }
  }
  return len;
}

SignedPerm::SignedPerm(std::vector<int> w) : w_(std::move(w)) {
  check_window(w_);
  len_ = bm_length(w_);
  std::vector<int> x = w_;
  int l = len_;
  while (l > 0) {
    for (int a = 0; a < m(); ++a) {
      auto y = left_gen(x, a);
      int ly = bm_length(y);
      if (ly < l) {
        word_.push_back(a);
        x = std::move(y);
        l = ly;
        break;
      }
    }
  }
}

SignedPerm SignedPerm::identity(int m) {
  std::vector<int> w(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) w[static_cast<size_t>(i)] = i + 1;
  return SignedPerm(w);
}

SignedPerm SignedPerm::generator(int m, int a) {
  if (a < 0 || a >= m) throw std::invalid_argument("SignedPerm::generator: index out of range");
  return identity(m).times_gen(a);
}

SignedPerm SignedPerm::operator*(const SignedPerm& o) const {
  if (o.m() != m()) throw std::invalid_argument("SignedPerm: size mismatch");
  std::vector<int> w(w_.size());
  for (size_t i = 0; i < w.size(); ++i) {
    int y = o.w_[i];
    int v = w_[size_t((y < 0 ? -y : y) - 1)];
    w[i] = y < 0 ? -v : v;
  }
  return SignedPerm(w);
}

SignedPerm SignedPerm::inverse() const {
  std::vector<int> w(w_.size());
  for (size_t i = 0; i < w.size(); ++i) {
    int x = w_[i];
    w[size_t((x < 0 ? -x : x) - 1)] = x < 0 ? -int(i + 1) : int(i + 1);
  }
  return SignedPerm(w);
}

SignedPerm SignedPerm::times_gen(int a) const { return SignedPerm(right_gen(w_, a)); }
SignedPerm SignedPerm::gen_times(int a) const { return SignedPerm(left_gen(w_, a)); }

std::string SignedPerm::str() const {
  std::string s = "[";
  for (size_t i = 0; i < w_.size(); ++i) s += (i ? "," : "") + std::to_string(w_[i]);
  return s + "]";
}

std::vector<SignedPerm> all_signed_perms(int m) {
  std::set<std::vector<int>> seen{SignedPerm::identity(m).window()};
  std::deque<std::vector<int>> queue{SignedPerm::identity(m).window()};
  while (!queue.empty()) {
    auto w = queue.front();
    queue.pop_front();
    for (int a = 0; a < m; ++a) {
      auto y = right_gen(w, a);
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  std::vector<SignedPerm> out;
  for (auto& w : seen) out.emplace_back(w);
  std::stable_sort(out.begin(), out.end(),
                   [](const SignedPerm& a, const SignedPerm& b) { return a.length() < b.length(); });
  return out;
}

// ---------------------------------------------------------------- Hecke algebra

HeckeElement hecke_basis(const SignedPerm& s, const LaurentPoly& c) {
  HeckeElement h;
  if (!c.is_zero()) h.emplace(s, c);
  return h;
}

HeckeElement hecke_gen(int m, int a) { return hecke_basis(SignedPerm::generator(m, a)); }

HeckeElement hecke_add(HeckeElement a, const HeckeElement& b, const LaurentPoly& s) {
  for (auto& [w, c] : b) {
    LaurentPoly x = a[w] + c * s;
    if (x.is_zero()) a.erase(w);
    else a[w] = x;
  }
  return a;
}

namespace {
// x * H_a
HeckeElement times_generator(const HeckeElement& x, int a) {
  HeckeElement out;
  for (auto& [w, c] : x) {
    SignedPerm ws = w.times_gen(a);
    out = hecke_add(out, hecke_basis(ws, c));
    // H_w H_a = H_{ws} + (q^{-1}-q) H_w when l(ws) < l(w)
    if (ws.length() < w.length()) out = hecke_add(out, hecke_basis(w, c * qq()));
  }
  return out;
}
}  // namespace

HeckeElement hecke_mul(const HeckeElement& a, const HeckeElement& b) {
  HeckeElement out;
  for (auto& [w, c] : b) {
    HeckeElement x = a;
    for (int g : w.reduced_word()) x = times_generator(x, g);
    out = hecke_add(out, x, c);
  }
  return out;
}

HeckeElement hecke_bar(const HeckeElement& x) {
  HeckeElement out;
  for (auto& [w, c] : x) {
    // bar(H_w) = H_{a_1}^{-1} ... H_{a_k}^{-1} and H_a^{-1} = H_a + (q - q^{-1})
    HeckeElement y = hecke_basis(SignedPerm::identity(w.m()));
    for (int g : w.reduced_word()) y = hecke_add(times_generator(y, g), y, hbar_shift());
    out = hecke_add(out, y, c.bar());
  }
  return out;
}

nlohmann::json hecke_json(const HeckeElement& x) {
  nlohmann::json terms = nlohmann::json::array();
  for (auto& [w, c] : x) terms.push_back({{"perm", w.window()}, {"word", w.reduced_word()}, {"poly", to_json(c)}});
  return terms;
}

// ---------------------------------------------------------------- action on V^{(x)m}

Idx act_index(const Idx& f, const SignedPerm& s) {
  if (int(f.size()) != s.m()) throw std::invalid_argument("act_index: size mismatch");
  Idx g(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    int y = s.window()[i];
    int v = f[size_t((y < 0 ? -y : y) - 1)];
    g[i] = y < 0 ? -v : v;
  }
  return g;
}

bool anti_dominant(const RankData& rd, const Idx& f) {
  if (f.empty()) return true;
  if (rd.is_iota() ? f[0] <= 0 : f[0] < 0) return false;
  for (size_t i = 1; i < f.size(); ++i)
    if (f[i - 1] > f[i]) return false;
  return true;
}

TensorVector act_hecke(const TensorSpace& s, const TensorVector& v, int a) {
  if (!s.pure_V()) throw std::invalid_argument("act_hecke: the type-B action needs a pure V-tensor space");
  if (a < 0 || a >= int(s.m())) throw std::invalid_argument("act_hecke: generator index out of range");
  TensorVector out;
  for (auto& [f, c] : v.terms) {
    Idx g = f;
    if (a == 0) {
      g[0] = -f[0];
      if (f[0] == 0) {
        out.add(f, c.shift(-1));  // jota only: f(1) = 0
      } else {
        out.add(g, c);
        if (f[0] < 0) out.add(f, c * qq());
      }
      continue;
    }
    size_t i = size_t(a - 1);
    std::swap(g[i], g[i + 1]);
    if (f[i] == f[i + 1]) {
      out.add(f, c.shift(-1));
    } else {
      out.add(g, c);
      if (f[i] > f[i + 1]) out.add(f, c * qq());
    }
  }
  return out;
}

TensorVector act_hecke(const TensorSpace& s, const TensorVector& v, const HeckeElement& h) {
  TensorVector out;
  for (auto& [w, c] : h) {
    TensorVector x = v;
    for (int g : w.reduced_word()) x = act_hecke(s, x, g);
    out += x.scaled(c);
  }
  return out;
}

TensorVector act_hecke_typeA(const TensorSpace& s, const TensorVector& v, int i) {
  if (i < 1 || i >= int(s.m())) throw std::invalid_argument("act_hecke_typeA: generator index out of range");
  size_t k = size_t(i - 1);
  if (s.b()[k] != s.b()[k + 1]) throw std::invalid_argument("act_hecke_typeA: factors of different type");
  // W is V twisted by a -> -a, so the inequalities flip
  int sg = s.b()[k] ? -1 : 1;
  TensorVector out;
  for (auto& [f, c] : v.terms) {
    if (f[k] == f[k + 1]) {
      out.add(f, c.shift(-1));
      continue;
    }
    Idx g = f;
    std::swap(g[k], g[k + 1]);
    out.add(g, c);
    if (sg * f[k] > sg * f[k + 1]) out.add(f, c * qq());
  }
  return out;
}

// ---------------------------------------------------------------- bar via orbits

HeckeBar::HeckeBar(TensorSpace s) : s_(std::move(s)) {
  if (!s_.pure_V()) throw std::invalid_argument("HeckeBar: needs a pure V-tensor space");
}

void HeckeBar::build_orbit(const Idx& f0) {
  size_t m = s_.m();
  std::vector<Idx> order{f0};
  std::map<Idx, std::vector<int>> word{{f0, {}}};
  for (size_t t = 0; t < order.size(); ++t) {
    Idx g = order[t];
    for (int a = 0; a < int(m); ++a) {
      Idx h = act_index(g, SignedPerm::generator(int(m), a));
      if (word.count(h)) continue;
      auto w = word[g];
      w.push_back(a);
      word[h] = w;
      order.push_back(h);
    }
  }
  // A_g = M_{f0} H_{sigma_g}, B_g = M_{f0} bar(H_{sigma_g}); bar(M) solves X bar(A) = B
  std::map<Idx, size_t> pos;
  for (size_t t = 0; t < order.size(); ++t) pos[order[t]] = t;
  std::vector<TensorVector> X(order.size());
  for (size_t t = 0; t < order.size(); ++t) {
    TensorVector A = TensorVector::basis(f0), B = A;
    for (int a : word[order[t]]) {
      A = act_hecke(s_, A, a);
      B = act_hecke(s_, B, a) + B.scaled(hbar_shift());
    }
    TensorVector x = B;
    for (auto& [h, c] : A.terms) {
      auto it = pos.find(h);
      if (it == pos.end()) throw std::logic_error("HeckeBar: orbit not closed");
      if (h == order[t]) {
        if (!c.is_one()) throw std::logic_error("HeckeBar: basis change not unitriangular");
        continue;
      }
      if (it->second > t) throw std::logic_error("HeckeBar: basis change not triangular");
      x -= X[it->second].scaled(c.bar());
    }
    X[t] = x;
  }
  for (size_t t = 0; t < order.size(); ++t) cols_[order[t]] = X[t];
}

const TensorVector& HeckeBar::column(const Idx& f) {
  auto it = cols_.find(f);
  if (it != cols_.end()) return it->second;
  if (!s_.valid(f)) throw std::invalid_argument("HeckeBar::column: invalid index " + idx_label(f));
  Idx f0 = f;
  for (int& x : f0) x = x < 0 ? -x : x;
  std::sort(f0.begin(), f0.end());
  build_orbit(f0);
  return cols_.at(f);
}

TensorVector HeckeBar::apply(const TensorVector& v) {
  TensorVector out;
  for (auto& [f, c] : v.terms) out += column(f).scaled(c.bar());
  return out;
}

// ---------------------------------------------------------------- R-matrix

TypeARMatrix::TypeARMatrix(FAlgebra& fa, const TensorSpace& s) : fa_(fa), s_(s) {}

TensorVector TypeARMatrix::local(const TensorVector& v, int i, bool inverse) {
  if (i < 1 || i >= int(s_.m())) throw std::invalid_argument("TypeARMatrix: position out of range");
  size_t k = size_t(i - 1);
  int b1 = s_.b()[k], b2 = s_.b()[k + 1];
  if (b1 != b2) throw std::invalid_argument("TypeARMatrix: factors of different type");
  auto key = std::make_pair(b1, b2);
  auto& th = th_[key];
  if (!th) th = std::make_unique<ModuleTheta>(fa_, TensorSpace(s_.rank(), {b1, b2}));
  int sg = b1 ? -1 : 1;
  auto gexp = [&](int x, int y) { return x == y ? sg * sg : 0; };
  TensorVector out;
  for (auto& [f, c] : v.terms) {
    TensorVector x = TensorVector::basis({f[k], f[k + 1]});
    TensorVector y;
    if (inverse) {
      // R^{-1} = P^{-1} g^{-1} Theta^{-1}, Theta^{-1} = bar(Theta)
      for (auto& [p, d] : th->apply_bar(x).terms) y.add({p[1], p[0]}, d.shift(-gexp(p[0], p[1])));
    } else {
      TensorVector z;
      z.add({f[k + 1], f[k]}, LaurentPoly::q(gexp(f[k], f[k + 1])));
      y = th->apply(z);
    }
    for (auto& [p, d] : y.terms) {
      Idx g = f;
      g[k] = p[0];
      g[k + 1] = p[1];
      out.add(g, c * d);
    }
  }
  return out;
}

TensorVector TypeARMatrix::apply_inverse(const TensorVector& v, int i) { return local(v, i, true); }
TensorVector TypeARMatrix::apply(const TensorVector& v, int i) { return local(v, i, false); }

// ---------------------------------------------------------------- the operator T

namespace {
LaurentPoly neg_q_pow(int e) { return LaurentPoly::monomial(e % 2 ? -1 : 1, e); }
}  // namespace

OperatorT operator_T(UpsilonEngine& eng) {
  const RankData& rd = eng.rank();
  OperatorT out;
  out.index = rd.module_indices2();
  size_t N = out.index.size();
  auto pos = [&](int a2) { return size_t(rd.module_pos(a2)); };

  // eigenvectors: columns of P, eigenvalues of T^{-1} in D
  RMatrix P(N, std::vector<RationalFn>(N));
  std::vector<RationalFn> D(N);
  size_t col = 0;
  for (int a2 : out.index) {
    if (a2 < 0) continue;
    if (a2 == 0) {
      P[pos(0)][col] = 1;
      D[col++] = RationalFn(LaurentPoly::q(-1));
      continue;
    }
    P[pos(-a2)][col] = 1;  // v_{-a} - q^{-1} v_a in V_-
    P[pos(a2)][col] = RationalFn(-LaurentPoly::q(-1));
    D[col++] = RationalFn(-LaurentPoly::q(1));
    P[pos(-a2)][col] = 1;  // v_{-a} + q v_a in V_+
    P[pos(a2)][col] = RationalFn(LaurentPoly::q(1));
    D[col++] = RationalFn(LaurentPoly::q(-1));
  }
  RMatrix Pinv = invert(P);
  out.Tinv.assign(N, std::vector<RationalFn>(N));
  for (size_t i = 0; i < N; ++i)
    for (size_t j = 0; j < N; ++j) {
      RationalFn s;
      for (size_t k = 0; k < N; ++k)
        if (!P[i][k].is_zero() && !Pinv[k][j].is_zero()) s += P[i][k] * D[k] * Pinv[k][j];
      out.Tinv[i][j] = s;
    }

  // T = Upsilon o zeta~ o T_{w0}
  ModuleUpsilon up(eng, TensorSpace::power_of_V(rd, 1));
  int n = rd.n();  // 2r+1 (iota) or 2r (jota)
  out.T.assign(N, std::vector<RationalFn>(N));
  for (int i = 0; i <= n; ++i) {
    int src = -n + 2 * i, dst = n - 2 * i;  // v_{-r-1/2+i} -> v_{r+1/2-i} (iota); v_{-r+i} -> v_{r-i} (jota)
    LaurentPoly tw = neg_q_pow(n - i);
    LaurentPoly zeta;
    if (rd.is_iota() || i != rd.r()) zeta = neg_q_pow(i - n);
    else zeta = neg_q_pow(-rd.r()).shift(1);
    TensorVector img = up.apply(TensorVector::basis({dst}).scaled(tw * zeta));
    for (auto& [g, c] : img.terms) out.T[pos(g[0])][pos(src)] = RationalFn(c);
  }
  for (size_t i = 0; i < N; ++i)
    for (size_t j = 0; j < N; ++j) {
      RationalFn s;
      for (size_t k = 0; k < N; ++k)
        if (!out.T[i][k].is_zero() && !out.Tinv[k][j].is_zero()) s += out.T[i][k] * out.Tinv[k][j];
      if (s != RationalFn(i == j ? 1 : 0))
        throw std::runtime_error("operator_T: the eigenspace and intertwiner constructions disagree");
    }
  return out;
}

TensorVector apply_T_inverse_first(const OperatorT& t, const TensorSpace& s, const TensorVector& v) {
  if (!s.pure_V()) throw std::invalid_argument("apply_T_inverse_first: needs a pure V-tensor space");
  const RankData& rd = s.rank();
  TensorVector out;
  for (auto& [f, c] : v.terms) {
    size_t j = size_t(rd.module_pos(f[0]));
    for (size_t i = 0; i < t.index.size(); ++i) {
      if (t.Tinv[i][j].is_zero()) continue;
      Idx g = f;
      g[0] = t.index[i];
      out.add(g, c * t.Tinv[i][j].to_laurent());
    }
  }
  return out;
}

}  // namespace qsp
