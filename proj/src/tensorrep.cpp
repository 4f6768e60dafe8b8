#include "qsp/tensorrep.hpp"

#include <stdexcept>

namespace qsp {

void TensorVector::add(const Idx& f, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto it = terms.find(f);
  if (it == terms.end()) {
    terms.emplace(f, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

TensorVector& TensorVector::operator+=(const TensorVector& o) {
  for (auto& [f, c] : o.terms) add(f, c);
  return *this;
}

TensorVector& TensorVector::operator-=(const TensorVector& o) {
  for (auto& [f, c] : o.terms) add(f, -c);
  return *this;
}

TensorVector TensorVector::scaled(const LaurentPoly& c) const {
  TensorVector v;
  if (c.is_zero()) return v;
  for (auto& [f, x] : terms) v.terms.emplace(f, x * c);
  return v;
}

TensorVector TensorVector::bar_coeffs() const {
  TensorVector v;
  for (auto& [f, x] : terms) v.terms.emplace(f, x.bar());
  return v;
}

LaurentPoly TensorVector::coeff(const Idx& f) const {
  auto it = terms.find(f);
  return it == terms.end() ? LaurentPoly() : it->second;
}

std::string CoidealElt::str() const {
  switch (g) {
    case CoidealGen::e: return "e" + half_label(i2);
    case CoidealGen::f: return "f" + half_label(i2);
    case CoidealGen::k: return "k" + half_label(i2);
    case CoidealGen::kinv: return "k" + half_label(i2) + "^-1";
    case CoidealGen::t: return "t";
  }
  return "?";
}

std::string idx_label(const Idx& f) {
  std::string s = "(";
  for (size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + half_label(f[i]);
  return s + ")";
}

TensorSpace::TensorSpace(RankData rd, std::vector<int> b) : rd_(rd), b_(std::move(b)) {
  for (int x : b_)
    if (x != 0 && x != 1) throw std::invalid_argument("TensorSpace: b must be a 0/1 sequence");
}

std::string TensorSpace::b_string() const {
  std::string s;
  for (int x : b_) s += char('0' + x);
  return s;
}

bool TensorSpace::pure_V() const {
  for (int x : b_)
    if (x) return false;
  return true;
}

std::vector<Idx> TensorSpace::basis() const {
  auto ind = rd_.module_indices2();
  std::vector<Idx> out;
  Idx cur(m());
  std::vector<size_t> pos(m(), 0);
  if (m() == 0) return {Idx{}};
  while (true) {
    for (size_t k = 0; k < m(); ++k) cur[k] = ind[pos[k]];
    out.push_back(cur);
    size_t k = m();
    while (k > 0) {
      --k;
      if (++pos[k] < ind.size()) break;
      pos[k] = 0;
      if (k == 0) return out;
    }
  }
}

bool TensorSpace::valid(const Idx& f) const {
  if (f.size() != m()) return false;
  for (int a : f)
    if (!rd_.valid_module2(a)) return false;
  return true;
}

Weight TensorSpace::weight(const Idx& f) const {
  Weight w;
  for (size_t k = 0; k < m(); ++k) w.add(f[k], factor_sign(k));
  return w;
}

int TensorSpace::alpha_pair(int p, const Idx& f, size_t from, size_t to) const {
  int s = 0;
  for (size_t k = from; k < to; ++k) s += factor_sign(k) * rd_.root_eps(p, rd_.module_pos(f[k]));
  return s;
}

bool TensorSpace::E1(size_t k, int p, int a2, int& out) const {
  int i2 = rd_.root_index2(p);
  if (b_[k] == 0) {
    if (i2 + 1 != a2) return false;  // E_i v_a = v_{a-1} for a = i + 1/2
    out = a2 - 2;
  } else {
    if (i2 - 1 != a2) return false;  // E_i w_a = w_{a+1} for a = i - 1/2
    out = a2 + 2;
  }
  return rd_.valid_module2(out);
}

bool TensorSpace::F1(size_t k, int p, int a2, int& out) const {
  int i2 = rd_.root_index2(p);
  if (b_[k] == 0) {
    if (i2 - 1 != a2) return false;  // F_i v_a = v_{a+1} for a = i - 1/2
    out = a2 + 2;
  } else {
    if (i2 + 1 != a2) return false;  // F_i w_a = w_{a-1} for a = i + 1/2
    out = a2 - 2;
  }
  return rd_.valid_module2(out);
}

TensorVector TensorSpace::act_E(int p, const TensorVector& v, bool barred) const {
  // Delta(E) = 1 (x) E + E (x) K^{-1}, iterated: E on factor k, K^{-1} on the factors after it
  TensorVector out;
  for (auto& [f, c] : v.terms)
    for (size_t k = 0; k < m(); ++k) {
      int a;
      if (!E1(k, p, f[k], a)) continue;
      Idx g = f;
      g[k] = a;
      out.add(g, c.shift((barred ? 1 : -1) * alpha_pair(p, f, k + 1, m())));
    }
  return out;
}

TensorVector TensorSpace::act_F(int p, const TensorVector& v, bool barred) const {
  // Delta(F) = F (x) 1 + K (x) F: K on the factors before the acting one
  TensorVector out;
  for (auto& [f, c] : v.terms)
    for (size_t k = 0; k < m(); ++k) {
      int a;
      if (!F1(k, p, f[k], a)) continue;
      Idx g = f;
      g[k] = a;
      out.add(g, c.shift((barred ? -1 : 1) * alpha_pair(p, f, 0, k)));
    }
  return out;
}

TensorVector TensorSpace::act_K(int p, int sign, const TensorVector& v) const {
  TensorVector out;
  for (auto& [f, c] : v.terms) out.add(f, c.shift(sign * alpha_pair(p, f, 0, m())));
  return out;
}

TensorVector TensorSpace::act_F_word(const Word& w, const TensorVector& v) const {
  TensorVector x = v;
  for (size_t t = w.size(); t-- > 0;) x = act_F(w[t], x);
  return x;
}

TensorVector TensorSpace::act_E_word(const Word& w, const TensorVector& v) const {
  TensorVector x = v;
  for (size_t t = w.size(); t-- > 0;) x = act_E(w[t], x);
  return x;
}

std::vector<CoidealElt> TensorSpace::coideal_generators() const {
  std::vector<CoidealElt> gens;
  for (int p = 0; p < rd_.n(); ++p) {
    int i2 = rd_.root_index2(p);
    if (i2 <= 0) continue;
    gens.push_back({CoidealGen::e, i2});
    gens.push_back({CoidealGen::f, i2});
    gens.push_back({CoidealGen::k, i2});
    gens.push_back({CoidealGen::kinv, i2});
  }
  if (rd_.is_iota()) gens.push_back({CoidealGen::t, 0});
  return gens;
}

namespace {
// barred: apply bar of U to the embedded element (K -> K^{-1}, q -> q^{-1})
TensorVector coideal_action(const TensorSpace& s, const CoidealElt& u, const TensorVector& v, bool barred) {
  const RankData& rd = s.rank();
  int kb = barred ? -1 : 1;
  if (u.g == CoidealGen::t) {
    if (!rd.is_iota()) throw std::invalid_argument("act_coideal: t exists only for the iota pair");
    int c = rd.center();
    // E_0 + q F_0 K_0^{-1} + K_0^{-1}
    TensorVector out = s.act_E(c, v);
    out += s.act_F(c, s.act_K(c, -kb, v)).scaled(LaurentPoly::q(kb));
    out += s.act_K(c, -kb, v);
    return out;
  }
  if (u.i2 <= 0) throw std::invalid_argument("act_coideal: index must be positive");
  int p = rd.root_pos(u.i2), mp = rd.root_pos(-u.i2);
  switch (u.g) {
    case CoidealGen::e:  // E_i + K_i^{-1} F_{-i}
      return s.act_E(p, v) + s.act_K(p, -kb, s.act_F(mp, v));
    case CoidealGen::f:  // F_i K_{-i}^{-1} + E_{-i}
      return s.act_F(p, s.act_K(mp, -kb, v)) + s.act_E(mp, v);
    case CoidealGen::k:  // K_i K_{-i}^{-1}
      return s.act_K(p, kb, s.act_K(mp, -kb, v));
    case CoidealGen::kinv:
      return s.act_K(p, -kb, s.act_K(mp, kb, v));
    default:
      break;
  }
  throw std::logic_error("act_coideal: unreachable");
}
}  // namespace

TensorVector TensorSpace::act_coideal(const CoidealElt& u, const TensorVector& v) const {
  return coideal_action(*this, u, v, false);
}

TensorVector TensorSpace::act_coideal_barred(const CoidealElt& u, const TensorVector& v) const {
  return coideal_action(*this, u, v, true);
}

bool TensorSpace::f_chain(size_t k, int from2, int to2, Word& w) const {
  w.clear();
  if (b_[k] == 0) {
    if (to2 < from2) return false;
    for (int i2 = to2 - 1; i2 > from2; i2 -= 2) w.push_back(char(rd_.root_pos(i2)));
  } else {
    if (to2 > from2) return false;
    for (int i2 = to2 + 1; i2 < from2; i2 += 2) w.push_back(char(rd_.root_pos(i2)));
  }
  return true;
}

bool TensorSpace::e_chain(size_t k, int from2, int to2, Word& w) const {
  w.clear();
  if (b_[k] == 0) {
    if (to2 > from2) return false;
    for (int i2 = from2 - 1; i2 > to2; i2 -= 2) w.push_back(char(rd_.root_pos(i2)));
  } else {
    if (to2 < from2) return false;
    for (int i2 = from2 + 1; i2 < to2; i2 += 2) w.push_back(char(rd_.root_pos(i2)));
  }
  return true;
}

nlohmann::json TensorSpace::vector_json(const TensorVector& v) const {
  nlohmann::json terms = nlohmann::json::array();
  for (auto& [f, c] : v.terms) terms.push_back({{"f", f}, {"poly", to_json(c)}});
  return {{"b", b_string()}, {"rank", rd_.r()}, {"pair", parity_name(rd_.parity())}, {"terms", terms}};
}

ZElement chain_dual(const Word& w, const RankData& rd) {
  (void)rd;
  ZElement y;
  if (w.empty()) {
    y.emplace_back(Word(), ZPoly(1));
    return y;
  }
  y.emplace_back(Word(1, w.back()), ZPoly(1));
  for (size_t j = w.size() - 1; j-- > 0;) {
    // Y = -q F_j Y' + Y' F_j
    ZElement n;
    n.reserve(2 * y.size());
    for (auto& [u, c] : y) n.emplace_back(Word(1, w[j]) + u, -c.shifted(1));
    for (auto& [u, c] : y) n.emplace_back(u + Word(1, w[j]), c);
    y = std::move(n);
  }
  return y;
}

}  // namespace qsp
