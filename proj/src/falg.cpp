#include "qsp/falg.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "qsp/linalg.hpp"

namespace qsp {

std::vector<int> FAlgebra::weight(const Word& w) const {
  std::vector<int> mu(rd_.n(), 0);
  for (char c : w) ++mu[size_t(c)];
  return mu;
}

int FAlgebra::height(const std::vector<int>& mu) const {
  int h = 0;
  for (int x : mu) h += x;
  return h;
}

int FAlgebra::pair_root(int p, const std::vector<int>& mu) const {
  int s = 2 * mu[p];
  if (p > 0) s -= mu[p - 1];
  if (p + 1 < rd_.n()) s -= mu[p + 1];
  return s;
}

int FAlgebra::pair(const std::vector<int>& a, const std::vector<int>& b) const {
  int s = 0;
  for (int p = 0; p < rd_.n(); ++p)
    if (a[p]) s += a[p] * pair_root(p, b);
  return s;
}

Word FAlgebra::word_from_indices(const std::vector<int>& idx2) const {
  Word w;
  for (int i2 : idx2) w.push_back(char(rd_.root_pos(i2)));
  return w;
}

std::vector<int> FAlgebra::indices_of(const Word& w) const {
  std::vector<int> v;
  for (char c : w) v.push_back(rd_.root_index2(c));
  return v;
}

std::string FAlgebra::word_label(const Word& w) const {
  if (w.empty()) return "1";
  std::string s;
  for (char c : w) s += "F" + rd_.root_label(c);
  return s;
}

std::vector<std::pair<Word, int>> FAlgebra::r_word(int p, const Word& w) const {
  std::vector<std::pair<Word, int>> out;
  int e = 0;  // (alpha_p, weight of letters after position t)
  for (size_t t = w.size(); t-- > 0;) {
    if (w[t] == p) out.emplace_back(w.substr(0, t) + w.substr(t + 1), e);
    e += rd_.root_pair(p, w[t]);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Word, int>> FAlgebra::l_word(int p, const Word& w) const {
  std::vector<std::pair<Word, int>> out;
  int e = 0;
  for (size_t t = 0; t < w.size(); ++t) {
    if (w[t] == p) out.emplace_back(w.substr(0, t) + w.substr(t + 1), e);
    e += rd_.root_pair(p, w[t]);
  }
  return out;
}

FElement FAlgebra::r_map(int p, const FElement& x) const {
  FElement out;
  for (auto& [w, c] : x)
    for (auto& [u, e] : r_word(p, w)) add_to(out, felement_word(u, c * RationalFn(LaurentPoly::q(e))));
  return out;
}

FElement FAlgebra::l_map(int p, const FElement& x) const {
  FElement out;
  for (auto& [w, c] : x)
    for (auto& [u, e] : l_word(p, w)) add_to(out, felement_word(u, c * RationalFn(LaurentPoly::q(e))));
  return out;
}

const ZPoly& FAlgebra::word_pairing(const Word& w, const Word& v) {
  std::string key = w + '|' + v;
  auto it = pair_cache_.find(key);
  if (it != pair_cache_.end()) return it->second;
  ZPoly res;
  if (w.size() == v.size() && weight(w) == weight(v)) {
    // sum over letter-preserving bijections sigma: positions of w -> positions of v,
    // weighted by q^{sum over inversions a<b, sigma(a)>sigma(b) of (alpha_{w_a}, alpha_{w_b})}
    size_t k = w.size();
    std::vector<int> sigma(k, -1);
    std::vector<bool> used(k, false);
    std::function<void(size_t, int)> dfs = [&](size_t a, int e) {
      if (a == k) {
        res.add_shifted(ZPoly(1), e);
        return;
      }
      for (size_t t = 0; t < k; ++t) {
        if (used[t] || v[t] != w[a]) continue;
        int de = 0;
        for (size_t b = 0; b < a; ++b)
          if (size_t(sigma[b]) > t) de += rd_.root_pair(w[a], w[b]);
        used[t] = true;
        sigma[a] = int(t);
        dfs(a + 1, e + de);
        used[t] = false;
      }
    };
    dfs(0, 0);
  }
  return pair_cache_.emplace(std::move(key), std::move(res)).first->second;
}

RationalFn FAlgebra::bilinear_form(const FElement& x, const FElement& y) {
  RationalFn s;
  std::map<size_t, RationalFn> acc;
  for (auto& [w, a] : x)
    for (auto& [v, b] : y) {
      if (w.size() != v.size()) continue;
      const ZPoly& d = word_pairing(w, v);
      if (d.is_zero()) continue;
      acc[w.size()] += a * b * RationalFn(d.to_laurent());
    }
  for (auto& [len, val] : acc) {
    LaurentPoly den(1);
    for (size_t i = 0; i < len; ++i) den *= qq();
    s += val / RationalFn(den);
  }
  return s;
}

ZPoly FAlgebra::pairing_scaled(const ZElement& x, const ZElement& y) {
  ZPoly s;
  for (auto& [w, a] : x)
    for (auto& [v, b] : y) {
      const ZPoly& d = word_pairing(w, v);
      if (!d.is_zero()) s += a * b * d;
    }
  return s;
}

FElement FAlgebra::serre_relator(int i2, int j2) const {
  if (i2 == j2) throw std::invalid_argument("serre_relator: equal indices");
  char i = char(rd_.root_pos(i2)), j = char(rd_.root_pos(j2));
  FElement s;
  if (std::abs(i2 - j2) > 2) {
    s[Word{i, j}] = 1;
    s[Word{j, i}] = -1;
  } else {
    s[Word{i, i, j}] = 1;
    s[Word{j, i, i}] = 1;
    s[Word{i, j, i}] = RationalFn(-qint(2));
  }
  return s;
}

std::vector<Word> FAlgebra::words_of_weight(const std::vector<int>& mu) const {
  Word w;
  for (int p = 0; p < rd_.n(); ++p) w.append(size_t(mu[p]), char(p));
  std::vector<Word> out;
  do out.push_back(w);
  while (std::next_permutation(w.begin(), w.end()));
  return out;
}

long FAlgebra::kostant_count(const std::vector<int>& mu) const {
  int n = rd_.n();
  std::vector<std::pair<int, int>> roots;  // positive roots = intervals [a, b]
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) roots.emplace_back(a, b);
  std::map<std::pair<std::vector<int>, size_t>, long> memo;
  std::function<long(std::vector<int>&, size_t)> go = [&](std::vector<int>& m, size_t idx) -> long {
    if (std::all_of(m.begin(), m.end(), [](int x) { return x == 0; })) return 1;
    if (idx == roots.size()) return 0;
    auto key = std::make_pair(m, idx);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    auto [a, b] = roots[idx];
    long total = go(m, idx + 1);
    int k = 0;
    while (true) {
      bool ok = true;
      for (int p = a; p <= b; ++p)
        if (m[p] == 0) ok = false;
      if (!ok) break;
      for (int p = a; p <= b; ++p) --m[p];
      ++k;
      total += go(m, idx + 1);
    }
    for (int p = a; p <= b; ++p) m[p] += k;
    memo[key] = total;
    return total;
  };
  std::vector<int> m = mu;
  return go(m, 0);
}

GramRankReport FAlgebra::gram_rank(const std::vector<int>& mu) {
  GramRankReport rep;
  auto words = words_of_weight(mu);
  size_t N = words.size();
  rep.n_words = N;
  rep.kostant = kostant_count(mu);
  modp::Echelon ech(N);
  for (auto& w : words) {
    std::vector<uint64_t> row(N);
    for (size_t j = 0; j < N; ++j) row[j] = modp::eval(word_pairing(w, words[j]));
    ech.insert(std::move(row));
  }
  rep.rank_lower = ech.rank();

  // vectors u S v of the Serre ideal lie in the radical; their span bounds the rank from above
  std::unordered_map<Word, size_t> index;
  for (size_t j = 0; j < N; ++j) index[words[j]] = j;
  modp::Echelon ideal(N);
  int n = rd_.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (std::abs(i - j) > 1 && i > j) continue;  // F_iF_j - F_jF_i up to sign
      FElement s = serre_relator(rd_.root_index2(i), rd_.root_index2(j));
      std::vector<int> rest = mu;
      auto sw = weight(s.begin()->first);
      bool fits = true;
      for (int p = 0; p < n; ++p)
        if ((rest[p] -= sw[p]) < 0) fits = false;
      if (!fits) continue;
      for (auto& x : words_of_weight(rest))
        for (size_t cut = 0; cut <= x.size(); ++cut) {
          std::vector<uint64_t> vec(N, 0);
          for (auto& [sword, c] : s) {
            Word full = x.substr(0, cut) + sword + x.substr(cut);
            vec[index.at(full)] = modp::add(vec[index.at(full)], modp::eval(ZPoly::from_laurent(c.to_laurent())));
          }
          ideal.insert(std::move(vec));
        }
    }
  rep.rank_upper = N - ideal.rank();
  return rep;
}

const WeightBasis& FAlgebra::weight_basis(const std::vector<int>& mu) {
  auto it = basis_cache_.find(mu);
  if (it != basis_cache_.end()) return it->second;
  WeightBasis wb;
  wb.mu = mu;
  auto words = words_of_weight(mu);
  size_t N = words.size();
  size_t k = size_t(height(mu));
  modp::Echelon ech(N);
  for (auto& w : words) {
    std::vector<uint64_t> row(N);
    for (size_t j = 0; j < N; ++j) row[j] = modp::eval(word_pairing(w, words[j]));
    if (ech.insert(std::move(row))) wb.words.push_back(w);
  }
  LaurentPoly den(1);
  for (size_t i = 0; i < k; ++i) den *= qq();
  size_t K = wb.words.size();
  wb.gram.assign(K, std::vector<RationalFn>(K));
  for (size_t a = 0; a < K; ++a)
    for (size_t b = 0; b < K; ++b)
      wb.gram[a][b] = RationalFn(word_pairing(wb.words[a], wb.words[b]).to_laurent(), den);
  wb.gram_inv = invert(wb.gram);
  return basis_cache_.emplace(mu, std::move(wb)).first->second;
}

std::vector<FElement> FAlgebra::dual_basis(const std::vector<int>& mu) {
  const WeightBasis& wb = weight_basis(mu);
  std::vector<FElement> out;
  for (size_t j = 0; j < wb.words.size(); ++j) {
    FElement d;
    for (size_t i = 0; i < wb.words.size(); ++i)
      if (!wb.gram_inv[i][j].is_zero()) d[wb.words[i]] = wb.gram_inv[i][j];
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<RationalFn> FAlgebra::expand(const FElement& x, const std::vector<int>& mu) {
  const WeightBasis& wb = weight_basis(mu);
  size_t K = wb.words.size();
  std::vector<RationalFn> pairs(K), out(K);
  for (size_t i = 0; i < K; ++i) pairs[i] = bilinear_form(felement_word(wb.words[i]), x);
  for (size_t i = 0; i < K; ++i)
    for (size_t j = 0; j < K; ++j)
      if (!wb.gram_inv[i][j].is_zero() && !pairs[j].is_zero()) out[i] += wb.gram_inv[i][j] * pairs[j];
  return out;
}

FElement operator*(const FElement& a, const FElement& b) {
  FElement out;
  for (auto& [u, x] : a)
    for (auto& [v, y] : b) add_to(out, felement_word(u + v, x * y));
  return out;
}

FElement& add_to(FElement& a, const FElement& b, const RationalFn& s) {
  for (auto& [w, c] : b) {
    auto it = a.find(w);
    RationalFn v = s == RationalFn(1) ? c : c * s;
    if (it == a.end()) {
      if (!v.is_zero()) a.emplace(w, v);
    } else {
      it->second += v;
      if (it->second.is_zero()) a.erase(it);
    }
  }
  return a;
}

FElement felement_word(const Word& w, const RationalFn& c) {
  FElement f;
  if (!c.is_zero()) f[w] = c;
  return f;
}

}  // namespace qsp
