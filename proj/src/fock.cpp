#include "qsp/fock.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qsp {

// ---------------------------------------------------------------- sequences and weights

ZeroOneSeq::ZeroOneSeq(std::vector<int> b) : b_(std::move(b)) {
  for (int x : b_)
    if (x != 0 && x != 1) throw std::invalid_argument("ZeroOneSeq: entries must be 0 or 1");
}

ZeroOneSeq ZeroOneSeq::parse(const std::string& s) {
  std::vector<int> b;
  for (char c : s) {
    if (c == ',' || c == ' ') continue;
    if (c != '0' && c != '1') throw std::invalid_argument("ZeroOneSeq::parse: unexpected character in '" + s + "'");
    b.push_back(c - '0');
  }
  if (b.empty()) throw std::invalid_argument("ZeroOneSeq::parse: empty sequence");
  return ZeroOneSeq(b);
}

int ZeroOneSeq::m() const { return int(std::count(b_.begin(), b_.end(), 0)); }
int ZeroOneSeq::n() const { return int(std::count(b_.begin(), b_.end(), 1)); }

int ZeroOneSeq::slot(size_t i) const {
  int c = 0;
  for (size_t j = 0; j < i; ++j) c += b_[j] == b_[i];
  return c;
}

ZeroOneSeq ZeroOneSeq::extended(int bit, int k) const {
  std::vector<int> b = b_;
  b.insert(b.end(), size_t(k), bit);
  return ZeroOneSeq(b);
}

std::string ZeroOneSeq::str() const {
  std::string s;
  for (int x : b_) s += char('0' + x);
  return s;
}

namespace {

int parse_half(const std::string& tok) {
  auto slash = tok.find('/');
  char* end = nullptr;
  if (slash == std::string::npos) {
    long v = std::strtol(tok.c_str(), &end, 10);
    if (tok.empty() || *end) throw std::invalid_argument("SuperWeight::parse: bad number '" + tok + "'");
    return int(2 * v);
  }
  std::string num = tok.substr(0, slash), den = tok.substr(slash + 1);
  long v = std::strtol(num.c_str(), &end, 10);
  if (num.empty() || *end || den != "2") throw std::invalid_argument("SuperWeight::parse: bad number '" + tok + "'");
  return int(v);
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove(tok.begin(), tok.end(), ' '), tok.end());
    if (!tok.empty()) out.push_back(parse_half(tok));
  }
  return out;
}

std::string join_labels(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + half_label(v[i]);
  return s;
}

nlohmann::json label_array(const std::vector<int>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (int x : v) a.push_back(half_label(x));
  return a;
}

}  // namespace

SuperWeight SuperWeight::zero(int m, int n) { return {std::vector<int>(size_t(m), 0), std::vector<int>(size_t(n), 0)}; }

SuperWeight SuperWeight::parse(const std::string& s) {
  auto bar = s.find('|');
  SuperWeight w;
  w.even2 = parse_list(s.substr(0, bar));
  if (bar != std::string::npos) w.odd2 = parse_list(s.substr(bar + 1));
  return w;
}

bool SuperWeight::integral() const {
  for (auto* v : {&even2, &odd2})
    for (int x : *v)
      if (x % 2) return false;
  return true;
}

bool SuperWeight::half_integral() const {
  for (auto* v : {&even2, &odd2})
    for (int x : *v)
      if (x % 2 == 0) return false;
  return true;
}

std::vector<int> SuperWeight::b_coords(const ZeroOneSeq& b) const {
  if (int(even2.size()) != b.m() || int(odd2.size()) != b.n())
    throw std::invalid_argument("SuperWeight::b_coords: weight does not match the sequence " + b.str());
  std::vector<int> c(b.size());
  for (size_t i = 0; i < b.size(); ++i) c[i] = b[i] ? odd2[size_t(b.slot(i))] : even2[size_t(b.slot(i))];
  return c;
}

SuperWeight SuperWeight::from_b_coords(const ZeroOneSeq& b, const std::vector<int>& c2) {
  if (c2.size() != b.size()) throw std::invalid_argument("SuperWeight::from_b_coords: size mismatch");
  SuperWeight w = zero(b.m(), b.n());
  for (size_t i = 0; i < b.size(); ++i) (b[i] ? w.odd2 : w.even2)[size_t(b.slot(i))] = c2[i];
  return w;
}

std::string SuperWeight::str() const { return "(" + join_labels(even2) + " | " + join_labels(odd2) + ")"; }

nlohmann::json SuperWeight::to_json() const { return {{"even", label_array(even2)}, {"odd", label_array(odd2)}}; }

SuperWeight operator+(const SuperWeight& a, const SuperWeight& b) {
  if (a.even2.size() != b.even2.size() || a.odd2.size() != b.odd2.size())
    throw std::invalid_argument("SuperWeight: size mismatch");
  SuperWeight c = a;
  for (size_t i = 0; i < c.even2.size(); ++i) c.even2[i] += b.even2[i];
  for (size_t i = 0; i < c.odd2.size(); ++i) c.odd2[i] += b.odd2[i];
  return c;
}

SuperWeight operator-(const SuperWeight& a, const SuperWeight& b) {
  SuperWeight nb = b;
  for (int& x : nb.even2) x = -x;
  for (int& x : nb.odd2) x = -x;
  return a + nb;
}

// ---------------------------------------------------------------- roots and rho

std::vector<SuperRoot> super_roots(const ZeroOneSeq& b) {
  size_t N = b.size();
  std::vector<SuperRoot> out;
  auto unit = [&](size_t i, int s) {
    std::vector<int> c(N, 0);
    c[i] = s;
    return c;
  };
  for (size_t i = 0; i < N; ++i) {
    for (int s : {1, -1}) {
      out.push_back({unit(i, s), b[i] == 1});
      if (b[i]) out.push_back({unit(i, 2 * s), false});
    }
    for (size_t j = i + 1; j < N; ++j)
      for (int s : {1, -1})
        for (int t : {1, -1}) {
          std::vector<int> c(N, 0);
          c[i] = s;
          c[j] = t;
          out.push_back({c, b[i] != b[j]});
        }
  }
  return out;
}

std::vector<int> pi_b_coords(const std::vector<int>& u) {
  // u = c_0 (-e_1) + sum_{k>=1} c_k (e_k - e_{k+1}), so c_k = -sum_{i>k} u_i
  std::vector<int> c(u.size(), 0);
  int acc = 0;
  for (size_t k = u.size(); k-- > 0;) {
    acc -= u[k];
    c[k] = acc;
  }
  return c;
}

bool is_positive(const std::vector<int>& u) {
  auto c = pi_b_coords(u);
  bool nonzero = false;
  for (int x : c) {
    if (x < 0) return false;
    nonzero |= x != 0;
  }
  return nonzero;
}

SuperWeight rho(const ZeroOneSeq& b) {
  std::vector<int> r2(b.size(), 0);
  for (auto& a : super_roots(b)) {
    if (!is_positive(a.c)) continue;
    for (size_t i = 0; i < b.size(); ++i) r2[i] += a.odd ? -a.c[i] : a.c[i];
  }
  return SuperWeight::from_b_coords(b, r2);
}

// ---------------------------------------------------------------- index bijection

Idx lambda_to_f(const SuperWeight& lambda, const ZeroOneSeq& b, Parity p) {
  bool ok = p == Parity::odd ? lambda.integral() : lambda.half_integral();
  if (!ok)
    throw std::invalid_argument(std::string("lambda_to_f: lattice mismatch, ") +
                                (p == Parity::odd ? "iota needs integral weights" : "jota needs half-integral weights"));
  auto l = lambda.b_coords(b), r = rho(b).b_coords(b);
  Idx f(b.size());
  for (size_t i = 0; i < b.size(); ++i) f[i] = b.sign(i) * (l[i] + r[i]);
  return f;
}

SuperWeight f_to_lambda(const Idx& f, const ZeroOneSeq& b, Parity p) {
  if (f.size() != b.size()) throw std::invalid_argument("f_to_lambda: size mismatch");
  for (int x : f)
    if ((x % 2 != 0) != (p == Parity::odd)) throw std::invalid_argument("f_to_lambda: entry " + half_label(x) + " not in the index set");
  auto r = rho(b).b_coords(b);
  std::vector<int> c(b.size());
  for (size_t i = 0; i < b.size(); ++i) c[i] = b.sign(i) * f[i] - r[i];
  return SuperWeight::from_b_coords(b, c);
}

int min_rank(const Idx& f, Parity p) {
  int mx = 0;
  for (int x : f) mx = std::max(mx, std::abs(x));
  if (p == Parity::odd) return std::max(0, (mx - 1) / 2);
  return std::max(1, (mx + 1) / 2);
}

ThetaClass wt_b(const Idx& f, const ZeroOneSeq& b) {
  if (f.size() != b.size()) throw std::invalid_argument("wt_b: size mismatch");
  ThetaClass c;
  for (size_t i = 0; i < f.size(); ++i)
    if ((c[std::abs(f[i])] += b.sign(i)) == 0) c.erase(std::abs(f[i]));
  return c;
}

bool linked(const Idx& f, const Idx& g, const ZeroOneSeq& b) { return wt_b(f, b) == wt_b(g, b); }

namespace {

std::vector<int> lambda_diff(const Idx& f, const Idx& g, const ZeroOneSeq& b) {
  if (f.size() != b.size() || g.size() != b.size()) throw std::invalid_argument("bruhat: size mismatch");
  std::vector<int> u(b.size());
  for (size_t i = 0; i < b.size(); ++i) u[i] = b.sign(i) * (f[i] - g[i]) / 2;
  return u;
}

}  // namespace

bool bruhat_leq(const Idx& g, const Idx& f, const ZeroOneSeq& b) {
  if (!linked(f, g, b)) return false;
  for (int c : pi_b_coords(lambda_diff(f, g, b)))
    if (c < 0) return false;
  return true;
}

int bruhat_height(const Idx& g, const Idx& f, const ZeroOneSeq& b) {
  int h = 0;
  for (int c : pi_b_coords(lambda_diff(f, g, b))) h += c;
  return h;
}

std::vector<Idx> fock_order(const ZeroOneSeq& b, std::vector<Idx> idx) {
  std::vector<std::pair<int, Idx>> keyed;
  for (auto& f : idx) keyed.emplace_back(super_height(b.bits(), f), f);
  std::sort(keyed.begin(), keyed.end());
  std::vector<Idx> out;
  for (auto& [h, f] : keyed) out.push_back(f);
  return out;
}

std::vector<Idx> interval_below(const Idx& f, const ZeroOneSeq& b, const RankData& rd) {
  TensorSpace s(rd, b.bits());
  if (!s.valid(f)) throw std::invalid_argument("interval_below: " + idx_label(f) + " is not an index at rank " + std::to_string(rd.r()));
  std::vector<Idx> out;
  for (auto& g : s.basis())
    if (bruhat_leq(g, f, b)) out.push_back(g);
  return fock_order(b, out);
}

// ---------------------------------------------------------------- adjacent sequences

namespace {

void check_adjacent(const ZeroOneSeq& b, size_t kappa) {
  if (kappa + 1 >= b.size() || b[kappa] != 0 || b[kappa + 1] != 1)
    throw std::invalid_argument("adjacent: positions kappa, kappa+1 must carry 0,1");
}

SuperWeight shift_alpha(const SuperWeight& lambda, const ZeroOneSeq& b, size_t kappa, int times) {
  auto c = lambda.b_coords(b);
  c[kappa] -= 2 * times;
  c[kappa + 1] += 2 * times;
  return SuperWeight::from_b_coords(b, c);
}

bool alpha_orthogonal(const SuperWeight& lambda, const ZeroOneSeq& b, size_t kappa) {
  // alpha = eps^0_kappa - eps^1_{kappa+1}, (eps^1|eps^1) = -1
  auto c = lambda.b_coords(b);
  return c[kappa] + c[kappa + 1] == 0;
}

}  // namespace

SuperWeight adjacent_L(const SuperWeight& lambda, const ZeroOneSeq& b, size_t kappa) {
  check_adjacent(b, kappa);
  return alpha_orthogonal(lambda, b, kappa) ? lambda : shift_alpha(lambda, b, kappa, 1);
}

SuperWeight adjacent_U(const SuperWeight& lambda, const ZeroOneSeq& b, size_t kappa) {
  check_adjacent(b, kappa);
  return shift_alpha(lambda, b, kappa, alpha_orthogonal(lambda, b, kappa) ? 2 : 1);
}

ZeroOneSeq adjacent_seq(const ZeroOneSeq& b, size_t kappa) {
  check_adjacent(b, kappa);
  auto v = b.bits();
  std::swap(v[kappa], v[kappa + 1]);
  return ZeroOneSeq(v);
}

// ---------------------------------------------------------------- partitions and tails

Partition normalize_partition(Partition la) {
  for (size_t i = 0; i < la.size(); ++i)
    if (la[i] < 0 || (i && la[i] > la[i - 1])) throw std::invalid_argument("normalize_partition: not a partition");
  while (!la.empty() && la.back() == 0) la.pop_back();
  return la;
}

Partition conjugate(const Partition& la) {
  Partition p = normalize_partition(la), c;
  for (int j = 1; !p.empty() && j <= p.front(); ++j) {
    int cnt = 0;
    for (int x : p) cnt += x >= j;
    c.push_back(cnt);
  }
  return c;
}

std::vector<Partition> partitions_in_box(int rows, int cols) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int)> rec = [&](int maxpart) {
    out.push_back(cur);
    if (int(cur.size()) == rows) return;
    for (int x = 1; x <= maxpart; ++x) {
      cur.push_back(x);
      rec(x);
      cur.pop_back();
    }
  };
  rec(cols);
  std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
    int sa = 0, sb = 0;
    for (int x : a) sa += x;
    for (int x : b) sb += x;
    return sa != sb ? sa < sb : a > b;
  });
  return out;
}

int InfFockIndex::tail(int j) const {
  if (j < 1) throw std::invalid_argument("InfFockIndex::tail: positions start at 1");
  int l = j <= int(lambda.size()) ? lambda[size_t(j - 1)] : 0;
  return kind == 0 ? 2 * (l + d - j) + 1 : 2 * (d + j - l) - 1;
}

std::string InfFockIndex::str() const {
  std::string s = idx_label(head) + " |(";
  for (size_t i = 0; i < lambda.size(); ++i) s += (i ? "," : "") + std::to_string(lambda[i]);
  s += kind == 0 ? ")," : ")_*,";
  return s + std::to_string(d) + ">";
}

InfFockIndex natural_map(const InfFockIndex& f) {
  InfFockIndex g = f;
  g.kind = 1 - f.kind;
  g.lambda = conjugate(f.lambda);
  return g;
}

std::optional<Idx> truncate(const InfFockIndex& f, int k) {
  if (int(normalize_partition(f.lambda).size()) > k) return std::nullopt;
  Idx out = f.head;
  for (int j = 1; j <= k; ++j) out.push_back(f.tail(j));
  return out;
}

std::optional<InfFockIndex> untruncate(const Idx& f, size_t head_len, int kind, int d) {
  if (f.size() < head_len) throw std::invalid_argument("untruncate: index shorter than its head");
  InfFockIndex g;
  g.head = Idx(f.begin(), f.begin() + long(head_len));
  g.kind = kind;
  g.d = d;
  for (size_t j = 1; head_len + j - 1 < f.size(); ++j) {
    int t = f[head_len + j - 1];
    int l = kind == 0 ? (t - 1) / 2 - d + int(j) : d + int(j) - (t + 1) / 2;
    if (l < 0 || (j > 1 && l > g.lambda.back())) return std::nullopt;
    g.lambda.push_back(l);
  }
  g.lambda = normalize_partition(g.lambda);
  return g;
}

// ---------------------------------------------------------------- wedge spaces

WedgeSpace::WedgeSpace(RankData rd, ZeroOneSeq b, int k, int kind)
    : rd_(rd), b_(std::move(b)), full_(b_.extended(kind, k)), k_(k), kind_(kind), ts_(rd_, full_.bits()) {
  if (k < 1) throw std::invalid_argument("WedgeSpace: k must be positive");
  if (kind != 0 && kind != 1) throw std::invalid_argument("WedgeSpace: kind must be 0 (V) or 1 (W)");
  // S_k by breadth-first search in one-line notation; words act on positions
  std::vector<int> id(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) id[size_t(i)] = i;
  std::map<std::vector<int>, std::vector<int>> word{{id, {}}};
  std::deque<std::vector<int>> queue{id};
  while (!queue.empty()) {
    auto p = queue.front();
    queue.pop_front();
    for (int j = 1; j < k; ++j) {
      auto q = p;
      std::swap(q[size_t(j - 1)], q[size_t(j)]);
      if (word.count(q)) continue;
      auto w = word[p];
      w.push_back(j);
      word[q] = w;
      queue.push_back(q);
    }
  }
  int l0 = k * (k - 1) / 2;
  for (auto& [p, w] : word) l_w0_.emplace_back(w, int(w.size()) - l0);
}

bool WedgeSpace::is_wedge_index(const Idx& f) const {
  size_t h = b_.size();
  if (f.size() != h + size_t(k_)) return false;
  for (size_t j = h + 1; j < f.size(); ++j)
    if (kind_ == 0 ? f[j - 1] <= f[j] : f[j - 1] >= f[j]) return false;
  return true;
}

Idx WedgeSpace::reverse_tail(const Idx& f) const {
  Idx g = f;
  std::reverse(g.begin() + long(b_.size()), g.end());
  return g;
}

TensorVector WedgeSpace::embed(const Idx& f) const {
  if (!is_wedge_index(f)) throw std::invalid_argument("WedgeSpace::embed: " + idx_label(f) + " is not a wedge index");
  TensorVector out, start = TensorVector::basis(reverse_tail(f));
  LaurentPoly mq = -LaurentPoly::q(1);
  for (auto& [w, e] : l_w0_) {
    TensorVector x = start;
    for (int j : w) x = act_hecke_typeA(ts_, x, int(b_.size()) + j);
    LaurentPoly c = 1;
    if (e < 0) {
      LaurentPoly mqi = -LaurentPoly::q(-1);
      for (int i = 0; i < -e; ++i) c *= mqi;
    } else {
      for (int i = 0; i < e; ++i) c *= mq;
    }
    out += x.scaled(c);
  }
  return out;
}

TensorVector WedgeSpace::project(const TensorVector& v) const {
  // M_f occurs in embed(f) with coefficient 1 and no other wedge index occurs
  TensorVector out, back;
  for (auto& [g, c] : v.terms)
    if (is_wedge_index(g)) {
      out.add(g, c);
      back += embed(g).scaled(c);
    }
  if (back != v) throw std::invalid_argument("WedgeSpace::project: vector is not in the image of the q-skew-symmetrizer");
  return out;
}

std::vector<Idx> WedgeSpace::interval_below(const Idx& f) const {
  if (!is_wedge_index(f)) throw std::invalid_argument("WedgeSpace::interval_below: " + idx_label(f) + " is not a wedge index");
  std::vector<Idx> out;
  for (auto& g : qsp::interval_below(f, full_, rd_))
    if (is_wedge_index(g)) out.push_back(g);
  return out;
}

// ---------------------------------------------------------------- bar matrices and bases

BarMatrix fock_bar_matrix(IotaBar& bar, const std::vector<Idx>& order) {
  return make_bar_matrix(order, [&](const Idx& f) { return bar.column(f); });
}

BarMatrix wedge_bar_matrix(IotaBar& bar, const WedgeSpace& w, const std::vector<Idx>& order) {
  return make_bar_matrix(order, [&](const Idx& f) {
    TensorVector col;
    for (auto& [g, c] : bar.apply(w.embed(f)).terms)
      if (w.is_wedge_index(g)) col.add(g, c);
    return col;
  });
}

CheckReport check_wedge_bar(IotaBar& bar, const WedgeSpace& w, const BarMatrix& bm) {
  CheckReport rep;
  for (auto& f : bm.order) {
    TensorVector expect;
    for (auto& [g, c] : bm.cols.at(f).terms) expect += w.embed(g).scaled(c);
    if (expect != bar.apply(w.embed(f))) rep.fail("bar leaves the wedge subspace at " + idx_label(f));
  }
  return rep;
}

namespace {

void require_index(const TensorSpace& s, const Idx& f, const char* who) {
  if (!s.valid(f))
    throw std::invalid_argument(std::string(who) + ": " + idx_label(f) + " is not an index at rank " + std::to_string(s.rank().r()));
}

}  // namespace

CanonicalResult fock_icanonical(UpsilonEngine& eng, const ZeroOneSeq& b, const Idx& f) {
  TensorSpace s(eng.rank(), b.bits());
  require_index(s, f, "fock_icanonical");
  IotaBar bar(eng, s);
  return canonical_from_bar(fock_bar_matrix(bar, interval_below(f, b, eng.rank())));
}

CanonicalResult wedge_icanonical(UpsilonEngine& eng, const WedgeSpace& w, const Idx& f) {
  require_index(w.tensor(), f, "wedge_icanonical");
  IotaBar bar(eng, w.tensor());
  return canonical_from_bar(wedge_bar_matrix(bar, w, w.interval_below(f)));
}

bool columns_agree(const KLTable& small, const KLTable& big) {
  for (auto& f : small.order) {
    auto it = big.cols.find(f);
    if (it == big.cols.end() || it->second != small.cols.at(f)) return false;
  }
  return true;
}

namespace {

bool column_agrees(const KLTable& a, const KLTable& b, const Idx& f) {
  auto ia = a.cols.find(f), ib = b.cols.find(f);
  return ia != a.cols.end() && ib != b.cols.end() && ia->second == ib->second;
}

}  // namespace

IklReport ikl_stabilized(const ZeroOneSeq& b, const SuperWeight& lambda, Parity p, int start_rank, int max_rank) {
  IklReport rep;
  rep.b = b;
  rep.lambda = lambda;
  rep.parity = p;
  rep.f = lambda_to_f(lambda, b, p);
  if (start_rank < min_rank(rep.f, p))
    throw std::invalid_argument("ikl_stabilized: " + idx_label(rep.f) + " needs rank at least " + std::to_string(min_rank(rep.f, p)));
  std::optional<CanonicalResult> prev;
  for (int r = start_rank; r <= max_rank; ++r) {
    UpsilonEngine eng(RankData(r, p));
    CanonicalResult cur = fock_icanonical(eng, b, rep.f);
    rep.ranks.push_back(r);
    if (prev && column_agrees(prev->canonical, cur.canonical, rep.f)) {
      rep.stabilized_at = r - 1;
      rep.status = StabilizationStatus::stabilized;
      rep.dual_stable = column_agrees(prev->dual, cur.dual, rep.f);
      rep.result = std::move(*prev);
      return rep;
    }
    prev = std::move(cur);
  }
  if (prev) rep.result = std::move(*prev);
  return rep;
}

nlohmann::json IklReport::to_json() const {
  nlohmann::json j;
  j["b"] = b.str();
  j["lambda"] = lambda.to_json();
  j["pair"] = parity == Parity::odd ? "iota" : "jota";
  j["f"] = label_array(f);
  j["ranks_tried"] = ranks;
  j["status"] = status == StabilizationStatus::stabilized ? "stabilized" : "inconclusive";
  j["stabilized_at"] = stabilized_at >= 0 ? nlohmann::json(stabilized_at) : nlohmann::json(nullptr);
  j["dual_column_stable"] = dual_stable;
  j["table"] = result.canonical.to_json();
  j["dual_table"] = result.dual.to_json();
  return j;
}

// ---------------------------------------------------------------- comparisons

CheckReport check_tensor_vs_wedge(UpsilonEngine& eng, const WedgeSpace& w, const Idx& f) {
  CheckReport rep;
  if (!w.is_wedge_index(f)) throw std::invalid_argument("check_tensor_vs_wedge: " + idx_label(f) + " is not a wedge index");
  require_index(w.tensor(), f, "check_tensor_vs_wedge");
  const ZeroOneSeq& fb = w.full_b();
  Idx f0 = w.reverse_tail(f);
  std::set<Idx> uni;
  for (auto& g : interval_below(f, fb, eng.rank())) uni.insert(g);
  for (auto& g : interval_below(f0, fb, eng.rank())) uni.insert(g);
  IotaBar bar(eng, w.tensor());
  CanonicalResult ten = canonical_from_bar(fock_bar_matrix(bar, fock_order(fb, {uni.begin(), uni.end()})));
  BarMatrix wbm = wedge_bar_matrix(bar, w, w.interval_below(f));
  auto wb = check_wedge_bar(bar, w, wbm);
  if (!wb.ok) return wb;
  CanonicalResult wed = canonical_from_bar(std::move(wbm));

  std::set<Idx> targets(wed.bar.order.begin(), wed.bar.order.end());
  for (auto& g : ten.bar.order)
    if (w.is_wedge_index(g)) targets.insert(g);
  size_t h = w.b().size();
  int k = w.k();
  // tau ranges over S_k in one-line notation on the tail
  std::vector<int> tau(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) tau[size_t(i)] = i;
  std::vector<std::vector<int>> perms;
  do perms.push_back(tau);
  while (std::next_permutation(tau.begin(), tau.end()));
  int l0 = k * (k - 1) / 2;
  for (auto& g : targets) {
    if (wed.dual.entry(g, f) != ten.dual.entry(g, f))
      rep.fail("dual entries differ at " + idx_label(g) + ", " + idx_label(f) + ": wedge " + wed.dual.entry(g, f).str() +
               ", tensor " + ten.dual.entry(g, f).str());
    LaurentPoly rhs;
    for (auto& t : perms) {
      int inv = 0;
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) inv += t[size_t(i)] > t[size_t(j)];
      Idx gt = g;
      for (int j = 0; j < k; ++j) gt[h + size_t(j)] = g[h + size_t(t[size_t(j)])];
      LaurentPoly c = ten.canonical.entry(gt, f0);
      if (c.is_zero()) continue;
      LaurentPoly sgn = (l0 - inv) % 2 ? LaurentPoly(-1) : LaurentPoly(1);
      rhs += (sgn * c).shift(l0 - inv);
    }
    if (wed.canonical.entry(g, f) != rhs)
      rep.fail("canonical entry at " + idx_label(g) + ", " + idx_label(f) + ": wedge " + wed.canonical.entry(g, f).str() +
               ", tensor sum " + rhs.str());
  }
  return rep;
}

CheckReport check_super_duality(UpsilonEngine& eng, const ZeroOneSeq& b, int k, int d, const Idx& head) {
  CheckReport rep;
  if (head.size() != b.size()) throw std::invalid_argument("check_super_duality: head does not match b");
  WedgeSpace wv(eng.rank(), b, k, 0), ww(eng.rank(), b, k, 1);
  auto box = partitions_in_box(k, k);
  auto in_box = [&](const Partition& la) { return int(la.size()) <= k && (la.empty() || la.front() <= k); };
  int compared = 0, nontrivial = 0;
  for (auto& la : box) {
    InfFockIndex fv{head, 0, la, d};
    InfFockIndex fw = natural_map(fv);
    Idx tv = *truncate(fv, k), tw = *truncate(fw, k);
    CanonicalResult rv = wedge_icanonical(eng, wv, tv), rw = wedge_icanonical(eng, ww, tw);
    // pairs (g, g#) with both tails in the box, collected from both sides
    std::map<Idx, Idx> pairs;
    for (auto& g : rv.bar.order) {
      auto gi = untruncate(g, b.size(), 0, d);
      if (gi && in_box(gi->lambda)) pairs[g] = *truncate(natural_map(*gi), k);
    }
    for (auto& g : rw.bar.order) {
      auto gi = untruncate(g, b.size(), 1, d);
      if (gi && in_box(gi->lambda)) pairs[*truncate(natural_map(*gi), k)] = g;
    }
    for (auto& [gv, gw] : pairs) {
      ++compared;
      if (!rv.canonical.entry(gv, tv).is_zero() && gv != tv) ++nontrivial;
      if (rv.canonical.entry(gv, tv) != rw.canonical.entry(gw, tw))
        rep.fail("t differs at " + fv.str() + ", g = " + idx_label(gv) + ": " + rv.canonical.entry(gv, tv).str() + " vs " +
                 rw.canonical.entry(gw, tw).str());
      if (rv.dual.entry(gv, tv) != rw.dual.entry(gw, tw))
        rep.fail("l differs at " + fv.str() + ", g = " + idx_label(gv) + ": " + rv.dual.entry(gv, tv).str() + " vs " +
                 rw.dual.entry(gw, tw).str());
    }
  }
  if (rep.ok) rep.detail = std::to_string(compared) + " pairs compared, " + std::to_string(nontrivial) + " nonzero off-diagonal t";
  return rep;
}

}  // namespace qsp
