#include <doctest.h>

#include <random>
#include <set>

#include "qsp/fock.hpp"

using namespace qsp;

namespace {

std::vector<ZeroOneSeq> all_seqs(int max_m, int max_n) {
  std::vector<ZeroOneSeq> out;
  for (int len = 1; len <= max_m + max_n; ++len)
    for (int mask = 0; mask < (1 << len); ++mask) {
      std::vector<int> bits;
      for (int i = len - 1; i >= 0; --i) bits.push_back((mask >> i) & 1);
      ZeroOneSeq b(bits);
      if (b.m() <= max_m && b.n() <= max_n) out.push_back(b);
    }
  return out;
}

std::vector<Idx> all_indices(const RankData& rd, size_t len) {
  std::vector<Idx> out{{}};
  for (size_t i = 0; i < len; ++i) {
    std::vector<Idx> next;
    for (auto& f : out)
      for (int k = 0; k <= rd.n(); ++k) {
        Idx g = f;
        g.push_back(rd.module_index2(k));
        next.push_back(g);
      }
    out = std::move(next);
  }
  return out;
}

LaurentPoly q(int e) { return LaurentPoly::q(e); }

}  // namespace

TEST_CASE("zero-one sequences and super weights") {
  auto b = ZeroOneSeq::parse("0,1,0");
  CHECK(b == ZeroOneSeq::parse("010"));
  CHECK(b.m() == 2);
  CHECK(b.n() == 1);
  CHECK(b.slot(2) == 1);
  CHECK_THROWS_AS(ZeroOneSeq::parse("012"), std::invalid_argument);
  auto la = SuperWeight::parse("1/2,-3/2|5/2");
  CHECK(la.half_integral());
  CHECK_FALSE(la.integral());
  CHECK(la.str() == "(1/2,-3/2 | 5/2)");
  CHECK(SuperWeight::parse("1|").odd2.empty());
  CHECK(SuperWeight::from_b_coords(b, la.b_coords(b)) == la);
  CHECK_THROWS_AS(SuperWeight::parse("1/3|0"), std::invalid_argument);
}

TEST_CASE("rho_b") {
  // standard sequence 0^m 1^n
  CHECK(rho(ZeroOneSeq::parse("01")) == SuperWeight::parse("-1/2|1/2"));
  CHECK(rho(ZeroOneSeq::parse("0011")) == SuperWeight::parse("-1/2,-3/2|3/2,1/2"));
  CHECK(rho(ZeroOneSeq::parse("000")) == SuperWeight::parse("-1/2,-3/2,-5/2|"));
  CHECK(rho(ZeroOneSeq::parse("1")) == SuperWeight::parse("|-1/2"));
  for (auto& b : all_seqs(3, 3)) {
    auto r = rho(b);
    auto c = r.b_coords(b);
    // 2 (rho, alpha) = (alpha, alpha) on every simple root of Pi_b
    CHECK(-c[0] * b.sign(0) == b.sign(0));  // alpha = -e_1 doubled: (rho2, -e1) = (e1, e1)
    for (size_t i = 0; i + 1 < b.size(); ++i) {
      int pair2 = c[i] * b.sign(i) - c[i + 1] * b.sign(i + 1);
      int norm = b.sign(i) + b.sign(i + 1);
      CHECK(pair2 == norm);
    }
    int m = b.m(), n = b.n();
    if (n == 0 || b.size() < 2) continue;
    size_t L = b.size();
    // last node isotropic with the final eps_{n bar} on its left: m - n - 1/2
    if (b[L - 1] == 0 && b[L - 2] == 1) CHECK(r.odd2.back() == 2 * (m - n) - 1);
    // last node even between two odd slots: m - n + 1/2
    if (b[L - 1] == 1 && b[L - 2] == 1) CHECK(r.odd2.back() == 2 * (m - n) + 1);
    // ending in 01 the coefficient is m - n + 1/2 as for 0^m 1
    if (b[L - 1] == 1 && b[L - 2] == 0) CHECK(r.odd2.back() == 2 * (m - n) + 1);
  }
}

TEST_CASE("lambda <-> f bijection") {
  auto b01 = ZeroOneSeq::parse("01");
  CHECK(lambda_to_f(SuperWeight::zero(1, 1), b01, Parity::odd) == Idx{-1, -1});
  CHECK(lambda_to_f(SuperWeight::parse("-1|-1"), b01, Parity::odd) == Idx{-3, 1});
  CHECK_THROWS_AS(lambda_to_f(SuperWeight::parse("1/2|1/2"), b01, Parity::odd), std::invalid_argument);
  CHECK_THROWS_AS(lambda_to_f(SuperWeight::zero(1, 1), b01, Parity::even), std::invalid_argument);
  std::mt19937 rng(20261016);
  std::uniform_int_distribution<int> coord(-6, 6), pick(0, 100);
  auto seqs = all_seqs(3, 3);
  int trips = 0;
  for (int t = 0; t < 1000; ++t) {
    auto& b = seqs[size_t(pick(rng)) % seqs.size()];
    Parity p = t % 2 ? Parity::odd : Parity::even;
    SuperWeight la = SuperWeight::zero(b.m(), b.n());
    for (auto& x : la.even2) x = 2 * coord(rng) + (p == Parity::even);
    for (auto& x : la.odd2) x = 2 * coord(rng) + (p == Parity::even);
    Idx f = lambda_to_f(la, b, p);
    for (int v : f) CHECK((v % 2 != 0) == (p == Parity::odd));
    CHECK(f_to_lambda(f, b, p) == la);
    CHECK(lambda_to_f(f_to_lambda(f, b, p), b, p) == f);
    ++trips;
  }
  CHECK(trips == 1000);
}

TEST_CASE("linkage") {
  auto b01 = ZeroOneSeq::parse("01");
  CHECK(linked({3, 3}, {3, 3}, b01));
  // V and W contributions cancel
  CHECK(linked({1, 1}, {-5, -5}, b01));
  CHECK(linked({1, 3}, {-1, 3}, b01));
  CHECK_FALSE(linked({1, 3}, {3, 3}, b01));
  auto b00 = ZeroOneSeq::parse("00");
  CHECK(linked({1, 3}, {3, -1}, b00));
  CHECK_FALSE(linked({1, 1}, {3, 1}, b00));
}

TEST_CASE("Bruhat ordering axioms on enumerated intervals") {
  auto b01 = ZeroOneSeq::parse("01");
  // a chain at rank 1
  CHECK(bruhat_leq({3, -3}, {1, -1}, b01));
  CHECK(bruhat_leq({1, -1}, {-1, -1}, b01));
  CHECK(bruhat_leq({3, -3}, {-1, -1}, b01));
  CHECK_FALSE(bruhat_leq({-1, -1}, {1, -1}, b01));
  CHECK(bruhat_height({1, -1}, {-1, -1}, b01) == 1);
  for (auto par : {Parity::odd, Parity::even})
    for (int r = (par == Parity::odd ? 0 : 1); r <= 2; ++r) {
      RankData rd(r, par);
      for (auto& b : all_seqs(2, 2)) {
        auto idx = all_indices(rd, b.size());
        // a deterministic sample keeps the largest cases quick
        size_t step = idx.size() > 60 ? idx.size() / 60 : 1;
        for (size_t i = 0; i < idx.size(); i += step) {
          const Idx& f = idx[i];
          auto below = interval_below(f, b, rd);
          std::set<Idx> bset(below.begin(), below.end());
          REQUIRE(bset.count(f));
          CHECK(below.back() == f);
          CHECK(fock_order(b, below) == below);
          for (auto& g : below) {
            if (g != f) {
              CHECK_FALSE(bruhat_leq(f, g, b));  // antisymmetry
              CHECK(bruhat_height(g, f, b) > 0);
            }
            for (auto& h : interval_below(g, b, rd)) {  // downward closed, transitive, graded
              CHECK(bset.count(h));
              CHECK(bruhat_height(h, f, b) == bruhat_height(h, g, b) + bruhat_height(g, f, b));
            }
          }
        }
      }
    }
}

TEST_CASE("adjacent sequences") {
  auto b = ZeroOneSeq::parse("001");
  CHECK(adjacent_seq(b, 1) == ZeroOneSeq::parse("010"));
  CHECK_THROWS_AS(adjacent_seq(b, 0), std::invalid_argument);
  // alpha = eps_2 - eps_1bar is isotropic; (lambda, alpha) = 0 at lambda = (0,1|-1)
  auto la = SuperWeight::parse("0,1|-1");
  CHECK(adjacent_L(la, b, 1) == la);
  CHECK(adjacent_U(la, b, 1) == SuperWeight::parse("0,-1|1"));
  auto mu = SuperWeight::parse("0,2|0");
  CHECK(adjacent_L(mu, b, 1) == adjacent_U(mu, b, 1));
  CHECK(adjacent_L(mu, b, 1) == SuperWeight::parse("0,1|1"));
}

TEST_CASE("partitions, natural map and truncation") {
  CHECK(conjugate({}) == Partition{});
  CHECK(conjugate({3}) == Partition{1, 1, 1});
  CHECK(conjugate({2, 1}) == Partition{2, 1});
  CHECK(conjugate({4, 2, 2, 1}) == Partition{4, 3, 1, 1});
  CHECK(normalize_partition({2, 1, 0, 0}) == Partition{2, 1});
  CHECK_THROWS_AS(normalize_partition({1, 2}), std::invalid_argument);
  CHECK(partitions_in_box(2, 2).size() == 6);
  InfFockIndex f{{1}, 0, {3}, 0};
  auto g = natural_map(f);
  CHECK(g.kind == 1);
  CHECK(g.lambda == Partition{1, 1, 1});
  CHECK(natural_map(g) == f);
  for (auto& la : partitions_in_box(3, 3)) {
    InfFockIndex h{{}, 0, la, 1};
    CHECK(natural_map(natural_map(h)) == h);
  }
  // V tail |lambda, d>: lambda_j + d - j + 1/2, doubled
  CHECK(f.tail(1) == 5);
  CHECK(f.tail(2) == -3);
  CHECK(truncate(f, 1) == Idx{1, 5});
  CHECK(truncate(f, 3) == Idx{1, 5, -3, -5});
  CHECK(truncate(g, 1) == std::nullopt);
  CHECK(truncate(g, 3) == Idx{1, -1, 1, 3});
  CHECK(untruncate(*truncate(g, 3), 1, 1, 0) == g);
  CHECK(untruncate(*truncate(f, 2), 1, 0, 0) == f);
  CHECK(untruncate({1, 5, 5}, 1, 0, 0) == std::nullopt);
  for (int k = 5; k <= 7; ++k) CHECK(truncate(f, k).has_value());
}

TEST_CASE("iota-KL tables on T^b") {
  auto b01 = ZeroOneSeq::parse("01");
  auto rep = ikl_stabilized(b01, SuperWeight::parse("-1|-1"), Parity::odd, 1, 4);
  REQUIRE(rep.status == StabilizationStatus::stabilized);
  CHECK(rep.stabilized_at == 1);
  CHECK(rep.f == Idx{-3, 1});
  auto& t = rep.result.canonical;
  CHECK(t.entry({-3, 1}, {-3, 1}) == q(0));
  CHECK(t.entry({3, 1}, {-3, 1}) == q(1));
  CHECK(t.entry({-3, -1}, {-3, 1}) == q(1));
  CHECK(t.entry({3, -1}, {-3, 1}) == q(2));
  CHECK(check_kl_table(t, rep.result.bar).ok);
  CHECK(check_kl_table(rep.result.dual, rep.result.bar).ok);
  auto js = rep.to_json();
  CHECK(js["b"] == "01");
  CHECK(js["stabilized_at"] == 1);

  // an atypical weight: the interval grows with the rank but T_f settles
  auto rep0 = ikl_stabilized(b01, SuperWeight::zero(1, 1), Parity::odd, 1, 3);
  REQUIRE(rep0.status == StabilizationStatus::stabilized);
  auto& t0 = rep0.result.canonical;
  CHECK(t0.entry({1, -1}, {-1, -1}) == q(1));
  CHECK(t0.entry({-3, -3}, {-1, -1}) == q(1));
  CHECK(t0.entry({3, -3}, {-1, -1}) == q(2));

  // anti-dominant f: T_f = M_f from the start
  auto b00 = ZeroOneSeq::parse("00");
  auto rep1 = ikl_stabilized(b00, SuperWeight::parse("1,3|"), Parity::odd, 1, 3);
  REQUIRE(rep1.status == StabilizationStatus::stabilized);
  CHECK(rep1.f == Idx{1, 3});
  CHECK(rep1.stabilized_at == 1);
  CHECK(rep1.result.canonical.cols.at(rep1.f) == TensorVector::basis(rep1.f));

  auto tight = ikl_stabilized(b01, SuperWeight::zero(1, 1), Parity::odd, 1, 1);
  CHECK(tight.status == StabilizationStatus::inconclusive);
  CHECK(tight.to_json()["stabilized_at"].is_null());
  CHECK_THROWS_AS(ikl_stabilized(b01, SuperWeight::parse("3|2"), Parity::odd, 1, 2), std::invalid_argument);
}

TEST_CASE("jota KL tables on T^b") {
  auto b = ZeroOneSeq::parse("01");
  auto rep = ikl_stabilized(b, SuperWeight::parse("-1/2|-1/2"), Parity::even, 1, 3);
  CHECK(rep.status == StabilizationStatus::stabilized);
  CHECK(check_kl_table(rep.result.canonical, rep.result.bar).ok);
}

TEST_CASE("tensor versus wedge at k = 2") {
  UpsilonEngine eng(RankData(1, Parity::odd));
  for (auto bs : {"0", "1"})
    for (int kind : {0, 1}) {
      WedgeSpace w(eng.rank(), ZeroOneSeq::parse(bs), 2, kind);
      int n = 0;
      for (auto& f : w.tensor().basis())
        if (w.is_wedge_index(f)) {
          auto rep = check_tensor_vs_wedge(eng, w, f);
          CHECK_MESSAGE(rep.ok, rep.detail);
          ++n;
        }
      CHECK(n == 24);
    }
}

TEST_CASE("super duality on truncated wedges") {
  UpsilonEngine eng(RankData(1, Parity::odd));
  for (auto [bs, d, head] : std::vector<std::tuple<const char*, int, Idx>>{
           {"0", 0, {1}}, {"0", 0, {-1}}, {"1", 0, {1}}, {"1", 0, {-3}}}) {
    auto rep = check_super_duality(eng, ZeroOneSeq::parse(bs), 2, d, head);
    CHECK_MESSAGE(rep.ok, rep.detail);
  }
}
