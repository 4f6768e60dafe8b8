#include <doctest.h>

#include "qsp/intertwiner.hpp"

using namespace qsp;

namespace {

// all words over the letters of a chain-sized weight that could move f to g
void compare_duals(const TensorSpace& s, bool barred) {
  FAlgebra fa(s.rank());
  for (auto& f : s.basis())
    for (auto& g : f_targets(s, f)) {
      auto d = f_dual(s, f, g, barred);
      REQUIRE(d.has_value());
      for (auto& w : fa.words_of_weight(d->mu)) {
        TensorVector x = TensorVector::basis(f);
        for (size_t t = w.size(); t-- > 0;) x = s.act_F(w[t], x, barred);
        CHECK_MESSAGE(x.coeff(g) == pair_word_dual(fa, w, *d), idx_label(f) << " -> " << idx_label(g) << " word " << fa.word_label(w));
      }
    }
}

void compare_e_duals(const TensorSpace& s) {
  FAlgebra fa(s.rank());
  for (auto& f : s.basis())
    for (auto& g : e_targets(s, f)) {
      auto d = e_dual(s, f, g);
      REQUIRE(d.has_value());
      for (auto& w : fa.words_of_weight(d->mu)) {
        Word rev(w.rbegin(), w.rend());
        TensorVector x = s.act_E_word(rev, TensorVector::basis(f));
        CHECK_MESSAGE(x.coeff(g) == pair_word_dual(fa, w, *d), idx_label(f) << " -> " << idx_label(g) << " word " << fa.word_label(w));
      }
    }
}

}  // namespace

TEST_CASE("dual elements reproduce word actions") {
  for (auto par : {Parity::odd, Parity::even})
    for (int r = (par == Parity::odd ? 0 : 1); r <= 1; ++r) {
      RankData rd(r, par);
      for (auto b : std::vector<std::vector<int>>{{0}, {1}, {0, 0}, {0, 1}, {1, 0}, {0, 0, 0}}) {
        TensorSpace s(rd, b);
        compare_duals(s, false);
        compare_duals(s, true);
        compare_e_duals(s);
      }
    }
}

TEST_CASE("Upsilon anchors") {
  {
    UpsilonEngine eng(RankData(1, Parity::odd));
    auto tab = compute_upsilon(eng, 2);
    std::vector<int> zero(3, 0), a0{0, 1, 0};
    CHECK(tab.comps.at(zero).size() == 1);
    CHECK(tab.comps.at(zero).at("") == RationalFn(1));
    FElement expect{{Word(1, char(1)), RationalFn(-qq())}};
    CHECK(tab.comps.at(a0) == expect);
  }
  {
    RankData rd(1, Parity::even);
    UpsilonEngine eng(rd);
    auto tab = compute_upsilon(eng, 2);
    std::vector<int> mu{1, 1};
    FElement x = tab.comps.at(mu);
    FAlgebra& fa = eng.algebra();
    // compare as elements of f by pairing against all words
    FElement expect{{Word{char(1), char(0)}, RationalFn(-qq())}};
    for (auto& w : fa.words_of_weight(mu))
      CHECK(fa.bilinear_form(felement_word(w), x) == fa.bilinear_form(felement_word(w), expect));
  }
}

TEST_CASE("Upsilon star recursions agree and kill Serre relators") {
  for (auto par : {Parity::odd, Parity::even})
    for (int r = (par == Parity::odd ? 0 : 1); r <= 2; ++r) {
      UpsilonEngine eng(RankData(r, par));
      auto lr = check_star_LR(eng, 6);
      CHECK_MESSAGE(lr.ok, lr.detail);
      auto se = check_star_serre(eng, 6);
      CHECK_MESSAGE(se.ok, se.detail);
    }
}

TEST_CASE("Upsilon intertwines on small tensor powers") {
  for (auto par : {Parity::odd, Parity::even})
    for (int r = (par == Parity::odd ? 0 : 1); r <= 1; ++r)
      for (int m = 1; m <= 2; ++m) {
        UpsilonEngine eng(RankData(r, par));
        ModuleUpsilon up(eng, TensorSpace::power_of_V(RankData(r, par), m));
        auto rep = verify_intertwining(up);
        CHECK_MESSAGE(rep.ok, parity_name(par) << " r=" << r << " m=" << m << ": " << rep.detail);
        auto inv = check_upsilon_inverse(up);
        CHECK_MESSAGE(inv.ok, inv.detail);
      }
}

TEST_CASE("Theta closed form matches the recursion solution") {
  for (auto par : {Parity::odd, Parity::even})
    for (int r = (par == Parity::odd ? 0 : 1); r <= 1; ++r) {
      RankData rd(r, par);
      FAlgebra fa(rd);
      auto tab = compute_theta(fa, rd.n(), std::vector<int>(size_t(rd.n()), 1));
      TensorSpace s = TensorSpace::power_of_V(rd, 2);
      ModuleTheta th(fa, s);
      for (auto& f : s.basis()) {
        TensorVector v = TensorVector::basis(f);
        CHECK_MESSAGE(th.apply(v) == theta_table_apply(fa, tab, s, v), idx_label(f));
        CHECK(th.apply(th.apply_bar(v)) == v);
      }
    }
}

namespace {
// bar-conjugated coproduct across the split (first m-1 factors) (x) (last factor):
// E -> 1 (x) E + E (x) K and F -> F (x) 1 + K^{-1} (x) F, with U acting normally on the head
TensorVector split_bar(const TensorSpace& s, int p, bool is_e, const TensorVector& v) {
  const RankData& rd = s.rank();
  TensorSpace head(rd, std::vector<int>(s.b().begin(), s.b().end() - 1)), last(rd, {s.b().back()});
  TensorVector out;
  for (auto& [f, c] : v.terms) {
    Idx fh(f.begin(), f.end() - 1), fl{f.back()};
    TensorVector vh = TensorVector::basis(fh), vl = TensorVector::basis(fl);
    auto put = [&](const TensorVector& a, const TensorVector& b) {
      for (auto& [gh, x] : a.terms)
        for (auto& [gl, y] : b.terms) {
          Idx g = gh;
          g.push_back(gl[0]);
          out.add(g, c * x * y);
        }
    };
    if (is_e) {
      put(vh, last.act_E(p, vl));
      put(head.act_E(p, vh), last.act_K(p, 1, vl));
    } else {
      put(head.act_F(p, vh), vl);
      put(head.act_K(p, -1, vh), last.act_F(p, vl));
    }
  }
  return out;
}
}  // namespace

TEST_CASE("Theta intertwines the coproduct with its bar conjugate") {
  for (auto par : {Parity::odd, Parity::even})
    for (int r = (par == Parity::odd ? 0 : 1); r <= 1; ++r)
      for (auto b : std::vector<std::vector<int>>{{0, 0}, {0, 1}, {1, 0}, {0, 0, 0}, {1, 0, 1}}) {
        RankData rd(r, par);
        FAlgebra fa(rd);
        TensorSpace s(rd, b);
        ModuleTheta th(fa, s);
        for (int p = 0; p < rd.n(); ++p)
          for (auto& f : s.basis()) {
            TensorVector v = TensorVector::basis(f);
            CHECK_MESSAGE(s.act_E(p, th.apply(v)) == th.apply(split_bar(s, p, true, v)), s.b_string() << " " << idx_label(f));
            CHECK_MESSAGE(s.act_F(p, th.apply(v)) == th.apply(split_bar(s, p, false, v)), s.b_string() << " " << idx_label(f));
          }
      }
}

TEST_CASE("Theta^iota identities") {
  for (auto par : {Parity::odd, Parity::even})
    for (int r = (par == Parity::odd ? 0 : 1); r <= 1; ++r) {
      RankData rd(r, par);
      UpsilonEngine eng(rd);
      for (auto b : std::vector<std::vector<int>>{{0, 0}, {0, 1}, {0, 0, 0}}) {
        ModuleThetaIota ti(eng, TensorSpace(rd, b));
        auto rep = ti.check_intertwining();
        CHECK_MESSAGE(rep.ok, parity_name(par) << " r=" << r << " b=" << b.size() << ": " << rep.detail);
      }
      TensorSpace vv = TensorSpace::power_of_V(rd, 2);
      ModuleThetaIota ti(eng, vv);
      for (auto& f : vv.basis()) {
        TensorVector v = TensorVector::basis(f);
        CHECK(ti.apply(ti.apply_bar(v)) == v);
      }
      // lowest weight vector is fixed
      Idx low(2, rd.module_index2(rd.n()));
      CHECK(ti.apply(TensorVector::basis(low)) == TensorVector::basis(low));
      // counit: the trivial module in front of V
      TensorSpace tv(rd, {0});
      ModuleThetaIota counit(eng, tv);
      ModuleUpsilon up(eng, tv);
      for (auto& f : tv.basis()) CHECK(counit.apply(TensorVector::basis(f)) == up.apply(TensorVector::basis(f)));
    }
}

TEST_CASE("corrupted Upsilon fails at t") {
  RankData rd(0, Parity::odd);
  UpsilonEngine eng(rd);
  eng.corrupt_for_testing();
  ModuleUpsilon up(eng, TensorSpace::power_of_V(rd, 1));
  auto rep = verify_intertwining(up);
  CHECK_FALSE(rep.ok);
  CHECK(rep.detail.find("generator t") == 0);
}
