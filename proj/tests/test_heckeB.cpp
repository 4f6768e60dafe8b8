#include <doctest.h>

#include <deque>
#include <set>

#include "qsp/heckeB.hpp"

using namespace qsp;

namespace {

HeckeElement H(int m, std::vector<int> word) {
  HeckeElement x = hecke_basis(SignedPerm::identity(m));
  for (int a : word) x = hecke_mul(x, hecke_gen(m, a));
  return x;
}

TensorVector mono(const Idx& f) { return TensorVector::basis(f); }

}  // namespace

TEST_CASE("signed permutations: lengths and reduced words") {
  for (int m = 1; m <= 4; ++m) {
    // breadth-first distances in the Cayley graph
    std::map<std::vector<int>, int> dist{{SignedPerm::identity(m).window(), 0}};
    std::deque<std::vector<int>> queue{SignedPerm::identity(m).window()};
    while (!queue.empty()) {
      auto w = queue.front();
      queue.pop_front();
      for (int a = 0; a < m; ++a) {
        auto y = SignedPerm(w).times_gen(a).window();
        if (!dist.count(y)) {
          dist[y] = dist[w] + 1;
          queue.push_back(y);
        }
      }
    }
    auto all = all_signed_perms(m);
    long expect = 1;
    for (int i = 1; i <= m; ++i) expect *= 2 * i;
    CHECK(long(all.size()) == expect);
    for (auto& s : all) {
      CHECK(s.length() == dist.at(s.window()));
      CHECK(int(s.reduced_word().size()) == s.length());
      SignedPerm x = SignedPerm::identity(m);
      for (int a : s.reduced_word()) x = x.times_gen(a);
      CHECK(x == s);
      CHECK(s.inverse().length() == s.length());
      CHECK((s * s.inverse()) == SignedPerm::identity(m));
    }
  }
  // lexicographically least: the longest element of B_2 is s0 s1 s0 s1
  CHECK(SignedPerm({-1, -2}).reduced_word() == std::vector<int>{0, 1, 0, 1});
}

TEST_CASE("Hecke algebra relations and bar") {
  LaurentPoly c = qq();
  for (int m = 1; m <= 3; ++m)
    for (int a = 0; a < m; ++a) {
      HeckeElement sq = hecke_mul(hecke_gen(m, a), hecke_gen(m, a));
      HeckeElement expect = hecke_add(hecke_basis(SignedPerm::identity(m)), hecke_gen(m, a), c);
      CHECK(sq == expect);
    }
  CHECK(H(2, {0, 1, 0, 1}) == H(2, {1, 0, 1, 0}));
  CHECK(H(3, {1, 2, 1}) == H(3, {2, 1, 2}));
  CHECK(H(3, {0, 2}) == H(3, {2, 0}));
  CHECK(H(3, {0, 1, 0, 1}) == H(3, {1, 0, 1, 0}));
  // identity acts trivially
  auto x = hecke_add(H(2, {0, 1}), H(2, {1}), LaurentPoly::q(3));
  CHECK(hecke_mul(hecke_basis(SignedPerm::identity(2)), x) == x);
  CHECK(hecke_mul(x, hecke_basis(SignedPerm::identity(2))) == x);

  // bar(H_i) = H_i + (q - q^{-1})
  HeckeElement b0 = hecke_bar(hecke_gen(2, 1));
  CHECK(b0 == hecke_add(hecke_gen(2, 1), hecke_basis(SignedPerm::identity(2)), -qq()));
  CHECK(hecke_bar(hecke_basis(SignedPerm::identity(2), LaurentPoly::q(1))) ==
        hecke_basis(SignedPerm::identity(2), LaurentPoly::q(-1)));
  for (int m = 1; m <= 3; ++m) {
    auto all = all_signed_perms(m);
    for (auto& s : all) CHECK(hecke_bar(hecke_bar(hecke_basis(s))) == hecke_basis(s));
    // bar is a ring homomorphism
    for (size_t i = 0; i < all.size(); i += 5)
      for (size_t j = 0; j < all.size(); j += 7) {
        auto u = hecke_basis(all[i]), v = hecke_basis(all[j]);
        CHECK(hecke_bar(hecke_mul(u, v)) == hecke_mul(hecke_bar(u), hecke_bar(v)));
      }
  }
}

TEST_CASE("Hecke action on V-tensor spaces") {
  RankData rd(1, Parity::odd);
  TensorSpace V1 = TensorSpace::power_of_V(rd, 1);
  CHECK(act_hecke(V1, mono({1}), 0) == mono({-1}));
  CHECK(act_hecke(V1, mono({-1}), 0) == mono({1}) + mono({-1}).scaled(qq()));
  TensorSpace J1 = TensorSpace::power_of_V(RankData(1, Parity::even), 1);
  CHECK(act_hecke(J1, mono({0}), 0) == mono({0}).scaled(LaurentPoly::q(-1)));
  CHECK_THROWS_AS(act_hecke(TensorSpace(rd, {0, 1}), mono({1, 1}), 0), std::invalid_argument);

  // the action factors through the algebra: (v H_x) H_y = v (H_x H_y)
  for (auto par : {Parity::odd, Parity::even}) {
    TensorSpace s = TensorSpace::power_of_V(RankData(1, par), 3);
    auto all = all_signed_perms(3);
    for (auto& f : s.basis()) {
      if ((f[0] + f[1] + f[2]) % 3) continue;  // sample
      for (size_t i = 0; i < all.size(); i += 3)
        for (size_t j = 0; j < all.size(); j += 11) {
          auto x = hecke_basis(all[i]), y = hecke_basis(all[j]);
          CHECK(act_hecke(s, act_hecke(s, mono(f), x), y) == act_hecke(s, mono(f), hecke_mul(x, y)));
        }
    }
  }
}

TEST_CASE("bar of the Hecke side") {
  RankData rd(1, Parity::odd);
  HeckeBar hb1(TensorSpace::power_of_V(rd, 1));
  CHECK(hb1.column({1}) == mono({1}));
  CHECK(hb1.column({-1}) == mono({-1}) + mono({1}).scaled(-qq()));
  for (auto par : {Parity::odd, Parity::even})
    for (int m = 1; m <= 3; ++m) {
      TensorSpace s = TensorSpace::power_of_V(RankData(1, par), m);
      HeckeBar hb(s);
      auto all = all_signed_perms(m);
      for (auto& f : s.basis()) {
        if (anti_dominant(s.rank(), f)) CHECK(hb.column(f) == mono(f));
        CHECK(hb.apply(hb.column(f)) == mono(f));
        for (auto& w : all) {
          auto h = hecke_basis(w);
          CHECK(hb.apply(act_hecke(s, mono(f), h)) == act_hecke(s, hb.column(f), hecke_bar(h)));
        }
      }
    }
}

TEST_CASE("operator T and H_0") {
  for (auto par : {Parity::odd, Parity::even})
    for (int r = (par == Parity::odd ? 0 : 1); r <= 2; ++r) {
      UpsilonEngine eng(RankData(r, par));
      OperatorT t = operator_T(eng);
      TensorSpace s = TensorSpace::power_of_V(eng.rank(), 2);
      for (auto& f : s.basis()) CHECK(apply_T_inverse_first(t, s, mono(f)) == act_hecke(s, mono(f), 0));
    }
  UpsilonEngine eng(RankData(1, Parity::odd));
  OperatorT t = operator_T(eng);
  TensorSpace s = TensorSpace::power_of_V(eng.rank(), 1);
  TensorVector vm = mono({-1}) + mono({1}).scaled(-LaurentPoly::q(-1));
  TensorVector vp = mono({-1}) + mono({1}).scaled(LaurentPoly::q(1));
  CHECK(apply_T_inverse_first(t, s, vm) == vm.scaled(-LaurentPoly::q(1)));
  CHECK(apply_T_inverse_first(t, s, vp) == vp.scaled(LaurentPoly::q(-1)));
}

TEST_CASE("H_i equals the inverse R-matrix") {
  for (auto par : {Parity::odd, Parity::even})
    for (int r = (par == Parity::odd ? 0 : 1); r <= 1; ++r) {
      RankData rd(r, par);
      FAlgebra fa(rd);
      for (int b : {0, 1}) {
        TensorSpace s(rd, {b, b, b});
        TypeARMatrix R(fa, s);
        for (auto& f : s.basis())
          for (int i = 1; i <= 2; ++i) {
            CHECK_MESSAGE(R.apply_inverse(mono(f), i) == act_hecke_typeA(s, mono(f), i), idx_label(f) << " i=" << i << " b=" << b);
            CHECK(R.apply(R.apply_inverse(mono(f), i), i) == mono(f));
          }
      }
    }
}

TEST_CASE("coideal and Hecke actions commute") {
  for (auto par : {Parity::odd, Parity::even}) {
    TensorSpace s = TensorSpace::power_of_V(RankData(1, par), 3);
    for (auto& u : s.coideal_generators())
      for (auto& f : s.basis())
        for (int a = 0; a < 3; ++a) {
          TensorVector v = mono(f);
          CHECK(s.act_coideal(u, act_hecke(s, v, a)) == act_hecke(s, s.act_coideal(u, v), a));
        }
  }
}
