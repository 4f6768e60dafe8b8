#include <doctest.h>

#include <random>

#include "qsp/rootdata.hpp"

using namespace qsp;

namespace {

Weight random_weight(std::mt19937& rng, const RankData& rd) {
  std::uniform_int_distribution<int> c(-3, 3);
  Weight w;
  for (int a2 : rd.module_indices2()) w.add(a2, c(rng));
  return w;
}

}  // namespace

TEST_CASE("rank data sizes and labels") {
  for (int r = 0; r <= 3; ++r) {
    RankData odd(r, Parity::odd);
    CHECK(odd.root_indices2().size() == size_t(2 * r + 1));
    CHECK(odd.module_indices2().size() == size_t(2 * r + 2));
    if (r == 0) continue;
    RankData ev(r, Parity::even);
    CHECK(ev.root_indices2().size() == size_t(2 * r));
    CHECK(ev.module_indices2().size() == size_t(2 * r + 1));
  }
  CHECK(half_label(-1) == "-1/2");
  CHECK(half_label(4) == "2");
  CHECK(parity_from_name(parity_name(Parity::even)) == Parity::even);
  CHECK_THROWS_AS(RankData(0, Parity::even), std::invalid_argument);
  CHECK_THROWS_AS(parity_from_name("kappa"), std::invalid_argument);
}

TEST_CASE("theta") {
  RankData rd(1, Parity::odd);
  CHECK(rd.theta(epsilon(1)) == Weight{} - epsilon(-1));
  CHECK(rd.theta(rd.alpha(2)) == rd.alpha(-2));
  CHECK(rd.theta(rd.alpha(0)) == rd.alpha(0));
  CHECK_THROWS(rd.theta(epsilon(7)));
  std::mt19937 rng(5);
  for (auto par : {Parity::odd, Parity::even})
    for (int r = (par == Parity::odd ? 0 : 1); r <= 2; ++r) {
      RankData d(r, par);
      for (int t = 0; t < 50; ++t) {
        auto a = random_weight(rng, d), b = random_weight(rng, d);
        CHECK(d.theta(d.theta(a)) == a);
        CHECK(pairing(d.theta(a), d.theta(b)) == pairing(a, b));
      }
    }
}

TEST_CASE("theta classes") {
  RankData rd(1, Parity::odd);
  CHECK(rd.theta_class(epsilon(-1)) == rd.theta_class(epsilon(1)));
  CHECK(rd.theta_class(Weight{}).empty());
  CHECK_FALSE(rd.theta_class(rd.alpha(2) - rd.alpha(-2)).empty());
  std::mt19937 rng(9);
  for (int t = 0; t < 100; ++t) {
    auto a = random_weight(rng, rd), b = random_weight(rng, rd);
    Weight d = a - b;
    CHECK((rd.theta_class(a) == rd.theta_class(b)) == (d == rd.theta(d)));
  }
}

TEST_CASE("root coordinates and the partial order") {
  RankData rd(1, Parity::odd);
  Weight a0 = rd.alpha(0), a1 = rd.alpha(2);
  CHECK(rd.order_preceq(a1, a1));
  CHECK(rd.order_preceq(Weight{}, a0));
  CHECK_FALSE(rd.order_preceq(Weight{}, a1));
  CHECK_FALSE(rd.order_preceq(a0, Weight{}));
  CHECK(rd.root_coords(epsilon(1)) == std::nullopt);
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> c(-4, 4);
  for (auto par : {Parity::odd, Parity::even})
    for (int r = (par == Parity::odd ? 0 : 1); r <= 2; ++r) {
      RankData d(r, par);
      for (int t = 0; t < 50; ++t) {
        std::vector<int> x;
        for (int p = 0; p < d.n(); ++p) x.push_back(c(rng));
        CHECK(d.root_coords(d.weight_of(x)) == x);
      }
    }
  // partial-order axioms on one fiber: 0 plus theta-fixed combinations in N Pi
  RankData r2(2, Parity::odd);
  std::vector<Weight> fiber;
  for (int x = 0; x <= 2; ++x)
    for (int y = 0; y <= 2; ++y)
      for (int z = 0; z <= 1; ++z) fiber.push_back(r2.weight_of({z, y, x, y, z}));
  for (auto& a : fiber)
    for (auto& b : fiber) {
      if (r2.order_preceq(a, b) && r2.order_preceq(b, a)) CHECK(a == b);
      for (auto& c3 : fiber)
        if (r2.order_preceq(a, b) && r2.order_preceq(b, c3)) CHECK(r2.order_preceq(a, c3));
    }
}
