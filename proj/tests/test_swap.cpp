#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "lfseg/errors.hpp"
#include "lfseg/swap.hpp"
#include "oracles.hpp"

using namespace lfseg;

namespace {

FittingPair pairf(double a, double b, FitKind kind = FitKind::means) {
  return FittingPair{ScalarField2D(1, 1, a), ScalarField2D(1, 1, b), kind};
}

FittingPair random_pair(std::uint64_t seed, FitKind kind = FitKind::means, double lo = -50.0,
                        double hi = 300.0) {
  return FittingPair{oracle::random_field(9, 7, lo, hi, seed),
                     oracle::random_field(9, 7, lo, hi, seed + 1), kind};
}

}  // namespace

TEST_CASE("swap_pair: min/max exchange per polarity") {
  FittingPair bright = swap_pair(pairf(5.0, 3.0), Polarity::bright_object);
  CHECK(bright.side1[0] == 3.0);
  CHECK(bright.side2[0] == 5.0);

  FittingPair ordered = swap_pair(pairf(3.0, 5.0), Polarity::bright_object);
  CHECK(ordered.side1[0] == 3.0);
  CHECK(ordered.side2[0] == 5.0);

  FittingPair dark = swap_pair(pairf(3.0, 5.0), Polarity::dark_object);
  CHECK(dark.side1[0] == 5.0);
  CHECK(dark.side2[0] == 3.0);

  FittingPair off = swap_pair(pairf(5.0, 3.0), Polarity::off);
  CHECK(off.side1[0] == 5.0);
  CHECK(off.side2[0] == 3.0);
}

TEST_CASE("swap_pair: ordering invariant on random fields") {
  FittingPair p = random_pair(7);
  FittingPair bright = swap_pair(p, Polarity::bright_object);
  FittingPair dark = swap_pair(p, Polarity::dark_object);
  for (std::size_t i = 0; i < p.side1.size(); ++i) {
    CHECK(bright.side1[i] <= bright.side2[i]);
    CHECK(dark.side1[i] >= dark.side2[i]);
  }
}

TEST_CASE("swap_pair: multiset preservation pointwise") {
  FittingPair p = random_pair(8);
  for (Polarity pol : {Polarity::bright_object, Polarity::dark_object, Polarity::off}) {
    FittingPair s = swap_pair(p, pol);
    for (std::size_t i = 0; i < p.side1.size(); ++i) {
      CHECK(std::min(s.side1[i], s.side2[i]) == std::min(p.side1[i], p.side2[i]));
      CHECK(std::max(s.side1[i], s.side2[i]) == std::max(p.side1[i], p.side2[i]));
    }
  }
}

TEST_CASE("swap_pair: idempotent") {
  FittingPair p = random_pair(9);
  for (Polarity pol : {Polarity::bright_object, Polarity::dark_object}) {
    FittingPair once = swap_pair(p, pol);
    FittingPair twice = swap_pair(once, pol);
    for (std::size_t i = 0; i < p.side1.size(); ++i) {
      CHECK(twice.side1[i] == once.side1[i]);
      CHECK(twice.side2[i] == once.side2[i]);
    }
  }
}

TEST_CASE("swap_pair: ties pass through untouched") {
  FittingPair tied = swap_pair(pairf(4.0, 4.0), Polarity::bright_object);
  CHECK(tied.side1[0] == 4.0);
  CHECK(tied.side2[0] == 4.0);
}

TEST_CASE("swap_pair: already ordered pairs are returned verbatim") {
  FittingPair p = random_pair(10);
  FittingPair ordered = swap_pair(p, Polarity::bright_object);
  FittingPair again = swap_pair(ordered, Polarity::bright_object);
  for (std::size_t i = 0; i < p.side1.size(); ++i) {
    CHECK(again.side1[i] == ordered.side1[i]);
    CHECK(again.side2[i] == ordered.side2[i]);
  }
}

TEST_CASE("swap_pair: refuses variance pairs") {
  CHECK_THROWS_AS(swap_pair(pairf(1.0, 2.0, FitKind::variances), Polarity::off),
                  ParameterError);
}

TEST_CASE("swap_lgdf: pairs sort independently under the literal rule") {
  auto [u1, v1] = swap_lgdf(pairf(5.0, 3.0), pairf(2.0, 7.0, FitKind::variances),
                            Polarity::bright_object);
  CHECK(u1.side1[0] == 3.0);
  CHECK(u1.side2[0] == 5.0);
  CHECK(v1.side1[0] == 2.0);
  CHECK(v1.side2[0] == 7.0);

  auto [u2, v2] = swap_lgdf(pairf(5.0, 3.0), pairf(7.0, 2.0, FitKind::variances),
                            Polarity::bright_object);
  CHECK(u2.side1[0] == 3.0);
  CHECK(u2.side2[0] == 5.0);
  CHECK(v2.side1[0] == 2.0);
  CHECK(v2.side2[0] == 7.0);

  auto [u3, v3] = swap_lgdf(pairf(5.0, 3.0), pairf(7.0, 2.0, FitKind::variances),
                            Polarity::off);
  CHECK(u3.side1[0] == 5.0);
  CHECK(u3.side2[0] == 3.0);
  CHECK(v3.side1[0] == 7.0);
  CHECK(v3.side2[0] == 2.0);
}

TEST_CASE("swap_lgdf: dark_object reverses the assignment") {
  auto [u, v] = swap_lgdf(pairf(5.0, 3.0), pairf(2.0, 7.0, FitKind::variances),
                          Polarity::dark_object);
  CHECK(u.side1[0] == 5.0);
  CHECK(u.side2[0] == 3.0);
  CHECK(v.side1[0] == 7.0);
  CHECK(v.side2[0] == 2.0);
}

TEST_CASE("swap_lgdf: follow_means carries each variance with its mean") {
  // Means out of order: both pairs exchange, variance 7 lands on side1.
  auto [u1, v1] = swap_lgdf(pairf(5.0, 3.0), pairf(2.0, 7.0, FitKind::variances),
                            Polarity::bright_object, VarianceSwapRule::follow_means);
  CHECK(u1.side1[0] == 3.0);
  CHECK(u1.side2[0] == 5.0);
  CHECK(v1.side1[0] == 7.0);
  CHECK(v1.side2[0] == 2.0);

  // Means already ordered: nothing moves, even though the variances are not
  // sorted.
  auto [u2, v2] = swap_lgdf(pairf(3.0, 5.0), pairf(9.0, 1.0, FitKind::variances),
                            Polarity::bright_object, VarianceSwapRule::follow_means);
  CHECK(u2.side1[0] == 3.0);
  CHECK(u2.side2[0] == 5.0);
  CHECK(v2.side1[0] == 9.0);
  CHECK(v2.side2[0] == 1.0);
}

TEST_CASE("swap_lgdf: invariants on random fields, both rules") {
  FittingPair means = random_pair(20);
  FittingPair vars = random_pair(22, FitKind::variances, 0.5, 900.0);
  for (VarianceSwapRule rule : {VarianceSwapRule::independent, VarianceSwapRule::follow_means}) {
    auto [um, uv] = swap_lgdf(means, vars, Polarity::bright_object, rule);
    auto [um2, uv2] = swap_lgdf(um, uv, Polarity::bright_object, rule);
    for (std::size_t i = 0; i < means.side1.size(); ++i) {
      // Means ordering and multiset hold under both rules.
      CHECK(um.side1[i] <= um.side2[i]);
      CHECK(std::min(um.side1[i], um.side2[i]) == std::min(means.side1[i], means.side2[i]));
      CHECK(std::max(um.side1[i], um.side2[i]) == std::max(means.side1[i], means.side2[i]));
      // Variance multiset holds; ordering only under the literal rule.
      CHECK(std::min(uv.side1[i], uv.side2[i]) == std::min(vars.side1[i], vars.side2[i]));
      CHECK(std::max(uv.side1[i], uv.side2[i]) == std::max(vars.side1[i], vars.side2[i]));
      if (rule == VarianceSwapRule::independent) CHECK(uv.side1[i] <= uv.side2[i]);
      // Idempotence of the combined operation.
      CHECK(um2.side1[i] == um.side1[i]);
      CHECK(um2.side2[i] == um.side2[i]);
      CHECK(uv2.side1[i] == uv.side1[i]);
      CHECK(uv2.side2[i] == uv.side2[i]);
    }
  }
}
