// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "support.hpp"

namespace hpp {
namespace {

using testing::var;

TEST(SearchNegative, CoextensionOfP7) {
  auto h = basis_polynomial(builtin("CoExtP7").matroid);
  auto c = search_negative(h, 6, 7);
  ASSERT_TRUE(c);
  EXPECT_LT(c->value, 0);
  EXPECT_TRUE(verify_negative_point(h, *c));
  EXPECT_EQ(rayleigh_difference(h, 6, 7).evaluate(c->point), c->value);
}

TEST(SearchNegative, M431) {
  auto h = basis_polynomial(builtin("M431").matroid);
  auto c = search_negative(h, 6, 7);
  ASSERT_TRUE(c);
  EXPECT_TRUE(verify_negative_point(h, *c));
}

TEST(SearchNegative, UniformHasNone) {
  auto h = basis_polynomial(Matroid::uniform(2, 4));
  NegSearchBudget small;
  small.multistarts = 20;
  EXPECT_FALSE(search_negative(h, 1, 2, small));
}

TEST(SearchNegative, PairCoordinatesIrrelevant) {
  auto h = basis_polynomial(builtin("CoExtP7").matroid);
  auto c = *search_negative(h, 6, 7);
  auto moved = c;
  moved.point[5] = 17;
  moved.point[6] = Rational(-3, 5);
  EXPECT_TRUE(verify_negative_point(h, moved));
  moved.value -= 1;
  EXPECT_FALSE(verify_negative_point(h, moved));
}

TEST(SearchNegative, ExclusiveWithSos) {
  auto h = basis_polynomial(builtin("V8").matroid);
  ASSERT_EQ(certify_pair(h, 1, 3).outcome, SosOutcome::Certified);
  NegSearchBudget small;
  small.multistarts = 20;
  small.grid_bound = 2;
  EXPECT_FALSE(search_negative(h, 1, 3, small));
}

TEST(Relabeled, KnownNegativePoints) {
  auto h430 = basis_polynomial(builtin("M430").matroid);
  auto a = find_relabeled_negative(h430, {80, 19, -31, -31, -17, -4});
  ASSERT_TRUE(a);
  EXPECT_TRUE(verify_negative_point(h430, a->certificate));
  auto h431 = basis_polynomial(builtin("M431").matroid);
  auto b = find_relabeled_negative(h431, {60, 27, -90, -22, 27, 5});
  ASSERT_TRUE(b);
  EXPECT_TRUE(verify_negative_point(h431, b->certificate));
}

TEST(Relabeled, NoneForHppMatroid) {
  auto h = basis_polynomial(Matroid::uniform(2, 4));
  EXPECT_FALSE(find_relabeled_negative(h, {3, -7}));
}

TEST(Orthant, RankThreePasses) {
  for (const char* name : {"F7", "P7", "MK4", "F7-"}) {
    auto h = basis_polynomial(builtin(name).matroid);
    EXPECT_FALSE(rayleigh_orthant_test(h)) << name;
  }
}

TEST(Orthant, S8IsNotRayleigh) {
  auto h = basis_polynomial(builtin("S8").matroid);
  auto c = rayleigh_orthant_test(h);
  ASSERT_TRUE(c);
  for (const auto& x : c->certificate.point) EXPECT_GE(x, 0);
  EXPECT_TRUE(verify_negative_point(h, c->certificate));
}

TEST(Orthant, DisconnectedPairPasses) {
  EXPECT_FALSE(rayleigh_orthant_test(var(2, 1) * var(2, 2)));
}

TEST(Correlation, DegenerateProduct) {
  auto est = correlation_ratio_estimate(var(2, 1) * var(2, 2));
  EXPECT_FALSE(est.any_valid);
  EXPECT_EQ(est.sup_bc_over_ad, 0);
}

TEST(Correlation, U24Orientation) {
  auto h = basis_polynomial(Matroid::uniform(2, 4));
  // at x3 = x4 = 1: bc = 4, ad = 1
  auto s = abcd_decompose(h, 1, 2);
  std::vector<Rational> x{0, 0, 1, 1};
  EXPECT_EQ(s.b.evaluate(x) * s.c.evaluate(x), 4);
  EXPECT_EQ(s.a.evaluate(x) * s.d.evaluate(x), 1);
  auto est = correlation_ratio_estimate(h);
  ASSERT_TRUE(est.any_valid);
  EXPECT_GE(est.sup_bc_over_ad, 4);
  EXPECT_TRUE(est.bc_over_ad_exceeds_one());
  EXPECT_FALSE(est.ad_over_bc_exceeds_one());
}

TEST(Correlation, NotRayleighExceedsOne) {
  auto s8 = correlation_ratio_estimate(basis_polynomial(builtin("S8").matroid));
  EXPECT_TRUE(s8.ad_over_bc_exceeds_one());
  auto v8 = correlation_ratio_estimate(basis_polynomial(builtin("V8").matroid));
  EXPECT_FALSE(v8.ad_over_bc_exceeds_one());
}

}  // namespace
}  // namespace hpp
