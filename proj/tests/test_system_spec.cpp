#include <gtest/gtest.h>

#include <set>

#include <dpt/system_spec.hpp>

using namespace dpt;

namespace {

SystemSpec valid_spec(int N) {
  SystemSpec s;
  s.N = N;
  s.F = {2, 0.5, 0.3, 0.1, 0.3, 0.1, 1.5, 0.2, 0.05};
  s.G = {1.0, 1.2, 0.1};
  s.delta = 0.25;
  return s;
}

}  // namespace

TEST(PairIndex, FollowsDisplayedOrdering) {
  EXPECT_EQ(pair_index(1, 2, 4), 1);
  EXPECT_EQ(pair_index(1, 3, 4), 2);
  EXPECT_EQ(pair_index(2, 3, 4), 3);
  EXPECT_EQ(pair_index(1, 4, 4), 4);
  EXPECT_EQ(pair_index(2, 4, 4), 5);
  EXPECT_EQ(pair_index(3, 4, 4), 6);
}

TEST(PairIndex, RejectsOutOfDomain) {
  EXPECT_THROW(pair_index(2, 2, 4), DomainError);
  EXPECT_THROW(pair_index(3, 2, 4), DomainError);
  EXPECT_THROW(pair_index(1, 5, 4), DomainError);
  EXPECT_THROW(pair_index(0, 2, 4), DomainError);
}

TEST(PairIndex, BijectionUpTo64) {
  for (int N = 2; N <= 64; ++N) {
    std::set<int> seen;
    for (int j = 2; j <= N; ++j)
      for (int i = 1; i < j; ++i) {
        const int k = pair_index(i, j, N);
        ASSERT_GE(k, 1);
        ASSERT_LE(k, pair_count(N));
        ASSERT_TRUE(seen.insert(k).second);
        ASSERT_EQ(pair_from_index(k, N), std::make_pair(i, j));
      }
    ASSERT_EQ(int(seen.size()), pair_count(N));
    const auto pl = pair_list(N);
    for (std::size_t k = 0; k < pl.size(); ++k) ASSERT_EQ(pair_index(pl[k].first, pl[k].second, N), int(k) + 1);
  }
}

TEST(SpeciesDimensions, Examples) {
  auto d = species_dimensions(10);
  EXPECT_EQ(d.symmetric, 1);
  EXPECT_EQ(d.standard, 9);
  EXPECT_EQ(d.two_row, 35);
  d = species_dimensions(3);
  EXPECT_EQ(d.standard, 2);
  EXPECT_EQ(d.two_row, 0);
  d = species_dimensions(4);
  EXPECT_EQ(d.standard, 3);
  EXPECT_EQ(d.two_row, 2);
  EXPECT_EQ(species_dimensions(2).two_row, 0);
  EXPECT_FALSE(species_present(Species::two_row, 3));
  EXPECT_THROW(species_dimensions(1), DomainError);
}

TEST(SpeciesDimensions, CountingIdentities) {
  for (int N = 2; N <= 200; ++N) EXPECT_EQ(species_dimensions(N).symmetric + species_dimensions(N).standard, N);
  for (int N = 3; N <= 200; ++N) {
    const auto d = species_dimensions(N);
    EXPECT_EQ(d.symmetric + d.standard + d.two_row, pair_count(N));
  }
  // N = 2: the single angle is pure [N]; the [1,1] species is radial only.
  EXPECT_EQ(pair_count(2), species_dimensions(2).symmetric);
}

TEST(ValidateSpec, AcceptsAndReportsSizes) {
  const auto v = validate_spec(valid_spec(6));
  EXPECT_EQ(v.P, 21);
  EXPECT_EQ(v.M, 15);
  EXPECT_EQ(v.spec.N, 6);
  EXPECT_EQ(v.spec.F.a, 2);
}

TEST(ValidateSpec, NamedErrors) {
  auto expect_field = [](SystemSpec s, const std::string& field) {
    try {
      validate_spec(s);
      FAIL() << "expected rejection on " << field;
    } catch (const ValidationError& e) {
      EXPECT_EQ(e.field, field);
      EXPECT_FALSE(e.constraint.empty());
    }
  };
  auto s = valid_spec(6);
  s.N = 1;
  expect_field(s, "N");
  s = valid_spec(6);
  s.delta = 0;
  expect_field(s, "delta");
  s.delta = 1.5;
  expect_field(s, "delta");
  s = valid_spec(6);
  s.a_ho = 0;
  expect_field(s, "a_ho");
  s = valid_spec(6);
  s.gamma_inf = 1;
  expect_field(s, "gamma_inf");
  s = valid_spec(6);
  s.F.c = s.F.e + 1;
  expect_field(s, "F.c");
  s = valid_spec(6);
  s.F.d = s.F.f + 1;
  expect_field(s, "F.d");
  s = valid_spec(6);
  s.F.g = std::nan("");
  expect_field(s, "F.g");
  s = valid_spec(6);
  s.G.a = -1;
  expect_field(s, "G.a");
  s = valid_spec(6);
  s.G.g = 0.1;  // G.g - 2 G.h = -0.1
  expect_field(s, "G.g");
}

TEST(ValidateSpec, DeltaOneAccepted) {
  auto s = valid_spec(3);
  s.delta = 1.0;
  EXPECT_NO_THROW(validate_spec(s));
}

TEST(ValidateSpec, GConditionsDependOnN) {
  // g' = G.g - 2 G.h <= 0 only matters once [N-2,2] exists.
  auto s = valid_spec(3);
  s.G = {1.0, 0.5, 0.5};  // g' = -0.5, g' + h' = 0 -> rejected at N=3
  EXPECT_THROW(validate_spec(s), ValidationError);
  s.G = {1.0, 0.8, 0.5};  // g' = -0.2, g' + h' = 0.3, g' + 4h' = 1.8
  EXPECT_NO_THROW(validate_spec(s));
  s.N = 4;
  EXPECT_THROW(validate_spec(s), ValidationError);
}
