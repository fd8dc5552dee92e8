#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace steinitz;

namespace {

FiniteAbelianGroup random_ambient(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> rank(1, 3), step(1, 6);
  const int r = rank(rng);
  std::vector<std::int64_t> d;
  std::int64_t cur = 1;
  for (int i = 0; i < r; ++i) {
    std::int64_t next;
    do {
      next = cur * step(rng);
    } while (next < 2 || next > 36);
    d.push_back(next);
    cur = next;
    if (cur * 2 > 36) break;
  }
  return FiniteAbelianGroup(d);
}

IdealClass random_element(const FiniteAbelianGroup& a, std::mt19937_64& rng) {
  IdealClass v;
  for (auto d : a.divisors()) v.push_back(std::uniform_int_distribution<std::int64_t>(0, d - 1)(rng));
  return v;
}

ClassSubgroup random_subgroup(const FiniteAbelianGroup& a, std::mt19937_64& rng) {
  std::vector<IdealClass> gens;
  const int n = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int i = 0; i < n; ++i) gens.push_back(random_element(a, rng));
  return ClassSubgroup(a, gens);
}

} // namespace

TEST(HalfInteger, ParseAndPrint) {
  EXPECT_EQ(HalfInteger::parse("7/2").twice(), 7);
  EXPECT_EQ(HalfInteger::parse("3").twice(), 6);
  EXPECT_EQ(HalfInteger::from_twice(7).to_string(), "7/2");
  EXPECT_EQ(HalfInteger::integer(4).to_string(), "4");
  EXPECT_THROW(HalfInteger::parse("1/3"), SpecError);
  EXPECT_THROW(HalfInteger::parse("x"), SpecError);
}

TEST(FiniteAbelianGroup, Basics) {
  FiniteAbelianGroup a({2, 4});
  EXPECT_EQ(a.order(), 8);
  EXPECT_EQ(a.elements().size(), 8u);
  EXPECT_EQ(a.element_order({1, 1}), 4);
  EXPECT_EQ(a.element_order({1, 2}), 2);
  EXPECT_THROW(FiniteAbelianGroup({4, 2}), SpecError);
  EXPECT_THROW(a.add({1}, {1, 1}), SpecError);
  EXPECT_EQ(FiniteAbelianGroup().order(), 1);
}

TEST(ClassSubgroup, JoinInTwoByFour) {
  FiniteAbelianGroup a({2, 4});
  ClassSubgroup x(a, {{1, 0}}), y(a, {{0, 2}});
  EXPECT_EQ(x.join(y).order(), 4);
  EXPECT_EQ(ClassSubgroup::trivial(a).join(x), x);
  EXPECT_EQ(x.meet(ClassSubgroup::full(a)), x);
  EXPECT_EQ(ClassSubgroup::full(a).index(), 1);
  EXPECT_EQ(x.index(), 4);
}

TEST(ClassSubgroup, CanonicalFormIsGeneratorIndependent) {
  FiniteAbelianGroup a({6, 36});
  ClassSubgroup x(a, {{2, 6}, {0, 12}}), y(a, {{4, 12 + 6}, {2, 6 + 12}, {0, 24}});
  EXPECT_EQ(oracle::as_set(x), oracle::as_set(y));
  EXPECT_EQ(x, y);
  EXPECT_EQ(x.hnf(), y.hnf());
}

TEST(ClassSubgroup, MatchesEnumerationOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    auto amb = random_ambient(rng);
    std::vector<IdealClass> ga, gb;
    for (int i = 0; i < 2; ++i) {
      ga.push_back(random_element(amb, rng));
      gb.push_back(random_element(amb, rng));
    }
    ClassSubgroup a(amb, ga), b(amb, gb);
    auto sa = oracle::span(amb, ga), sb = oracle::span(amb, gb);
    ASSERT_EQ(oracle::as_set(a), sa) << amb.to_string();
    ASSERT_EQ(a.order(), static_cast<std::int64_t>(sa.size()));
    std::set<IdealClass> inter;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(inter, inter.end()));
    EXPECT_EQ(oracle::as_set(a.meet(b)), inter);
    auto all = ga;
    all.insert(all.end(), gb.begin(), gb.end());
    EXPECT_EQ(oracle::as_set(a.join(b)), oracle::span(amb, all));
    EXPECT_EQ(a.includes(b), std::includes(sa.begin(), sa.end(), sb.begin(), sb.end()));
  }
}

TEST(PowerSubgroup, Examples) {
  FiniteAbelianGroup z2({2});
  auto b = ClassSubgroup::full(z2);
  EXPECT_EQ(power_subgroup(ClassSubgroup::trivial(z2), HalfInteger::from_twice(1), b), b);
  EXPECT_EQ(power_subgroup(b, HalfInteger::integer(1), b), b);

  FiniteAbelianGroup z6({6});
  ClassSubgroup a(z6, {{2}});
  EXPECT_EQ(a.order(), 3);
  auto r = power_subgroup(a, HalfInteger::from_twice(3), ClassSubgroup::full(z6));
  EXPECT_EQ(oracle::as_set(r), (std::set<IdealClass>{{0}, {3}}));

  EXPECT_THROW(power_subgroup(a, HalfInteger::from_twice(-1), ClassSubgroup::full(z6)), SpecError);
}

TEST(PowerSubgroup, SquareRootOfSquaresIsNotTheOriginal) {
  // in Z/2, A = Z/2 has A^2 = 1 and (A^2)^(1/2) = Z/2 = A, but A = 1 gives (1^2)^(1/2) = Z/2 != A
  FiniteAbelianGroup z2({2});
  auto full = ClassSubgroup::full(z2);
  auto a = ClassSubgroup::trivial(z2);
  auto sq = power_subgroup(a, HalfInteger::integer(2), full);
  auto back = power_subgroup(sq, HalfInteger::from_twice(1), full);
  EXPECT_NE(back, a);
  EXPECT_EQ(back.order(), 2);
}

TEST(PowerSubgroup, MatchesEnumerationOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 400; ++trial) {
    auto amb = random_ambient(rng);
    auto b = random_subgroup(amb, rng);
    std::vector<IdealClass> ga;
    for (auto& x : b.generators())
      ga.push_back(amb.scale(x, std::uniform_int_distribution<int>(0, 3)(rng)));
    ClassSubgroup a(amb, ga);
    const std::int64_t twice = std::uniform_int_distribution<std::int64_t>(0, 20)(rng);
    auto got = power_subgroup(a, HalfInteger::from_twice(twice), b);
    ASSERT_EQ(oracle::as_set(got), oracle::power_set(amb, oracle::as_set(a), twice, oracle::as_set(b)))
        << amb.to_string() << " t=" << twice << "/2";
  }
}

TEST(PowerSubgroup, IntegerPowerIsIdempotentPlumbing) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    auto amb = random_ambient(rng);
    auto a = random_subgroup(amb, rng);
    auto full = ClassSubgroup::full(amb);
    const auto t = HalfInteger::from_twice(std::uniform_int_distribution<std::int64_t>(0, 15)(rng));
    EXPECT_EQ(power_subgroup(power_subgroup(a, HalfInteger::integer(1), full), t, full), power_subgroup(a, t, full));
  }
}
