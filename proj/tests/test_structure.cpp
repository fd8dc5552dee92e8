#include <gtest/gtest.h>

#include "steinitz/fixtures.hpp"
#include "steinitz/structure.hpp"

using namespace steinitz;

namespace {

const Fixtures& corpus() {
  static const Fixtures fx = load_fixtures(STEINITZ_DEFAULT_FIXTURES);
  return fx;
}

FiniteGroup fixture_group(const std::string& name) { return build_group(corpus().group(name).spec); }

} // namespace

TEST(Aprime, Examples) {
  auto c9xc3 = is_aprime_group(fixture_group("c9xc3"));
  ASSERT_TRUE(c9xc3);
  EXPECT_EQ(c9xc3->kind, AprimeTree::Kind::abelian);

  auto c7_c3 = is_aprime_group(fixture_group("c7_c3"));
  ASSERT_TRUE(c7_c3);
  EXPECT_EQ(c7_c3->kind, AprimeTree::Kind::semidirect);
  ASSERT_EQ(c7_c3->parts.size(), 2u);
  EXPECT_EQ(c7_c3->parts[0].size(), 7u);
  EXPECT_EQ(c7_c3->parts[1].size(), 3u);

  auto s3 = is_aprime_group(fixture_group("s3"));
  ASSERT_TRUE(s3);
  EXPECT_EQ(s3->kind, AprimeTree::Kind::semidirect);

  EXPECT_TRUE(is_aprime_group(fixture_group("c7_c3xc3")));
  EXPECT_FALSE(is_aprime_group(heisenberg_group(3)));
  EXPECT_FALSE(is_aprime_group(modular_group(3, 3)));
  EXPECT_FALSE(is_aprime_group(fixture_group("c3wrc3")));
}

TEST(Burnside, Examples) {
  EXPECT_EQ(burnside_check(heisenberg_group(3)).size(), 9u);
  EXPECT_EQ(burnside_check(cyclic_group(81)).size(), 27u);
  auto m = modular_group(3, 4);
  auto b = burnside_check(m);
  EXPECT_EQ(b.size(), 27u);
  EXPECT_TRUE(is_normal(m, b));
  EXPECT_TRUE(subgroup_is_abelian(m, b));
  const auto tau = cyclic_subgroup(m, *m.generator("tau"));
  EXPECT_EQ(tau.size(), 27u);
  EXPECT_TRUE(is_normal(m, tau));
  EXPECT_THROW(burnside_check(cyclic_group(9)), SpecError);
  EXPECT_THROW(burnside_check(cyclic_group(16)), SpecError);
}

TEST(Burnside, EveryOddEllGroupFixture) {
  for (auto& gf : corpus().groups) {
    if (!gf.expected_kind) continue;
    auto g = build_group(gf.spec);
    auto b = burnside_check(g);
    EXPECT_EQ(b.size(), g.order() / nt::prime_power(g.order()).first) << gf.name;
    EXPECT_TRUE(is_normal(g, b)) << gf.name;
    EXPECT_TRUE(subgroup_is_abelian(g, b)) << gf.name;
  }
}

TEST(Classify, Examples) {
  auto e = classify_ell4(fixture_group("he3xc3"));
  EXPECT_EQ(e.kind, "exponent_l");
  ASSERT_TRUE(e.h && e.complement);
  EXPECT_EQ(e.h->size(), 27u);
  EXPECT_EQ(e.complement->size(), 3u);

  auto m81 = fixture_group("m81");
  auto m = classify_ell4(m81);
  EXPECT_EQ(m.kind, "modular");
  EXPECT_EQ(m81.element_order(m.tau), 27u);
  EXPECT_EQ(m.tau_nc_index, 3u);

  auto c99 = fixture_group("c9_c9");
  auto t2 = classify_ell4(c99);
  EXPECT_EQ(t2.kind, "type2");
  ASSERT_TRUE(t2.h && t2.complement && t2.rho);
  EXPECT_EQ(t2.h->size(), 27u);
  EXPECT_FALSE(find_complement(c99, *t2.h));
  EXPECT_EQ(t2.tau_nc_index, 3u);
  EXPECT_EQ(c99.element_order(*t2.rho), 9u);

  EXPECT_EQ(classify_ell4(cyclic_group(27)).kind, "cyclic");
  EXPECT_EQ(classify_ell4(fixture_group("c9xc9")).kind, "abelian");
  EXPECT_THROW(classify_ell4(fixture_group("s3")), SpecError);
  EXPECT_THROW(classify_ell4(cyclic_group(243)), SpecError);
}

TEST(Classify, FixtureKindsAndWitnesses) {
  int seen = 0;
  for (auto& gf : corpus().groups) {
    if (!gf.expected_kind) continue;
    auto g = build_group(gf.spec);
    auto c = classify_ell4(g);
    EXPECT_EQ(c.kind, *gf.expected_kind) << gf.name;
    auto bad = verify_ell4_witnesses(g, c);
    EXPECT_FALSE(bad) << gf.name << ": " << bad.value_or("");
    ++seen;
  }
  EXPECT_GE(seen, 20);
}

TEST(Classify, TamperedWitnessIsRejected) {
  auto g = fixture_group("c9_c9");
  auto c = classify_ell4(g);
  c.tau = g.identity();
  EXPECT_TRUE(verify_ell4_witnesses(g, c));
}

TEST(Type3, LiftShape) {
  for (auto name : {"c3wrc3", "c9c3_c3_b"}) {
    auto g = fixture_group(name);
    auto cls = classify_ell4(g);
    ASSERT_EQ(cls.kind, "type3") << name;
    auto lift = type3_lift(g, cls);
    EXPECT_EQ(lift.tilde.order(), 729u);
    EXPECT_EQ(lift.h.group.order(), 27u);
    EXPECT_EQ(lift.tilde.element_order(lift.tilde_tau), 9u);
    EXPECT_EQ(lift.proj_case, 2);
    EXPECT_EQ(lift.pis.size(), 3u);
    for (auto& pi : lift.pis) EXPECT_EQ(pi.image().size(), g.order());
  }
}

// pi_j sends h tilde-tau to h h0^j tau, so valid j are counted directly in G.
TEST(Type3, ProjectionCountsMatchDirectComputation) {
  for (auto name : {"c3wrc3", "c9c3_c3_b"}) {
    auto g = fixture_group(name);
    auto cls = classify_ell4(g);
    auto lift = type3_lift(g, cls);
    const auto& hs = cls.h->members();
    std::map<std::uint32_t, int> histogram;
    for (auto h1 : hs)
      for (auto h2 : hs) {
        std::uint32_t expected = 0;
        for (std::int64_t j = 0; j < 3; ++j) {
          const Element t = g.mul(g.pow(lift.h0, j), cls.tau);
          if (g.element_order(g.mul(h1, t)) == 9 && g.element_order(g.mul(h2, t)) == 9) ++expected;
        }
        auto p = type3_projection(g, lift, 3, h1, h2);
        ASSERT_EQ(p.valid_choices, expected) << name;
        ASSERT_GE(p.valid_choices, 1u) << name;
        ASSERT_FALSE(verify_type3_projection(g, lift, 3, h1, h2, p)) << name;
        ++histogram[p.valid_choices];
      }
    EXPECT_EQ(histogram[1], 486) << name;
    EXPECT_EQ(histogram[2], 243) << name;
    EXPECT_EQ(histogram.size(), 2u) << name;
  }
}

TEST(Type3, RejectsOtherKinds) {
  auto g = fixture_group("c9_c9");
  EXPECT_THROW(type3_lift(g, classify_ell4(g)), SpecError);
  auto w = fixture_group("c3wrc3");
  auto cls = classify_ell4(w);
  auto lift = type3_lift(w, cls);
  for (Element x = 0; x < w.order(); ++x)
    if (!cls.h->contains(x)) {
      EXPECT_THROW(lift.h_tilde_tau(x), SpecError);
      break;
    }
}

TEST(Type3, ExponentIdentity) {
  auto a = type3_steinitz_identity(3, 3, 2);
  EXPECT_EQ(a.lhs, 225);
  EXPECT_TRUE(a.equal);
  auto b = type3_steinitz_identity(5, 2, 2);
  EXPECT_EQ(b.lhs, 1700);
  EXPECT_EQ(b.rhs, 1700);
  EXPECT_EQ(type3_steinitz_identity(7, 0, 0).lhs, 0);
  for (std::int64_t ell : {3, 5, 7, 11, 13})
    for (std::int64_t x = -20; x <= 20; ++x)
      for (std::int64_t y = -20; y <= 20; ++y) EXPECT_TRUE(type3_steinitz_identity(ell, x, y).equal);
  EXPECT_THROW(type3_steinitz_identity(2, 1, 1), SpecError);
  EXPECT_THROW(type3_steinitz_identity(9, 1, 1), SpecError);
}
