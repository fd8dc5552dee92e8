#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace steinitz;

TEST(Kronecker, SmallValues) {
  EXPECT_EQ(nt::kronecker(-20, 3), 1);
  EXPECT_EQ(nt::kronecker(-20, 7), 1);
  EXPECT_EQ(nt::kronecker(-20, 11), -1);
  EXPECT_EQ(nt::kronecker(-20, 5), 0);
  EXPECT_EQ(nt::kronecker(-23, 2), 1);
  EXPECT_EQ(nt::kronecker(-4, 3), -1);
  EXPECT_EQ(nt::kronecker(5, 8), -1);
}

TEST(QuadForm, ReducedFormsOfSmallDiscriminants) {
  EXPECT_EQ(qf::reduced_forms(-20), (std::vector<QuadForm>{{1, 0, 5}, {2, 2, 3}}));
  EXPECT_EQ(qf::reduced_forms(-23).size(), 3u);
  EXPECT_EQ(qf::reduced_forms(-4).size(), 1u);
  EXPECT_EQ(qf::reduced_forms(-3).size(), 1u);
}

TEST(QuadForm, ReductionPreservesDiscriminant) {
  for (std::int64_t a = 1; a < 30; ++a)
    for (std::int64_t b = -40; b < 40; ++b) {
      const std::int64_t d = -23;
      if ((b * b - d) % (4 * a) != 0) continue;
      auto f = qf::reduce(qf::with_c(a, b, d));
      EXPECT_TRUE(f.is_reduced());
      EXPECT_EQ(f.discriminant(), d);
    }
}

TEST(QuadForm, CompositionMatchesIdealMultiplication) {
  for (std::int64_t dfield : {5, 23, 14, 21, 26, 65, 199, 4027}) {
    const auto d = nt::imag_quadratic_discriminant(dfield);
    auto forms = qf::reduced_forms(d);
    for (auto& f : forms)
      for (auto& g : forms) ASSERT_EQ(qf::compose(f, g), oracle::ideal_product_form(f, g)) << f << " " << g;
  }
}

TEST(ClassGroup, InvariantFactors) {
  struct Case {
    std::int64_t d;
    std::vector<std::int64_t> divisors;
  };
  for (auto c : std::vector<Case>{{1, {}}, {3, {}}, {5, {2}}, {23, {3}}, {14, {4}}, {21, {2, 2}}, {26, {6}},
                                  {30, {2, 2}}, {65, {2, 4}}, {199, {9}}}) {
    auto k = FieldSpec::imag_quadratic(c.d);
    EXPECT_EQ(k.class_group().divisors(), c.divisors) << c.d;
  }
  EXPECT_THROW(FieldSpec::imag_quadratic(12), SpecError);
}

TEST(ClassGroup, CoordinatesAreAHomomorphism) {
  for (std::int64_t dfield : {5, 21, 65, 199, 4027}) {
    auto k = FieldSpec::imag_quadratic(dfield);
    const auto* fg = k.forms();
    const auto& cl = k.class_group();
    for (auto& f : fg->forms())
      for (auto& g : fg->forms())
        ASSERT_EQ(fg->class_of(oracle::ideal_product_form(f, g)), cl.add(fg->class_of(f), fg->class_of(g)));
    std::set<IdealClass> seen;
    for (auto& f : fg->forms()) seen.insert(fg->class_of(f));
    EXPECT_EQ(static_cast<std::int64_t>(seen.size()), cl.order());
  }
}

TEST(GalSubgroup, Examples) {
  EXPECT_EQ(FieldSpec::rationals().gal_subgroup(8), ResidueSubgroup(8, {1, 3, 5, 7}));
  auto k5 = FieldSpec::imag_quadratic(5);
  EXPECT_EQ(k5.gal_subgroup(4), ResidueSubgroup(4, {1, 3}));
  EXPECT_EQ(k5.gal_subgroup(20).size(), 4u);  // Q(sqrt(-5)) lies in Q(zeta_20)
  EXPECT_EQ(k5.gal_subgroup(1), ResidueSubgroup::full(1));
  auto ki = FieldSpec::imag_quadratic(1);
  EXPECT_EQ(ki.gal_subgroup(4), ResidueSubgroup::trivial(4));
  EXPECT_EQ(ki.gal_subgroup(8), ResidueSubgroup(8, {1, 5}));
}

TEST(GalSubgroup, TowerConsistencyAndNormSampling) {
  for (std::int64_t dfield : {1, 5, 23}) {
    auto k = FieldSpec::imag_quadratic(dfield);
    for (std::int64_t m = 1; m <= 60; ++m) {
      auto t = k.gal_subgroup(m);
      for (auto d : nt::divisors(m)) ASSERT_EQ(t.reduce(d), k.gal_subgroup(d)) << m << " " << d;
      auto sampled = oracle::gal_by_norms(dfield, m, 800);
      ASSERT_EQ(std::vector<std::int64_t>(sampled.begin(), sampled.end()), t.members()) << dfield << " " << m;
    }
  }
}

TEST(PrimeStream, Examples) {
  for (auto& e : FieldSpec::rationals().prime_norm_class_stream(20)) EXPECT_TRUE(e.cls.empty());
  auto k5 = FieldSpec::imag_quadratic(5);
  auto s = k5.prime_norm_class_stream(30);
  bool saw3 = false, saw29 = false;
  for (auto& e : s) {
    EXPECT_NE(e.norm % 5, 0);
    if (e.norm == 3) {
      saw3 = true;
      EXPECT_EQ(e.cls, IdealClass{1});
    }
    if (e.norm == 29) {
      saw29 = true;
      EXPECT_EQ(e.cls, IdealClass{0});
    }
    if (e.norm == 11 * 11) {
      EXPECT_EQ(e.cls, IdealClass{0});
    }
  }
  EXPECT_TRUE(saw3 && saw29);
  EXPECT_THROW(k5.prime_norm_class_stream(1), SpecError);
}

TEST(EField, Examples) {
  auto q = FieldSpec::rationals();
  auto m = modular_group(3, 3);
  auto tau = *m.generator("tau");
  auto e = e_field(q, m, tau);
  EXPECT_EQ(e.m, 9);
  EXPECT_EQ(e.s, ResidueSubgroup(9, {1, 4, 7}));
  EXPECT_EQ(e_field(q, cyclic_group(9), 1).s, ResidueSubgroup::trivial(9));
  EXPECT_EQ(e_field_compare(e, e, q), FieldComparison::equal);
  EXPECT_EQ(e_field_compare(cyclotomic_descriptor(3), cyclotomic_descriptor(9), q), FieldComparison::first_smaller);
  EXPECT_EQ(e_field_compare(e_field(q, m, m.pow(tau, 3)), e, q), FieldComparison::equal);
  EXPECT_EQ(e_field_compare(cyclotomic_descriptor(3), cyclotomic_descriptor(4), q), FieldComparison::incomparable);
  EXPECT_THROW(e_field(q, m, m.identity()), SpecError);
}

TEST(EField, ETauForEllGroups) {
  auto h = heisenberg_group(3);
  for (Element t = 1; t < h.order(); ++t) EXPECT_EQ(e_tau_ell_group(h, t), 3);
  auto m = modular_group(3, 3);
  EXPECT_EQ(e_tau_ell_group(m, *m.generator("tau")), 3);
  EXPECT_EQ(e_tau_ell_group(cyclic_group(27), 1), 27);
  EXPECT_THROW(e_tau_ell_group(cyclic_group(6), 1), SpecError);
}

TEST(WSubgroup, Examples) {
  auto q = FieldSpec::rationals();
  EXPECT_TRUE(w_subgroup(q, cyclotomic_descriptor(5), 100).w.is_trivial());
  auto k5 = FieldSpec::imag_quadratic(5);
  EXPECT_TRUE(w_subgroup(k5, cyclotomic_descriptor(4), 200).w.is_trivial());
  auto w3 = w_subgroup(k5, cyclotomic_descriptor(3), 200);
  EXPECT_EQ(w3.w.order(), 2);
  EXPECT_EQ(w3.stable_after, 7);
  EXPECT_FALSE(w3.heuristic);
  EXPECT_TRUE(w_subgroup(k5, cyclotomic_descriptor(5), 1000).w.is_trivial());
}

TEST(WSubgroup, AgreesWithRepresentationOracle) {
  for (std::int64_t dfield : {5, 23}) {
    auto k = FieldSpec::imag_quadratic(dfield);
    for (std::int64_t m : {2, 3, 4, 5, 8, 9}) {
      auto t = k.gal_subgroup(m);
      // all subgroups S of T_m
      std::set<std::vector<std::int64_t>> seen;
      for (auto a : t.members())
        for (auto b : t.members()) {
          auto s = ResidueSubgroup::generated(m, {a, b});
          if (!seen.insert(s.members()).second) continue;
          auto w = w_subgroup(k, {m, s}, 400).w;
          auto expected = oracle::w_by_representation(dfield, m, s.members(), 400);
          std::set<QuadForm> got;
          for (auto& c : w.elements()) got.insert(k.forms()->form_of(c));
          ASSERT_EQ(got, expected) << dfield << " " << m << " " << s;
        }
    }
  }
}

TEST(WSubgroup, MonotoneInTheField) {
  auto k = FieldSpec::imag_quadratic(23);
  for (std::int64_t m : {3, 9}) {
    auto t = k.gal_subgroup(m);
    std::vector<ResidueSubgroup> subs;
    std::set<std::vector<std::int64_t>> seen;
    for (auto a : t.members())
      if (auto s = ResidueSubgroup::generated(m, {a}); seen.insert(s.members()).second) subs.push_back(s);
    for (auto& s1 : subs)
      for (auto& s2 : subs)
        if (e_field_contained({m, s1}, {m, s2}, k)) {
          EXPECT_TRUE(w_subgroup(k, {m, s1}, 300).w.includes(w_subgroup(k, {m, s2}, 300).w));
        }
  }
}

TEST(Check26Acta, Examples) {
  EXPECT_TRUE(check_26acta(FieldSpec::rationals(), 3, 3, 200));
  EXPECT_TRUE(check_26acta(FieldSpec::imag_quadratic(5), 3, 3, 300));
  EXPECT_TRUE(check_26acta(FieldSpec::imag_quadratic(23), 3, 3, 300));
  EXPECT_THROW(check_26acta(FieldSpec::imag_quadratic(5), 3, 2, 300), SpecError);
}

TEST(DeclaredField, RejectsInconsistentData) {
  std::map<std::int64_t, ResidueSubgroup> gal{{8, ResidueSubgroup(8, {1, 5})}, {4, ResidueSubgroup(4, {1, 3})}};
  EXPECT_THROW(FieldSpec::declared(gal, FiniteAbelianGroup({2}), {{13, {1}}}, {}), DeclaredDataError);
  std::map<std::int64_t, ResidueSubgroup> ok{{8, ResidueSubgroup(8, {1, 5})}};
  auto k = FieldSpec::declared(ok, FiniteAbelianGroup({2}), {{13, {1}}, {3, {0}}}, {});
  EXPECT_EQ(k.gal_subgroup(4), ResidueSubgroup::trivial(4));
  EXPECT_THROW(k.gal_subgroup(3), SpecError);
  // 3 is not in T_8 = {1,5}
  EXPECT_THROW(w_subgroup(k, cyclotomic_descriptor(8), 100), DeclaredDataError);
  EXPECT_THROW(FieldSpec::declared(ok, FiniteAbelianGroup({2}), {{13, {1, 0}}}, {}), SpecError);
}
