#pragma once

#include <cstdint>
#include <string>

#include "steinitz/field.hpp"
#include "steinitz/group.hpp"

namespace steinitz {

/// The subfield of k(zeta_m) fixed by S <= T_m(k).
struct EFieldDescriptor {
  std::int64_t m = 1;
  ResidueSubgroup s;

  std::string to_string() const { return "(" + std::to_string(m) + ", " + s.to_string() + ")"; }
  friend bool operator==(const EFieldDescriptor&, const EFieldDescriptor&) = default;
};

/// k(zeta_m) itself.
inline EFieldDescriptor cyclotomic_descriptor(std::int64_t m) { return {m, ResidueSubgroup::trivial(m)}; }

inline EFieldDescriptor e_field(const FieldSpec& k, const FiniteGroup& g, Element tau) {
  if (tau == g.identity()) throw SpecError("e_field: tau must not be the identity");
  const std::int64_t m = g.element_order(tau);
  return {m, k.gal_subgroup(m).intersect(phi_image(g, tau))};
}

enum class FieldComparison { equal, first_smaller, second_smaller, incomparable };

inline const char* to_string(FieldComparison c) {
  switch (c) {
  case FieldComparison::equal: return "equal";
  case FieldComparison::first_smaller: return "first_smaller";
  case FieldComparison::second_smaller: return "second_smaller";
  case FieldComparison::incomparable: return "incomparable";
  }
  return "?";
}

/// Compares fixed fields inside k(zeta_M), M = lcm(m1, m2). first_smaller means E1 is a proper subfield of E2.
inline FieldComparison e_field_compare(const EFieldDescriptor& e1, const EFieldDescriptor& e2, const FieldSpec& k) {
  const std::int64_t big = std::lcm(e1.m, e2.m);
  const auto t = k.gal_subgroup(big);
  const auto s1 = t.preimage_of(e1.s), s2 = t.preimage_of(e2.s);
  const bool e1_in_e2 = s2.is_subset_of(s1), e2_in_e1 = s1.is_subset_of(s2);
  if (e1_in_e2 && e2_in_e1) return FieldComparison::equal;
  if (e1_in_e2) return FieldComparison::first_smaller;
  if (e2_in_e1) return FieldComparison::second_smaller;
  return FieldComparison::incomparable;
}

/// E1 is contained in E2.
inline bool e_field_contained(const EFieldDescriptor& e1, const EFieldDescriptor& e2, const FieldSpec& k) {
  auto c = e_field_compare(e1, e2, k);
  return c == FieldComparison::equal || c == FieldComparison::first_smaller;
}

/// For an ell-group G: e_tau = o(tau) / #(N/C), with E = k(zeta_{e_tau}).
inline std::int64_t e_tau_ell_group(const FiniteGroup& g, Element tau) {
  auto [ell, n] = nt::prime_power(g.order());
  if (ell == 0) throw SpecError("e_tau: group order " + std::to_string(g.order()) + " is not a prime power");
  if (tau == g.identity()) throw SpecError("e_tau: tau must not be the identity");
  const std::int64_t o = g.element_order(tau);
  const auto phi = phi_image(g, tau);
  const std::int64_t e = o / static_cast<std::int64_t>(phi.size());
  engine_check(o % static_cast<std::int64_t>(phi.size()) == 0, "e_tau: #(N/C) must divide o(tau)");
  engine_check(e % ell == 0, "e_tau: ell must divide e_tau");
  std::vector<std::int64_t> expected;
  for (std::int64_t a = 1; a < o; a += e) expected.push_back(a);
  engine_check(phi == ResidueSubgroup(o, expected), "e_tau: conjugation image must be 1 + e_tau Z");
  return e;
}

} // namespace steinitz
