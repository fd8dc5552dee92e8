#pragma once

#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "steinitz/certificate.hpp"
#include "steinitz/fixtures.hpp"

namespace steinitz {

inline constexpr std::size_t kMaxRecordedFailures = 10;

struct LemmaTally {
  std::string anchor;
  std::int64_t checked = 0;
  std::int64_t failed = 0;
  std::vector<std::string> failures;  ///< the first kMaxRecordedFailures

  void record(bool ok, const std::function<std::string()>& what) {
    ++checked;
    if (ok) return;
    ++failed;
    if (failures.size() < kMaxRecordedFailures) failures.push_back(what());
  }
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::map<std::string, LemmaTally> lemmas;
  std::vector<std::string> notes;

  LemmaTally& lemma(const std::string& anchor) {
    auto& t = lemmas[anchor];
    t.anchor = anchor;
    return t;
  }
  bool passed() const {
    for (auto& [_, t] : lemmas)
      if (t.failed > 0 || t.checked == 0) return false;
    return true;
  }
};

/// Fixtures materialized once: groups in manifest order, the suite fields at stable addresses.
struct Corpus {
  struct NamedGroup {
    std::string name;
    const GroupFixture* fixture;
    FiniteGroup group;
  };
  struct NamedField {
    std::string name;
    FieldSpec field;
  };
  const Fixtures* fixtures = nullptr;
  std::vector<NamedGroup> groups;
  std::deque<NamedField> fields;

  explicit Corpus(const Fixtures& fx) : fixtures(&fx) {
    for (auto& g : fx.groups) groups.push_back({g.name, &g, build_group(g.spec)});
    for (auto* f : fx.suite_fields()) fields.push_back({f->name, parse_field_spec(f->spec)});
  }
};

namespace gen {

/// At most three invariant factors, each at most 36.
inline FiniteAbelianGroup ambient(std::mt19937_64& rng) {
  const int rank = std::uniform_int_distribution<int>(1, 3)(rng);
  std::vector<std::int64_t> d{std::uniform_int_distribution<std::int64_t>(2, 36)(rng)};
  while (static_cast<int>(d.size()) < rank && d.back() * 2 <= 36)
    d.push_back(d.back() * std::uniform_int_distribution<std::int64_t>(1, 36 / d.back())(rng));
  return FiniteAbelianGroup(d);
}

inline IdealClass element(const FiniteAbelianGroup& a, std::mt19937_64& rng) {
  IdealClass v;
  for (auto d : a.divisors()) v.push_back(std::uniform_int_distribution<std::int64_t>(0, d - 1)(rng));
  return v;
}

inline ClassSubgroup subgroup(const FiniteAbelianGroup& a, std::mt19937_64& rng) {
  std::vector<IdealClass> gens;
  const int n = std::uniform_int_distribution<int>(0, 3)(rng);
  for (int i = 0; i < n; ++i) gens.push_back(element(a, rng));
  return ClassSubgroup(a, gens);
}

/// A random subgroup of b, from random combinations of its generators.
inline ClassSubgroup subgroup_of(const ClassSubgroup& b, std::mt19937_64& rng) {
  const auto& amb = b.ambient();
  const auto bg = b.generators();
  std::vector<IdealClass> gens;
  const int n = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int i = 0; i < n; ++i) {
    auto x = amb.zero();
    for (auto& g : bg) x = amb.add(x, amb.scale(g, std::uniform_int_distribution<std::int64_t>(0, 36)(rng)));
    gens.push_back(x);
  }
  return ClassSubgroup(amb, gens);
}

} // namespace gen

namespace suites {

inline std::string class_to_string(const IdealClass& x) {
  std::string s = "[";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return s + "]";
}

inline std::string where(const std::string& field, const std::string& group) { return field + "/" + group; }

inline bool is_odd_prime_power_shape(const FiniteGroup& g, int min_n, int max_n) {
  auto [ell, n] = nt::prime_power(g.order());
  return ell > 2 && n >= min_n && n <= max_n;
}

inline void efield_lemmas_for(const FieldSpec& k, const std::string& at, const FiniteGroup& g, SuiteReport& r) {
  std::vector<EFieldDescriptor> e(g.order());
  for (Element x = 0; x < g.order(); ++x)
    if (x != g.identity()) e[x] = e_field(k, g, x);

  auto& incl = r.lemma("efield_power_inclusion");
  auto& conj = r.lemma("efield_conjugation");
  auto& gens = r.lemma("efield_generator_independence");
  auto& semi = r.lemma("efield_semidirect_restriction");
  for (Element s = 0; s < g.order(); ++s) {
    if (s == g.identity()) continue;
    const std::uint32_t o = g.element_order(s);
    for (std::uint32_t n = 2; n < o; ++n) {
      const auto y = g.pow(s, n);
      const auto c = e_field_compare(e[y], e[s], k);
      incl.record(c == FieldComparison::equal || c == FieldComparison::first_smaller, [&] {
        return at + ": E(" + g.label(s) + "^" + std::to_string(n) + ") is not contained in E(" + g.label(s) + ")";
      });
      if (std::gcd(n, o) == 1)
        gens.record(e[y] == e[s], [&] { return at + ": generators of <" + g.label(s) + "> give different E"; });
    }
    for (Element t = 0; t < g.order(); ++t)
      conj.record(e[g.conj(t, s)] == e[s], [&] {
        return at + ": E(" + g.label(s) + ") changes under conjugation by " + g.label(t);
      });
  }

  for (auto& n : normal_subgroups(g)) {
    if (n.size() == 1 || n.size() == g.order()) continue;
    auto comp = find_complement(g, n);
    if (!comp) continue;
    auto sub = induced_group(g, *comp);
    for (Element x = 0; x < sub.group.order(); ++x) {
      if (x == sub.group.identity()) continue;
      const auto s = sub.to_parent(x);
      semi.record(e_field(k, sub.group, x) == e[s], [&] {
        return at + ": E(" + g.label(s) + ") differs between G and a complement of order " +
               std::to_string(comp->size());
      });
    }
  }
}

} // namespace suites

/// E-field calculus on every fixture group and suite field, plus tower consistency of the Galois data.
inline SuiteReport suite_efields(const Corpus& c) {
  SuiteReport r;
  r.suite = "efields";
  for (auto& f : c.fields) {
    auto& tower = r.lemma("gal_tower_consistency");
    for (std::int64_t m = 1; m <= 60; ++m) {
      const auto t = f.field.gal_subgroup(m);
      for (auto d : nt::divisors(m))
        tower.record(t.reduce(d) == f.field.gal_subgroup(d), [&] {
          return f.name + ": T_" + std::to_string(m) + " does not reduce onto T_" + std::to_string(d);
        });
    }
    for (auto& g : c.groups)
      if (g.group.order() <= 625) suites::efield_lemmas_for(f.field, suites::where(f.name, g.name), g.group, r);
  }
  return r;
}

/// Half-integer power identities on seeded random subgroups, plus the order-2 instance where (A^2)^(1/2) != A.
inline SuiteReport suite_powers(std::uint64_t seed, int instances = 500) {
  SuiteReport r;
  r.suite = "powers";
  r.seed = seed;
  std::mt19937_64 rng(seed);
  auto& incl = r.lemma("half_power_divisor_inclusion");
  auto& gcd = r.lemma("half_power_gcd_join");
  for (int i = 0; i < instances; ++i) {
    const auto amb = gen::ambient(rng);
    const auto b = gen::subgroup(amb, rng);
    const auto a = gen::subgroup_of(b, rng);
    const auto m = std::uniform_int_distribution<std::int64_t>(1, 24)(rng);
    const auto ds = nt::divisors(m);
    const auto d = ds[std::uniform_int_distribution<std::size_t>(0, ds.size() - 1)(rng)];
    incl.record(power_subgroup(a, HalfInteger::from_twice(d), b).includes(power_subgroup(a, HalfInteger::from_twice(m), b)),
                [&] {
                  return "A=" + a.to_string() + " B=" + b.to_string() + " m=" + std::to_string(m) +
                         " d=" + std::to_string(d);
                });
  }
  for (int i = 0; i < instances; ++i) {
    const auto amb = gen::ambient(rng);
    const auto b = gen::subgroup(amb, rng);
    const auto a = gen::subgroup_of(b, rng);
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<std::int64_t> ms;
    std::int64_t d = 0;
    auto joined = ClassSubgroup::trivial(amb);
    for (int j = 0; j < n; ++j) {
      ms.push_back(std::uniform_int_distribution<std::int64_t>(1, 24)(rng));
      d = std::gcd(d, ms.back());
      joined = joined.join(power_subgroup(a, HalfInteger::from_twice(ms.back()), b));
    }
    gcd.record(joined == power_subgroup(a, HalfInteger::from_twice(d), b), [&] {
      std::string s = "A=" + a.to_string() + " B=" + b.to_string() + " m=";
      for (auto x : ms) s += std::to_string(x) + ",";
      return s;
    });
  }
  const FiniteAbelianGroup z2({2});
  const auto a = ClassSubgroup::trivial(z2);
  const auto full = ClassSubgroup::full(z2);
  const auto back = power_subgroup(power_subgroup(a, HalfInteger::integer(2), full), HalfInteger::from_twice(1), full);
  r.lemma("half_power_not_inverse_of_square").record(back.order() == 2 && !(back == a), [&] {
    return "(A^2)^(1/2) = " + back.to_string() + " for trivial A in Z/2";
  });
  return r;
}

/// W reverses inclusion of E fields, and W(k,m)^n lies in W(k,mn).
inline SuiteReport suite_w_mono(const Corpus& c, std::int64_t bound = kDefaultPrimeBound) {
  SuiteReport r;
  r.suite = "w_mono";
  auto& mono = r.lemma("w_reverses_inclusion");
  auto& cyc = r.lemma("w_cyclotomic_power");
  for (auto& f : c.fields) {
    WCache cache(f.field, bound);
    std::vector<EFieldDescriptor> ds;
    for (std::int64_t m : {2, 3, 4, 5, 7, 8, 9, 12, 15, 16}) {
      const auto t = f.field.gal_subgroup(m);
      std::set<std::vector<std::int64_t>> seen;
      for (auto a : t.members())
        for (auto b : t.members()) {
          auto s = ResidueSubgroup::generated(m, {a, b});
          if (seen.insert(s.members()).second) ds.push_back({m, s});
        }
    }
    for (auto& e1 : ds)
      for (auto& e2 : ds) {
        if (!e_field_contained(e1, e2, f.field)) continue;
        mono.record(cache.get(e1).w.includes(cache.get(e2).w), [&] {
          return f.name + ": E" + e1.to_string() + " <= E" + e2.to_string() + " but W does not reverse";
        });
      }
    for (auto [m, n] : std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}, {2, 4}, {3, 3}, {3, 9}, {5, 5}, {6, 2}, {6, 3}, {6, 6}})
      cyc.record(check_26acta(f.field, m, n, bound), [&, m = m, n = n] {
        return f.name + ": W(k," + std::to_string(m) + ")^" + std::to_string(n) + " not in W(k," +
               std::to_string(m * n) + ")";
      });
  }
  return r;
}

/// Classification of odd groups of order ell^3, ell^4 with witnesses, E_tau = k(zeta_{e_tau}),
/// and W(k,G) = W(k,E_tau)^((ell-1)/2 ell^2) in exponent ell^2.
inline SuiteReport suite_ell4(const Corpus& c, std::int64_t bound = kDefaultPrimeBound) {
  SuiteReport r;
  r.suite = "ell4";
  auto& wit = r.lemma("classification_witnesses");
  auto& kind = r.lemma("classification_expected_kind");
  auto& split = r.lemma("exponent_l_split");
  auto& etau = r.lemma("ell_group_e_field_cyclotomic");
  auto& closed = r.lemma("exponent_l2_closed_form");
  std::deque<WCache> caches;
  for (auto& f : c.fields) caches.emplace_back(f.field, bound);
  for (auto& g : c.groups) {
    const auto& G = g.group;
    if (!suites::is_odd_prime_power_shape(G, 3, 4)) continue;
    const auto cls = classify_ell4(G);
    const auto bad = verify_ell4_witnesses(G, cls);
    wit.record(!bad, [&] { return g.name + ": " + *bad; });
    if (g.fixture->expected_kind)
      kind.record(cls.kind == *g.fixture->expected_kind,
                  [&] { return g.name + ": classified " + cls.kind + ", manifest says " + *g.fixture->expected_kind; });
    const auto [ell, n] = nt::prime_power(G.order());
    if (G.exponent() == ell) {
      const auto h = cls.h ? *cls.h : burnside_check(G);
      const auto comp = cls.complement ? cls.complement : find_complement(G, h);
      bool ok = comp && h.size() * ell == G.order() && comp->size() == ell && is_normal(G, h) &&
                subgroup_is_abelian(G, h) && intersect(h, *comp).size() == 1;
      split.record(ok, [&] { return g.name + ": no split C(ell)^(n-1) -> G -> C(ell)"; });
    }
    for (std::size_t i = 0; i < c.fields.size(); ++i) {
      const auto& k = c.fields[i].field;
      const auto at = suites::where(c.fields[i].name, g.name);
      for (Element t = 0; t < G.order(); ++t) {
        if (t == G.identity()) continue;
        const auto e = e_tau_ell_group(G, t);
        etau.record(e_field_compare(e_field(k, G, t), cyclotomic_descriptor(e), k) == FieldComparison::equal,
                    [&] { return at + ": E(" + G.label(t) + ") != k(zeta_" + std::to_string(e) + ")"; });
      }
      if (n == 4 && G.exponent() == ell * ell) {
        const auto expected = exponent_l2_closed_form(k, G, cls, caches[i]);
        const auto w = cal_w(k, G, caches[i]).subgroup;
        closed.record(w == expected, [&] { return at + ": W(k,G) = " + w.to_string() + ", closed form " + expected.to_string(); });
      }
    }
  }
  return r;
}

inline std::optional<std::string> verify_aprime_tree(const FiniteGroup& g, const AprimeTree& t) {
  switch (t.kind) {
  case AprimeTree::Kind::abelian:
    return g.is_abelian() ? std::nullopt : std::optional<std::string>("abelian leaf over a nonabelian group");
  case AprimeTree::Kind::semidirect: {
    const auto& h = t.parts[0];
    const auto& k = t.parts[1];
    if (!is_normal(g, h) || !subgroup_is_abelian(g, h)) return "semidirect node: H is not normal abelian";
    if (std::gcd(h.size(), k.size()) != 1) return "semidirect node: orders are not coprime";
    if (h.size() * k.size() != g.order() || intersect(h, k).size() != 1) return "semidirect node: not a complement";
    return verify_aprime_tree(induced_group(g, k).group, t.children[0]);
  }
  case AprimeTree::Kind::direct: {
    const auto& a = t.parts[0];
    const auto& b = t.parts[1];
    if (!is_normal(g, a) || !is_normal(g, b) || intersect(a, b).size() != 1 || a.size() * b.size() != g.order())
      return "direct node: not an internal direct product";
    if (auto e = verify_aprime_tree(induced_group(g, a).group, t.children[0])) return e;
    return verify_aprime_tree(induced_group(g, b).group, t.children[1]);
  }
  }
  return "unknown node";
}

/// Normal abelian subgroups of index ell in groups of order ell^3, ell^4; A'-recognition.
inline SuiteReport suite_burnside(const Corpus& c) {
  SuiteReport r;
  r.suite = "burnside";
  auto& bs = r.lemma("burnside_normal_abelian_subgroup");
  auto& lg = r.lemma("aprime_excludes_nonabelian_ell_groups");
  auto& tree = r.lemma("aprime_tree_witnesses");
  for (auto& g : c.groups) {
    const auto& G = g.group;
    if (suites::is_odd_prime_power_shape(G, 3, 4)) {
      auto [ell, n] = nt::prime_power(G.order());
      std::optional<Subgroup> h;
      try {
        h = burnside_check(G);
      } catch (const EngineAssertion&) {
      }
      bs.record(h && is_normal(G, *h) && subgroup_is_abelian(G, *h) && h->size() * ell == G.order(),
                [&] { return g.name + ": no normal abelian subgroup of index ell"; });
    }
    const auto t = is_aprime_group(G);
    if (nt::prime_power(G.order()).first != 0 && !G.is_abelian())
      lg.record(!t, [&] { return g.name + ": nonabelian prime-power group recognized as A'"; });
    if (t) {
      const auto bad = verify_aprime_tree(G, *t);
      tree.record(!bad, [&] { return g.name + ": " + *bad; });
    }
  }
  return r;
}

/// Lifted projections for every type3 fixture and every (h1, h2) in H^2, plus the exponent identities.
inline SuiteReport suite_type3(const Corpus& c) {
  SuiteReport r;
  r.suite = "type3";
  auto& proj = r.lemma("type3_projection");
  auto& count = r.lemma("type3_valid_choice_count");
  auto& ident = r.lemma("type3_exponent_identity");
  auto& coll = r.lemma("type3_exponent_collapse");
  for (auto& g : c.groups) {
    const auto& G = g.group;
    if (!suites::is_odd_prime_power_shape(G, 4, 4) || G.exponent() != nt::ipow(nt::prime_power(G.order()).first, 2))
      continue;
    const auto cls = classify_ell4(G);
    if (cls.kind != "type3") continue;
    const auto lift = type3_lift(G, cls);
    for (auto h1 : cls.h->members())
      for (auto h2 : cls.h->members()) {
        std::optional<std::string> bad;
        try {
          const auto p = type3_projection(G, lift, cls.ell, h1, h2);
          bad = verify_type3_projection(G, lift, cls.ell, h1, h2, p);
          if (lift.proj_case == 2)
            count.record(p.valid_choices >= cls.ell - 2, [&] {
              return g.name + ": only " + std::to_string(p.valid_choices) + " valid j for (" + G.label(h1) + "," +
                     G.label(h2) + ")";
            });
        } catch (const EngineAssertion& e) {
          bad = e.what();
        }
        proj.record(!bad, [&] { return g.name + " (" + G.label(h1) + "," + G.label(h2) + "): " + *bad; });
      }
  }
  for (std::int64_t ell : {3, 5, 7, 11})
    for (std::int64_t a = 0; a <= 12; ++a)
      for (std::int64_t b = 0; b <= 12; ++b)
        ident.record(type3_steinitz_identity(ell, a, b).equal, [&] {
          return "ell=" + std::to_string(ell) + " A=" + std::to_string(a) + " B=" + std::to_string(b);
        });
  for (std::int64_t ell : {3, 5, 7})
    for (std::int64_t o = 1; o <= 60; ++o)
      coll.record(type3_exponent_collapses(ell, o),
                  [&] { return "ell=" + std::to_string(ell) + " o(x)=" + std::to_string(o); });
  return r;
}

/// Agreement of the two product forms, representative selection, membership of Steinitz classes
/// built from admissible ramification, and the congruence solver.
inline SuiteReport suite_calw(const Corpus& c, std::uint64_t seed, std::int64_t bound = kDefaultPrimeBound,
                              int profiles_per_field = 200) {
  SuiteReport r;
  r.suite = "calw";
  r.seed = seed;
  std::mt19937_64 rng(seed);
  auto& forms = r.lemma("product_forms_agree");
  auto& reps = r.lemma("representative_selection");
  auto& mem = r.lemma("ramification_class_membership");
  auto& solver = r.lemma("exponent_solver_congruence");
  for (auto& f : c.fields) {
    WCache cache(f.field, bound);
    std::vector<std::pair<const Corpus::NamedGroup*, CalWReport>> odd;
    for (auto& g : c.groups) {
      const auto at = suites::where(f.name, g.name);
      for (int i : {0, 1})
        forms.record(equivprimisep_check(f.field, g.group, i, cache),
                     [&] { return at + ": product forms differ for i=" + std::to_string(i); });
      auto rep = cal_w(f.field, g.group, cache);
      auto every = cal_w(f.field, g.group, cache, TauSelection::every_element);
      reps.record(rep.subgroup == every.subgroup, [&] { return at + ": representatives change W(k,G)"; });
      if (g.group.order() % 2 == 1) odd.emplace_back(&g, std::move(rep));
    }
    for (int p = 0; p < profiles_per_field && !odd.empty(); ++p) {
      const auto& [ng, calw] = odd[std::uniform_int_distribution<std::size_t>(0, odd.size() - 1)(rng)];
      const auto& G = ng->group;
      std::vector<RamificationDatum> data;
      const int n = std::uniform_int_distribution<int>(0, 4)(rng);
      for (int j = 0; j < n; ++j) {
        Element t;
        do {
          t = std::uniform_int_distribution<Element>(0, G.order() - 1)(rng);
        } while (t == G.identity());
        const auto w = cache.get(e_field(f.field, G, t)).w.elements();
        const auto x = w[std::uniform_int_distribution<std::size_t>(0, w.size() - 1)(rng)];
        if (!check_ram_admissible(f.field, G, t, x, cache)) throw EngineAssertion("sampled class is not admissible");
        data.push_back({x, t, G.element_order(t)});
      }
      const auto st = steinitz_from_ramification(f.field, G, data);
      mem.record(calw.subgroup.contains(st), [&] {
        return suites::where(f.name, ng->name) + ": Steinitz class " + suites::class_to_string(st) + " outside W(k,G)";
      });
    }
  }
  for (int i = 0; i < 500; ++i) {
    const auto n = std::uniform_int_distribution<std::int64_t>(1, 60)(rng);
    const auto u = std::uniform_int_distribution<std::int64_t>(0, 60)(rng);
    const auto v = std::uniform_int_distribution<std::int64_t>(0, 60)(rng);
    const auto w = std::uniform_int_distribution<std::int64_t>(0, 60)(rng);
    const bool solvable = w % std::gcd(std::gcd(u, v), n) == 0;
    bool ok;
    try {
      auto [a, b] = exponent_solver(u, v, w, n);
      ok = solvable && a > 1 && b > 1 && nt::mod(u * a + v * b - w, n) == 0;
    } catch (const SpecError&) {
      ok = !solvable;
    }
    solver.record(ok, [&] {
      return "u=" + std::to_string(u) + " v=" + std::to_string(v) + " w=" + std::to_string(w) + " n=" + std::to_string(n);
    });
  }
  return r;
}

/// Upper bound W(k,G) against the route-certified lower bound on every odd fixture.
inline SuiteReport suite_certificate(const Corpus& c, std::int64_t bound = kDefaultPrimeBound) {
  SuiteReport r;
  r.suite = "certificate";
  auto& eq = r.lemma("certificate_bounds_equal");
  for (auto& f : c.fields) {
    WCache cache(f.field, bound);
    for (auto& g : c.groups) {
      if (g.group.order() % 2 == 0) continue;
      const auto at = suites::where(f.name, g.name);
      const auto cert = very_good_certificate(f.field, g.group, cache);
      if (cert.route == "unclassified") {
        r.notes.push_back(at + ": no route applies");
        continue;
      }
      eq.record(cert.equal, [&] {
        return at + " (" + cert.route + "): upper " + cert.upper.subgroup.to_string() + ", lower " + cert.lower->to_string();
      });
    }
  }
  return r;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"efields", "powers", "w_mono", "ell4", "burnside", "type3", "calw", "certificate"};
  return names;
}

inline SuiteReport run_suite(const std::string& name, const Corpus& c, std::uint64_t seed,
                             std::int64_t bound = kDefaultPrimeBound) {
  if (name == "efields") return suite_efields(c);
  if (name == "powers") return suite_powers(seed);
  if (name == "w_mono") return suite_w_mono(c, bound);
  if (name == "ell4") return suite_ell4(c, bound);
  if (name == "burnside") return suite_burnside(c);
  if (name == "type3") return suite_type3(c);
  if (name == "calw") return suite_calw(c, seed, bound);
  if (name == "certificate") return suite_certificate(c, bound);
  throw SpecError("unknown suite '" + name + "'");
}

} // namespace steinitz
