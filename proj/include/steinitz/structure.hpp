#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "steinitz/group.hpp"
#include "steinitz/group_build.hpp"
#include "steinitz/subgroups.hpp"

namespace steinitz {

// ---------------------------------------------------------------------------
// A'-groups

struct AprimeTree {
  enum class Kind { abelian, semidirect, direct };
  Kind kind = Kind::abelian;
  std::uint32_t order = 1;
  /// semidirect: normal abelian Hall subgroup H and its complement; direct: the two factors.
  std::vector<Subgroup> parts;
  /// semidirect: one subtree (the complement); direct: one per factor.
  std::vector<AprimeTree> children;
};

inline const char* to_string(AprimeTree::Kind k) {
  switch (k) {
  case AprimeTree::Kind::abelian: return "abelian";
  case AprimeTree::Kind::semidirect: return "semidirect";
  case AprimeTree::Kind::direct: return "direct";
  }
  return "?";
}

inline std::optional<AprimeTree> is_aprime_group(const FiniteGroup& g) {
  if (g.is_abelian()) return AprimeTree{AprimeTree::Kind::abelian, g.order(), {}, {}};
  const auto normals = normal_subgroups(g);
  for (auto& h : normals) {
    if (h.size() == 1 || h.size() == g.order()) continue;
    if (std::gcd(h.size(), g.order() / h.size()) != 1 || !subgroup_is_abelian(g, h)) continue;
    auto k = find_complement(g, h);
    if (!k) continue;
    if (auto sub = is_aprime_group(induced_group(g, *k).group))
      return AprimeTree{AprimeTree::Kind::semidirect, g.order(), {h, *k}, {std::move(*sub)}};
  }
  for (auto& a : normals) {
    if (a.size() == 1 || a.size() == g.order()) continue;
    for (auto& b : normals) {
      if (a.size() > b.size() || std::uint64_t(a.size()) * b.size() != g.order()) continue;
      if (a.size() == b.size() && !(a < b)) continue;
      if (intersect(a, b).size() != 1) continue;
      auto ta = is_aprime_group(induced_group(g, a).group);
      if (!ta) continue;
      auto tb = is_aprime_group(induced_group(g, b).group);
      if (!tb) continue;
      return AprimeTree{AprimeTree::Kind::direct, g.order(), {a, b}, {std::move(*ta), std::move(*tb)}};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// ell-groups of order ell^3 and ell^4

namespace detail {

inline std::pair<std::int64_t, int> ell_group_shape(const FiniteGroup& g, int min_n, int max_n) {
  auto [ell, n] = nt::prime_power(g.order());
  if (ell == 0 || ell == 2 || n < min_n || n > max_n)
    throw SpecError("group of order " + std::to_string(g.order()) + " is not of order ell^n, ell odd, n in [" +
                    std::to_string(min_n) + ", " + std::to_string(max_n) + "]");
  return {ell, n};
}

inline std::uint32_t nc_index(const FiniteGroup& g, Element tau) {
  auto [n, c] = normalizer_centralizer(g, tau);
  return n.size() / c.size();
}

} // namespace detail

/// A normal abelian subgroup of order ell^(n-1), n = 3 or 4.
inline Subgroup burnside_check(const FiniteGroup& g) {
  auto [ell, n] = detail::ell_group_shape(g, 3, 4);
  const auto target = static_cast<std::uint32_t>(nt::ipow(ell, n - 1));
  auto found = normal_abelian_subgroups(g, target);
  if (found.empty())
    throw EngineAssertion("no normal abelian subgroup of order " + std::to_string(target) + " in a group of order " +
                          std::to_string(g.order()));
  return found.front();
}

struct Ell4Classification {
  std::string kind;  ///< abelian, cyclic, exponent_l, modular, type1, type2, type3
  std::int64_t ell = 0;
  int n = 0;
  Element tau = 0;
  std::uint32_t tau_nc_index = 1;  ///< #(N_G(tau)/C_G(tau))
  std::optional<Subgroup> h;       ///< normal abelian, order ell^(n-1)
  /// exponent_l, type1: complement of h. modular, type2: complement of <tau>.
  std::optional<Subgroup> complement;
  std::optional<Element> rho;      ///< type2: generator of the complement of <tau>
  std::optional<Element> sigma1;   ///< type3: order ell in N_G(tau) \ <tau>
  std::optional<Element> sigma;    ///< type3: sigma1 = sigma tau^b with sigma in h
  std::int64_t a = 0, b = 0, c = 0;
  /// Other presentations that also fit (type1 / type2).
  std::vector<std::string> alternates;
};

namespace detail {

inline Element lowest_of_max_order(const FiniteGroup& g) {
  Element best = g.identity();
  for (Element x = 0; x < g.order(); ++x)
    if (g.element_order(x) > g.element_order(best)) best = x;
  return best;
}

/// Lowest-index abelian subgroup <s, x> of order `target` inside `within`.
inline std::optional<Subgroup> abelian_overgroup(const FiniteGroup& g, Element s, const Subgroup& within,
                                                 std::uint32_t target) {
  auto cs = cyclic_subgroup(g, s);
  for (auto x : within.members()) {
    if (cs.contains(x)) continue;
    auto h = closure(g, {s, x});
    if (h.size() == target && subgroup_is_abelian(g, h)) return h;
  }
  return std::nullopt;
}

inline std::optional<Element> cyclic_complement_generator(const FiniteGroup& g, const Subgroup& h) {
  const auto target = g.order() / h.size();
  for (Element x = 0; x < g.order(); ++x)
    if (g.element_order(x) == target && intersect(cyclic_subgroup(g, x), h).size() == 1) return x;
  return std::nullopt;
}

inline std::int64_t exponent_in(const FiniteGroup& g, Element tau, Element y) {
  Element p = g.identity();
  for (std::uint32_t k = 0; k < g.element_order(tau); ++k) {
    if (p == y) return k;
    p = g.mul(p, tau);
  }
  return -1;
}

inline void classify_exponent_l2(const FiniteGroup& g, Ell4Classification& r) {
  const std::int64_t l = r.ell;
  const auto l2 = static_cast<std::uint32_t>(l * l), l3 = static_cast<std::uint32_t>(l * l * l);
  Element s = g.identity();
  std::uint32_t best = 0;
  for (Element x = 0; x < g.order(); ++x)
    if (g.element_order(x) == l2) {
      auto idx = nc_index(g, x);
      if (idx > best) {
        best = idx;
        s = x;
      }
    }
  engine_check(best >= 1, "classify: an element of order ell^2 exists");
  auto [ns, cs] = normalizer_centralizer(g, s);
  if (cs.size() >= l3) {
    auto h = abelian_overgroup(g, s, cs, l3);
    engine_check(h.has_value(), "classify: abelian subgroup of order ell^3 in C_G(sigma)");
    r.h = *h;
    if (auto k = find_complement(g, *h)) {
      r.kind = "type1";
      r.tau = s;
      r.complement = *k;
    } else if (best == static_cast<std::uint32_t>(l)) {
      r.kind = "type2";
      r.tau = s;
      auto tau_sub = cyclic_subgroup(g, s);
      auto rho = cyclic_complement_generator(g, tau_sub);
      engine_check(rho.has_value(), "classify: type2 needs a cyclic complement of <tau>");
      r.rho = *rho;
      r.complement = cyclic_subgroup(g, *rho);
    } else {
      r.kind = "type3";
      Element t = g.identity();
      for (Element x = 0; x < g.order(); ++x)
        if (!h->contains(x)) {
          t = x;
          break;
        }
      engine_check(g.element_order(t) == l2, "classify: elements outside H have order ell^2");
      r.tau = t;
      auto [nt_, ct] = normalizer_centralizer(g, t);
      auto ht = abelian_overgroup(g, t, ct, l3);
      engine_check(ht.has_value(), "classify: abelian subgroup of order ell^3 in C_G(tau)");
      auto tsub = cyclic_subgroup(g, t);
      for (auto x : ht->members())
        if (!tsub.contains(x) && g.element_order(x) == l) {
          r.sigma1 = x;
          break;
        }
    }
  } else {
    r.kind = "type3";
    r.tau = s;
    r.h = burnside_check(g);
    auto tsub = cyclic_subgroup(g, s);
    for (auto x : ns.members())
      if (!tsub.contains(x) && g.element_order(x) == l && g.conj(x, s) != s) {
        r.sigma1 = x;
        break;
      }
  }
  r.tau_nc_index = nc_index(g, r.tau);
  if (r.kind == "type3") {
    engine_check(r.sigma1.has_value(), "classify: type3 needs sigma1");
    const Element s1 = *r.sigma1, t = r.tau;
    for (std::int64_t b = 0; b < l2; ++b) {
      auto cand = g.mul(s1, g.pow(t, -b));
      if (r.h->contains(cand)) {
        r.b = b;
        r.sigma = cand;
        break;
      }
    }
    engine_check(r.sigma.has_value(), "classify: sigma1 tau^-b lies in H for some b");
    const Element sg = *r.sigma;
    const auto e_conj = exponent_in(g, t, g.conj(sg, t));
    engine_check(e_conj >= 0 && (e_conj - 1) % l == 0, "classify: sigma tau sigma^-1 = tau^(1 + a ell)");
    r.a = nt::mod((e_conj - 1) / l, l);
    const auto e_pow = exponent_in(g, t, g.pow(sg, l));
    engine_check(e_pow >= 0 && e_pow % l == 0, "classify: sigma^ell = tau^(c ell)");
    r.c = nt::mod(e_pow / l, l);
  }
  // alternates
  auto tau_sub = cyclic_subgroup(g, r.tau);
  if (r.kind != "type1")
    for (auto& h : normal_abelian_subgroups(g, l3))
      if (h.contains(r.tau) && find_complement(g, h)) {
        r.alternates.push_back("type1");
        break;
      }
  if (r.kind != "type2" && is_normal(g, tau_sub) && cyclic_complement_generator(g, tau_sub))
    r.alternates.push_back("type2");
}

} // namespace detail

inline Ell4Classification classify_ell4(const FiniteGroup& g) {
  auto [ell, n] = detail::ell_group_shape(g, 3, 4);
  Ell4Classification r;
  r.ell = ell;
  r.n = n;
  const auto ex = g.exponent();
  if (ex == g.order()) {
    r.kind = "cyclic";
    r.tau = detail::lowest_of_max_order(g);
  } else if (g.is_abelian()) {
    r.kind = "abelian";
    r.tau = detail::lowest_of_max_order(g);
  } else if (ex == ell) {
    r.kind = "exponent_l";
    r.h = burnside_check(g);
    auto k = find_complement(g, *r.h);
    engine_check(k.has_value(), "classify: exponent ell sequence splits");
    r.complement = *k;
    r.tau = detail::lowest_of_max_order(g);
  } else if (ex == nt::ipow(ell, n - 1)) {
    r.kind = "modular";
    for (Element x = 0; x < g.order(); ++x) {
      if (g.element_order(x) != ex) continue;
      auto sub = cyclic_subgroup(g, x);
      if (auto k = find_complement(g, sub)) {
        r.tau = x;
        r.h = sub;
        r.complement = *k;
        break;
      }
    }
    engine_check(r.complement.has_value(), "classify: <tau> of index ell has a complement");
  } else {
    detail::classify_exponent_l2(g, r);
  }
  if (r.tau != g.identity()) r.tau_nc_index = detail::nc_index(g, r.tau);
  return r;
}

/// Re-checks every witness of a classification by enumeration; returns the first violated condition.
inline std::optional<std::string> verify_ell4_witnesses(const FiniteGroup& g, const Ell4Classification& r) {
  const std::int64_t l = r.ell;
  const auto l2 = static_cast<std::uint32_t>(l * l);
  const auto order_hn1 = static_cast<std::uint32_t>(nt::ipow(l, r.n - 1));
  auto fail = [](std::string s) { return std::optional<std::string>(std::move(s)); };
  if (r.kind == "cyclic") return g.exponent() == g.order() ? std::nullopt : fail("not cyclic");
  if (r.kind == "abelian") return g.is_abelian() ? std::nullopt : fail("not abelian");
  if (!r.h) return fail("missing H");
  const auto& h = *r.h;
  if (!is_normal(g, h) || !subgroup_is_abelian(g, h) || h.size() != order_hn1) return fail("H is not normal abelian of order ell^(n-1)");
  auto is_complement = [&](const Subgroup& a, const Subgroup& k) {
    return is_subgroup(g, k) && intersect(a, k).size() == 1 && std::uint64_t(a.size()) * k.size() == g.order();
  };
  if (r.kind == "exponent_l") {
    if (g.exponent() != l) return fail("exponent is not ell");
    if (!r.complement || !is_complement(h, *r.complement)) return fail("no complement of H");
    return std::nullopt;
  }
  if (r.kind == "modular") {
    if (g.exponent() != order_hn1) return fail("exponent is not ell^(n-1)");
    if (g.element_order(r.tau) != order_hn1 || !(cyclic_subgroup(g, r.tau) == h)) return fail("H is not <tau>");
    if (!r.complement || r.complement->size() != l || !is_complement(h, *r.complement)) return fail("no complement of <tau>");
    return std::nullopt;
  }
  if (g.exponent() != l2 || r.n != 4) return fail("not of order ell^4 and exponent ell^2");
  if (g.element_order(r.tau) != l2) return fail("tau does not have order ell^2");
  std::uint32_t best = 0;
  for (Element x = 0; x < g.order(); ++x)
    if (g.element_order(x) == l2) best = std::max(best, detail::nc_index(g, x));
  if (detail::nc_index(g, r.tau) != best) return fail("tau does not maximize #(N/C)");
  if (r.kind == "type1") {
    if (!h.contains(r.tau)) return fail("tau not in H");
    if (!r.complement || r.complement->size() != l || !is_complement(h, *r.complement)) return fail("no complement of H");
    return std::nullopt;
  }
  if (r.kind == "type2") {
    auto ts = cyclic_subgroup(g, r.tau);
    if (!is_normal(g, ts)) return fail("<tau> is not normal");
    if (!r.rho || g.element_order(*r.rho) != l2 || !r.complement || !(*r.complement == cyclic_subgroup(g, *r.rho)) ||
        !is_complement(ts, *r.complement))
      return fail("no cyclic complement of order ell^2 for <tau>");
    return std::nullopt;
  }
  if (r.kind == "type3") {
    if (h.contains(r.tau)) return fail("tau lies in H");
    if (!r.sigma1 || !r.sigma) return fail("missing sigma1 / sigma");
    const Element s1 = *r.sigma1;
    auto ts = cyclic_subgroup(g, r.tau);
    auto [nt_, ct] = normalizer_centralizer(g, r.tau);
    if (g.element_order(s1) != l || ts.contains(s1) || !nt_.contains(s1)) return fail("sigma1 is not of order ell in N(tau) \\ <tau>");
    const bool trivial_action = g.conj(s1, r.tau) == r.tau;
    if (trivial_action != (nt_ == ct)) return fail("sigma1 action does not match N(tau) = C(tau)");
    if (!h.contains(*r.sigma) || *r.sigma == g.identity() || g.mul(*r.sigma, g.pow(r.tau, r.b)) != s1)
      return fail("sigma1 != sigma tau^b with sigma in H*");
    if (g.conj(*r.sigma, r.tau) != g.pow(r.tau, 1 + r.a * l)) return fail("sigma tau sigma^-1 != tau^(1 + a ell)");
    if (g.pow(*r.sigma, l) != g.pow(r.tau, r.c * l)) return fail("sigma^ell != tau^(c ell)");
    return std::nullopt;
  }
  return fail("unknown kind " + r.kind);
}

// ---------------------------------------------------------------------------
// Projections for the third type

/// H x| tilde-G built from a type3 classification, with the maps pi_j onto G.
struct Type3Lift {
  FiniteGroup tilde;               ///< H x| tilde-calG, order ell^6
  InducedGroup h;                  ///< H as a standalone group, embedded in G
  Element tilde_tau = 0;           ///< in tilde
  Element tilde_sigma = 0;         ///< in tilde
  int proj_case = 1;               ///< 1: every h tau has order ell^2; 2: some h0 tau has order ell
  Element h0 = 0;                  ///< case 2, in G
  std::vector<GroupHom> pis;       ///< case 1: pi_0 only; case 2: pi_j for j = 0..ell-1

  /// h * tilde_tau in tilde, h given in G.
  Element h_tilde_tau(Element h_in_g) const;
};

inline Element Type3Lift::h_tilde_tau(Element h_in_g) const {
  const auto& emb = h.embedding;
  auto it = std::find(emb.begin(), emb.end(), h_in_g);
  if (it == emb.end()) throw SpecError("type3 projection: element is not in H");
  const auto local = static_cast<Element>(it - emb.begin());
  return tilde.mul(local, tilde_tau);
}

inline Type3Lift type3_lift(const FiniteGroup& g, const Ell4Classification& cls, std::uint32_t cap = kDefaultOrderCap) {
  if (cls.kind != "type3" || !cls.h || !cls.sigma) throw SpecError("type3_lift: classification is not of type3");
  const std::int64_t l = cls.ell;
  const Element tau = cls.tau, sigma = *cls.sigma;
  Type3Lift lift;
  lift.h = induced_group(g, *cls.h);
  const auto& hg = lift.h.group;
  const auto nh = hg.order();
  auto small = two_generator_ell_group(l, cls.a, cls.c, cap);
  std::vector<Element> local(g.order(), nh);
  for (Element i = 0; i < nh; ++i) local[lift.h.embedding[i]] = i;
  std::vector<Element> conj_tau(nh), ident(nh);
  for (Element i = 0; i < nh; ++i) {
    conj_tau[i] = local[g.conj(tau, lift.h.embedding[i])];
    ident[i] = i;
  }
  std::vector<std::vector<Element>> tables;
  for (auto& ne : small.generators()) tables.push_back(ne.name == "tau" ? conj_tau : ident);
  lift.tilde = semidirect_product(hg, small, action_from_generator_tables(hg, small, tables), cap);
  lift.tilde_tau = hg.identity() + nh * *small.generator("tau");
  lift.tilde_sigma = hg.identity() + nh * *small.generator("sigma");
  engine_check(small.identity() == 0, "type3_lift: H occupies the first |H| indices of the product");

  std::vector<Element> gens, hgen_images;
  for (auto x : generating_set(hg, whole_group(hg))) {
    gens.push_back(x);
    hgen_images.push_back(lift.h.embedding[x]);
  }
  gens.push_back(lift.tilde_tau);
  gens.push_back(lift.tilde_sigma);

  lift.proj_case = 1;
  for (auto x : lift.h.embedding)
    if (g.element_order(g.mul(x, tau)) == static_cast<std::uint32_t>(l)) {
      lift.proj_case = 2;
      lift.h0 = x;
      break;
    }
  const std::int64_t jmax = lift.proj_case == 1 ? 1 : l;
  for (std::int64_t j = 0; j < jmax; ++j) {
    auto images = hgen_images;
    images.push_back(lift.proj_case == 1 ? tau : g.mul(g.pow(lift.h0, j), tau));
    images.push_back(g.pow(sigma, 1 - j));
    auto map = extend_on_generators(lift.tilde, g, gens, images);
    if (!map) throw EngineAssertion("type3_lift: pi_" + std::to_string(j) + " is not a homomorphism");
    lift.pis.emplace_back(lift.tilde, g, std::move(*map));
  }
  return lift;
}

struct Type3Projection {
  std::int64_t j = 0;
  std::uint32_t valid_choices = 0;  ///< number of j giving order ell^2 images
  const GroupHom* pi = nullptr;
};

/// A projection pi_j with pi(h1 tilde_tau), pi(h2 tilde_tau) of order ell^2; h1, h2 given in G.
inline Type3Projection type3_projection(const FiniteGroup& g, const Type3Lift& lift, std::int64_t ell, Element h1,
                                        Element h2) {
  const auto l2 = static_cast<std::uint32_t>(ell * ell);
  const Element x1 = lift.h_tilde_tau(h1), x2 = lift.h_tilde_tau(h2);
  Type3Projection out;
  bool found = false;
  for (std::size_t j = 0; j < lift.pis.size(); ++j) {
    const auto& pi = lift.pis[j];
    if (g.element_order(pi(x1)) == l2 && g.element_order(pi(x2)) == l2) {
      ++out.valid_choices;
      if (!found) {
        found = true;
        out.j = static_cast<std::int64_t>(j);
        out.pi = &pi;
      }
    }
  }
  if (!found) throw EngineAssertion("type3_projection: no valid j");
  return out;
}

/// Surjective, injective on H, and the two images of order ell^2.
inline std::optional<std::string> verify_type3_projection(const FiniteGroup& g, const Type3Lift& lift,
                                                          std::int64_t ell, Element h1, Element h2,
                                                          const Type3Projection& p) {
  if (!p.pi) return "no projection";
  const auto& pi = *p.pi;
  if (pi.image().size() != g.order()) return "not surjective";
  std::vector<char> hit(g.order(), 0);
  for (Element i = 0; i < lift.h.group.order(); ++i) {
    auto y = pi(i);
    if (y != lift.h.embedding[i]) return "pi does not restrict to the identity on H";
    if (hit[y]++) return "kernel meets H";
  }
  const auto l2 = static_cast<std::uint32_t>(ell * ell);
  if (g.element_order(pi(lift.h_tilde_tau(h1))) != l2 || g.element_order(pi(lift.h_tilde_tau(h2))) != l2)
    return "image of h tilde-tau does not have order ell^2";
  return std::nullopt;
}

/// Convenience form: builds the lift and returns a copy of the chosen projection.
inline GroupHom type3_projection(const FiniteGroup& g, const Ell4Classification& cls, Element h1, Element h2) {
  auto lift = type3_lift(g, cls);
  auto p = type3_projection(g, lift, cls.ell, h1, h2);
  return *p.pi;
}

struct Type3SteinitzIdentity {
  std::int64_t lhs = 0;  ///< B(ell^2-1)ell^2 + A (ell-1)/2 ell^3
  std::int64_t rhs = 0;  ///< (ell-1)/2 ell^2 (2(ell+1)B + ell A)
  bool equal = false;
};

inline Type3SteinitzIdentity type3_steinitz_identity(std::int64_t ell, std::int64_t a, std::int64_t b) {
  if (!nt::is_prime(ell) || ell == 2) throw SpecError("type3_steinitz_identity: ell must be an odd prime");
  Type3SteinitzIdentity r;
  const std::int64_t l2 = ell * ell;
  r.lhs = b * (l2 - 1) * l2 + a * ((ell - 1) / 2) * l2 * ell;
  r.rhs = (ell - 1) / 2 * l2 * (2 * (ell + 1) * b + ell * a);
  r.equal = r.lhs == r.rhs;
  return r;
}

} // namespace steinitz
