#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "steinitz/group.hpp"

namespace steinitz {

/// A subgroup K with K ∩ H = 1 and |H||K| = |G|, searched depth-first by adding
/// the lowest-index element outside H*K and closing. Returns the first one found.
inline std::optional<Subgroup> find_complement(const FiniteGroup& g, const Subgroup& h) {
  if (!is_normal(g, h)) throw SpecError("find_complement: subgroup is not normal");
  const std::uint32_t target = g.order() / h.size();
  std::set<std::vector<char>> visited;
  std::optional<Subgroup> found;

  auto search = [&](auto&& self, const Subgroup& k, const std::vector<Element>& gens) -> bool {
    if (k.size() == target) {
      found = k;
      return true;
    }
    if (!visited.insert(k.mask()).second) return false;
    auto hk = normal_product(g, h, k);
    for (Element x = 0; x < g.order(); ++x) {
      if (hk.contains(x)) continue;
      auto next_gens = gens;
      next_gens.push_back(x);
      auto next = closure(g, next_gens);
      if (target % next.size() != 0) continue;
      if (intersect(next, h).size() != 1) continue;
      if (self(self, next, next_gens)) return true;
    }
    return false;
  };
  search(search, trivial_subgroup(g), {});
  return found;
}

/// Nontrivial cyclic subgroups, each listed once, in order of their lowest generator index.
inline std::vector<Subgroup> cyclic_subgroups(const FiniteGroup& g) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Subgroup> out;
  for (Element a = 0; a < g.order(); ++a) {
    if (seen[a] || a == g.identity()) continue;
    auto c = cyclic_subgroup(g, a);
    const auto o = g.element_order(a);
    for (std::uint32_t k = 1; k < o; ++k)
      if (std::gcd(k, o) == 1) seen[g.pow(a, k)] = 1;
    out.push_back(std::move(c));
  }
  return out;
}

/// Every subgroup of G, obtained by closing the cyclic-subgroup lattice under joins.
/// Sorted by (size, members).
inline std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
  std::vector<Element> cyc_gens;
  for (auto& c : cyclic_subgroups(g))
    for (auto x : c.members())
      if (g.element_order(x) == c.size()) {
        cyc_gens.push_back(x);
        break;
      }
  std::set<std::vector<char>> seen;
  std::vector<std::pair<Subgroup, std::vector<Element>>> work{{trivial_subgroup(g), {}}};
  seen.insert(work.front().first.mask());
  for (std::size_t i = 0; i < work.size(); ++i)
    for (auto x : cyc_gens) {
      if (work[i].first.contains(x)) continue;
      auto gens = work[i].second;
      gens.push_back(x);
      auto j = closure(g, gens);
      if (seen.insert(j.mask()).second) work.emplace_back(std::move(j), std::move(gens));
    }
  std::vector<Subgroup> out;
  for (auto& w : work) out.push_back(std::move(w.first));
  std::sort(out.begin(), out.end());
  return out;
}

/// Every normal subgroup of G: normal closures of single elements, closed under products.
inline std::vector<Subgroup> normal_subgroups(const FiniteGroup& g) {
  std::vector<Subgroup> base;
  std::set<std::vector<char>> seen;
  std::vector<char> done(g.order(), 0);
  for (Element a = 0; a < g.order(); ++a) {
    if (done[a]) continue;
    auto n = normal_closure(g, {a});
    for (Element s = 0; s < g.order(); ++s) done[g.conj(s, a)] = 1;
    if (seen.insert(n.mask()).second) base.push_back(std::move(n));
  }
  std::vector<Subgroup> out = base;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < base.size(); ++j) {
      auto p = normal_product(g, out[i], base[j]);
      if (seen.insert(p.mask()).second) out.push_back(std::move(p));
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Normal abelian subgroups of exactly the given order.
inline std::vector<Subgroup> normal_abelian_subgroups(const FiniteGroup& g, std::uint32_t target_order) {
  if (target_order == 0 || g.order() % target_order != 0)
    throw SpecError("normal_abelian_subgroups: target order must divide the group order");
  std::vector<Subgroup> out;
  for (auto& n : normal_subgroups(g))
    if (n.size() == target_order && subgroup_is_abelian(g, n)) out.push_back(n);
  return out;
}

/// Lowest-index generating set of a subgroup, built greedily.
inline std::vector<Element> generating_set(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Element> gens;
  Subgroup cur = trivial_subgroup(g);
  for (auto x : h.members())
    if (!cur.contains(x)) {
      gens.push_back(x);
      cur = closure(g, gens);
    }
  return gens;
}

} // namespace steinitz
