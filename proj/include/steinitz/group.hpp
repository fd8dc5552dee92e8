#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "steinitz/error.hpp"
#include "steinitz/numtheory.hpp"
#include "steinitz/residue.hpp"

namespace steinitz {

/// Index of an element in the carrier 0..order-1 of one FiniteGroup.
using Element = std::uint32_t;

inline constexpr std::uint32_t kDefaultOrderCap = 2500;

struct NamedElement {
  std::string name;
  Element element;
};

/// A finite group materialized as a full Cayley table.
///
/// The table is row-major: mul(a, b) = table[a * order + b]. Construction checks
/// that the table is a latin square with a two-sided identity, which makes
/// inverses well defined. Associativity is not checked here (it costs order^3);
/// see check_associativity().
class FiniteGroup {
public:
  FiniteGroup() : FiniteGroup(1, {0}) {}

  FiniteGroup(std::uint32_t order, std::vector<Element> table, std::vector<std::string> labels = {})
      : order_(order), table_(std::move(table)), labels_(std::move(labels)) {
    if (order_ == 0) throw SpecError("group order must be positive");
    if (table_.size() != std::size_t(order_) * order_) throw SpecError("Cayley table has wrong size");
    if (!labels_.empty() && labels_.size() != order_) throw SpecError("label count does not match order");
    for (auto x : table_)
      if (x >= order_) throw SpecError("Cayley table entry out of range");
    find_identity();
    compute_inverses();
    compute_orders();
  }

  std::uint32_t order() const { return order_; }
  Element identity() const { return identity_; }
  Element mul(Element a, Element b) const { return table_[std::size_t(a) * order_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  /// g x g^-1
  Element conj(Element g, Element x) const { return mul(mul(g, x), inverse_[g]); }
  std::uint32_t element_order(Element a) const { return orders_[a]; }

  Element pow(Element a, std::int64_t k) const {
    std::int64_t o = orders_[a];
    k = nt::mod(k, o);
    Element r = identity_;
    Element b = a;
    while (k > 0) {
      if (k & 1) r = mul(r, b);
      b = mul(b, b);
      k >>= 1;
    }
    return r;
  }

  bool is_abelian() const {
    for (Element a = 0; a < order_; ++a)
      for (Element b = a + 1; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  std::uint32_t exponent() const {
    std::int64_t e = 1;
    for (auto o : orders_) e = std::lcm(e, std::int64_t(o));
    return static_cast<std::uint32_t>(e);
  }

  const std::vector<Element>& table() const { return table_; }

  /// Distinguished generators recorded by the construction (e.g. "tau", "sigma").
  const std::vector<NamedElement>& generators() const { return generators_; }
  void set_generators(std::vector<NamedElement> gens) {
    for (auto& g : gens)
      if (g.element >= order_) throw SpecError("generator index out of range");
    generators_ = std::move(gens);
  }
  std::optional<Element> generator(const std::string& name) const {
    for (auto& g : generators_)
      if (g.name == name) return g.element;
    return std::nullopt;
  }

  std::string label(Element a) const { return labels_.empty() ? std::to_string(a) : labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

private:
  void find_identity() {
    for (Element e = 0; e < order_; ++e) {
      bool ok = true;
      for (Element a = 0; a < order_ && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
      if (ok) {
        identity_ = e;
        return;
      }
    }
    throw SpecError("Cayley table has no two-sided identity");
  }

  void compute_inverses() {
    inverse_.assign(order_, order_);
    for (Element a = 0; a < order_; ++a) {
      std::vector<char> seen(order_, 0);
      for (Element b = 0; b < order_; ++b) {
        auto c = mul(a, b);
        if (seen[c]) throw SpecError("Cayley table row is not a permutation");
        seen[c] = 1;
        if (c == identity_) inverse_[a] = b;
      }
    }
    for (Element a = 0; a < order_; ++a)
      if (mul(inverse_[a], a) != identity_) throw SpecError("left and right inverses differ");
  }

  void compute_orders() {
    orders_.assign(order_, 0);
    for (Element a = 0; a < order_; ++a) {
      std::uint32_t k = 1;
      Element x = a;
      while (x != identity_) {
        x = mul(x, a);
        if (++k > order_) throw SpecError("element has no finite order: table is not a group");
      }
      orders_[a] = k;
    }
  }

  std::uint32_t order_;
  std::vector<Element> table_;
  std::vector<std::string> labels_;
  Element identity_ = 0;
  std::vector<Element> inverse_;
  std::vector<std::uint32_t> orders_;
  std::vector<NamedElement> generators_;
  std::string name_;
};

/// Exhaustive associativity check, O(order^3).
inline bool check_associativity(const FiniteGroup& g) {
  const auto n = g.order();
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      auto ab = g.mul(a, b);
      for (Element c = 0; c < n; ++c)
        if (g.mul(ab, c) != g.mul(a, g.mul(b, c))) return false;
    }
  return true;
}

/// A subgroup of some FiniteGroup: sorted member list plus membership mask.
class Subgroup {
public:
  Subgroup() = default;

  Subgroup(std::uint32_t parent_order, std::vector<Element> members) : mask_(parent_order, 0) {
    for (auto m : members) {
      if (m >= parent_order) throw SpecError("subgroup member out of range");
      mask_[m] = 1;
    }
    rebuild_members();
  }

  static Subgroup from_mask(std::vector<char> mask) {
    Subgroup s;
    s.mask_ = std::move(mask);
    s.rebuild_members();
    return s;
  }

  std::uint32_t size() const { return static_cast<std::uint32_t>(members_.size()); }
  std::uint32_t parent_order() const { return static_cast<std::uint32_t>(mask_.size()); }
  bool contains(Element e) const { return e < mask_.size() && mask_[e]; }
  const std::vector<Element>& members() const { return members_; }
  const std::vector<char>& mask() const { return mask_; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.mask_ == b.mask_; }
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.members_ < b.members_;
  }

private:
  void rebuild_members() {
    members_.clear();
    for (Element i = 0; i < mask_.size(); ++i)
      if (mask_[i]) members_.push_back(i);
  }

  std::vector<char> mask_;
  std::vector<Element> members_;
};

/// Closure of a generating set.
inline Subgroup closure(const FiniteGroup& g, const std::vector<Element>& gens) {
  std::vector<char> mask(g.order(), 0);
  std::vector<Element> elems{g.identity()};
  mask[g.identity()] = 1;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (auto s : gens) {
      auto x = g.mul(elems[i], s);
      if (!mask[x]) {
        mask[x] = 1;
        elems.push_back(x);
      }
    }
  return Subgroup::from_mask(std::move(mask));
}

/// Closure of an existing subgroup together with extra elements.
inline Subgroup join(const FiniteGroup& g, const Subgroup& h, const std::vector<Element>& extra) {
  std::vector<Element> gens = extra;
  Subgroup cur = closure(g, gens);
  for (auto m : h.members())
    if (!cur.contains(m)) {
      gens.push_back(m);
      cur = closure(g, gens);
    }
  return cur;
}

inline Subgroup trivial_subgroup(const FiniteGroup& g) { return Subgroup(g.order(), {g.identity()}); }

inline Subgroup whole_group(const FiniteGroup& g) {
  return Subgroup::from_mask(std::vector<char>(g.order(), 1));
}

inline Subgroup cyclic_subgroup(const FiniteGroup& g, Element x) {
  std::vector<Element> m;
  Element y = g.identity();
  do {
    m.push_back(y);
    y = g.mul(y, x);
  } while (y != g.identity());
  return Subgroup(g.order(), std::move(m));
}

inline bool is_subgroup(const FiniteGroup& g, const Subgroup& h) {
  if (!h.contains(g.identity())) return false;
  for (auto a : h.members()) {
    if (!h.contains(g.inv(a))) return false;
    for (auto b : h.members())
      if (!h.contains(g.mul(a, b))) return false;
  }
  return true;
}

inline Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<char> m(a.parent_order(), 0);
  for (auto x : a.members())
    if (b.contains(x)) m[x] = 1;
  return Subgroup::from_mask(std::move(m));
}

inline Subgroup conjugate_subgroup(const FiniteGroup& g, const Subgroup& h, Element by) {
  std::vector<Element> m;
  m.reserve(h.size());
  for (auto x : h.members()) m.push_back(g.conj(by, x));
  return Subgroup(g.order(), std::move(m));
}

inline bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (Element s = 0; s < g.order(); ++s)
    for (auto x : h.members())
      if (!h.contains(g.conj(s, x))) return false;
  return true;
}

/// Smallest normal subgroup containing `gens`.
inline Subgroup normal_closure(const FiniteGroup& g, const std::vector<Element>& gens) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Element> conjugates;
  for (auto x : gens)
    for (Element s = 0; s < g.order(); ++s) {
      auto c = g.conj(s, x);
      if (!seen[c]) {
        seen[c] = 1;
        conjugates.push_back(c);
      }
    }
  return closure(g, conjugates);
}

/// Product set AB of a normal subgroup A with a subgroup B (itself a subgroup).
inline Subgroup normal_product(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<char> m(g.order(), 0);
  for (auto y : b.members()) {
    if (m[y]) continue;
    for (auto x : a.members()) m[g.mul(x, y)] = 1;
  }
  return Subgroup::from_mask(std::move(m));
}

inline Subgroup center(const FiniteGroup& g) {
  std::vector<Element> z;
  for (Element a = 0; a < g.order(); ++a) {
    bool central = true;
    for (Element b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) z.push_back(a);
  }
  return Subgroup(g.order(), std::move(z));
}

inline Subgroup centralizer_of_set(const FiniteGroup& g, const std::vector<Element>& xs) {
  std::vector<Element> c;
  for (Element s = 0; s < g.order(); ++s) {
    bool ok = true;
    for (auto x : xs)
      if (g.mul(s, x) != g.mul(x, s)) {
        ok = false;
        break;
      }
    if (ok) c.push_back(s);
  }
  return Subgroup(g.order(), std::move(c));
}

inline bool subgroup_is_abelian(const FiniteGroup& g, const Subgroup& h) {
  const auto& m = h.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (g.mul(m[i], m[j]) != g.mul(m[j], m[i])) return false;
  return true;
}

/// Normalizer and centralizer of the cyclic subgroup generated by tau.
inline std::pair<Subgroup, Subgroup> normalizer_centralizer(const FiniteGroup& g, Element tau) {
  auto cyc = cyclic_subgroup(g, tau);
  std::vector<Element> n, c;
  for (Element s = 0; s < g.order(); ++s) {
    auto x = g.conj(s, tau);
    if (x == tau) {
      c.push_back(s);
      n.push_back(s);
    } else if (cyc.contains(x)) {
      n.push_back(s);
    }
  }
  return {Subgroup(g.order(), std::move(n)), Subgroup(g.order(), std::move(c))};
}

/// Image of the conjugation character N_G(tau) -> (Z/o(tau)Z)^x, s tau s^-1 = tau^alpha.
inline ResidueSubgroup phi_image(const FiniteGroup& g, Element tau) {
  const auto o = g.element_order(tau);
  if (o == 1) throw SpecError("phi_image: tau must not be the identity");
  std::vector<std::int64_t> exponent_of(g.order(), -1);
  Element y = g.identity();
  for (std::uint32_t k = 0; k < o; ++k) {
    exponent_of[y] = k;
    y = g.mul(y, tau);
  }
  std::vector<std::int64_t> alphas;
  for (Element s = 0; s < g.order(); ++s) {
    auto e = exponent_of[g.conj(s, tau)];
    if (e >= 0) alphas.push_back(e);
  }
  return ResidueSubgroup(o, std::move(alphas));
}

/// sigma^(o/o(ell)): the ell-part of sigma.
inline Element ell_part(const FiniteGroup& g, Element sigma, std::int64_t ell) {
  if (!nt::is_prime(ell)) throw SpecError("ell_part: " + std::to_string(ell) + " is not prime");
  const std::int64_t o = g.element_order(sigma);
  return g.pow(sigma, o / nt::ell_part(o, ell));
}

/// G{ell}: elements of ell-power order (including the identity).
inline std::vector<Element> ell_power_elements(const FiniteGroup& g, std::int64_t ell) {
  if (!nt::is_prime(ell)) throw SpecError("ell_power_elements: " + std::to_string(ell) + " is not prime");
  std::vector<Element> out;
  for (Element s = 0; s < g.order(); ++s)
    if (ell_part(g, s, ell) == s) out.push_back(s);
  return out;
}

inline std::vector<std::vector<Element>> conjugacy_classes(const FiniteGroup& g) {
  std::vector<char> seen(g.order(), 0);
  std::vector<std::vector<Element>> classes;
  for (Element a = 0; a < g.order(); ++a) {
    if (seen[a]) continue;
    std::vector<Element> cls;
    for (Element s = 0; s < g.order(); ++s) {
      auto c = g.conj(s, a);
      if (!seen[c]) {
        seen[c] = 1;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

/// One representative per conjugacy class of nontrivial cyclic subgroups:
/// the lowest-index generator among all generators of all conjugates.
/// Returns (representative, number of elements tau with <tau> in the class).
inline std::vector<std::pair<Element, std::uint32_t>> cyclic_subgroup_class_representatives(const FiniteGroup& g) {
  std::vector<char> seen(g.order(), 0);
  std::vector<std::pair<Element, std::uint32_t>> reps;
  for (Element a = 0; a < g.order(); ++a) {
    if (seen[a] || a == g.identity()) continue;
    std::uint32_t count = 0;
    for (Element s = 0; s < g.order(); ++s) {
      auto c = g.conj(s, a);
      const auto o = g.element_order(c);
      for (std::uint32_t k = 1; k < o; ++k) {
        if (std::gcd(k, o) != 1) continue;
        auto x = g.pow(c, k);
        if (!seen[x]) {
          seen[x] = 1;
          ++count;
        }
      }
    }
    reps.emplace_back(a, count);
  }
  return reps;
}

/// A map between carriers, verified as a homomorphism on construction.
class GroupHom {
public:
  GroupHom(const FiniteGroup& source, const FiniteGroup& target, std::vector<Element> map)
      : target_order_(target.order()), map_(std::move(map)) {
    if (map_.size() != source.order()) throw SpecError("homomorphism table has wrong size");
    for (auto y : map_)
      if (y >= target.order()) throw SpecError("homomorphism image out of range");
    if (map_[source.identity()] != target.identity())
      throw SpecError("homomorphism does not fix the identity");
    for (Element a = 0; a < source.order(); ++a)
      for (Element b = 0; b < source.order(); ++b)
        if (map_[source.mul(a, b)] != target.mul(map_[a], map_[b]))
          throw SpecError("map is not a homomorphism");
  }

  Element operator()(Element x) const { return map_[x]; }
  const std::vector<Element>& table() const { return map_; }
  std::uint32_t source_order() const { return static_cast<std::uint32_t>(map_.size()); }
  std::uint32_t target_order() const { return target_order_; }

  Subgroup kernel(const FiniteGroup& source, const FiniteGroup& target) const {
    (void)source;
    std::vector<Element> k;
    for (Element a = 0; a < map_.size(); ++a)
      if (map_[a] == target.identity()) k.push_back(a);
    return Subgroup(source_order(), std::move(k));
  }

  Subgroup image() const {
    std::vector<Element> im(map_.begin(), map_.end());
    return Subgroup(target_order_, std::move(im));
  }

private:
  std::uint32_t target_order_;
  std::vector<Element> map_;
};

/// Extends an assignment on generators of `source` to a homomorphism by walking the
/// Cayley graph; returns nullopt if the assignment is inconsistent.
inline std::optional<std::vector<Element>> extend_on_generators(const FiniteGroup& source, const FiniteGroup& target,
                                                                const std::vector<Element>& gens,
                                                                const std::vector<Element>& images) {
  if (gens.size() != images.size()) throw SpecError("generator/image count mismatch");
  const Element unset = target.order();
  std::vector<Element> map(source.order(), unset);
  map[source.identity()] = target.identity();
  std::vector<Element> queue{source.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto x = queue[i];
    for (std::size_t j = 0; j < gens.size(); ++j) {
      auto y = source.mul(x, gens[j]);
      auto fy = target.mul(map[x], images[j]);
      if (map[y] == unset) {
        map[y] = fy;
        queue.push_back(y);
      } else if (map[y] != fy) {
        return std::nullopt;
      }
    }
  }
  if (queue.size() != source.order()) throw SpecError("generators do not generate the source group");
  for (Element a = 0; a < source.order(); ++a)
    for (Element b = 0; b < source.order(); ++b)
      if (map[source.mul(a, b)] != target.mul(map[a], map[b])) return std::nullopt;
  return map;
}

/// A subgroup materialized as a standalone group; embedding[i] is the parent index.
struct InducedGroup {
  FiniteGroup group;
  std::vector<Element> embedding;

  Element to_parent(Element x) const { return embedding[x]; }
};

inline InducedGroup induced_group(const FiniteGroup& g, const Subgroup& h) {
  const auto& m = h.members();
  const auto n = static_cast<std::uint32_t>(m.size());
  std::vector<Element> local(g.order(), 0);
  for (Element i = 0; i < n; ++i) local[m[i]] = i;
  std::vector<Element> table(std::size_t(n) * n);
  for (Element i = 0; i < n; ++i)
    for (Element j = 0; j < n; ++j) {
      auto p = g.mul(m[i], m[j]);
      if (!h.contains(p)) throw SpecError("induced_group: set is not closed");
      table[std::size_t(i) * n + j] = local[p];
    }
  return {FiniteGroup(n, std::move(table)), m};
}

/// A quotient group on coset indices plus the projection.
struct Quotient {
  FiniteGroup group;
  std::vector<Element> projection;   ///< parent element -> coset index
  std::vector<Element> representative; ///< coset index -> lowest parent element in the coset
};

inline Quotient quotient(const FiniteGroup& g, const Subgroup& n) {
  if (!is_normal(g, n)) throw SpecError("quotient: subgroup is not normal");
  const Element unset = g.order();
  std::vector<Element> proj(g.order(), unset);
  std::vector<Element> reps;
  for (Element a = 0; a < g.order(); ++a) {
    if (proj[a] != unset) continue;
    const auto idx = static_cast<Element>(reps.size());
    reps.push_back(a);
    for (auto x : n.members()) proj[g.mul(a, x)] = idx;
  }
  const auto q = static_cast<std::uint32_t>(reps.size());
  std::vector<Element> table(std::size_t(q) * q);
  for (Element i = 0; i < q; ++i)
    for (Element j = 0; j < q; ++j) table[std::size_t(i) * q + j] = proj[g.mul(reps[i], reps[j])];
  FiniteGroup qg(q, std::move(table));
  std::vector<NamedElement> gens;
  for (auto& ne : g.generators()) gens.push_back({ne.name, proj[ne.element]});
  qg.set_generators(std::move(gens));
  return {std::move(qg), std::move(proj), std::move(reps)};
}

} // namespace steinitz
