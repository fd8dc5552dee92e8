#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "steinitz/classgroup.hpp"
#include "steinitz/efield.hpp"
#include "steinitz/group.hpp"
#include "steinitz/group_build.hpp"

namespace steinitz {

/// Memoizes W(k, E) per descriptor for one field and bound.
class WCache {
public:
  WCache(const FieldSpec& k, std::int64_t bound) : k_(&k), bound_(bound) {}

  const WReport& get(const EFieldDescriptor& e) {
    auto key = std::make_pair(e.m, e.s.members());
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, w_subgroup(*k_, e, bound_)).first;
    return it->second;
  }

  const FieldSpec& field() const { return *k_; }
  std::int64_t bound() const { return bound_; }

private:
  const FieldSpec* k_;
  std::int64_t bound_;
  std::map<std::pair<std::int64_t, std::vector<std::int64_t>>, WReport> cache_;
};

enum class TauSelection { representatives, every_element };

struct TauTerm {
  Element tau = 0;
  std::uint32_t order = 0;
  /// Number of elements whose cyclic subgroup is conjugate to <tau> (1 in every_element mode).
  std::uint32_t multiplicity = 1;
  EFieldDescriptor e;
  ClassSubgroup w;
  HalfInteger exponent;
  bool w_heuristic = true;
};

struct ProductForm {
  ClassSubgroup subgroup;
  std::vector<TauTerm> terms;
};

namespace detail {

inline std::vector<std::pair<Element, std::uint32_t>> select_taus(const FiniteGroup& g, TauSelection sel) {
  if (sel == TauSelection::representatives) return cyclic_subgroup_class_representatives(g);
  std::vector<std::pair<Element, std::uint32_t>> all;
  for (Element a = 0; a < g.order(); ++a)
    if (a != g.identity()) all.emplace_back(a, 1);
  return all;
}

inline TauTerm make_term(const FiniteGroup& g, Element tau, std::uint32_t mult, std::int64_t twice_exp, WCache& cache) {
  TauTerm t;
  t.tau = tau;
  t.order = g.element_order(tau);
  t.multiplicity = mult;
  t.e = e_field(cache.field(), g, tau);
  const auto& r = cache.get(t.e);
  t.w = r.w;
  t.w_heuristic = r.heuristic;
  t.exponent = HalfInteger::from_twice(twice_exp);
  return t;
}

inline ClassSubgroup join_terms(const FiniteAbelianGroup& cl, const std::vector<TauTerm>& terms) {
  const auto full = ClassSubgroup::full(cl);
  auto acc = ClassSubgroup::trivial(cl);
  for (auto& t : terms) acc = acc.join(power_subgroup(t.w, t.exponent, full));
  return acc;
}

inline void check_power_of_two(int i) {
  if (i != 0 && i != 1) throw SpecError("the product forms are defined for i = 0 or 1");
}

} // namespace detail

/// prod over tau in G* of W(k, E_tau)^((o(tau)-1)/2^i * #G/o(tau)).
inline ProductForm product_over_elements(const FiniteGroup& g, int i, WCache& cache,
                                         TauSelection sel = TauSelection::representatives) {
  detail::check_power_of_two(i);
  ProductForm p;
  for (auto [tau, mult] : detail::select_taus(g, sel)) {
    const std::int64_t o = g.element_order(tau);
    const std::int64_t num = (o - 1) * (g.order() / o);
    p.terms.push_back(detail::make_term(g, tau, mult, i == 1 ? num : 2 * num, cache));
  }
  p.subgroup = detail::join_terms(cache.field().class_group(), p.terms);
  return p;
}

/// prod over ell | #G and sigma in G{ell}* of W(k, E_sigma)^((ell-1)/2^i * #G/o(sigma)).
inline ProductForm product_over_ell_parts(const FiniteGroup& g, int i, WCache& cache,
                                          TauSelection sel = TauSelection::representatives) {
  detail::check_power_of_two(i);
  ProductForm p;
  for (auto [sigma, mult] : detail::select_taus(g, sel)) {
    const std::int64_t o = g.element_order(sigma);
    auto [ell, n] = nt::prime_power(o);
    if (ell == 0) continue;
    const std::int64_t num = (ell - 1) * (g.order() / o);
    p.terms.push_back(detail::make_term(g, sigma, mult, i == 1 ? num : 2 * num, cache));
  }
  p.subgroup = detail::join_terms(cache.field().class_group(), p.terms);
  return p;
}

struct CalWReport {
  ClassSubgroup subgroup;
  std::vector<TauTerm> per_tau;
  ClassSubgroup ell_part_form;
  /// Element-indexed and ell-part-indexed products coincide for i = 0 and i = 1.
  bool forms_agree = false;
  /// Some W entering the product is only a stream lower bound.
  bool heuristic = false;
};

inline CalWReport cal_w(const FieldSpec& k, const FiniteGroup& g, WCache& cache,
                        TauSelection sel = TauSelection::representatives) {
  if (&cache.field() != &k) throw SpecError("cal_w: cache belongs to another field");
  CalWReport r;
  auto by_elements = product_over_elements(g, 1, cache, sel);
  auto by_parts = product_over_ell_parts(g, 1, cache, sel);
  r.subgroup = by_elements.subgroup;
  r.ell_part_form = by_parts.subgroup;
  r.per_tau = std::move(by_elements.terms);
  r.forms_agree = by_elements.subgroup == by_parts.subgroup &&
                  product_over_elements(g, 0, cache, sel).subgroup == product_over_ell_parts(g, 0, cache, sel).subgroup;
  for (auto& t : r.per_tau) r.heuristic = r.heuristic || t.w_heuristic;
  return r;
}

inline CalWReport cal_w(const FieldSpec& k, const FiniteGroup& g, std::int64_t bound = kDefaultPrimeBound,
                        TauSelection sel = TauSelection::representatives) {
  WCache cache(k, bound);
  return cal_w(k, g, cache, sel);
}

inline bool equivprimisep_check(const FieldSpec& k, const FiniteGroup& g, int i, WCache& cache,
                                TauSelection sel = TauSelection::representatives) {
  if (&cache.field() != &k) throw SpecError("equivprimisep_check: cache belongs to another field");
  return product_over_elements(g, i, cache, sel).subgroup == product_over_ell_parts(g, i, cache, sel).subgroup;
}

inline bool equivprimisep_check(const FieldSpec& k, const FiniteGroup& g, int i,
                                std::int64_t bound = kDefaultPrimeBound) {
  WCache cache(k, bound);
  return equivprimisep_check(k, g, i, cache);
}

struct RamificationDatum {
  IdealClass cls;
  Element inertia_gen = 0;
  std::int64_t e = 0;
};

/// Class of the square root of the discriminant prod p^((e-1) #G/e), for |G| odd.
inline IdealClass steinitz_from_ramification(const FieldSpec& k, const FiniteGroup& g,
                                             const std::vector<RamificationDatum>& data) {
  if (g.order() % 2 == 0)
    throw UnsupportedBranch("steinitz_from_ramification: only groups of odd order are supported");
  const auto& cl = k.class_group();
  auto st = cl.zero();
  for (auto& d : data) {
    if (d.inertia_gen >= g.order()) throw SpecError("ramification datum: inertia generator out of range");
    if (d.e != g.element_order(d.inertia_gen))
      throw SpecError("ramification datum: e = " + std::to_string(d.e) + " differs from the order of the inertia generator");
    if (d.e <= 1) throw SpecError("ramification datum: e must exceed 1");
    cl.check(d.cls);
    st = cl.add(st, cl.scale(d.cls, (d.e - 1) / 2 * (g.order() / d.e)));
  }
  return st;
}

/// The class x of a prime ramified with inertia generated by tau must lie in W(k, E_tau).
inline bool check_ram_admissible(const FieldSpec& k, const FiniteGroup& g, Element tau, const IdealClass& x,
                                 WCache& cache) {
  if (tau == g.identity()) throw SpecError("check_ram_admissible: tau must not be the identity");
  return cache.get(e_field(k, g, tau)).w.contains(k.class_group().reduce(x));
}

inline bool check_ram_admissible(const FieldSpec& k, const FiniteGroup& g, Element tau, const IdealClass& x,
                                 std::int64_t bound = kDefaultPrimeBound) {
  WCache cache(k, bound);
  return check_ram_admissible(k, g, tau, x, cache);
}

/// Lexicographically least (A, B) in [2, 2n+2]^2 with uA + vB = w mod n.
inline std::pair<std::int64_t, std::int64_t> exponent_solver(std::int64_t u, std::int64_t v, std::int64_t w,
                                                             std::int64_t n) {
  if (n < 1) throw SpecError("exponent_solver: n must be positive");
  const std::int64_t g = std::gcd(std::gcd(u, v), n);
  if (nt::mod(w, g) != 0)
    throw SpecError("exponent_solver: gcd(u, v, n) = " + std::to_string(g) + " does not divide " + std::to_string(w));
  for (std::int64_t a = 2; a <= 2 * n + 2; ++a)
    for (std::int64_t b = 2; b <= 2 * n + 2; ++b)
      if (nt::mod(nt::mod(u, n) * a + nt::mod(v, n) * b - w, n) == 0) return {a, b};
  throw EngineAssertion("exponent_solver: no solution in range although the gcd condition holds");
}

/// R_t(k, Gc)^#H * prod over ell | #H, tau in H{ell}* of W(k, E_{k,G,tau})^((ell-1)/2 * #G/o(tau)),
/// for G = H x| Gc given by a normal abelian H of odd order and a complement.
inline ClassSubgroup constructive_lower_bound(const FieldSpec& k, const FiniteGroup& g, const Subgroup& h,
                                              const Subgroup& complement, const ClassSubgroup& rt_of_complement,
                                              WCache& cache) {
  if (g.order() % 2 == 0) throw SpecError("constructive_lower_bound: G must have odd order");
  if (!is_normal(g, h)) throw SpecError("constructive_lower_bound: H is not normal");
  if (!subgroup_is_abelian(g, h)) throw SpecError("constructive_lower_bound: H is not abelian");
  if (intersect(h, complement).size() != 1 || std::uint64_t(h.size()) * complement.size() != g.order() ||
      !is_subgroup(g, complement))
    throw SpecError("constructive_lower_bound: not a complement of H");
  const auto& cl = k.class_group();
  if (!(rt_of_complement.ambient() == cl)) throw SpecError("constructive_lower_bound: class group mismatch");
  const auto full = ClassSubgroup::full(cl);
  auto acc = power_subgroup(rt_of_complement, HalfInteger::integer(h.size()), full);
  for (auto tau : h.members()) {
    if (tau == g.identity()) continue;
    const std::int64_t o = g.element_order(tau);
    auto [ell, n] = nt::prime_power(o);
    if (ell == 0) continue;
    const auto& w = cache.get(e_field(k, g, tau)).w;
    acc = acc.join(power_subgroup(w, HalfInteger::integer((ell - 1) / 2 * (g.order() / o)), full));
  }
  return acc;
}

/// Same bound for H x|_mu Gc built from its factors.
inline ClassSubgroup constructive_lower_bound(const FieldSpec& k, const FiniteGroup& h, const FiniteGroup& gc,
                                              const std::vector<std::vector<Element>>& mu,
                                              const ClassSubgroup& rt_of_complement, WCache& cache) {
  if (!h.is_abelian()) throw SpecError("constructive_lower_bound: H is not abelian");
  auto g = semidirect_product(h, gc, mu);
  std::vector<Element> hs, ks;
  for (Element x = 0; x < h.order(); ++x) hs.push_back(x + h.order() * gc.identity());
  for (Element y = 0; y < gc.order(); ++y) ks.push_back(h.identity() + h.order() * y);
  return constructive_lower_bound(k, g, Subgroup(g.order(), hs), Subgroup(g.order(), ks), rt_of_complement, cache);
}

/// A homomorphism Cl(k1) -> Cl(k) given by the images of the standard generators.
class ClassMap {
public:
  ClassMap(FiniteAbelianGroup source, FiniteAbelianGroup target, std::vector<IdealClass> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_.rank()) throw SpecError("class map: need one image per source generator");
    for (std::size_t i = 0; i < images_.size(); ++i) {
      target_.check(images_[i]);
      images_[i] = target_.reduce(images_[i]);
      if (!target_.is_zero(target_.scale(images_[i], source_.divisors()[i])))
        throw SpecError("class map: image of generator " + std::to_string(i) + " has order not dividing " +
                        std::to_string(source_.divisors()[i]));
    }
  }

  IdealClass operator()(const IdealClass& x) const {
    source_.check(x);
    auto y = target_.zero();
    for (std::size_t i = 0; i < x.size(); ++i) y = target_.add(y, target_.scale(images_[i], x[i]));
    return y;
  }

  /// this after first.
  ClassMap after(const ClassMap& first) const {
    if (!(first.target_ == source_)) throw SpecError("class map: composition of incompatible maps");
    std::vector<IdealClass> imgs;
    for (auto& x : first.images_) imgs.push_back((*this)(x));
    return ClassMap(first.source_, target_, std::move(imgs));
  }

  const FiniteAbelianGroup& source() const { return source_; }
  const FiniteAbelianGroup& target() const { return target_; }

private:
  FiniteAbelianGroup source_, target_;
  std::vector<IdealClass> images_;
};

/// st(K/k) = st(k1/k)^#H * N(st(K/k1)).
inline IdealClass tower_steinitz(const IdealClass& st_k1_over_k, std::int64_t h_order, const ClassMap& norm_map,
                                 const IdealClass& st_k_over_k1) {
  const auto& cl = norm_map.target();
  cl.check(st_k1_over_k);
  return cl.add(cl.scale(st_k1_over_k, h_order), norm_map(st_k_over_k1));
}

} // namespace steinitz
