#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "steinitz/error.hpp"
#include "steinitz/group.hpp"

namespace steinitz {

inline void check_cap(std::uint64_t predicted, std::uint32_t cap) {
  if (predicted > cap)
    throw CapExceeded("group of order " + std::to_string(predicted) + " exceeds the order cap " + std::to_string(cap));
}

inline FiniteGroup cyclic_group(std::uint32_t n, std::uint32_t cap = kDefaultOrderCap) {
  if (n == 0) throw SpecError("cyclic group order must be positive");
  check_cap(n, cap);
  std::vector<Element> t(std::size_t(n) * n);
  for (Element i = 0; i < n; ++i)
    for (Element j = 0; j < n; ++j) t[std::size_t(i) * n + j] = (i + j) % n;
  FiniteGroup g(n, std::move(t));
  if (n > 1) g.set_generators({{"g", 1}});
  g.set_name("C" + std::to_string(n));
  return g;
}

/// Group generated by permutations given in one-line notation on 0..degree-1.
/// Element 0 is the identity; others are numbered in breadth-first discovery order.
inline FiniteGroup permutation_group(std::uint32_t degree, const std::vector<std::vector<std::uint32_t>>& gens,
                                     std::uint32_t cap = kDefaultOrderCap) {
  using Perm = std::vector<std::uint32_t>;
  for (auto& p : gens) {
    if (p.size() != degree) throw SpecError("permutation has wrong length");
    std::vector<char> seen(degree, 0);
    for (auto x : p) {
      if (x >= degree || seen[x]) throw SpecError("generator is not a permutation");
      seen[x] = 1;
    }
  }
  Perm id(degree);
  for (std::uint32_t i = 0; i < degree; ++i) id[i] = i;
  auto compose = [&](const Perm& a, const Perm& b) {  // apply b first, then a
    Perm c(degree);
    for (std::uint32_t i = 0; i < degree; ++i) c[i] = a[b[i]];
    return c;
  };
  std::map<Perm, Element> index{{id, 0}};
  std::vector<Perm> elems{id};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (auto& s : gens) {
      auto x = compose(elems[i], s);
      if (!index.count(x)) {
        check_cap(elems.size() + 1, cap);
        index.emplace(x, static_cast<Element>(elems.size()));
        elems.push_back(std::move(x));
      }
    }
  const auto n = static_cast<std::uint32_t>(elems.size());
  std::vector<Element> t(std::size_t(n) * n);
  for (Element i = 0; i < n; ++i)
    for (Element j = 0; j < n; ++j) t[std::size_t(i) * n + j] = index.at(compose(elems[i], elems[j]));
  FiniteGroup g(n, std::move(t));
  std::vector<NamedElement> named;
  for (std::size_t i = 0; i < gens.size(); ++i) named.push_back({"p" + std::to_string(i), index.at(gens[i])});
  g.set_generators(std::move(named));
  return g;
}

/// G1 x G2 with index i1 + |G1| * i2.
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b, std::uint32_t cap = kDefaultOrderCap) {
  check_cap(std::uint64_t(a.order()) * b.order(), cap);
  const auto na = a.order(), nb = b.order(), n = na * nb;
  std::vector<Element> t(std::size_t(n) * n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      t[std::size_t(x) * n + y] = a.mul(x % na, y % na) + na * b.mul(x / na, y / na);
  FiniteGroup g(n, std::move(t));
  std::vector<NamedElement> named;
  for (auto& ne : a.generators()) named.push_back({ne.name, ne.element + na * b.identity()});
  for (auto& ne : b.generators()) named.push_back({ne.name, a.identity() + na * ne.element});
  g.set_generators(std::move(named));
  return g;
}

/// Checks that `mu` (one automorphism table of H per element of K) is a homomorphism K -> Aut(H).
inline void validate_action(const FiniteGroup& h, const FiniteGroup& k, const std::vector<std::vector<Element>>& mu) {
  if (mu.size() != k.order()) throw SpecError("action must give one table per element of the acting group");
  for (Element s = 0; s < k.order(); ++s) {
    const auto& m = mu[s];
    if (m.size() != h.order()) throw SpecError("action table has wrong length");
    std::vector<char> seen(h.order(), 0);
    for (auto x : m) {
      if (x >= h.order() || seen[x]) throw SpecError("action table is not a bijection");
      seen[x] = 1;
    }
    for (Element x = 0; x < h.order(); ++x)
      for (Element y = 0; y < h.order(); ++y)
        if (m[h.mul(x, y)] != h.mul(m[x], m[y])) throw SpecError("action is not by automorphisms");
  }
  for (Element x = 0; x < h.order(); ++x)
    if (mu[k.identity()][x] != x) throw SpecError("identity of the acting group must act trivially");
  for (Element s = 0; s < k.order(); ++s)
    for (Element r = 0; r < k.order(); ++r) {
      const auto& sr = mu[k.mul(s, r)];
      for (Element x = 0; x < h.order(); ++x)
        if (sr[x] != mu[s][mu[r][x]]) throw SpecError("action is not a homomorphism into Aut(H)");
    }
}

/// H x| K with (h1,k1)(h2,k2) = (h1 * mu_k1(h2), k1 k2) and index h + |H| * k.
/// Inside the product, k h k^-1 = mu_k(h).
inline FiniteGroup semidirect_product(const FiniteGroup& h, const FiniteGroup& k,
                                      const std::vector<std::vector<Element>>& mu,
                                      std::uint32_t cap = kDefaultOrderCap) {
  check_cap(std::uint64_t(h.order()) * k.order(), cap);
  validate_action(h, k, mu);
  const auto nh = h.order(), n = nh * k.order();
  std::vector<Element> t(std::size_t(n) * n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      const Element h1 = x % nh, k1 = x / nh, h2 = y % nh, k2 = y / nh;
      t[std::size_t(x) * n + y] = h.mul(h1, mu[k1][h2]) + nh * k.mul(k1, k2);
    }
  FiniteGroup g(n, std::move(t));
  std::vector<NamedElement> named;
  for (auto& ne : h.generators()) named.push_back({ne.name, ne.element + nh * k.identity()});
  for (auto& ne : k.generators()) named.push_back({ne.name, h.identity() + nh * ne.element});
  g.set_generators(std::move(named));
  return g;
}

/// Extends automorphisms given on the generators of K (one table of H per generator) to all of K.
inline std::vector<std::vector<Element>> action_from_generator_tables(const FiniteGroup& h, const FiniteGroup& k,
                                                                      const std::vector<std::vector<Element>>& tables) {
  const auto& gens = k.generators();
  if (tables.size() != gens.size()) throw SpecError("need one action table per generator of the acting group");
  const std::uint32_t nh = h.order();
  std::vector<std::vector<Element>> mu(k.order());
  std::vector<Element> id(nh);
  for (Element x = 0; x < nh; ++x) id[x] = x;
  mu[k.identity()] = id;
  std::vector<Element> queue{k.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const auto s = queue[i];
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (tables[j].size() != nh) throw SpecError("action table has wrong length");
      for (auto x : tables[j])
        if (x >= nh) throw SpecError("action table entry out of range");
      const auto r = k.mul(s, gens[j].element);
      std::vector<Element> comp(nh);
      for (Element x = 0; x < nh; ++x) comp[x] = mu[s][tables[j][x]];
      if (mu[r].empty()) {
        mu[r] = std::move(comp);
        queue.push_back(r);
      } else if (mu[r] != comp) {
        throw SpecError("action tables do not define a homomorphism into Aut(H)");
      }
    }
  }
  if (queue.size() != k.order()) throw SpecError("named generators do not generate the acting group");
  return mu;
}

/// Automorphism tables from images of H's named generators, one image list per generator of K.
inline std::vector<std::vector<Element>> action_from_generator_images(
    const FiniteGroup& h, const FiniteGroup& k, const std::vector<std::vector<Element>>& images) {
  std::vector<Element> hgens;
  for (auto& ne : h.generators()) hgens.push_back(ne.element);
  if (h.order() > 1 && hgens.empty()) throw SpecError("acted-on group has no named generators");
  std::vector<std::vector<Element>> tables;
  for (auto& img : images) {
    if (img.size() != hgens.size()) throw SpecError("need one image per generator of H");
    for (auto x : img)
      if (x >= h.order()) throw SpecError("generator image out of range");
    auto ext = extend_on_generators(h, h, hgens, img);
    if (!ext) throw SpecError("generator images do not define an endomorphism of H");
    tables.push_back(std::move(*ext));
  }
  return action_from_generator_tables(h, k, tables);
}

/// Heisenberg group of order ell^3 and exponent ell: (<x> x <z>) x| <y> with y x y^-1 = x z.
inline FiniteGroup heisenberg_group(std::int64_t ell, std::uint32_t cap = kDefaultOrderCap) {
  if (!nt::is_prime(ell) || ell == 2) throw SpecError("heisenberg: ell must be an odd prime");
  check_cap(std::uint64_t(nt::ipow(ell, 3)), cap);
  const auto l = static_cast<std::uint32_t>(ell);
  auto c = cyclic_group(l, cap);
  auto h = direct_product(c, c, cap);  // x = 1, z = l
  auto k = cyclic_group(l, cap);
  std::vector<Element> img{1 + l, l};  // x -> xz, z -> z
  h.set_generators({{"x", 1}, {"z", l}});
  auto g = semidirect_product(h, k, action_from_generator_images(h, k, {img}), cap);
  const Element x = 1, z = l, y = l * l;
  g.set_generators({{"x", x}, {"y", y}, {"z", z}});
  engine_check(g.conj(y, x) == g.mul(x, z), "heisenberg: y x y^-1 = x z");
  engine_check(g.exponent() == l, "heisenberg: exponent ell");
  g.set_name("He" + std::to_string(ell));
  return g;
}

/// <tau> x| <sigma> of order ell^n with o(tau) = ell^(n-1), o(sigma) = ell,
/// sigma tau sigma^-1 = tau^(1 + ell^(n-2)).
inline FiniteGroup modular_group(std::int64_t ell, int n, std::uint32_t cap = kDefaultOrderCap) {
  if (!nt::is_prime(ell) || ell == 2) throw SpecError("modular: ell must be an odd prime");
  if (n < 3) throw SpecError("modular: n must be at least 3");
  check_cap(std::uint64_t(nt::ipow(ell, n)), cap);
  const auto m = static_cast<std::uint32_t>(nt::ipow(ell, n - 1));
  const auto l = static_cast<std::uint32_t>(ell);
  auto h = cyclic_group(m, cap);
  auto k = cyclic_group(l, cap);
  const auto r = static_cast<Element>(1 + nt::ipow(ell, n - 2));
  auto g = semidirect_product(h, k, action_from_generator_images(h, k, {{r}}), cap);
  const Element tau = 1, sigma = m;
  g.set_generators({{"tau", tau}, {"sigma", sigma}});
  engine_check(g.element_order(tau) == m && g.element_order(sigma) == l, "modular: generator orders");
  engine_check(g.conj(sigma, tau) == g.pow(tau, r), "modular: conjugation relation");
  g.set_name("M" + std::to_string(nt::ipow(ell, n)));
  return g;
}

/// Group of order ell^3 generated by tau, sigma with tau^(ell^2) = 1, sigma^ell = tau^(c ell),
/// sigma tau sigma^-1 = tau^(1 + a ell).
inline FiniteGroup two_generator_ell_group(std::int64_t ell, std::int64_t a, std::int64_t c,
                                           std::uint32_t cap = kDefaultOrderCap) {
  if (!nt::is_prime(ell) || ell == 2) throw SpecError("two_gen_l2: ell must be an odd prime");
  const auto l2 = static_cast<std::uint32_t>(ell * ell);
  check_cap(std::uint64_t(l2) * l2, cap);
  auto h = cyclic_group(l2, cap);
  auto k = cyclic_group(l2, cap);
  const auto r = static_cast<Element>(nt::mod(1 + a * ell, l2));
  auto big = semidirect_product(h, k, action_from_generator_images(h, k, {{r}}), cap);
  const Element tau = 1, sigma = l2;
  const auto rel = big.mul(big.pow(sigma, ell), big.pow(tau, -c * ell));
  auto q = quotient(big, closure(big, {rel}));
  auto g = std::move(q.group);
  const Element qt = q.projection[tau], qs = q.projection[sigma];
  g.set_generators({{"tau", qt}, {"sigma", qs}});
  if (g.order() != l2 * ell) throw SpecError("two_gen_l2: relations collapse the group");
  engine_check(g.element_order(qt) == l2, "two_gen_l2: tau has order ell^2");
  engine_check(g.pow(qs, ell) == g.pow(qt, c * ell), "two_gen_l2: sigma^ell = tau^(c ell)");
  engine_check(g.conj(qs, qt) == g.pow(qt, 1 + a * ell), "two_gen_l2: conjugation relation");
  return g;
}

// ---------------------------------------------------------------------------
// GroupSpec

struct GroupSpec;

namespace spec {
struct Cyclic {
  std::uint32_t n;
};
struct Perm {
  std::uint32_t degree;
  std::vector<std::vector<std::uint32_t>> generators;
};
struct Direct {
  std::vector<GroupSpec> factors;
};
struct Semidirect {
  std::shared_ptr<GroupSpec> h, g;
  enum class ActionForm { per_element, per_generator, generator_images } form;
  std::vector<std::vector<Element>> action;
};
struct Heisenberg {
  std::int64_t ell;
};
struct Modular {
  std::int64_t ell;
  int n;
};
struct TwoGenL2 {
  std::int64_t ell, a, c;
};
struct Quotient {
  std::shared_ptr<GroupSpec> group;
  std::vector<Element> normal_generators;
};
} // namespace spec

struct GroupSpec {
  std::variant<spec::Cyclic, spec::Perm, spec::Direct, spec::Semidirect, spec::Heisenberg, spec::Modular,
               spec::TwoGenL2, spec::Quotient>
      variant;
  std::string name;
  nlohmann::json source;

  /// Order implied by the variant, computed without building the group (0 if unknown).
  std::uint64_t predicted_order() const;
};

namespace detail {
template <class T>
T get_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw SpecError(std::string("group spec missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("group spec field '") + key + "' malformed: " + e.what());
  }
}
} // namespace detail

inline GroupSpec parse_group_spec(const nlohmann::json& j) {
  if (!j.is_object()) throw SpecError("group spec must be a JSON object");
  const auto kind = detail::get_field<std::string>(j, "kind");
  GroupSpec s;
  s.source = j;
  s.name = j.value("name", "");
  if (kind == "cyclic") {
    auto n = detail::get_field<std::int64_t>(j, "n");
    if (n < 1) throw SpecError("cyclic: n must be positive");
    s.variant = spec::Cyclic{static_cast<std::uint32_t>(n)};
  } else if (kind == "perm") {
    s.variant = spec::Perm{detail::get_field<std::uint32_t>(j, "degree"),
                           detail::get_field<std::vector<std::vector<std::uint32_t>>>(j, "generators")};
  } else if (kind == "direct") {
    spec::Direct d;
    for (auto& f : detail::get_field<nlohmann::json>(j, "factors")) d.factors.push_back(parse_group_spec(f));
    if (d.factors.empty()) throw SpecError("direct: need at least one factor");
    s.variant = std::move(d);
  } else if (kind == "semidirect") {
    spec::Semidirect d;
    d.h = std::make_shared<GroupSpec>(parse_group_spec(detail::get_field<nlohmann::json>(j, "h")));
    d.g = std::make_shared<GroupSpec>(parse_group_spec(detail::get_field<nlohmann::json>(j, "g")));
    int forms = j.contains("action") + j.contains("action_generators") + j.contains("action_on_generators");
    if (forms != 1)
      throw SpecError("semidirect: give exactly one of action, action_generators, action_on_generators");
    using F = spec::Semidirect::ActionForm;
    if (j.contains("action")) {
      d.form = F::per_element;
      d.action = detail::get_field<std::vector<std::vector<Element>>>(j, "action");
    } else if (j.contains("action_generators")) {
      d.form = F::per_generator;
      d.action = detail::get_field<std::vector<std::vector<Element>>>(j, "action_generators");
    } else {
      d.form = F::generator_images;
      d.action = detail::get_field<std::vector<std::vector<Element>>>(j, "action_on_generators");
    }
    s.variant = std::move(d);
  } else if (kind == "heisenberg") {
    s.variant = spec::Heisenberg{detail::get_field<std::int64_t>(j, "ell")};
  } else if (kind == "modular") {
    s.variant = spec::Modular{detail::get_field<std::int64_t>(j, "ell"), detail::get_field<int>(j, "n")};
  } else if (kind == "two_gen_l2") {
    s.variant = spec::TwoGenL2{detail::get_field<std::int64_t>(j, "ell"), detail::get_field<std::int64_t>(j, "a"),
                               detail::get_field<std::int64_t>(j, "c")};
  } else if (kind == "quotient") {
    spec::Quotient q;
    q.group = std::make_shared<GroupSpec>(parse_group_spec(detail::get_field<nlohmann::json>(j, "group")));
    q.normal_generators = detail::get_field<std::vector<Element>>(j, "normal_generators");
    s.variant = std::move(q);
  } else {
    throw SpecError("unknown group spec kind '" + kind + "'");
  }
  return s;
}

inline std::uint64_t GroupSpec::predicted_order() const {
  struct V {
    std::uint64_t operator()(const spec::Cyclic& c) const { return c.n; }
    std::uint64_t operator()(const spec::Perm&) const { return 0; }
    std::uint64_t operator()(const spec::Direct& d) const {
      std::uint64_t n = 1;
      for (auto& f : d.factors) {
        auto o = f.predicted_order();
        if (o == 0) return 0;
        n *= o;
        if (n > (std::uint64_t(1) << 40)) return n;
      }
      return n;
    }
    std::uint64_t operator()(const spec::Semidirect& d) const {
      auto a = d.h->predicted_order(), b = d.g->predicted_order();
      return (a && b) ? a * b : 0;
    }
    std::uint64_t operator()(const spec::Heisenberg& h) const { return std::uint64_t(nt::ipow(h.ell, 3)); }
    std::uint64_t operator()(const spec::Modular& m) const {
      return m.n < 1 || m.n > 40 ? 0 : std::uint64_t(nt::ipow(m.ell, m.n));
    }
    std::uint64_t operator()(const spec::TwoGenL2& t) const { return std::uint64_t(nt::ipow(t.ell, 3)); }
    std::uint64_t operator()(const spec::Quotient&) const { return 0; }
  };
  return std::visit(V{}, variant);
}

inline FiniteGroup build_group(const GroupSpec& s, std::uint32_t cap = kDefaultOrderCap) {
  if (auto p = s.predicted_order()) check_cap(p, cap);
  struct V {
    std::uint32_t cap;
    FiniteGroup operator()(const spec::Cyclic& c) const { return cyclic_group(c.n, cap); }
    FiniteGroup operator()(const spec::Perm& p) const { return permutation_group(p.degree, p.generators, cap); }
    FiniteGroup operator()(const spec::Direct& d) const {
      auto g = build_group(d.factors.front(), cap);
      for (std::size_t i = 1; i < d.factors.size(); ++i) g = direct_product(g, build_group(d.factors[i], cap), cap);
      return g;
    }
    FiniteGroup operator()(const spec::Semidirect& d) const {
      auto h = build_group(*d.h, cap);
      auto k = build_group(*d.g, cap);
      using F = spec::Semidirect::ActionForm;
      std::vector<std::vector<Element>> mu;
      switch (d.form) {
      case F::per_element: mu = d.action; break;
      case F::per_generator: mu = action_from_generator_tables(h, k, d.action); break;
      case F::generator_images: mu = action_from_generator_images(h, k, d.action); break;
      }
      return semidirect_product(h, k, mu, cap);
    }
    FiniteGroup operator()(const spec::Heisenberg& h) const { return heisenberg_group(h.ell, cap); }
    FiniteGroup operator()(const spec::Modular& m) const { return modular_group(m.ell, m.n, cap); }
    FiniteGroup operator()(const spec::TwoGenL2& t) const { return two_generator_ell_group(t.ell, t.a, t.c, cap); }
    FiniteGroup operator()(const spec::Quotient& q) const {
      auto g = build_group(*q.group, cap);
      for (auto x : q.normal_generators)
        if (x >= g.order()) throw SpecError("quotient: normal generator out of range");
      auto n = closure(g, q.normal_generators);
      if (!is_normal(g, n)) throw SpecError("quotient: generated subgroup is not normal");
      return quotient(g, n).group;
    }
  };
  auto g = std::visit(V{cap}, s.variant);
  if (!s.name.empty()) g.set_name(s.name);
  return g;
}

inline FiniteGroup build_group(const nlohmann::json& j, std::uint32_t cap = kDefaultOrderCap) {
  return build_group(parse_group_spec(j), cap);
}

} // namespace steinitz
