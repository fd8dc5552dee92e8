#pragma once

// Independent reference implementations used only by tests.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "steinitz/steinitz.hpp"

namespace oracle {

using steinitz::ClassSubgroup;
using steinitz::FiniteAbelianGroup;
using steinitz::IdealClass;

/// Subgroup as an explicit sorted element set.
inline std::set<IdealClass> span(const FiniteAbelianGroup& a, const std::vector<IdealClass>& gens) {
  std::set<IdealClass> s{a.zero()};
  std::vector<IdealClass> queue{a.zero()};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto& g : gens) {
      auto x = a.add(queue[i], g);
      if (s.insert(x).second) queue.push_back(x);
    }
  return s;
}

inline std::set<IdealClass> as_set(const ClassSubgroup& h) {
  auto e = h.elements();
  return {e.begin(), e.end()};
}

/// A^t inside B by enumeration.
inline std::set<IdealClass> power_set(const FiniteAbelianGroup& amb, const std::set<IdealClass>& a, std::int64_t twice_t,
                                      const std::set<IdealClass>& b) {
  if (twice_t % 2 == 0) {
    std::set<IdealClass> out;
    for (auto& x : a) out.insert(amb.scale(x, twice_t / 2));
    return out;
  }
  std::set<IdealClass> target;
  for (auto& x : a) target.insert(amb.scale(x, twice_t));
  std::set<IdealClass> out;
  for (auto& x : b)
    if (target.count(amb.scale(x, 2))) out.insert(x);
  return out;
}

// ---------------------------------------------------------------------------
// Ideal arithmetic in the maximal order of Q(sqrt(D)), D < 0 fundamental.
// Elements (u + v sqrt(D)) / 2 are pairs (u, v); Z-coordinates use the basis {1, w}, w = (D + sqrt(D)) / 2.

struct Num {
  std::int64_t u, v;
};

inline Num mul(Num a, Num b, std::int64_t d) {
  return {(a.u * b.u + a.v * b.v * d) / 2, (a.u * b.v + a.v * b.u) / 2};
}

/// (x, y) with element = x + y w.
inline std::pair<std::int64_t, std::int64_t> coords(Num a, std::int64_t d) { return {(a.u - a.v * d) / 2, a.v}; }

/// Ideal a Z + ((-b + sqrt D)/2) Z of the form (a, b, c).
inline std::pair<Num, Num> ideal_of(const steinitz::QuadForm& f) { return {{2 * f.a, 0}, {-f.b, 1}}; }

/// Form of the primitive part of the product ideal, reduced.
inline steinitz::QuadForm ideal_product_form(const steinitz::QuadForm& f, const steinitz::QuadForm& g) {
  const std::int64_t d = f.discriminant();
  auto [a1, b1] = ideal_of(f);
  auto [a2, b2] = ideal_of(g);
  std::vector<std::pair<std::int64_t, std::int64_t>> rows;
  for (auto x : {a1, b1})
    for (auto y : {a2, b2}) rows.push_back(coords(mul(x, y, d), d));
  // Z-lattice HNF: one generator (A, 0), another (B, C)
  std::int64_t c = 0;
  for (auto& r : rows) c = std::gcd(c, r.second);
  // combine to get a row (bx, c)
  std::int64_t acc = 0, bx = 0;
  for (auto& r : rows) {
    if (acc == 0) {
      acc = r.second;
      bx = r.first;
      continue;
    }
    auto [gg, s, t] = steinitz::nt::xgcd(acc, r.second);
    bx = s * bx + t * r.first;
    acc = gg;
  }
  if (acc < 0) bx = -bx;
  std::int64_t amod = 0;
  for (auto& r : rows) {
    // r - (r.second / c) * (bx, c) has zero second coordinate
    const std::int64_t k = r.second / c;
    amod = std::gcd(amod, r.first - k * bx);
  }
  amod = std::abs(amod);
  // ideal = [amod, bx + c w]; divide by content c
  const std::int64_t a = amod / c;
  const std::int64_t b0 = bx / c;
  // b0 + w = (2 b0 + D + sqrt D) / 2 = (-b + sqrt D)/2
  const std::int64_t b = -(2 * b0 + d);
  return steinitz::qf::reduce(steinitz::qf::with_c(a, steinitz::nt::mod(b, 2 * a), d));
}

/// Some reduced form representing the prime p, found by searching small (x, y).
inline std::optional<steinitz::QuadForm> representing_form(std::int64_t p, std::int64_t d) {
  for (auto& f : steinitz::qf::reduced_forms(d))
    for (std::int64_t x = 0; f.a * x * x <= 4 * p; ++x)
      for (std::int64_t y = -200; y <= 200; ++y)
        if (f.a * x * x + f.b * x * y + f.c * y * y == p) return f;
  return std::nullopt;
}

/// Set of reduced forms generated by `gens` under ideal multiplication.
inline std::set<steinitz::QuadForm> form_span(std::int64_t d, const std::vector<steinitz::QuadForm>& gens) {
  auto one = steinitz::qf::principal(d);
  std::set<steinitz::QuadForm> s{one};
  std::vector<steinitz::QuadForm> queue{one};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto& g : gens) {
      auto x = ideal_product_form(queue[i], g);
      if (s.insert(x).second) queue.push_back(x);
    }
  return s;
}

inline steinitz::QuadForm form_power(const steinitz::QuadForm& f, std::int64_t k) {
  auto r = steinitz::qf::principal(f.discriminant());
  for (std::int64_t i = 0; i < k; ++i) r = ideal_product_form(r, f);
  return r;
}

/// W(k, (m, S)) for imaginary quadratic k by direct representation of primes and Frobenius
/// orders computed from norm residues. Returns the set of reduced forms in W.
inline std::set<steinitz::QuadForm> w_by_representation(std::int64_t dfield, std::int64_t m,
                                                        const std::vector<std::int64_t>& s, std::int64_t bound) {
  const std::int64_t d = steinitz::nt::imag_quadratic_discriminant(dfield);
  std::set<std::int64_t> sset;
  for (auto x : s) sset.insert(steinitz::nt::mod(x, m));
  auto frob_order = [&](std::int64_t norm) {
    std::int64_t x = steinitz::nt::mod(norm, m), f = 1;
    while (!sset.count(x)) {
      x = steinitz::nt::mod(x * norm, m);
      ++f;
    }
    return f;
  };
  std::vector<steinitz::QuadForm> gens;
  for (std::int64_t p = 2; p <= bound; ++p) {
    if (!steinitz::nt::is_prime(p) || (-d) % p == 0 || std::gcd(p, m) != 1) continue;
    auto f = representing_form(p, d);
    if (!f) continue;  // inert: principal class, contributes nothing
    const auto e = frob_order(p);
    gens.push_back(form_power(*f, e));
    gens.push_back(form_power(steinitz::qf::inverse(*f), e));
  }
  return form_span(d, gens);
}

/// T_m(k) for imaginary quadratic k sampled from norms of primes (density argument).
inline std::set<std::int64_t> gal_by_norms(std::int64_t dfield, std::int64_t m, std::int64_t bound) {
  const std::int64_t d = steinitz::nt::imag_quadratic_discriminant(dfield);
  std::set<std::int64_t> gens;
  for (std::int64_t p = 2; p <= bound; ++p) {
    if (!steinitz::nt::is_prime(p) || (-d) % p == 0 || std::gcd(p, m) != 1) continue;
    const bool split = representing_form(p, d).has_value();
    gens.insert(steinitz::nt::mod(split ? p : p * p, m));
  }
  std::set<std::int64_t> out{steinitz::nt::mod(1, m)};
  std::vector<std::int64_t> queue(out.begin(), out.end());
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto g : gens) {
      auto x = steinitz::nt::mod(queue[i] * g, m);
      if (out.insert(x).second) queue.push_back(x);
    }
  return out;
}

} // namespace oracle
