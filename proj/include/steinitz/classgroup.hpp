#pragma once

#include <cstdint>
#include <optional>

#include "steinitz/abelian.hpp"
#include "steinitz/efield.hpp"
#include "steinitz/field.hpp"

namespace steinitz {

inline constexpr std::int64_t kDefaultPrimeBound = 1000;
inline constexpr int kStabilityWindow = 50;

struct WReport {
  ClassSubgroup w;
  /// Norm of the last stream entry that enlarged the subgroup (0 if none did).
  std::int64_t stable_after = 0;
  /// Contributing entries seen after the last enlargement.
  int contributors_since_change = 0;
  /// No effective Chebotarev bound backs the result.
  bool heuristic = true;
  /// Unchanged over the last kStabilityWindow contributing entries.
  bool stable = false;
  bool from_declared = false;
  /// Present when declared data exists: whether the stream result equals it.
  std::optional<bool> declared_agrees;
};

/// Subgroup generated by class^f over the prime stream, f the order of (norm mod m) in T_m / S.
inline WReport w_subgroup_from_stream(const FieldSpec& k, const EFieldDescriptor& e, std::int64_t bound) {
  const auto& cl = k.class_group();
  const auto t = k.gal_subgroup(e.m);
  if (!e.s.is_subset_of(t)) throw SpecError("w_subgroup: S is not contained in T_m(k)");
  WReport r;
  std::vector<IdealClass> gens;
  r.w = ClassSubgroup::trivial(cl);
  for (auto& entry : k.prime_norm_class_stream(bound)) {
    if (std::gcd(entry.norm, e.m) != 1) continue;
    const std::int64_t res = nt::mod(entry.norm, e.m);
    if (!t.contains(res))
      throw DeclaredDataError("prime norm " + std::to_string(entry.norm) + " is not in T_" + std::to_string(e.m) +
                              " = " + t.to_string());
    const auto f = e.s.order_modulo(res);
    auto x = cl.scale(entry.cls, f);
    if (r.w.contains(x)) {
      ++r.contributors_since_change;
      continue;
    }
    gens.push_back(std::move(x));
    r.w = ClassSubgroup(cl, gens);
    r.stable_after = entry.norm;
    r.contributors_since_change = 0;
  }
  r.stable = r.contributors_since_change >= kStabilityWindow;
  r.heuristic = !(r.w == ClassSubgroup::full(cl));
  return r;
}

/// W(k, E): the image in Cl(k) of norms from E. Declared data takes precedence; the stream
/// result may not leave the declared subgroup.
inline WReport w_subgroup(const FieldSpec& k, const EFieldDescriptor& e, std::int64_t bound = kDefaultPrimeBound) {
  auto r = w_subgroup_from_stream(k, e, bound);
  if (auto declared = k.declared_w_for(e.s)) {
    ClassSubgroup dw(k.class_group(), *declared);
    if (!dw.includes(r.w))
      throw DeclaredDataError("declared W for " + e.to_string() + " misses classes generated by primes: stream gives " +
                              r.w.to_string() + ", declared " + dw.to_string());
    r.declared_agrees = dw == r.w;
    r.w = dw;
    r.from_declared = true;
    r.heuristic = false;
  }
  return r;
}

/// W(k, m)^n is contained in W(k, mn) when every prime dividing n divides m.
inline bool check_26acta(const FieldSpec& k, std::int64_t m, std::int64_t n, std::int64_t bound = kDefaultPrimeBound) {
  if (m < 1 || n < 1) throw SpecError("check_26acta: m and n must be positive");
  for (auto p : nt::prime_divisors(n))
    if (m % p != 0) throw SpecError("check_26acta: prime " + std::to_string(p) + " divides n but not m");
  const auto full = ClassSubgroup::full(k.class_group());
  const auto wm = w_subgroup(k, cyclotomic_descriptor(m), bound).w;
  const auto wmn = w_subgroup(k, cyclotomic_descriptor(m * n), bound).w;
  return wmn.includes(power_subgroup(wm, HalfInteger::integer(n), full));
}

} // namespace steinitz
