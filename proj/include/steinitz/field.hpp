#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "steinitz/abelian.hpp"
#include "steinitz/error.hpp"
#include "steinitz/numtheory.hpp"
#include "steinitz/quadform.hpp"
#include "steinitz/residue.hpp"

namespace steinitz {

struct PrimeNormClass {
  std::int64_t norm;
  IdealClass cls;
};

struct DeclaredW {
  ResidueSubgroup s;
  std::vector<IdealClass> generators;
};

/// Arithmetic provider for a number field k: Galois groups of k(zeta_m)/k as subgroups of
/// (Z/mZ)^x, the class group, and ideal classes of primes by norm.
class FieldSpec {
public:
  enum class Kind { rationals, imag_quadratic, declared };

  static FieldSpec rationals() {
    FieldSpec k;
    k.kind_ = Kind::rationals;
    k.name_ = "Q";
    return k;
  }

  static FieldSpec imag_quadratic(std::int64_t d) {
    if (d < 1 || !nt::is_squarefree(d)) throw SpecError("imag_quadratic: d must be a squarefree positive integer");
    FieldSpec k;
    k.kind_ = Kind::imag_quadratic;
    k.d_ = d;
    k.disc_ = nt::imag_quadratic_discriminant(d);
    k.forms_ = std::make_shared<FormClassGroup>(k.disc_);
    k.class_group_ = k.forms_->group();
    k.name_ = "Q(sqrt(-" + std::to_string(d) + "))";
    return k;
  }

  /// Declared data. `gal` maps moduli to T_m; declared_w maps (m, S) to W generators.
  static FieldSpec declared(std::map<std::int64_t, ResidueSubgroup> gal, FiniteAbelianGroup cl,
                            std::vector<PrimeNormClass> primes, std::vector<DeclaredW> declared_w,
                            std::string name = "declared") {
    FieldSpec k;
    k.kind_ = Kind::declared;
    k.gal_ = std::move(gal);
    k.class_group_ = std::move(cl);
    k.primes_ = std::move(primes);
    k.declared_w_ = std::move(declared_w);
    k.name_ = std::move(name);
    k.validate_declared();
    return k;
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  std::int64_t d() const { return d_; }
  std::int64_t discriminant() const { return disc_; }
  const FiniteAbelianGroup& class_group() const { return class_group_; }
  const FormClassGroup* forms() const { return forms_.get(); }
  const std::vector<DeclaredW>& declared_w() const { return declared_w_; }
  const std::map<std::int64_t, ResidueSubgroup>& declared_gal() const { return gal_; }

  /// T_m(k) = image of Gal(k(zeta_m)/k) in (Z/mZ)^x.
  ResidueSubgroup gal_subgroup(std::int64_t m) const {
    if (m < 1) throw SpecError("gal_subgroup: modulus must be positive");
    {
      std::lock_guard lock(gal_cache_->mu);
      if (auto it = gal_cache_->map.find(m); it != gal_cache_->map.end()) return it->second;
    }
    auto t = compute_gal_subgroup(m);
    std::lock_guard lock(gal_cache_->mu);
    return gal_cache_->map.emplace(m, std::move(t)).first->second;
  }

  bool has_gal_data(std::int64_t m) const {
    if (kind_ != Kind::declared || m <= 2) return true;
    for (auto& [big, t] : gal_)
      if (big % m == 0) return true;
    return false;
  }

  /// (norm, class) for primes of k above rational primes p <= bound that are unramified in k.
  std::vector<PrimeNormClass> prime_norm_class_stream(std::int64_t bound) const {
    if (bound < 2) throw SpecError("prime stream: bound must be at least 2");
    std::vector<PrimeNormClass> out;
    switch (kind_) {
    case Kind::rationals:
      for (std::int64_t p = 2; p <= bound; ++p)
        if (nt::is_prime(p)) out.push_back({p, {}});
      break;
    case Kind::imag_quadratic:
      for (std::int64_t p = 2; p <= bound; ++p) {
        if (!nt::is_prime(p)) continue;
        const int chi = nt::kronecker(disc_, p);
        if (chi == 0) continue;
        if (chi == -1) {
          out.push_back({p * p, class_group_.zero()});
          continue;
        }
        auto f = qf::prime_form(p, disc_);
        out.push_back({p, forms_->class_of(f)});
        out.push_back({p, forms_->class_of({f.a, -f.b, f.c})});
      }
      break;
    case Kind::declared:
      for (auto& e : primes_) {
        auto pp = nt::prime_power(e.norm);
        if (pp.first <= bound) out.push_back(e);
      }
      if (out.empty()) throw SpecError("declared field '" + name_ + "' has no prime entries below the bound");
      break;
    }
    return out;
  }

  /// A declared W subgroup for the descriptor (m, S), if the field carries one.
  std::optional<std::vector<IdealClass>> declared_w_for(const ResidueSubgroup& s) const {
    for (auto& w : declared_w_)
      if (w.s == s) return w.generators;
    return std::nullopt;
  }

private:
  ResidueSubgroup compute_gal_subgroup(std::int64_t m) const {
    switch (kind_) {
    case Kind::rationals: return ResidueSubgroup::full(m);
    case Kind::imag_quadratic: {
      if (m == 1) return ResidueSubgroup::full(1);
      const std::int64_t big = std::lcm(-disc_, m);
      std::vector<std::int64_t> out;
      for (std::int64_t a = 1; a < big; ++a)
        if (std::gcd(a, big) == 1 && nt::kronecker(disc_, a) == 1) out.push_back(a % m);
      return ResidueSubgroup(m, std::move(out));
    }
    case Kind::declared: {
      if (m <= 2) return ResidueSubgroup::full(m);
      if (auto it = gal_.find(m); it != gal_.end()) return it->second;
      for (auto& [big, t] : gal_)
        if (big % m == 0) return t.reduce(m);
      throw SpecError("declared field '" + name_ + "' has no Galois data for modulus " + std::to_string(m));
    }
    }
    throw EngineAssertion("unreachable field kind");
  }

  void validate_declared() {
    for (auto& [m, t] : gal_) {
      if (t.modulus() != m) throw SpecError("declared Galois table keyed " + std::to_string(m) + " has wrong modulus");
      for (auto& [m2, t2] : gal_)
        if (m % m2 == 0 && !(t.reduce(m2) == t2))
          throw DeclaredDataError("declared Galois data is not tower consistent between moduli " + std::to_string(m) +
                                  " and " + std::to_string(m2));
    }
    for (auto& e : primes_) {
      if (nt::prime_power(e.norm).first == 0)
        throw SpecError("declared prime norm " + std::to_string(e.norm) + " is not a prime power");
      class_group_.check(e.cls);
      e.cls = class_group_.reduce(e.cls);
    }
    for (auto& w : declared_w_) {
      if (!has_gal_data(w.s.modulus()))
        throw SpecError("declared W entry for modulus " + std::to_string(w.s.modulus()) + " lacks Galois data");
      if (!w.s.is_subset_of(gal_subgroup(w.s.modulus())))
        throw DeclaredDataError("declared W entry " + w.s.to_string() + " is not inside T_m");
      for (auto& g : w.generators) class_group_.check(g);
    }
  }

  Kind kind_ = Kind::rationals;
  std::string name_;
  std::int64_t d_ = 0;
  std::int64_t disc_ = 1;
  std::shared_ptr<const FormClassGroup> forms_;
  FiniteAbelianGroup class_group_;
  std::map<std::int64_t, ResidueSubgroup> gal_;
  std::vector<PrimeNormClass> primes_;
  std::vector<DeclaredW> declared_w_;
  struct GalCache {
    std::mutex mu;
    std::map<std::int64_t, ResidueSubgroup> map;
  };
  std::shared_ptr<GalCache> gal_cache_ = std::make_shared<GalCache>();
};

inline FieldSpec parse_field_spec(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw SpecError("field spec must be an object with a 'kind'");
  try {
    const auto kind = j.at("kind").get<std::string>();
    FieldSpec k;
    if (kind == "rationals") {
      k = FieldSpec::rationals();
    } else if (kind == "imag_quadratic") {
      k = FieldSpec::imag_quadratic(j.at("d").get<std::int64_t>());
    } else if (kind == "declared") {
      std::map<std::int64_t, ResidueSubgroup> gal;
      for (auto& [key, val] : j.at("gal").items()) {
        const auto m = std::stoll(key);
        gal.emplace(m, ResidueSubgroup(m, val.get<std::vector<std::int64_t>>()));
      }
      FiniteAbelianGroup cl(j.at("class_group").get<std::vector<std::int64_t>>());
      std::vector<PrimeNormClass> primes;
      for (auto& e : j.at("prime_norm_classes")) {
        if (!e.is_array() || e.size() != 2) throw SpecError("prime_norm_classes entries are [norm, class]");
        primes.push_back({e[0].get<std::int64_t>(), e[1].get<IdealClass>()});
      }
      std::vector<DeclaredW> dw;
      if (j.contains("declared_w"))
        for (auto& e : j.at("declared_w")) {
          const auto m = e.at("m").get<std::int64_t>();
          dw.push_back({ResidueSubgroup(m, e.at("s").get<std::vector<std::int64_t>>()),
                        e.at("w").get<std::vector<IdealClass>>()});
        }
      k = FieldSpec::declared(std::move(gal), std::move(cl), std::move(primes), std::move(dw));
    } else {
      throw SpecError("unknown field spec kind '" + kind + "'");
    }
    if (j.contains("name")) k.set_name(j.at("name").get<std::string>());
    return k;
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("malformed field spec: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw SpecError("malformed field spec: non-numeric modulus key");
  }
}

} // namespace steinitz
