#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "steinitz/error.hpp"
#include "steinitz/numtheory.hpp"

namespace steinitz {

/// Units of Z/mZ as canonical residues. (Z/1Z)^x is {0}.
inline std::vector<std::int64_t> unit_residues(std::int64_t m) {
  if (m < 1) throw SpecError("modulus must be positive");
  if (m == 1) return {0};
  std::vector<std::int64_t> out;
  for (std::int64_t a = 1; a < m; ++a)
    if (std::gcd(a, m) == 1) out.push_back(a);
  return out;
}

/// A subgroup of (Z/mZ)^x stored as a sorted member list.
class ResidueSubgroup {
public:
  ResidueSubgroup() : ResidueSubgroup(1, {0}) {}

  ResidueSubgroup(std::int64_t modulus, std::vector<std::int64_t> members)
      : modulus_(modulus), members_(std::move(members)) {
    if (modulus_ < 1) throw SpecError("residue subgroup: modulus must be positive");
    for (auto& a : members_) a = nt::mod(a, modulus_);
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    validate();
  }

  static ResidueSubgroup full(std::int64_t m) { return {m, unit_residues(m)}; }
  static ResidueSubgroup trivial(std::int64_t m) { return {m, {1}}; }

  /// Subgroup generated by `gens` (each must be a unit mod m).
  static ResidueSubgroup generated(std::int64_t m, const std::vector<std::int64_t>& gens) {
    std::vector<std::int64_t> elems{nt::mod(1, m)};
    std::vector<char> seen(static_cast<std::size_t>(m), 0);
    seen[static_cast<std::size_t>(elems[0])] = 1;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (auto g : gens) {
        if (std::gcd(nt::mod(g, m), m) != 1 && m > 1)
          throw SpecError("residue subgroup: generator " + std::to_string(g) + " is not a unit mod " +
                          std::to_string(m));
        auto x = nt::mod(elems[i] * nt::mod(g, m), m);
        if (!seen[static_cast<std::size_t>(x)]) {
          seen[static_cast<std::size_t>(x)] = 1;
          elems.push_back(x);
        }
      }
    }
    return {m, std::move(elems)};
  }

  std::int64_t modulus() const { return modulus_; }
  const std::vector<std::int64_t>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  bool contains(std::int64_t a) const {
    return std::binary_search(members_.begin(), members_.end(), nt::mod(a, modulus_));
  }

  bool is_subset_of(const ResidueSubgroup& other) const {
    same_modulus(other);
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
  }

  ResidueSubgroup intersect(const ResidueSubgroup& other) const {
    same_modulus(other);
    std::vector<std::int64_t> out;
    std::set_intersection(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                          std::back_inserter(out));
    return {modulus_, std::move(out)};
  }

  /// Image under reduction Z/mZ -> Z/dZ for d | m.
  ResidueSubgroup reduce(std::int64_t d) const {
    if (d < 1 || modulus_ % d != 0)
      throw SpecError("cannot reduce modulus " + std::to_string(modulus_) + " to " + std::to_string(d));
    std::vector<std::int64_t> out;
    out.reserve(members_.size());
    for (auto a : members_) out.push_back(a % d);
    return {d, std::move(out)};
  }

  /// Elements of `this` (mod M) whose reduction mod `small.modulus()` lies in `small`.
  ResidueSubgroup preimage_of(const ResidueSubgroup& small) const {
    if (modulus_ % small.modulus() != 0) throw SpecError("preimage: modulus does not divide");
    std::vector<std::int64_t> out;
    for (auto a : members_)
      if (small.contains(a % small.modulus())) out.push_back(a);
    return {modulus_, std::move(out)};
  }

  /// Least f >= 1 with a^f in this subgroup.
  std::int64_t order_modulo(std::int64_t a) const {
    a = nt::mod(a, modulus_);
    std::int64_t x = a;
    for (std::int64_t f = 1; f <= modulus_ + 1; ++f) {
      if (contains(x)) return f;
      x = nt::mod(x * a, modulus_);
    }
    throw SpecError("residue " + std::to_string(a) + " has no power in the subgroup");
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < members_.size(); ++i) os << (i ? "," : "") << members_[i];
    os << "} mod " << modulus_;
    return os.str();
  }

  friend bool operator==(const ResidueSubgroup&, const ResidueSubgroup&) = default;

private:
  void same_modulus(const ResidueSubgroup& other) const {
    if (other.modulus_ != modulus_) throw SpecError("residue subgroups with different moduli");
  }

  void validate() const {
    if (members_.empty() || !contains(1))
      throw SpecError("residue subgroup mod " + std::to_string(modulus_) + " must contain 1");
    for (auto a : members_) {
      if (modulus_ > 1 && std::gcd(a, modulus_) != 1)
        throw SpecError("residue " + std::to_string(a) + " is not a unit mod " + std::to_string(modulus_));
      for (auto b : members_)
        if (!contains(a * b))
          throw SpecError("residue set " + to_string() + " is not closed under multiplication");
    }
  }

  std::int64_t modulus_;
  std::vector<std::int64_t> members_;
};

inline std::ostream& operator<<(std::ostream& os, const ResidueSubgroup& s) { return os << s.to_string(); }

} // namespace steinitz
