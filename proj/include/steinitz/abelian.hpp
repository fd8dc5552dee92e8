#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "steinitz/error.hpp"
#include "steinitz/numtheory.hpp"

namespace steinitz {

/// Exponent vector of an element of a FiniteAbelianGroup.
using IdealClass = std::vector<std::int64_t>;

/// Non-negative half-integer t = twice / 2.
class HalfInteger {
public:
  constexpr HalfInteger() = default;
  static constexpr HalfInteger from_twice(std::int64_t twice) { return HalfInteger(twice); }
  static constexpr HalfInteger integer(std::int64_t n) { return HalfInteger(2 * n); }

  /// Parses "3", "7/2".
  static HalfInteger parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return integer(std::stoll(s));
      if (s.substr(slash + 1) != "2") throw SpecError("half-integer denominator must be 2: " + s);
      return from_twice(std::stoll(s.substr(0, slash)));
    } catch (const std::logic_error&) {
      throw SpecError("malformed half-integer: " + s);
    }
  }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  std::string to_string() const {
    return is_integer() ? std::to_string(twice_ / 2) : std::to_string(twice_) + "/2";
  }

  friend constexpr bool operator==(HalfInteger, HalfInteger) = default;

private:
  constexpr explicit HalfInteger(std::int64_t twice) : twice_(twice) {}
  std::int64_t twice_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, HalfInteger t) { return os << t.to_string(); }

/// Z/d1 x ... x Z/dr with d1 | d2 | ... | dr.
class FiniteAbelianGroup {
public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<std::int64_t> divisors) : d_(std::move(divisors)) {
    for (std::size_t i = 0; i < d_.size(); ++i) {
      if (d_[i] < 1) throw SpecError("invariant factors must be positive");
      if (i + 1 < d_.size() && d_[i + 1] % d_[i] != 0)
        throw SpecError("invariant factors must form a divisibility chain");
    }
  }

  const std::vector<std::int64_t>& divisors() const { return d_; }
  std::size_t rank() const { return d_.size(); }

  std::int64_t order() const {
    std::int64_t n = 1;
    for (auto d : d_) n *= d;
    return n;
  }

  IdealClass zero() const { return IdealClass(d_.size(), 0); }

  IdealClass reduce(IdealClass v) const {
    check(v);
    for (std::size_t i = 0; i < d_.size(); ++i) v[i] = nt::mod(v[i], d_[i]);
    return v;
  }

  IdealClass add(const IdealClass& a, const IdealClass& b) const {
    check(a);
    check(b);
    IdealClass c(d_.size());
    for (std::size_t i = 0; i < d_.size(); ++i) c[i] = nt::mod(a[i] + b[i], d_[i]);
    return c;
  }

  IdealClass scale(const IdealClass& a, std::int64_t k) const {
    check(a);
    IdealClass c(d_.size());
    for (std::size_t i = 0; i < d_.size(); ++i)
      c[i] = static_cast<std::int64_t>(nt::mod(static_cast<std::int64_t>((__int128)a[i] * k % d_[i]), d_[i]));
    return c;
  }

  bool is_zero(const IdealClass& a) const {
    for (std::size_t i = 0; i < d_.size(); ++i)
      if (nt::mod(a[i], d_[i]) != 0) return false;
    return true;
  }

  std::int64_t element_order(const IdealClass& a) const {
    check(a);
    std::int64_t o = 1;
    for (std::size_t i = 0; i < d_.size(); ++i) o = std::lcm(o, d_[i] / std::gcd(nt::mod(a[i], d_[i]), d_[i]));
    return o;
  }

  /// All elements in lexicographic order of exponent vectors.
  std::vector<IdealClass> elements() const {
    std::vector<IdealClass> out;
    IdealClass v = zero();
    while (true) {
      out.push_back(v);
      std::size_t i = 0;
      for (; i < d_.size(); ++i) {
        if (++v[i] < d_[i]) break;
        v[i] = 0;
      }
      if (i == d_.size()) break;
    }
    return out;
  }

  void check(const IdealClass& a) const {
    if (a.size() != d_.size())
      throw SpecError("class vector has length " + std::to_string(a.size()) + ", expected " +
                      std::to_string(d_.size()));
  }

  std::string to_string() const {
    if (d_.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < d_.size(); ++i) os << (i ? " x " : "") << "Z/" << d_[i];
    return os.str();
  }

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

private:
  std::vector<std::int64_t> d_;
};

namespace detail {

/// Upper-triangular Hermite normal form of the lattice spanned by `rows` together with
/// moduli[i] * e_i. Returns an n x n matrix with positive pivots h_ii dividing moduli[i] and
/// 0 <= h_ij < h_jj above the diagonal; entries are kept reduced mod moduli.
inline std::vector<std::vector<std::int64_t>> hnf_mod(std::vector<std::vector<std::int64_t>> rows,
                                                      const std::vector<std::int64_t>& moduli) {
  const std::size_t n = moduli.size();
  auto reduce_row = [&](std::vector<std::int64_t>& r, std::size_t from) {
    for (std::size_t j = from; j < n; ++j) r[j] = nt::mod(r[j], moduli[j]);
  };
  for (auto& r : rows) {
    if (r.size() != n) throw SpecError("lattice row has wrong length");
    reduce_row(r, 0);
  }
  // The modulus rows stay intact until their own column, which keeps the reductions valid.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::int64_t> r(n, 0);
    r[i] = moduli[i];
    rows.push_back(std::move(r));
  }
  std::vector<std::vector<std::int64_t>> h(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::int64_t> pivot;
    std::vector<std::vector<std::int64_t>> rest;
    for (auto& r : rows) {
      if (r[c] == 0) {
        rest.push_back(std::move(r));
      } else if (pivot.empty()) {
        pivot = std::move(r);
      } else {
        while (r[c] != 0) {
          const std::int64_t q = pivot[c] / r[c];
          for (std::size_t j = c; j < n; ++j) pivot[j] -= q * r[j];
          reduce_row(pivot, c + 1);
          std::swap(pivot, r);
        }
        rest.push_back(std::move(r));
      }
    }
    engine_check(!pivot.empty(), "hnf: missing modulus row");
    if (pivot[c] < 0)
      for (std::size_t j = c; j < n; ++j) pivot[j] = -pivot[j];
    reduce_row(pivot, c + 1);
    h[c] = std::move(pivot);
    rows = std::move(rest);
  }
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::int64_t q = (h[i][j] - nt::mod(h[i][j], h[j][j])) / h[j][j];
      if (q != 0)
        for (std::size_t t = j; t < n; ++t) h[i][t] -= q * h[j][t];
    }
  return h;
}

} // namespace detail

/// A subgroup of a FiniteAbelianGroup in canonical form: the Hermite normal form of the
/// preimage lattice in Z^r (which contains diag(d)). Equal subgroups have identical forms.
class ClassSubgroup {
public:
  ClassSubgroup() = default;

  ClassSubgroup(FiniteAbelianGroup ambient, const std::vector<IdealClass>& gens) : ambient_(std::move(ambient)) {
    for (auto& g : gens) ambient_.check(g);
    hnf_ = detail::hnf_mod(gens, ambient_.divisors());
  }

  static ClassSubgroup trivial(const FiniteAbelianGroup& a) { return ClassSubgroup(a, {}); }
  static ClassSubgroup full(const FiniteAbelianGroup& a) {
    std::vector<IdealClass> gens;
    for (std::size_t i = 0; i < a.rank(); ++i) {
      IdealClass e = a.zero();
      e[i] = 1;
      gens.push_back(std::move(e));
    }
    return ClassSubgroup(a, gens);
  }

  const FiniteAbelianGroup& ambient() const { return ambient_; }
  const std::vector<std::vector<std::int64_t>>& hnf() const { return hnf_; }

  std::int64_t order() const {
    std::int64_t n = 1;
    for (std::size_t i = 0; i < hnf_.size(); ++i) n *= ambient_.divisors()[i] / hnf_[i][i];
    return n;
  }
  std::int64_t index() const { return ambient_.order() / order(); }
  bool is_trivial() const { return order() == 1; }

  /// Nonzero canonical rows, reduced into the ambient.
  std::vector<IdealClass> generators() const {
    std::vector<IdealClass> out;
    for (auto& r : hnf_) {
      auto v = ambient_.reduce(r);
      if (!ambient_.is_zero(v)) out.push_back(std::move(v));
    }
    return out;
  }

  bool contains(const IdealClass& x) const {
    ambient_.check(x);
    auto v = ambient_.reduce(x);
    const auto& d = ambient_.divisors();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] % hnf_[i][i] != 0) return false;
      const std::int64_t q = v[i] / hnf_[i][i];
      for (std::size_t j = i; j < v.size(); ++j) v[j] = nt::mod(v[j] - q * hnf_[i][j], d[j]);
    }
    return true;
  }

  bool includes(const ClassSubgroup& b) const {
    same_ambient(b);
    for (auto& g : b.generators())
      if (!contains(g)) return false;
    return true;
  }

  ClassSubgroup join(const ClassSubgroup& b) const {
    same_ambient(b);
    auto gens = generators();
    for (auto& g : b.generators()) gens.push_back(g);
    return ClassSubgroup(ambient_, gens);
  }

  ClassSubgroup meet(const ClassSubgroup& b) const {
    same_ambient(b);
    const std::size_t r = ambient_.rank();
    std::vector<std::int64_t> moduli = ambient_.divisors();
    moduli.insert(moduli.end(), ambient_.divisors().begin(), ambient_.divisors().end());
    std::vector<std::vector<std::int64_t>> rows;
    for (auto& a : generators()) {
      auto row = a;
      row.insert(row.end(), a.begin(), a.end());
      rows.push_back(std::move(row));
    }
    for (auto& g : b.generators()) {
      auto row = g;
      row.resize(2 * r, 0);
      rows.push_back(std::move(row));
    }
    return second_half(detail::hnf_mod(rows, moduli));
  }

  /// {a^k : a in this}.
  ClassSubgroup integer_power(std::int64_t k) const {
    std::vector<IdealClass> gens;
    for (auto& g : generators()) gens.push_back(ambient_.scale(g, k));
    return ClassSubgroup(ambient_, gens);
  }

  /// {x in ambient : 2x in this}.
  ClassSubgroup square_preimage() const {
    const std::size_t r = ambient_.rank();
    std::vector<std::int64_t> moduli = ambient_.divisors();
    moduli.insert(moduli.end(), ambient_.divisors().begin(), ambient_.divisors().end());
    std::vector<std::vector<std::int64_t>> rows;
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<std::int64_t> row(2 * r, 0);
      row[i] = 2;
      row[r + i] = 1;
      rows.push_back(std::move(row));
    }
    for (auto& g : generators()) {
      auto row = g;
      row.resize(2 * r, 0);
      rows.push_back(std::move(row));
    }
    return second_half(detail::hnf_mod(rows, moduli));
  }

  /// All members, lexicographic.
  std::vector<IdealClass> elements() const {
    std::vector<IdealClass> out;
    for (auto& x : ambient_.elements())
      if (contains(x)) out.push_back(std::move(x));
    return out;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "<";
    auto gens = generators();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      os << (i ? ", " : "") << "(";
      for (std::size_t j = 0; j < gens[i].size(); ++j) os << (j ? "," : "") << gens[i][j];
      os << ")";
    }
    os << "> of order " << order() << " in " << ambient_.to_string();
    return os.str();
  }

  friend bool operator==(const ClassSubgroup&, const ClassSubgroup&) = default;

private:
  void same_ambient(const ClassSubgroup& b) const {
    if (!(b.ambient_ == ambient_)) throw SpecError("class subgroups live in different ambient groups");
  }

  /// Rows of a doubled-width HNF whose pivot lies in the second half span the subgroup of
  /// second-half vectors with vanishing first half.
  ClassSubgroup second_half(const std::vector<std::vector<std::int64_t>>& h) const {
    const std::size_t r = ambient_.rank();
    std::vector<IdealClass> gens;
    for (std::size_t i = r; i < 2 * r; ++i) gens.emplace_back(h[i].begin() + static_cast<std::ptrdiff_t>(r), h[i].end());
    return ClassSubgroup(ambient_, gens);
  }

  FiniteAbelianGroup ambient_;
  std::vector<std::vector<std::int64_t>> hnf_;
};

inline std::ostream& operator<<(std::ostream& os, const ClassSubgroup& s) { return os << s.to_string(); }

/// A^t inside the ambient B: for integer t the t-th powers of A; for half-integer t the
/// elements x of B with x^2 in A^(2t).
inline ClassSubgroup power_subgroup(const ClassSubgroup& a, HalfInteger t, const ClassSubgroup& b) {
  if (t.twice() < 0) throw SpecError("power_subgroup: exponent must be non-negative");
  if (!b.includes(a)) throw SpecError("power_subgroup: A must be a subgroup of B");
  if (t.is_integer()) return a.integer_power(t.twice() / 2);
  return a.integer_power(t.twice()).square_preimage().meet(b);
}

} // namespace steinitz
