#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "steinitz/abelian.hpp"
#include "steinitz/error.hpp"
#include "steinitz/numtheory.hpp"

namespace steinitz {

/// Positive definite binary quadratic form a x^2 + b xy + c y^2.
struct QuadForm {
  std::int64_t a = 1, b = 0, c = 1;

  std::int64_t discriminant() const { return b * b - 4 * a * c; }

  bool is_reduced() const {
    if (!(std::abs(b) <= a && a <= c)) return false;
    if ((std::abs(b) == a || a == c) && b < 0) return false;
    return true;
  }

  friend bool operator==(const QuadForm&, const QuadForm&) = default;
  friend auto operator<=>(const QuadForm& x, const QuadForm& y) {
    return std::tie(x.a, x.b, x.c) <=> std::tie(y.a, y.b, y.c);
  }

  std::string to_string() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
  }
};

inline std::ostream& operator<<(std::ostream& os, const QuadForm& f) { return os << f.to_string(); }

namespace qf {

/// Form of discriminant d with the given a and b, c solved from the discriminant.
inline QuadForm with_c(std::int64_t a, std::int64_t b, std::int64_t d) {
  const std::int64_t num = b * b - d;
  engine_check(a > 0 && num % (4 * a) == 0, "quadratic form: b^2 - D not divisible by 4a");
  return {a, b, num / (4 * a)};
}

inline QuadForm reduce(QuadForm f) {
  const std::int64_t d = f.discriminant();
  if (d >= 0 || f.a <= 0) throw SpecError("reduce: form is not positive definite");
  while (true) {
    // normalize b into (-a, a]
    std::int64_t b = nt::mod(f.b, 2 * f.a);
    if (b > f.a) b -= 2 * f.a;
    f = with_c(f.a, b, d);
    if (f.a > f.c) {
      f = with_c(f.c, -f.b, d);
      continue;
    }
    break;
  }
  if (f.a == f.c && f.b < 0) f.b = -f.b;
  return f;
}

inline QuadForm principal(std::int64_t d) { return with_c(1, nt::mod(d, 2), d); }

inline QuadForm inverse(const QuadForm& f) { return reduce({f.a, -f.b, f.c}); }

/// Gaussian composition of primitive forms of the same discriminant, reduced.
inline QuadForm compose(QuadForm f1, QuadForm f2) {
  const std::int64_t d = f1.discriminant();
  if (f2.discriminant() != d) throw SpecError("compose: discriminants differ");
  if (f1.a > f2.a) std::swap(f1, f2);
  const std::int64_t s = (f1.b + f2.b) / 2;
  const std::int64_t n = f2.b - s;
  std::int64_t y1 = 0, dd = f1.a;
  if (f2.a % f1.a != 0) {
    auto [g, u, v] = nt::xgcd(f2.a, f1.a);
    (void)v;
    y1 = u;
    dd = g;
  }
  std::int64_t x2 = 0, y2 = -1, d1 = dd;
  if (s % dd != 0) {
    auto [g, x, y] = nt::xgcd(s, dd);
    x2 = x;
    y2 = -y;
    d1 = g;
  }
  const std::int64_t v1 = f1.a / d1, v2 = f2.a / d1;
  const std::int64_t r = nt::mod(static_cast<std::int64_t>(((__int128)y1 * y2 % v1 * n - (__int128)x2 * f2.c) % v1), v1);
  const std::int64_t b3 = f2.b + 2 * v2 * r;
  return reduce(with_c(v1 * v2, b3, d));
}

inline QuadForm power(const QuadForm& f, std::int64_t k) {
  QuadForm base = k < 0 ? inverse(f) : f;
  if (k < 0) k = -k;
  QuadForm r = principal(f.discriminant());
  while (k > 0) {
    if (k & 1) r = compose(r, base);
    base = compose(base, base);
    k >>= 1;
  }
  return r;
}

/// All primitive reduced forms of discriminant d < 0, sorted.
inline std::vector<QuadForm> reduced_forms(std::int64_t d) {
  if (d >= 0 || nt::mod(d, 4) > 1) throw SpecError("reduced_forms: need a negative discriminant = 0,1 mod 4");
  std::vector<QuadForm> out;
  for (std::int64_t a = 1; 3 * a * a <= -d; ++a)
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if (nt::mod(b - d, 2) != 0 || (b * b - d) % (4 * a) != 0) continue;
      QuadForm f = with_c(a, b, d);
      if (!f.is_reduced()) continue;
      if (std::gcd(std::gcd(f.a, std::abs(f.b)), f.c) != 1) continue;
      out.push_back(f);
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// A form (p, b, *) of discriminant d for a prime p with (d|p) = 1, choosing the least b >= 0.
inline QuadForm prime_form(std::int64_t p, std::int64_t d) {
  for (std::int64_t b = 0; b < 2 * p; ++b)
    if (nt::mod(b * b - d, 4 * p) == 0) return with_c(p, b, d);
  throw SpecError("prime_form: " + std::to_string(p) + " is not represented by discriminant " + std::to_string(d));
}

} // namespace qf

namespace detail {

/// Smith normal form D = U A V of a square integer matrix; returns (diagonal, V).
inline std::pair<std::vector<std::int64_t>, std::vector<std::vector<std::int64_t>>> smith_with_right_transform(
    std::vector<std::vector<std::int64_t>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<std::int64_t>> v(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1;
  auto col_op = [&](std::size_t i, std::size_t j, std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s) {
    // (col i, col j) <- (p col i + q col j, r col i + s col j)
    for (auto* m : {&a, &v})
      for (auto& row : *m) {
        const std::int64_t x = row[i], y = row[j];
        row[i] = p * x + q * y;
        row[j] = r * x + s * y;
      }
  };
  auto row_op = [&](std::size_t i, std::size_t j, std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t x = a[i][k], y = a[j][k];
      a[i][k] = p * x + q * y;
      a[j][k] = r * x + s * y;
    }
  };
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // move a nonzero entry of minimal absolute value to (t,t)
      std::size_t bi = n, bj = n;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (bi == n || std::abs(a[i][j]) < std::abs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == n) return {[&] {
                             std::vector<std::int64_t> diag(n);
                             for (std::size_t i = 0; i < n; ++i) diag[i] = std::abs(a[i][i]);
                             return diag;
                           }(),
                           v};
      if (bi != t) row_op(t, bi, 0, 1, 1, 0);
      if (bj != t) col_op(t, bj, 0, 1, 1, 0);
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        const std::int64_t q = a[i][t] / a[t][t];
        if (q) row_op(t, i, 1, 0, -q, 1);
        if (a[i][t]) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        const std::int64_t q = a[t][j] / a[t][t];
        if (q) col_op(t, j, 1, 0, -q, 1);
        if (a[t][j]) clean = false;
      }
      if (!clean) continue;
      // enforce divisibility of the remaining block
      bool divides = true;
      for (std::size_t i = t + 1; i < n && divides; ++i)
        for (std::size_t j = t + 1; j < n && divides; ++j)
          if (a[i][j] % a[t][t] != 0) {
            row_op(t, i, 1, 1, 0, 1);  // row t += row i
            divides = false;
          }
      if (divides) break;
    }
  }
  std::vector<std::int64_t> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = std::abs(a[i][i]);
  return {diag, v};
}

} // namespace detail

/// Class group of the discriminant d < 0 with a canonical invariant-factor basis and a
/// reduced form attached to every class.
class FormClassGroup {
public:
  explicit FormClassGroup(std::int64_t d) : d_(d) {
    forms_ = qf::reduced_forms(d);
    for (std::size_t i = 0; i < forms_.size(); ++i) index_[forms_[i]] = i;
    build_structure();
  }

  std::int64_t discriminant() const { return d_; }
  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<QuadForm>& forms() const { return forms_; }

  IdealClass class_of(const QuadForm& f) const {
    auto it = index_.find(qf::reduce(f));
    engine_check(it != index_.end(), "class_of: form of a different discriminant");
    return coords_[it->second];
  }

  QuadForm form_of(const IdealClass& c) const {
    auto v = group_.reduce(c);
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (coords_[i] == v) return forms_[i];
    throw EngineAssertion("form_of: class vector has no form");
  }

private:
  void build_structure() {
    const QuadForm e = qf::principal(d_);
    // greedy generators with discrete logs of the subgroup generated so far
    std::vector<QuadForm> gens;
    std::map<QuadForm, std::vector<std::int64_t>> logs{{e, {}}};
    std::vector<std::vector<std::int64_t>> relations;
    for (const auto& f : forms_) {
      if (logs.count(f)) continue;
      const std::size_t s = gens.size();
      gens.push_back(f);
      for (auto& [form, v] : logs) v.push_back(0);
      // order of f modulo the current subgroup
      std::int64_t o = 1;
      QuadForm p = f;
      while (!logs.count(p)) {
        p = qf::compose(p, f);
        ++o;
      }
      std::vector<std::int64_t> rel = logs.at(p);
      for (auto& x : rel) x = -x;
      rel[s] += o;
      for (auto& r : relations) r.push_back(0);
      relations.push_back(rel);
      // extend the table by the cosets f^1..f^(o-1)
      std::vector<std::pair<QuadForm, std::vector<std::int64_t>>> old(logs.begin(), logs.end());
      QuadForm fk = e;
      for (std::int64_t k = 1; k < o; ++k) {
        fk = qf::compose(fk, f);
        for (auto& [form, v] : old) {
          auto w = v;
          w[s] = k;
          logs.emplace(qf::compose(form, fk), std::move(w));
        }
      }
    }
    engine_check(logs.size() == forms_.size(), "class group: generators do not reach every reduced form");
    const std::size_t s = gens.size();
    auto [diag, v] = detail::smith_with_right_transform(relations);
    // keep nontrivial invariant factors in ascending order
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < s; ++i)
      if (diag[i] != 1) keep.push_back(i);
    std::sort(keep.begin(), keep.end(), [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });
    std::vector<std::int64_t> divisors;
    for (auto i : keep) divisors.push_back(diag[i]);
    group_ = FiniteAbelianGroup(divisors);
    coords_.assign(forms_.size(), {});
    for (auto& [form, x] : logs) {
      IdealClass c;
      for (auto i : keep) {
        __int128 acc = 0;
        for (std::size_t j = 0; j < s; ++j) acc += (__int128)x[j] * v[j][i];
        c.push_back(nt::mod(static_cast<std::int64_t>(acc % diag[i]), diag[i]));
      }
      coords_[index_.at(form)] = std::move(c);
    }
  }

  std::int64_t d_;
  std::vector<QuadForm> forms_;
  std::map<QuadForm, std::size_t> index_;
  FiniteAbelianGroup group_;
  std::vector<IdealClass> coords_;
};

} // namespace steinitz
