#pragma once

#include <cstdint>
#include <numeric>
#include <tuple>
#include <vector>

#include "steinitz/error.hpp"

namespace steinitz::nt {

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

/// Prime factors with multiplicity, ascending: 12 -> {(2,2),(3,1)}.
inline std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (auto [p, e] : factor(n)) out.push_back(p);
  return out;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

/// Greatest power of `ell` dividing `n`.
inline std::int64_t ell_part(std::int64_t n, std::int64_t ell) {
  std::int64_t r = 1;
  while (n % ell == 0) {
    n /= ell;
    r *= ell;
  }
  return r;
}

/// If n = ell^k for a prime ell and k >= 1, returns (ell, k); otherwise (0, 0).
inline std::pair<std::int64_t, int> prime_power(std::int64_t n) {
  auto f = factor(n);
  if (f.size() != 1) return {0, 0};
  return f.front();
}

inline bool is_squarefree(std::int64_t n) {
  for (auto [p, e] : factor(n))
    if (e > 1) return false;
  return true;
}

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t r = 1;
  b = mod(b, m);
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>((__int128)r * b % m);
    b = static_cast<std::int64_t>((__int128)b * b % m);
    e >>= 1;
  }
  return r;
}

/// Returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
inline std::tuple<std::int64_t, std::int64_t, std::int64_t> xgcd(std::int64_t a, std::int64_t b) {
  std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    std::int64_t q = a / b;
    std::tie(a, b) = std::make_tuple(b, a - q * b);
    std::tie(x0, x1) = std::make_tuple(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_tuple(y1, y0 - q * y1);
  }
  if (a < 0) return {-a, -x0, -y0};
  return {a, x0, y0};
}

/// Kronecker symbol (a | n) for n > 0.
inline int kronecker(std::int64_t a, std::int64_t n) {
  if (n <= 0) throw SpecError("kronecker: modulus must be positive");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    std::int64_t r = mod(a, 8);
    if (r == 0 || r == 2 || r == 4 || r == 6) return 0;
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol (a | n), n odd.
  a = mod(a, n);
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

/// Fundamental discriminant of Q(sqrt(-d)) for squarefree d > 0.
inline std::int64_t imag_quadratic_discriminant(std::int64_t d) {
  return (d % 4 == 3) ? -d : -4 * d;
}

} // namespace steinitz::nt
