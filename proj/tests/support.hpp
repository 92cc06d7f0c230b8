#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dimcf/dimcf.hpp"

namespace testing_support {

using namespace dimcf;

/// Minimal RAII wrapper over an MPFR value; the independent oracle for
/// everything transcendental or irrational.
class Mp {
 public:
  explicit Mp(mpfr_prec_t bits = 512) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  Mp(const Mp& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Mp& operator=(const Mp& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  ~Mp() { mpfr_clear(v_); }

  static Mp of(const Integer& x, mpfr_prec_t bits = 512) {
    Mp out(bits);
    mpfr_set_str(out.v_, x.str().c_str(), 10, MPFR_RNDN);
    return out;
  }
  static Mp of(const Rational& x, mpfr_prec_t bits = 512) {
    Mp n = of(x.num(), bits), d = of(x.den(), bits);
    return n / d;
  }
  static Mp of(long x, mpfr_prec_t bits = 512) {
    Mp out(bits);
    mpfr_set_si(out.v_, x, MPFR_RNDN);
    return out;
  }
  /// (a + b sqrt(d))/c from the raw integers.
  static Mp surd(const Integer& a, const Integer& b, const Integer& c, const Integer& d,
                 mpfr_prec_t bits = 512) {
    Mp r = of(d, bits);
    mpfr_sqrt(r.v_, r.v_, MPFR_RNDN);
    return (of(a, bits) + of(b, bits) * r) / of(c, bits);
  }
  static Mp surd(const QuadraticSurd& s, mpfr_prec_t bits = 512) {
    return surd(s.a(), s.b(), s.c(), s.d(), bits);
  }
  static Mp value(const RealValue& x, mpfr_prec_t bits = 512) {
    if (x.is_rational()) return of(x.rational(), bits);
    return surd(x.surd(), bits);
  }
  static Mp cbrt(long x, mpfr_prec_t bits = 512) {
    Mp out = of(x, bits);
    mpfr_cbrt(out.v_, out.v_, MPFR_RNDN);
    return out;
  }
  static Mp acosh(const Mp& x) {
    Mp out(mpfr_get_prec(x.v_));
    mpfr_acosh(out.v_, x.v_, MPFR_RNDN);
    return out;
  }

  friend Mp operator+(const Mp& x, const Mp& y) { return bin(mpfr_add, x, y); }
  friend Mp operator-(const Mp& x, const Mp& y) { return bin(mpfr_sub, x, y); }
  friend Mp operator*(const Mp& x, const Mp& y) { return bin(mpfr_mul, x, y); }
  friend Mp operator/(const Mp& x, const Mp& y) { return bin(mpfr_div, x, y); }
  friend bool operator<(const Mp& x, const Mp& y) { return mpfr_less_p(x.v_, y.v_); }
  friend bool operator<=(const Mp& x, const Mp& y) { return mpfr_lessequal_p(x.v_, y.v_); }

  Mp abs() const {
    Mp out(*this);
    mpfr_abs(out.v_, v_, MPFR_RNDN);
    return out;
  }
  Integer floor() const {
    mpz_t z;
    mpz_init(z);
    mpfr_get_z(z, v_, MPFR_RNDD);
    std::vector<char> buf(mpz_sizeinbase(z, 10) + 2);
    mpz_get_str(buf.data(), 10, z);
    Integer out(buf.data());
    mpz_clear(z);
    return out;
  }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  template <class F>
  static Mp bin(F f, const Mp& x, const Mp& y) {
    Mp out(std::max(mpfr_get_prec(x.v_), mpfr_get_prec(y.v_)));
    f(out.v_, x.v_, y.v_, MPFR_RNDN);
    return out;
  }
  mpfr_t v_;
};

inline bool is_squarefree(long d) {
  for (long p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) return false;
  return true;
}

/// Random (a + b sqrt(d))/c with squarefree d in [2, 30].
inline QuadraticSurd random_surd(std::mt19937_64& rng, long coeff = 20) {
  std::uniform_int_distribution<long> dd(2, 30), ad(-coeff, coeff), bd(1, coeff / 2),
      cd(1, coeff), sd(0, 1);
  for (;;) {
    long d = dd(rng);
    if (!is_squarefree(d)) continue;
    long b = bd(rng) * (sd(rng) ? 1 : -1);
    auto v = QuadraticSurd::normalize(ad(rng), b, cd(rng), d);
    if (auto* s = std::get_if<QuadraticSurd>(&v)) return *s;
  }
}

/// Random matrix with entries in [-bound, bound] and determinant +-1.
inline UniModMatrix random_unimodular(std::mt19937_64& rng, long bound = 10) {
  std::uniform_int_distribution<long> e(-bound, bound);
  for (;;) {
    long a = e(rng), b = e(rng), c = e(rng), d = e(rng);
    long det = a * d - b * c;
    if (det == 1 || det == -1) return UniModMatrix::of(a, b, c, d);
  }
}

/// Random element of Gamma(n): (1 + np, nq; nr, 1 + ns) with s solved from
/// det = 1, rejecting draws where no integer s exists.
inline UniModMatrix random_gamma_member(std::mt19937_64& rng, long n) {
  std::uniform_int_distribution<long> e(-4, 4);
  for (;;) {
    long p = e(rng), q = e(rng), r = e(rng);
    long lhs = 1 + n * n * q * r;
    long a = 1 + n * p;
    if (a == 0 || lhs % a != 0) continue;
    long d = lhs / a;
    if ((d - 1) % n != 0) continue;
    return UniModMatrix::of(a, n * q, n * r, d);
  }
}

/// Primitive minimal polynomial discriminant of (a + b sqrt(d))/c: a GL(2,Z)
/// invariant of the orbit.
inline Integer orbit_discriminant(const QuadraticSurd& s) {
  // c^2 x^2 - 2ac x + (a^2 - b^2 d) = 0
  Integer A = s.c() * s.c(), B = -2 * s.a() * s.c(), C = s.a() * s.a() - s.b() * s.b() * s.d();
  Integer g = gcd(gcd(abs(A), abs(B)), abs(C));
  A /= g;
  B /= g;
  C /= g;
  return B * B - 4 * A * C;
}

/// Plain Euclid on p/q: the reference continued fraction of a rational.
inline std::vector<Integer> euclid_digits(Integer p, Integer q) {
  std::vector<Integer> out;
  while (q != 0) {
    Integer a = floor_div(p, q);
    out.push_back(a);
    Integer r = p - a * q;
    p = q;
    q = r;
  }
  if (out.size() > 1 && out.back() == 1) {
    out.pop_back();
    out.back() += 1;
  }
  return out;
}

/// Textbook row-by-column product.
inline std::vector<std::vector<Integer>> naive_product(const std::vector<std::vector<Integer>>& x,
                                                      const std::vector<std::vector<Integer>>& y) {
  std::size_t n = x.size(), m = y.front().size(), k = y.size();
  std::vector<std::vector<Integer>> out(n, std::vector<Integer>(m, Integer(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t t = 0; t < k; ++t) out[i][j] += x[i][t] * y[t][j];
  return out;
}

inline std::vector<std::vector<Integer>> rows_of(const UniModMatrix& m) {
  std::vector<std::vector<Integer>> out;
  for (std::size_t i = 0; i < m.n(); ++i) out.push_back(m.matrix().row(i));
  return out;
}

/// Cofactor expansion; fine for n <= 4.
inline Integer naive_det(const std::vector<std::vector<Integer>>& m) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Integer out = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Integer>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    Integer term = m[0][j] * naive_det(minor);
    out += (j % 2 ? -term : term);
  }
  return out;
}

/// Random theta vector of n-1 irrationals: sqrt(p) + r for distinct primes,
/// evaluated as interval reals.
inline std::vector<RealValue> random_theta(std::mt19937_64& rng, std::size_t n,
                                           unsigned max_precision = 4096) {
  static const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  std::uniform_int_distribution<int> pick(0, 14);
  std::uniform_int_distribution<long> num(0, 50), den(1, 17);
  std::vector<long> used;
  std::vector<RealValue> out;
  while (out.size() + 1 < n) {
    long p = primes[pick(rng)];
    if (std::find(used.begin(), used.end(), p) != used.end()) continue;
    used.push_back(p);
    auto root = PrecisionReal::sqrt_of(p, max_precision);
    auto offset = PrecisionReal::exact(Rational(num(rng), den(rng))).capped(max_precision);
    out.emplace_back(root + offset);
  }
  return out;
}

}  // namespace testing_support
