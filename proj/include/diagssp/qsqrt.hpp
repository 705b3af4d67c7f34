#ifndef DIAGSSP_QSQRT_HPP
#define DIAGSSP_QSQRT_HPP

#include <gmpxx.h>

#include <string>

#include "diagssp/errors.hpp"

namespace diagssp {

// An exact number a + b*sqrt(q) with rational a, b and a fixed positive
// integer radicand q. Closed under ring operations since sqrt(q)^2 = q. When q
// is a perfect square the representation normalizes to b = 0 at construction,
// so equality is structural. Comparisons and sign are decided exactly, never
// through floating point.
class QSqrt {
public:
  QSqrt() : a_(0), b_(0), q_(1) {}
  explicit QSqrt(mpq_class a) : a_(std::move(a)), b_(0), q_(1) { canon(); }
  explicit QSqrt(const mpz_class& a) : a_(a), b_(0), q_(1) {}
  explicit QSqrt(long a) : a_(a), b_(0), q_(1) {}
  QSqrt(mpq_class a, mpq_class b, mpz_class q);

  // sqrt(q) itself.
  static QSqrt root(const mpz_class& q) { return QSqrt(0, 1, q); }

  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }
  const mpz_class& q() const { return q_; }

  bool is_rational() const { return b_ == 0; }
  mpq_class rational() const {
    if (!is_rational()) throw internal_error("QSqrt value is irrational");
    return a_;
  }

  // -1, 0 or +1, decided by case analysis on the signs of a and b and an
  // exact comparison of a^2 against b^2*q.
  int sign() const;

  QSqrt operator-() const { return QSqrt(-a_, -b_, q_); }
  QSqrt operator+(const QSqrt& o) const;
  QSqrt operator-(const QSqrt& o) const;
  QSqrt operator*(const QSqrt& o) const;
  QSqrt operator/(const QSqrt& o) const;  // throws usage_error on zero divisor
  QSqrt pow(unsigned long e) const;

  bool operator==(const QSqrt& o) const;
  bool operator!=(const QSqrt& o) const { return !(*this == o); }
  bool operator<(const QSqrt& o) const { return (*this - o).sign() < 0; }
  bool operator<=(const QSqrt& o) const { return (*this - o).sign() <= 0; }
  bool operator>(const QSqrt& o) const { return (*this - o).sign() > 0; }
  bool operator>=(const QSqrt& o) const { return (*this - o).sign() >= 0; }

  QSqrt abs() const { return sign() < 0 ? -*this : *this; }

  std::string str() const;

private:
  void canon();
  static void require_same_radicand(const QSqrt& x, const QSqrt& y);

  mpq_class a_;
  mpq_class b_;
  mpz_class q_;
};

// Generalized binomial coefficient x(x-1)...(x-k+1)/k! evaluated exactly.
QSqrt binom_general(const QSqrt& x, unsigned long k);

// binom(n, k) for integer n >= 0.
mpz_class binom_mpz(const mpz_class& n, unsigned long k);

mpz_class factorial_mpz(unsigned long k);

// q^(k/2) as an element of Q[sqrt(q)].
QSqrt q_half_power(const mpz_class& q, unsigned long k);

}  // namespace diagssp

#endif
