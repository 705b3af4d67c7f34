#include "diagssp/qsqrt.hpp"

namespace diagssp {

QSqrt::QSqrt(mpq_class a, mpq_class b, mpz_class q) : a_(std::move(a)), b_(std::move(b)), q_(std::move(q)) {
  if (q_ <= 0) throw usage_error("QSqrt radicand must be positive");
  canon();
}

void QSqrt::canon() {
  a_.canonicalize();
  b_.canonicalize();
  if (b_ == 0) {
    q_ = 1;
    return;
  }
  if (mpz_perfect_square_p(q_.get_mpz_t())) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), q_.get_mpz_t());
    a_ += b_ * r;
    b_ = 0;
    q_ = 1;
    a_.canonicalize();
  }
}

void QSqrt::require_same_radicand(const QSqrt& x, const QSqrt& y) {
  if (!x.is_rational() && !y.is_rational() && x.q_ != y.q_)
    throw usage_error("QSqrt radicands differ: " + x.q_.get_str() + " vs " + y.q_.get_str());
}

int QSqrt::sign() const {
  const int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: the sign is decided by |a| vs |b|*sqrt(q), i.e. by
  // comparing a^2 with b^2*q.
  const mpq_class lhs = a_ * a_, rhs = b_ * b_ * q_;
  const int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  return c > 0 ? sa : sb;
}

QSqrt QSqrt::operator+(const QSqrt& o) const {
  require_same_radicand(*this, o);
  return QSqrt(a_ + o.a_, b_ + o.b_, is_rational() ? o.q_ : q_);
}

QSqrt QSqrt::operator-(const QSqrt& o) const { return *this + (-o); }

QSqrt QSqrt::operator*(const QSqrt& o) const {
  require_same_radicand(*this, o);
  const mpz_class& q = is_rational() ? o.q_ : q_;
  return QSqrt(a_ * o.a_ + b_ * o.b_ * q, a_ * o.b_ + b_ * o.a_, q);
}

QSqrt QSqrt::operator/(const QSqrt& o) const {
  require_same_radicand(*this, o);
  if (o.sign() == 0) throw usage_error("QSqrt division by zero");
  const mpz_class& q = is_rational() ? o.q_ : q_;
  // Multiply by the conjugate: 1/(a+b*sqrt(q)) = (a-b*sqrt(q))/(a^2-b^2*q).
  const mpq_class norm = o.a_ * o.a_ - o.b_ * o.b_ * q;
  QSqrt conj(o.a_, -o.b_, q);
  QSqrt prod = *this * conj;
  return QSqrt(prod.a_ / norm, prod.b_ / norm, q);
}

QSqrt QSqrt::pow(unsigned long e) const {
  QSqrt r(mpq_class(1));
  QSqrt base = *this;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

bool QSqrt::operator==(const QSqrt& o) const {
  if (is_rational() != o.is_rational()) return false;
  if (is_rational()) return a_ == o.a_;
  return q_ == o.q_ && a_ == o.a_ && b_ == o.b_;
}

std::string QSqrt::str() const {
  if (is_rational()) return a_.get_str();
  return a_.get_str() + " + " + b_.get_str() + "*sqrt(" + q_.get_str() + ")";
}

QSqrt binom_general(const QSqrt& x, unsigned long k) {
  QSqrt acc(mpq_class(1));
  for (unsigned long i = 0; i < k; ++i) acc = acc * (x - QSqrt(mpq_class(static_cast<long>(i))));
  return acc / QSqrt(mpq_class(factorial_mpz(k)));
}

mpz_class binom_mpz(const mpz_class& n, unsigned long k) {
  mpz_class num = 1;
  for (unsigned long i = 0; i < k; ++i) num *= n - static_cast<long>(i);
  mpz_class den = factorial_mpz(k);
  mpz_class r, rem;
  mpz_tdiv_qr(r.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (rem != 0) throw internal_error("binom_mpz: non-exact division");
  return r;
}

mpz_class factorial_mpz(unsigned long k) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

QSqrt q_half_power(const mpz_class& q, unsigned long k) {
  mpz_class whole;
  mpz_pow_ui(whole.get_mpz_t(), q.get_mpz_t(), k / 2);
  if (k % 2 == 0) return QSqrt(mpq_class(whole));
  return QSqrt(0, mpq_class(whole), q);
}

}  // namespace diagssp
