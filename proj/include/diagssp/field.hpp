#ifndef DIAGSSP_FIELD_HPP
#define DIAGSSP_FIELD_HPP

#include <cstdint>
#include <vector>

#include "diagssp/errors.hpp"

namespace diagssp {

// An element of GF(p^s) is stored as its index in [0, q): the coefficient
// vector (c_0, ..., c_{s-1}) in the power basis of the modulus, packed base p
// with c_0 (the constant term) least significant. Index order therefore equals
// lexicographic order on coefficient vectors read highest degree first, and is
// the canonical element order everywhere in this library.
using FieldElem = std::uint64_t;

// A concrete model of GF(p^s). The modulus is the smallest monic irreducible
// polynomial of degree s over GF(p) (candidates ordered by the packed value of
// their non-leading coefficients), so fields are identical across runs and
// machines. Immutable after construction.
class Fq {
public:
  // Throws usage_error for non-prime p or s < 1, limit_exceeded if p^s > max_q.
  Fq(std::uint32_t p, std::uint32_t s, std::uint64_t max_q = kDefaultMaxQ);

  static constexpr std::uint64_t kDefaultMaxQ = 100'000'000;

  std::uint32_t p() const { return p_; }
  std::uint32_t s() const { return s_; }
  std::uint64_t q() const { return q_; }

  // Monic modulus, coefficients low to high, length s+1. For s = 1 this is the
  // polynomial T, i.e. the prime-field convention.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  FieldElem zero() const { return 0; }
  FieldElem one() const { return 1; }

  // Embeds an integer into the prime subfield.
  FieldElem from_int(std::uint64_t n) const { return n % p_; }

  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem sub(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;

  // Throws usage_error on a = 0.
  FieldElem inv(FieldElem a) const;

  // x^e by square-and-multiply; 0^0 = 1 by convention (no formula implemented
  // here ever evaluates 0^0, the convention just makes pow total).
  FieldElem pow(FieldElem x, std::uint64_t e) const;

  // The inverse of the r-fold Frobenius x -> x^(p^r): returns x^(p^(s-r)) so
  // that the result raised to p^r recovers x. Requires 0 <= r < s.
  FieldElem frobenius_inverse(FieldElem x, std::uint32_t r) const;

  std::vector<std::uint32_t> coeffs(FieldElem a) const;

  bool operator==(const Fq& other) const {
    return p_ == other.p_ && s_ == other.s_ && modulus_ == other.modulus_;
  }

private:
  std::uint32_t p_;
  std::uint32_t s_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<FieldElem> mul_table_;  // dense q*q table when q is small
};

// A dense univariate polynomial over GF(p^s), coefficients low to high.
struct Poly {
  std::vector<FieldElem> coeffs;

  int degree() const {
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
      if (coeffs[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
  }
};

FieldElem poly_eval(const Fq& field, const Poly& f, FieldElem x);

// The exact image set {f(x) : x in F_q}, deduplicated, in canonical order.
std::vector<FieldElem> image_set(const Fq& field, const Poly& f);

// Dickson polynomial D_n(x, a): D_0 = 2, D_1 = x, D_j = x*D_{j-1} - a*D_{j-2}.
FieldElem dickson_eval(const Fq& field, std::uint64_t n, FieldElem a, FieldElem x);

// Image set of x -> D_n(x, a) over the whole field.
std::vector<FieldElem> dickson_image_set(const Fq& field, std::uint64_t n, FieldElem a);

bool is_prime_u64(std::uint64_t n);

}  // namespace diagssp

#endif
