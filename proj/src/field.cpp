#include "diagssp/field.hpp"

#include <algorithm>
#include <string>

namespace diagssp {

namespace {

// Polynomials over GF(p) with uint32 coefficients, low to high, used only for
// modulus selection. Trailing zeros allowed.
using GfpPoly = std::vector<std::uint32_t>;

int gfp_degree(const GfpPoly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[static_cast<std::size_t>(i)] != 0) return i;
  return -1;
}

// Remainder of a mod b over GF(p), b nonzero.
GfpPoly gfp_mod(GfpPoly a, const GfpPoly& b, std::uint32_t p) {
  const int db = gfp_degree(b);
  const std::uint64_t lead_inv = [&] {
    // Fermat inverse in GF(p).
    std::uint64_t base = b[static_cast<std::size_t>(db)], r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return r;
  }();
  for (int da = gfp_degree(a); da >= db; da = gfp_degree(a)) {
    const std::uint64_t factor = a[static_cast<std::size_t>(da)] * lead_inv % p;
    for (int i = 0; i <= db; ++i) {
      auto& c = a[static_cast<std::size_t>(da - db + i)];
      c = static_cast<std::uint32_t>(
          (c + p - static_cast<std::uint32_t>(factor * b[static_cast<std::size_t>(i)] % p)) % p);
    }
  }
  return a;
}

bool gfp_divides(const GfpPoly& d, const GfpPoly& f, std::uint32_t p) {
  return gfp_degree(gfp_mod(f, d, p)) < 0;
}

// Trial division by all monic polynomials of degree 1..s/2. Cheap at the field
// sizes this library supports (p^(s/2) <= sqrt(max_q)).
bool gfp_irreducible(const GfpPoly& f, std::uint32_t p) {
  const int s = gfp_degree(f);
  for (int d = 1; 2 * d <= s; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t packed = 0; packed < count; ++packed) {
      GfpPoly divisor(static_cast<std::size_t>(d) + 1, 0);
      std::uint64_t rest = packed;
      for (int i = 0; i < d; ++i) {
        divisor[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      divisor[static_cast<std::size_t>(d)] = 1;
      if (gfp_divides(divisor, f, p)) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Fq::Fq(std::uint32_t p, std::uint32_t s, std::uint64_t max_q) : p_(p), s_(s) {
  if (!is_prime_u64(p)) throw usage_error("field characteristic must be prime, got " + std::to_string(p));
  if (s < 1) throw usage_error("extension degree must be >= 1");
  q_ = 1;
  for (std::uint32_t i = 0; i < s; ++i) {
    if (q_ > max_q / p) throw limit_exceeded("field size p^s exceeds limit " + std::to_string(max_q));
    q_ *= p;
  }

  modulus_.assign(s + 1, 0);
  modulus_[s] = 1;
  if (s > 1) {
    bool found = false;
    for (std::uint64_t packed = 0; packed < q_; ++packed) {
      std::uint64_t rest = packed;
      for (std::uint32_t i = 0; i < s; ++i) {
        modulus_[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      if (gfp_irreducible(modulus_, p)) {
        found = true;
        break;
      }
    }
    if (!found) throw internal_error("no irreducible modulus found");  // unreachable
  }

  if (q_ <= 256 && s_ > 1) {
    // mul() falls back to the generic path while mul_table_ is still empty.
    std::vector<FieldElem> table(q_ * q_, 0);
    for (FieldElem a = 0; a < q_; ++a)
      for (FieldElem b = 0; b < q_; ++b) table[a * q_ + b] = mul(a, b);
    mul_table_ = std::move(table);
  }
}

std::vector<std::uint32_t> Fq::coeffs(FieldElem a) const {
  std::vector<std::uint32_t> c(s_, 0);
  for (std::uint32_t i = 0; i < s_; ++i) {
    c[i] = static_cast<std::uint32_t>(a % p_);
    a /= p_;
  }
  return c;
}

FieldElem Fq::add(FieldElem a, FieldElem b) const {
  if (s_ == 1) return (a + b) % p_;
  FieldElem r = 0, mult = 1;
  for (std::uint32_t i = 0; i < s_; ++i) {
    r += (a % p_ + b % p_) % p_ * mult;
    a /= p_;
    b /= p_;
    mult *= p_;
  }
  return r;
}

FieldElem Fq::neg(FieldElem a) const {
  if (s_ == 1) return (p_ - a) % p_;
  FieldElem r = 0, mult = 1;
  for (std::uint32_t i = 0; i < s_; ++i) {
    r += (p_ - a % p_) % p_ * mult;
    a /= p_;
    mult *= p_;
  }
  return r;
}

FieldElem Fq::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem Fq::mul(FieldElem a, FieldElem b) const {
  if (!mul_table_.empty()) return mul_table_[a * q_ + b];
  if (s_ == 1) return a * b % p_;
  // Schoolbook product of coefficient vectors, then reduction by the modulus.
  std::vector<std::uint64_t> prod(2 * s_ - 1, 0);
  std::vector<std::uint32_t> ca = coeffs(a), cb = coeffs(b);
  for (std::uint32_t i = 0; i < s_; ++i) {
    if (ca[i] == 0) continue;
    for (std::uint32_t j = 0; j < s_; ++j) prod[i + j] += static_cast<std::uint64_t>(ca[i]) * cb[j];
  }
  for (int i = static_cast<int>(2 * s_ - 2); i >= static_cast<int>(s_); --i) {
    const std::uint64_t c = prod[static_cast<std::size_t>(i)] % p_;
    if (c == 0) continue;
    for (std::uint32_t j = 0; j < s_; ++j) {
      // T^i = T^(i-s) * (T^s) and T^s = -sum modulus_[j] T^j.
      prod[static_cast<std::size_t>(i) - s_ + j] +=
          c * ((p_ - modulus_[j]) % p_);
    }
    prod[static_cast<std::size_t>(i)] = 0;
  }
  FieldElem r = 0, mult = 1;
  for (std::uint32_t i = 0; i < s_; ++i) {
    r += prod[i] % p_ * mult;
    mult *= p_;
  }
  return r;
}

FieldElem Fq::pow(FieldElem x, std::uint64_t e) const {
  FieldElem r = 1;
  while (e) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

FieldElem Fq::inv(FieldElem a) const {
  if (a == 0) throw usage_error("inverse of zero");
  return pow(a, q_ - 2);
}

FieldElem Fq::frobenius_inverse(FieldElem x, std::uint32_t r) const {
  if (r >= s_) throw usage_error("frobenius_inverse requires 0 <= r < s");
  if (r == 0) return x;
  std::uint64_t e = 1;
  for (std::uint32_t i = 0; i < s_ - r; ++i) e *= p_;
  return pow(x, e);
}

FieldElem poly_eval(const Fq& field, const Poly& f, FieldElem x) {
  FieldElem acc = 0;
  for (std::size_t i = f.coeffs.size(); i-- > 0;) acc = field.add(field.mul(acc, x), f.coeffs[i]);
  return acc;
}

std::vector<FieldElem> image_set(const Fq& field, const Poly& f) {
  std::vector<FieldElem> out;
  out.reserve(field.q());
  for (FieldElem x = 0; x < field.q(); ++x) out.push_back(poly_eval(field, f, x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FieldElem dickson_eval(const Fq& field, std::uint64_t n, FieldElem a, FieldElem x) {
  FieldElem prev = field.from_int(2);
  if (n == 0) return prev;
  FieldElem cur = x;
  for (std::uint64_t j = 2; j <= n; ++j) {
    FieldElem next = field.sub(field.mul(x, cur), field.mul(a, prev));
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<FieldElem> dickson_image_set(const Fq& field, std::uint64_t n, FieldElem a) {
  std::vector<FieldElem> out;
  out.reserve(field.q());
  for (FieldElem x = 0; x < field.q(); ++x) out.push_back(dickson_eval(field, n, a, x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace diagssp
