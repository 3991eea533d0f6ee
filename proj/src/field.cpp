#include "mcmdeg/field.hpp"

#include "mcmdeg/errors.hpp"

namespace mcmdeg {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t next_prime_1mod4(std::uint64_t n) {
  std::uint64_t p = n + (4 + 1 - n % 4) % 4;
  while (!is_prime(p)) p += 4;
  return p;
}

ModularField::ModularField(std::uint64_t p) : p_(p), iota_(0) {
  if (p % 4 != 1 || !is_prime(p)) throw Error("modular mode needs a prime p = 1 mod 4, got " + std::to_string(p));
  if (p >= (std::uint64_t{1} << 62)) throw Error("modulus too large");
  for (std::uint64_t c = 2;; ++c) {
    if (pow(c, (p - 1) / 2) == p - 1) {
      iota_ = pow(c, (p - 1) / 4);
      break;
    }
  }
}

ModularField::Elem ModularField::pow(Elem a, std::uint64_t k) const {
  Elem r = 1 % p_;
  a %= p_;
  while (k) {
    if (k & 1u) r = mul(r, a);
    a = mul(a, a);
    k >>= 1u;
  }
  return r;
}

ModularField::Elem ModularField::inv(Elem a) const {
  if (a % p_ == 0) throw Error("inverse of zero mod p");
  return pow(a, p_ - 2);
}

ModularField::Elem ModularField::from_rational(const mpq_class& q) const {
  mpz_class pz(static_cast<unsigned long>(p_));
  mpz_class num = q.get_num() % pz, den = q.get_den() % pz;
  if (num < 0) num += pz;
  if (den == 0) throw Error("denominator vanishes mod " + std::to_string(p_));
  return mul(static_cast<Elem>(num.get_ui()), inv(static_cast<Elem>(den.get_ui())));
}

ModularField::Elem ModularField::from(const GaussianRational& c) const {
  return add(from_rational(c.re()), mul(iota_, from_rational(c.im())));
}

}  // namespace mcmdeg
