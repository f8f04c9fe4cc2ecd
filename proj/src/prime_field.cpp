#include "asl/prime_field.hpp"

#include <string>

#include "asl/error.hpp"

namespace asl {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  require(p < (1u << 16), "p must be below 65536, got " + std::to_string(p));
  require(is_prime(p), "p must be prime, got " + std::to_string(p));
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const {
  Residue result = 1 % p_;
  Residue base = a % p_;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Residue PrimeField::inv(Residue a) const {
  require(a % p_ != 0, "inverse of zero in F_" + std::to_string(p_));
  return pow(a, p_ - 2);
}

PrimeField make_as_prime_field(std::uint32_t p) {
  PrimeField F(p);
  require(p > 5, "Artin-Schreier families need p > 5, got " + std::to_string(p));
  return F;
}

}  // namespace asl
