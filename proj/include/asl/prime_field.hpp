#pragma once

#include <cstdint>

namespace asl {

using Residue = std::uint32_t;

bool is_prime(std::uint64_t n);

/// The prime field F_p. Residues are kept in {0, ..., p-1}.
class PrimeField {
public:
  /// Throws PreconditionError unless p is a prime below 2^16.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const { return p_; }

  Residue reduce(std::int64_t a) const {
    std::int64_t r = a % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const { Residue s = a + b; return s >= p_ ? s - p_ : s; }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Residue pow(Residue a, std::uint64_t e) const;
  /// Throws PreconditionError on zero.
  Residue inv(Residue a) const;

  bool operator==(const PrimeField&) const = default;

private:
  std::uint32_t p_;
};

/// The field for Artin-Schreier work additionally requires p > 5.
PrimeField make_as_prime_field(std::uint32_t p);

}  // namespace asl
