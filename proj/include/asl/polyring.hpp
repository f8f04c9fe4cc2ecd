#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "asl/prime_field.hpp"

namespace asl {

/// Element of F_p[x], coefficients stored low-to-high with no trailing zeros.
class Poly {
public:
  explicit Poly(PrimeField F) : F_(F) {}
  Poly(PrimeField F, std::vector<Residue> coeffs);
  Poly(PrimeField F, std::initializer_list<std::int64_t> coeffs);

  static Poly constant(PrimeField F, Residue c) { return Poly(F, std::vector<Residue>{c}); }
  static Poly monomial(PrimeField F, int degree, Residue c = 1);
  static Poly x(PrimeField F) { return monomial(F, 1); }

  const PrimeField& field() const { return F_; }
  const std::vector<Residue>& coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Residue coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  Residue leading() const { return c_.empty() ? 0 : c_.back(); }
  Residue eval(Residue a) const;

  Poly monic() const;
  Poly scaled(Residue s) const;
  /// Coefficient text format: "0,3,1" is x^2 + 3x. Zero prints as "0".
  std::string to_string() const;

  bool operator==(const Poly& o) const { return F_ == o.F_ && c_ == o.c_; }

private:
  void trim();

  PrimeField F_;
  std::vector<Residue> c_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);

struct DivRem {
  Poly quot;
  Poly rem;
};

/// Throws PreconditionError when b is zero.
DivRem divrem(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(Poly a, Poly b);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod);
Poly derivative(const Poly& a);

bool is_irreducible(const Poly& P);

/// Lexicographic order on coefficient vectors with the constant term most
/// significant. Monic polys of degree r are numbered 0..p^r-1 in this order.
Poly monic_from_lex_index(PrimeField F, int r, std::uint64_t idx);
std::uint64_t lex_index(const Poly& monic);
bool lex_less(const Poly& a, const Poly& b);

/// Calls fn on every monic polynomial of degree r, in lex order.
void for_each_monic(PrimeField F, int r, const std::function<void(const Poly&)>& fn);

/// All monic irreducibles of degree r over F_p in lex order. Built once per
/// (p, r) and cached; the reference stays valid for the program lifetime.
const std::vector<Poly>& primes_of_degree(int r, PrimeField F);

struct Factorization {
  Residue scalar = 1;
  std::vector<std::pair<Poly, int>> factors;  // (monic prime, multiplicity)

  Poly product(PrimeField F) const;
};

/// Complete factorization by trial division; factors sorted by degree then lex.
Factorization factor(const Poly& u);

/// deg P when u = P^k for a prime P, else 0. Requires u monic, nonconstant.
int von_mangoldt(const Poly& u);

/// The modulus x^{d+1}.
class Modulus {
public:
  explicit Modulus(int d);
  int d() const { return d_; }
  Poly poly(PrimeField F) const { return Poly::monomial(F, d_ + 1); }

private:
  int d_;
};

Poly reduce_mod(const Poly& u, const Modulus& Q);

/// Parses the coefficient text format. Throws PreconditionError on bad input.
Poly parse_poly(std::string_view text, PrimeField F);

}  // namespace asl
