#pragma once

#include <complex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "asl/lfunction.hpp"
#include "asl/polyring.hpp"

namespace asl {

/// Additive data of u that determines every chi_f(u): t_i = sum over the
/// roots alpha of u (with multiplicity) of tr(alpha^{-i}), i = 1..d.
/// Then chi_f(u) = psi(a_1 t_1 + ... + a_d t_d). Empty when x | u.
std::optional<std::vector<Residue>> character_profile(const Poly& u, int d);

/// Profile of a single monic prime P != x, from the root 1/x of the
/// reciprocal of P in F_p[x]/(P). Cached.
const std::vector<Residue>& prime_profile(const Poly& P, int d);

/// chi_f as a function on F_p[x]: zero on multiples of x, one on scalars,
/// multiplicative, determined by u mod x^{d+1}. Memoized per residue class;
/// not thread-safe, give each worker its own evaluator.
class CharacterEvaluator {
public:
  explicit CharacterEvaluator(ASPolynomial f);

  const ASPolynomial& f() const { return f_; }
  const Modulus& modulus() const { return Q_; }
  /// Throws PreconditionError on the zero polynomial.
  cplx operator()(const Poly& u);
  cplx from_profile(std::span<const Residue> t) const;

private:
  ASPolynomial f_;
  Modulus Q_;
  AdditiveCharacter psi_;
  std::unordered_map<std::string, cplx> memo_;
};

cplx chi(const ASPolynomial& f, const Poly& u);

/// -p^{-r/2} - p^{-r/2} sum_{u monic, deg u = r} Lambda(u) chi_f(u).
cplx explicit_formula_rhs(const ASPolynomial& f, int r);

enum class ResidueClass { Scalar, TopTwist, Other };

/// Which branch of the orthogonality relation u falls into:
/// u = a (mod x^{d+1}), u = a + b x^d with a, b != 0, or neither.
ResidueClass classify_residue(const Poly& u, int d);
double orthogonality_prediction(ResidueClass c, std::uint32_t p);

/// Exact average of chi_f(u) over all f in F_d. Requires u nonconstant,
/// u(0) != 0, p > max(5, d).
cplx character_family_average(const Poly& u, std::uint32_t p, int d);

}  // namespace asl
