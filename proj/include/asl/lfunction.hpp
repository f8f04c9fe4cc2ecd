#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "asl/finite_field.hpp"
#include "asl/polyring.hpp"

namespace asl {

using cplx = std::complex<double>;

/// f = a_1 x + ... + a_d x^d over F_p: a member of the family F_d.
class ASPolynomial {
public:
  /// coeffs holds a_1..a_d. Requires p prime > 5, d >= 2, a_d != 0, gcd(d, p) = 1.
  ASPolynomial(std::uint32_t p, std::vector<Residue> coeffs);
  /// From a polynomial with zero constant term.
  static ASPolynomial from_poly(const Poly& f);

  std::uint32_t p() const { return p_; }
  int d() const { return static_cast<int>(a_.size()); }
  /// a_i for 1 <= i <= d.
  Residue coeff(int i) const { return a_[i - 1]; }
  std::span<const Residue> coeffs() const { return a_; }
  Poly poly() const;
  ASPolynomial scaled(Residue c) const;

  bool operator==(const ASPolynomial&) const = default;

private:
  std::uint32_t p_;
  std::vector<Residue> a_;
};

/// S_r = sum over alpha in F_{p^r} of psi(tr f(alpha)).
cplx power_sum(const ASPolynomial& f, int r);
/// S_1..S_R in one pass over the shared trace tables.
std::vector<cplx> power_sums(const ASPolynomial& f, int R);
/// S_r with psi replaced by psi^c, i.e. psi(c * tr f(alpha)).
cplx power_sum_twisted(const ASPolynomial& f, int r, Residue c);

/// Coefficients c_0..c_{d-1} of L_f(z), c_0 = 1.
struct LPolynomial {
  std::uint32_t p = 0;
  std::vector<cplx> c;
  /// Coefficient of z^d implied by S_1..S_d; zero in exact arithmetic.
  cplx implied_cd;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  cplx operator()(cplx z) const;
};

/// Exp-of-power-series recursion. Throws NumericalError when the implied
/// c_d exceeds 1e-8 p^{d/2} or the degree collapses.
LPolynomial l_polynomial(const ASPolynomial& f);
/// Same recursion from precomputed S_1..S_d.
LPolynomial l_polynomial_from_power_sums(std::uint32_t p, std::span<const cplx> sums);

/// Unitarized eigenangles of Frobenius in [0, 1), ascending.
struct FrobeniusClass {
  std::vector<double> angles;
  /// max_j | |omega_j| - sqrt p | / sqrt p over the inverse roots.
  double rh_residual = 0.0;

  int size() const { return static_cast<int>(angles.size()); }
};

/// Companion-matrix eigenvalues, Newton-polished. Throws NumericalError if
/// an inverse root leaves the circle |omega| = sqrt p by more than 1e-9 sqrt p
/// or a root residual exceeds 1e-10 max|c_k|.
FrobeniusClass frobenius_class(const LPolynomial& L);

/// prod_j (1 - sqrt(p) e^{2 pi i theta_j} z), coefficients low to high.
std::vector<cplx> reconstruct_l(const FrobeniusClass& theta, std::uint32_t p);

/// tr Theta^r = sum_j e^{2 pi i r theta_j}; r = 0 gives d - 1.
cplx trace_power(const FrobeniusClass& theta, int r);

/// Power sums of one family member from shared tables; reusable scratch for
/// the enumeration kernels.
class PowerSumKernel {
public:
  PowerSumKernel(std::uint32_t p, int d, int max_r);

  int max_r() const { return static_cast<int>(tables_.size()); }
  /// Writes S_1..S_R (R <= max_r) for the coefficient vector a_1..a_d.
  void compute(std::span<const Residue> a, int R, std::span<cplx> out);

private:
  std::uint32_t p_;
  int d_;
  std::vector<std::shared_ptr<const PowerTraceTable>> tables_;
  AdditiveCharacter psi_;
  std::vector<std::uint64_t> counts_;
};

}  // namespace asl
