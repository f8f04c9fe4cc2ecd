#include "asl/lfunction.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "asl/error.hpp"

namespace asl {

ASPolynomial::ASPolynomial(std::uint32_t p, std::vector<Residue> coeffs) : p_(p), a_(std::move(coeffs)) {
  PrimeField F = make_as_prime_field(p);
  require(a_.size() >= 2, "Artin-Schreier polynomial needs degree d >= 2");
  for (auto& c : a_) c %= p;
  require(a_.back() != 0, "leading coefficient a_d must be nonzero");
  require(std::gcd(static_cast<std::uint32_t>(a_.size()), p) == 1, "gcd(d, p) must be 1");
  (void)F;
}

ASPolynomial ASPolynomial::from_poly(const Poly& f) {
  require(f.coeff(0) == 0, "Artin-Schreier polynomial must satisfy f(0) = 0");
  require(f.degree() >= 1, "Artin-Schreier polynomial must be nonconstant");
  std::vector<Residue> a(f.coeffs().begin() + 1, f.coeffs().end());
  return ASPolynomial(f.field().p(), std::move(a));
}

Poly ASPolynomial::poly() const {
  std::vector<Residue> v(a_.size() + 1, 0);
  std::copy(a_.begin(), a_.end(), v.begin() + 1);
  return Poly(PrimeField(p_), std::move(v));
}

ASPolynomial ASPolynomial::scaled(Residue c) const {
  PrimeField F(p_);
  std::vector<Residue> v(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) v[i] = F.mul(a_[i], c);
  return ASPolynomial(p_, std::move(v));
}

PowerSumKernel::PowerSumKernel(std::uint32_t p, int d, int max_r)
    : p_(p), d_(d), psi_(PrimeField(p)), counts_(p) {
  require(max_r >= 1, "power sums need r >= 1");
  for (int r = 1; r <= max_r; ++r) tables_.push_back(shared_power_trace_table(p, r, d));
}

void PowerSumKernel::compute(std::span<const Residue> a, int R, std::span<cplx> out) {
  require(R <= max_r(), "power sum order beyond kernel capacity");
  require(static_cast<int>(a.size()) == d_, "coefficient count does not match kernel degree");
  const auto& psi = psi_.table();
  for (int r = 1; r <= R; ++r) {
    const PowerTraceTable& T = *tables_[r - 1];
    const int D = T.max_power();
    std::fill(counts_.begin(), counts_.end(), 0);
    const std::uint16_t* row = T.row(0);
    for (std::uint64_t e = 0; e < T.elements(); ++e, row += D) {
      std::uint64_t s = 0;
      for (int i = 0; i < d_; ++i) s += std::uint64_t{a[i]} * row[i];
      ++counts_[s % p_];
    }
    cplx acc = 0.0;
    for (std::uint32_t k = 0; k < p_; ++k) acc += static_cast<double>(counts_[k]) * psi[k];
    out[r - 1] = acc;
  }
}

std::vector<cplx> power_sums(const ASPolynomial& f, int R) {
  PowerSumKernel kernel(f.p(), f.d(), R);
  std::vector<cplx> out(R);
  kernel.compute(f.coeffs(), R, out);
  return out;
}

cplx power_sum(const ASPolynomial& f, int r) { return power_sums(f, r)[r - 1]; }

cplx power_sum_twisted(const ASPolynomial& f, int r, Residue c) {
  // psi^c(tr f(alpha)) = psi(tr (c f)(alpha)); c = 0 gives the trivial character.
  PrimeField F(f.p());
  auto table = shared_power_trace_table(f.p(), r, f.d());
  AdditiveCharacter psi(F);
  cplx acc = 0.0;
  for (std::uint64_t e = 0; e < table->elements(); ++e) {
    const std::uint16_t* row = table->row(e);
    std::uint64_t s = 0;
    for (int i = 1; i <= f.d(); ++i) s += std::uint64_t{f.coeff(i)} * row[i - 1];
    acc += psi(F.mul(static_cast<Residue>(s % f.p()), c % f.p()));
  }
  return acc;
}

cplx LPolynomial::operator()(cplx z) const {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

LPolynomial l_polynomial_from_power_sums(std::uint32_t p, std::span<const cplx> sums) {
  const int d = static_cast<int>(sums.size());
  require(d >= 2, "need S_1..S_d with d >= 2");
  std::vector<cplx> c(d + 1);
  c[0] = 1.0;
  for (int k = 1; k <= d; ++k) {
    cplx acc = 0.0;
    for (int r = 1; r <= k; ++r) acc += sums[r - 1] * c[k - r];
    c[k] = acc / static_cast<double>(k);
  }
  LPolynomial L;
  L.p = p;
  L.implied_cd = c[d];
  c.pop_back();
  L.c = std::move(c);
  const double scale_d = std::pow(static_cast<double>(p), d / 2.0);
  if (std::abs(L.implied_cd) > 1e-8 * scale_d)
    throw NumericalError("truncation check failed: |c_d| = " + std::to_string(std::abs(L.implied_cd)));
  const double scale_top = std::pow(static_cast<double>(p), (d - 1) / 2.0);
  if (std::abs(L.c.back()) <= 1e-6 * scale_top) throw NumericalError("L-polynomial degree dropped below d - 1");
  return L;
}

LPolynomial l_polynomial(const ASPolynomial& f) {
  auto sums = power_sums(f, f.d());
  return l_polynomial_from_power_sums(f.p(), sums);
}

namespace {

// Q(w) = w^n + c_1 w^{n-1} + ... + c_n has the inverse roots of L as roots.
cplx eval_reversed(const std::vector<cplx>& c, cplx w, int derivative) {
  const int n = static_cast<int>(c.size()) - 1;
  cplx acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    const int power = n - k;
    if (power < derivative) continue;
    double falling = 1.0;
    for (int j = 0; j < derivative; ++j) falling *= power - j;
    acc += c[k] * falling * std::pow(w, power - derivative);
  }
  return acc;
}

cplx newton(const std::vector<cplx>& c, cplx w, int derivative, int iterations) {
  for (int it = 0; it < iterations; ++it) {
    const cplx f = eval_reversed(c, w, derivative);
    const cplx df = eval_reversed(c, w, derivative + 1);
    if (df == 0.0) break;
    const cplx step = f / df;
    w -= step;
    if (std::abs(step) <= 1e-16 * std::abs(w)) break;
  }
  return w;
}

}  // namespace

FrobeniusClass frobenius_class(const LPolynomial& L) {
  const int n = L.degree();
  require(n >= 1, "L-polynomial must have degree >= 1");
  const double sqrt_p = std::sqrt(static_cast<double>(L.p));

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) companion(0, j) = -L.c[j + 1];
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalError("companion eigenvalue solver did not converge");
  std::vector<cplx> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + n);

  // Group numerically coincident roots; a k-fold root is polished as a simple
  // root of the (k-1)-th derivative starting from the cluster mean.
  std::vector<int> cluster(n, -1);
  int clusters = 0;
  for (int i = 0; i < n; ++i) {
    if (cluster[i] >= 0) continue;
    cluster[i] = clusters;
    for (int j = i + 1; j < n; ++j)
      if (cluster[j] < 0 && std::abs(roots[i] - roots[j]) < 1e-4 * sqrt_p) cluster[j] = clusters;
    ++clusters;
  }
  std::vector<cplx> polished(n);
  for (int k = 0; k < clusters; ++k) {
    cplx mean = 0.0;
    int size = 0;
    for (int i = 0; i < n; ++i)
      if (cluster[i] == k) mean += roots[i], ++size;
    mean /= static_cast<double>(size);
    const cplx w = newton(L.c, mean, size - 1, size == 1 ? 2 : 8);
    for (int i = 0; i < n; ++i)
      if (cluster[i] == k) polished[i] = w;
  }

  double max_c = 0.0;
  for (const auto& ck : L.c) max_c = std::max(max_c, std::abs(ck));

  FrobeniusClass theta;
  theta.angles.reserve(n);
  for (const cplx& w : polished) {
    const double dev = std::abs(std::abs(w) - sqrt_p) / sqrt_p;
    theta.rh_residual = std::max(theta.rh_residual, dev);
    if (dev > 1e-9)
      throw NumericalError("inverse root modulus deviates from sqrt(p) by " + std::to_string(dev) + " (relative)");
    const double residual = std::abs(L(1.0 / w));
    if (residual > 1e-10 * max_c) throw NumericalError("root residual " + std::to_string(residual) + " too large");
    double t = std::arg(w) / (2.0 * std::numbers::pi);
    if (t < 0.0) t += 1.0;
    if (t >= 1.0) t = 0.0;
    theta.angles.push_back(t);
  }
  std::stable_sort(theta.angles.begin(), theta.angles.end());
  return theta;
}

std::vector<cplx> reconstruct_l(const FrobeniusClass& theta, std::uint32_t p) {
  const double sqrt_p = std::sqrt(static_cast<double>(p));
  std::vector<cplx> c{1.0};
  for (double t : theta.angles) {
    const cplx w = sqrt_p * std::polar(1.0, 2.0 * std::numbers::pi * t);
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k];
      next[k + 1] -= w * c[k];
    }
    c = std::move(next);
  }
  return c;
}

cplx trace_power(const FrobeniusClass& theta, int r) {
  cplx acc = 0.0;
  for (double t : theta.angles) acc += std::polar(1.0, 2.0 * std::numbers::pi * r * t);
  return acc;
}

}  // namespace asl
