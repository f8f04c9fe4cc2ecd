#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "asl/rmt.hpp"

namespace asl {

/// Phi on R^n with compact support inside sum |xi_j| < rho, rho < 2.
/// phi is its inverse Fourier transform restricted to sum xi = 0.
class TestFunction {
public:
  using Evaluator = std::function<double(std::span<const double>)>;

  TestFunction(int n, double rho, Evaluator Phi, std::string description);

  int n() const { return n_; }
  double rho() const { return rho_; }
  const std::string& description() const { return description_; }
  double operator()(std::span<const double> xi) const { return Phi_(xi); }

private:
  int n_;
  double rho_;
  Evaluator Phi_;
  std::string description_;
};

enum class TestFnKind { Triangle, Bump };

inline constexpr double kSupportMargin = 1e-6;

/// Phi(xi) = prod_j g(xi_j), g the hat max(0, 1 - |x|/a) or the bump
/// exp(1 - 1/(1 - (x/a)^2)) on |x| < a. rho = n a; requires n a <= 2 - 1e-6.
TestFunction builtin_testfn(TestFnKind kind, int n, double a);
TestFunction zero_testfn(int n);
/// "triangle:a=0.8" or "bump:a=0.5".
TestFunction parse_testfn(const std::string& text, int n);

struct LatticePoint {
  std::vector<int> r;
  double phi;  // Phi(r / N)
};

/// All r in Z^n with sum r = 0, sum |r| < rho N and Phi(r/N) != 0, in
/// lexicographic order. Throws PreconditionError past 10^7 visited points.
std::vector<LatticePoint> support_lattice(const TestFunction& tf, int N);

/// The periodized test function via its finite Fourier expansion.
double periodized(const TestFunction& tf, int N, std::span<const double> x);

/// (1/N) sum over all index n-tuples of the periodized test function.
double c_n_eigen(const UnitarySample& U, const TestFunction& tf);
/// N^{-n} sum_r Phi(r/N) prod_j tr U^{r_j}.
cplx c_n_fourier(const UnitarySample& U, const TestFunction& tf);
/// As c_n_eigen but over tuples of distinct indices.
double r_n_eigen(const UnitarySample& U, const TestFunction& tf);

/// Haar average of C_n at size N: the lattice sum of exact trace moments.
double expected_c_exact(int N, const TestFunction& tf);

/// m disjoint pairs (alpha < beta), 0-based indices.
struct PairSet {
  std::vector<std::pair<int, int>> pairs;
};

/// All sets of m disjoint pairs drawn from {0..n-1}, in lexicographic order.
std::vector<PairSet> pair_sets(int n, int m);
/// n! / (2^m m! (n - 2m)!)
std::uint64_t pair_set_count(int n, int m);

/// Integral of Phi(sum_j xi_j e_{alpha_j, beta_j}) prod |xi_j| over [-1, 1]^m.
double pair_set_integral(const TestFunction& tf, const PairSet& sigma);

/// Phi(0) + sum over all pair sets of pair_set_integral.
double limit_value(const TestFunction& tf);

struct CorrelationReport {
  int N = 0;
  double exact = 0.0;
  double limit = 0.0;
  double difference = 0.0;  // |exact - limit|
  std::optional<MCEstimate> mc;
};

struct ConvergenceSummary {
  std::vector<CorrelationReport> reports;
  bool strictly_decreasing = false;
  /// C = D(N_min) N_min, calibrated from the smallest size.
  double calibrated_constant = 0.0;
  /// D(N_max) <= 1.5 C / N_max.
  bool within_band = false;
};

ConvergenceSummary convergence_report(const TestFunction& tf, const std::vector<int>& sizes);

}  // namespace asl
