#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "asl/lfunction.hpp"

namespace asl {

/// The family F_d = { f in F_p[x] : deg f = d, f(0) = 0 }.
struct FamilySpec {
  std::uint32_t p = 0;
  int d = 0;

  /// Throws PreconditionError unless p is prime and p > max(5, d).
  void validate() const;
  /// (p - 1) p^{d-1}.
  std::uint64_t size() const;
};

/// a_1..a_d of the idx-th member, lex order with a_1 most significant.
std::vector<Residue> family_coefficients(const FamilySpec& spec, std::uint64_t idx);
ASPolynomial family_member(const FamilySpec& spec, std::uint64_t idx);

/// Calls fn on members [begin, end) in order; end is clamped to size().
void enumerate_family(const FamilySpec& spec, const std::function<void(const ASPolynomial&)>& fn,
                      std::uint64_t begin = 0, std::uint64_t end = UINT64_MAX);

/// prod tr Theta^{r_i} * prod tr Theta^{-t_j}.
struct TraceProductSpec {
  std::vector<int> r;
  std::vector<int> t;

  std::string to_string() const;
};

/// Main term: prod_j a_j! prod_i t_i when {r_i} = {t_j} as multisets, else 0.
double predicted_main_term(const TraceProductSpec& tp);

struct FamilyAverageReport {
  std::uint32_t p = 0;
  int d = 0;
  TraceProductSpec spec;
  cplx average;
  double predicted = 0.0;
  double error = 0.0;    // |average - predicted|
  double q_scale = 0.0;  // p^{-1/2}
  std::uint64_t family_size = 0;
  double wall_seconds = 0.0;
};

/// Exact averages over the whole family, one Frobenius class per member
/// shared across all specs. Each spec needs sum r = sum t < d, all entries
/// positive. Deterministic for any thread count.
std::vector<FamilyAverageReport> family_trace_averages(const FamilySpec& family,
                                                       const std::vector<TraceProductSpec>& specs,
                                                       unsigned threads = 0);
FamilyAverageReport family_trace_average(const FamilySpec& family, const TraceProductSpec& spec,
                                         unsigned threads = 0);

struct ScanRow {
  FamilyAverageReport report;
  double error_ratio = 0.0;  // error / p^{-1/2}
  bool within_tolerance = false;  // error <= 10 p^{-1/2}
};

struct ScanTable {
  std::vector<ScanRow> rows;
  /// Worst error over the battery, per prime in the order given.
  std::vector<double> worst_error;
  /// worst_error at the largest prime is below that at the smallest.
  bool worst_error_improves = false;
  bool all_within_tolerance = false;
};

ScanTable equidistribution_scan(int d, const std::vector<std::uint32_t>& primes,
                                const std::vector<TraceProductSpec>& specs, unsigned threads = 0);

}  // namespace asl
