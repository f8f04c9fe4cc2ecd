#include "asl/family.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>

#include "asl/error.hpp"
#include "asl/parallel.hpp"

namespace asl {

void FamilySpec::validate() const {
  require(is_prime(p), "family needs a prime p, got " + std::to_string(p));
  require(d >= 2, "family needs d >= 2");
  require(p > 5, "family needs p > 5, got p = " + std::to_string(p));
  require(p > static_cast<std::uint32_t>(d), "family needs p > d, got p = " + std::to_string(p) +
                                                 ", d = " + std::to_string(d));
}

std::uint64_t FamilySpec::size() const {
  std::uint64_t n = p - 1;
  for (int i = 1; i < d; ++i) n *= p;
  return n;
}

std::vector<Residue> family_coefficients(const FamilySpec& spec, std::uint64_t idx) {
  std::vector<Residue> a(spec.d, 0);
  // idx = ((a_1 * p + a_2) * p + ...) * (p - 1) + (a_d - 1)
  a[spec.d - 1] = static_cast<Residue>(idx % (spec.p - 1)) + 1;
  idx /= spec.p - 1;
  for (int i = spec.d - 2; i >= 0; --i) {
    a[i] = static_cast<Residue>(idx % spec.p);
    idx /= spec.p;
  }
  return a;
}

ASPolynomial family_member(const FamilySpec& spec, std::uint64_t idx) {
  return ASPolynomial(spec.p, family_coefficients(spec, idx));
}

void enumerate_family(const FamilySpec& spec, const std::function<void(const ASPolynomial&)>& fn,
                      std::uint64_t begin, std::uint64_t end) {
  spec.validate();
  end = std::min(end, spec.size());
  for (std::uint64_t idx = begin; idx < end; ++idx) fn(family_member(spec, idx));
}

std::string TraceProductSpec::to_string() const {
  auto join = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  return "(" + join(r) + ";" + join(t) + ")";
}

double predicted_main_term(const TraceProductSpec& tp) {
  auto r = tp.r;
  auto t = tp.t;
  std::sort(r.begin(), r.end());
  std::sort(t.begin(), t.end());
  if (r != t) return 0.0;
  std::map<int, int> multiplicity;
  for (int x : r) ++multiplicity[x];
  double value = 1.0;
  for (const auto& [s, a] : multiplicity)
    for (int k = 2; k <= a; ++k) value *= k;
  for (int x : t) value *= x;
  return value;
}

namespace {

void validate_spec(const FamilySpec& family, const TraceProductSpec& tp) {
  require(!tp.r.empty() && !tp.t.empty(), "trace product needs nonempty r and t lists");
  for (int x : tp.r) require(x >= 1, "r entries must be positive");
  for (int x : tp.t) require(x >= 1, "t entries must be positive");
  const int sr = std::accumulate(tp.r.begin(), tp.r.end(), 0);
  const int st = std::accumulate(tp.t.begin(), tp.t.end(), 0);
  require(sr == st, "family averages need sum r = sum t, got " + std::to_string(sr) + " vs " + std::to_string(st));
  require(sr < family.d, "family averages need sum r < d, got " + std::to_string(sr) + " with d = " +
                             std::to_string(family.d));
}

constexpr std::uint64_t kChunk = 256;

}  // namespace

std::vector<FamilyAverageReport> family_trace_averages(const FamilySpec& family,
                                                       const std::vector<TraceProductSpec>& specs,
                                                       unsigned threads) {
  family.validate();
  for (const auto& tp : specs) validate_spec(family, tp);
  const auto start = std::chrono::steady_clock::now();
  if (threads == 0) threads = default_threads();

  int max_power = 1;
  for (const auto& tp : specs) {
    for (int x : tp.r) max_power = std::max(max_power, x);
    for (int x : tp.t) max_power = std::max(max_power, x);
  }
  const std::uint64_t n = family.size();
  const std::size_t chunks = static_cast<std::size_t>((n + kChunk - 1) / kChunk);
  std::vector<std::vector<cplx>> partial(chunks, std::vector<cplx>(specs.size(), 0.0));

  // Build shared tables before the workers start.
  (void)PowerSumKernel(family.p, family.d, family.d);

  for_each_chunk(chunks, threads, [&](std::size_t c) {
    PowerSumKernel kernel(family.p, family.d, family.d);
    std::vector<cplx> sums(family.d);
    std::vector<cplx> tr(max_power + 1);
    const std::uint64_t end = std::min(n, (c + 1) * kChunk);
    for (std::uint64_t idx = c * kChunk; idx < end; ++idx) {
      const auto a = family_coefficients(family, idx);
      kernel.compute(a, family.d, sums);
      const FrobeniusClass theta = frobenius_class(l_polynomial_from_power_sums(family.p, sums));
      for (int k = 1; k <= max_power; ++k) tr[k] = trace_power(theta, k);
      for (std::size_t s = 0; s < specs.size(); ++s) {
        cplx prod = 1.0;
        for (int x : specs[s].r) prod *= tr[x];
        for (int x : specs[s].t) prod *= std::conj(tr[x]);
        partial[c][s] += prod;
      }
    }
  });

  std::vector<cplx> total(specs.size(), 0.0);
  for (const auto& chunk : partial)
    for (std::size_t s = 0; s < specs.size(); ++s) total[s] += chunk[s];

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::vector<FamilyAverageReport> out;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    FamilyAverageReport rep;
    rep.p = family.p;
    rep.d = family.d;
    rep.spec = specs[s];
    rep.average = total[s] / static_cast<double>(n);
    rep.predicted = predicted_main_term(specs[s]);
    rep.error = std::abs(rep.average - rep.predicted);
    rep.q_scale = 1.0 / std::sqrt(static_cast<double>(family.p));
    rep.family_size = n;
    rep.wall_seconds = wall;
    out.push_back(std::move(rep));
  }
  return out;
}

FamilyAverageReport family_trace_average(const FamilySpec& family, const TraceProductSpec& spec, unsigned threads) {
  return family_trace_averages(family, {spec}, threads).front();
}

ScanTable equidistribution_scan(int d, const std::vector<std::uint32_t>& primes,
                                const std::vector<TraceProductSpec>& specs, unsigned threads) {
  require(!primes.empty(), "scan needs at least one prime");
  ScanTable table;
  table.all_within_tolerance = true;
  for (std::uint32_t p : primes) {
    double worst = 0.0;
    for (auto& rep : family_trace_averages(FamilySpec{p, d}, specs, threads)) {
      ScanRow row;
      row.error_ratio = rep.error / rep.q_scale;
      row.within_tolerance = rep.error <= 10.0 * rep.q_scale;
      table.all_within_tolerance = table.all_within_tolerance && row.within_tolerance;
      worst = std::max(worst, rep.error);
      row.report = std::move(rep);
      table.rows.push_back(std::move(row));
    }
    table.worst_error.push_back(worst);
  }
  const auto lo = std::min_element(primes.begin(), primes.end()) - primes.begin();
  const auto hi = std::max_element(primes.begin(), primes.end()) - primes.begin();
  table.worst_error_improves = primes.size() > 1 && table.worst_error[hi] < table.worst_error[lo];
  return table;
}

}  // namespace asl
