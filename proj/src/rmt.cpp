#include "asl/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "asl/error.hpp"
#include "asl/parallel.hpp"

namespace asl {

MultisetData multiset_data(const DSMomentSpec& spec) {
  std::map<int, std::pair<int, int>> counts;
  MultisetData out;
  for (int x : spec.r) {
    out.sum += x;
    out.abs_sum += std::abs(x);
    if (x == 0) {
      ++out.zeros;
    } else if (x > 0) {
      ++counts[x].first;
    } else {
      ++counts[-x].second;
    }
  }
  for (const auto& [s, ab] : counts) {
    out.s.push_back(s);
    out.a.push_back(ab.first);
    out.b.push_back(ab.second);
  }
  return out;
}

double ds_moment(const DSMomentSpec& spec) {
  require(spec.N >= 1, "matrix size N must be >= 1");
  const MultisetData m = multiset_data(spec);
  if (m.sum != 0) return 0.0;
  require(m.abs_sum <= 2L * spec.N, "sum |r_i| = " + std::to_string(m.abs_sum) + " exceeds 2N = " +
                                        std::to_string(2 * spec.N) + "; the closed form does not apply");
  for (std::size_t j = 0; j < m.s.size(); ++j)
    if (m.a[j] != m.b[j]) return 0.0;
  double value = std::pow(static_cast<double>(spec.N), m.zeros);
  for (std::size_t j = 0; j < m.s.size(); ++j)
    for (int k = 1; k <= m.a[j]; ++k) value *= k * static_cast<double>(m.s[j]);
  return value;
}

bool is_boundary(const DSMomentSpec& spec) { return multiset_data(spec).abs_sum == 2L * spec.N; }

cplx UnitarySample::trace(int r) const {
  if (r == 0) return static_cast<double>(angles.size());
  cplx acc = 0.0;
  for (double t : angles) acc += std::polar(1.0, 2.0 * std::numbers::pi * r * t);
  return acc;
}

Eigen::MatrixXcd haar_unitary(int N, std::mt19937_64& rng) {
  require(N >= 1, "matrix size N must be >= 1");
  std::normal_distribution<double> gauss(0.0, std::numbers::sqrt2 / 2.0);
  Eigen::MatrixXcd Z(N, N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      Z(i, j) = cplx(re, im);
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
  Eigen::MatrixXcd Q = qr.householderQ();
  const Eigen::MatrixXcd& R = qr.matrixQR();
  for (int j = 0; j < N; ++j) {
    const cplx d = R(j, j);
    const double mag = std::abs(d);
    Q.col(j) *= mag > 0.0 ? d / mag : cplx(1.0);
  }
  return Q;
}

UnitarySample haar_sample(int N, std::mt19937_64& rng) {
  const Eigen::MatrixXcd U = haar_unitary(N, rng);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(U, false);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalue solver failed on a Haar sample");
  UnitarySample out;
  out.angles.reserve(N);
  for (int j = 0; j < N; ++j) {
    double t = std::arg(solver.eigenvalues()[j]) / (2.0 * std::numbers::pi);
    if (t < 0.0) t += 1.0;
    if (t >= 1.0) t = 0.0;
    out.angles.push_back(t);
  }
  std::sort(out.angles.begin(), out.angles.end());
  return out;
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x5eedu};
  return std::mt19937_64(seq);
}

cplx trace_product(const UnitarySample& U, std::span<const int> r) {
  cplx prod = 1.0;
  for (int x : r) prod *= U.trace(x);
  return prod;
}

namespace {

struct Accumulator {
  std::uint64_t n = 0;
  cplx mean = 0.0;
  double m2 = 0.0;

  void push(cplx x) {
    ++n;
    const cplx delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += std::real(std::conj(delta) * (x - mean));
  }
  void merge(const Accumulator& o) {
    if (o.n == 0) return;
    const std::uint64_t total = n + o.n;
    const cplx delta = o.mean - mean;
    mean += delta * (static_cast<double>(o.n) / total);
    m2 += o.m2 + std::norm(delta) * (static_cast<double>(n) * o.n / total);
    n = total;
  }
};

constexpr std::uint64_t kBlock = 1000;

}  // namespace

std::vector<MCEstimate> mc_estimate_many(int N, std::uint64_t samples, std::uint64_t seed,
                                         const std::vector<std::function<cplx(const UnitarySample&)>>& stats,
                                         unsigned threads) {
  require(samples >= 2, "Monte Carlo needs at least 2 samples");
  require(N >= 1, "matrix size N must be >= 1");
  if (threads == 0) threads = default_threads();
  const std::size_t blocks = static_cast<std::size_t>((samples + kBlock - 1) / kBlock);
  std::vector<std::vector<Accumulator>> partial(blocks, std::vector<Accumulator>(stats.size()));
  for_each_chunk(blocks, threads, [&](std::size_t b) {
    auto rng = make_stream(seed, b);
    const std::uint64_t count = std::min(kBlock, samples - b * kBlock);
    for (std::uint64_t i = 0; i < count; ++i) {
      const UnitarySample U = haar_sample(N, rng);
      for (std::size_t s = 0; s < stats.size(); ++s) partial[b][s].push(stats[s](U));
    }
  });
  std::vector<MCEstimate> out;
  for (std::size_t s = 0; s < stats.size(); ++s) {
    Accumulator acc;
    for (const auto& block : partial) acc.merge(block[s]);
    MCEstimate est;
    est.mean = acc.mean;
    est.count = acc.n;
    est.seed = seed;
    est.std_error = std::sqrt(acc.m2 / static_cast<double>(acc.n - 1) / static_cast<double>(acc.n));
    out.push_back(est);
  }
  return out;
}

MCEstimate mc_estimate(int N, std::uint64_t samples, std::uint64_t seed,
                       const std::function<cplx(const UnitarySample&)>& stat, unsigned threads) {
  return mc_estimate_many(N, samples, seed, {stat}, threads).front();
}

MCEstimate mc_moment(const DSMomentSpec& spec, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  const std::vector<int> r = spec.r;
  return mc_estimate(spec.N, samples, seed, [r](const UnitarySample& U) { return trace_product(U, r); }, threads);
}

}  // namespace asl
