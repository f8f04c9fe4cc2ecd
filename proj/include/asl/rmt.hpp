#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace asl {

using cplx = std::complex<double>;

/// Exponents r_1..r_n (zeros allowed) and the matrix size N.
struct DSMomentSpec {
  std::vector<int> r;
  int N = 0;
};

/// Multiset data of the nonzero exponents: distinct |r| values s_j with
/// a_j = #{r_i = s_j}, b_j = #{r_i = -s_j}; recomputed on every call.
struct MultisetData {
  std::vector<int> s;
  std::vector<int> a;
  std::vector<int> b;
  int zeros = 0;
  long abs_sum = 0;
  long sum = 0;
};

MultisetData multiset_data(const DSMomentSpec& spec);

/// Closed-form Haar average of prod tr U^{r_i} over U(N). Zero when
/// sum r != 0 (for any N). Otherwise requires sum |r_i| <= 2N and returns
/// N^{#zeros} prod a_j! s_j^{a_j} if a_j = b_j for all j, else 0.
double ds_moment(const DSMomentSpec& spec);

/// sum |r_i| == 2N: the edge of the closed form's validity.
bool is_boundary(const DSMomentSpec& spec);

/// Eigenangles (in [0, 1)) of one Haar-distributed unitary.
struct UnitarySample {
  std::vector<double> angles;

  int N() const { return static_cast<int>(angles.size()); }
  /// tr U^r = sum_j e^{2 pi i r theta_j}; tr U^0 = N.
  cplx trace(int r) const;
};

/// Ginibre matrix, QR, phase correction so R has positive real diagonal.
Eigen::MatrixXcd haar_unitary(int N, std::mt19937_64& rng);
UnitarySample haar_sample(int N, std::mt19937_64& rng);

/// Independent stream `stream` derived from a master seed.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);

cplx trace_product(const UnitarySample& U, std::span<const int> r);

struct MCEstimate {
  cplx mean;
  /// sqrt(sum |x - mean|^2 / (n - 1)) / sqrt(n)
  double std_error = 0.0;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
};

/// Mean of stat(U) over `samples` Haar draws of size N. Samples are drawn in
/// fixed blocks, block k from make_stream(seed, k), and pooled in block
/// order, so the estimate is identical for any thread count.
MCEstimate mc_estimate(int N, std::uint64_t samples, std::uint64_t seed,
                       const std::function<cplx(const UnitarySample&)>& stat, unsigned threads = 0);

/// Several statistics over the same draws.
std::vector<MCEstimate> mc_estimate_many(int N, std::uint64_t samples, std::uint64_t seed,
                                         const std::vector<std::function<cplx(const UnitarySample&)>>& stats,
                                         unsigned threads = 0);

MCEstimate mc_moment(const DSMomentSpec& spec, std::uint64_t samples, std::uint64_t seed, unsigned threads = 0);

}  // namespace asl
