#include "asl/correlation.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "asl/error.hpp"

namespace asl {

TestFunction::TestFunction(int n, double rho, Evaluator Phi, std::string description)
    : n_(n), rho_(rho), Phi_(std::move(Phi)), description_(std::move(description)) {
  require(n >= 1, "test function order n must be >= 1");
  require(rho > 0.0 && rho < 2.0, "support radius must lie in (0, 2)");
}

TestFunction builtin_testfn(TestFnKind kind, int n, double a) {
  require(n >= 1, "test function order n must be >= 1");
  require(a > 0.0, "test function width must be positive");
  require(n * a <= 2.0 - kSupportMargin, "support violation: n * a must be <= 2 - 1e-6");
  std::function<double(double)> g;
  std::string name;
  if (kind == TestFnKind::Triangle) {
    g = [a](double x) { return std::max(0.0, 1.0 - std::abs(x) / a); };
    name = "triangle";
  } else {
    g = [a](double x) {
      const double u = x / a;
      return std::abs(u) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0;
    };
    name = "bump";
  }
  std::ostringstream desc;
  desc << name << ":a=" << a;
  return TestFunction(
      n, n * a,
      [g](std::span<const double> xi) {
        double v = 1.0;
        for (double x : xi) {
          v *= g(x);
          if (v == 0.0) break;
        }
        return v;
      },
      desc.str());
}

TestFunction zero_testfn(int n) {
  return TestFunction(n, 1.0, [](std::span<const double>) { return 0.0; }, "zero");
}

TestFunction parse_testfn(const std::string& text, int n) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  double a = 0.0;
  if (colon != std::string::npos) {
    const std::string rest = text.substr(colon + 1);
    require(rest.rfind("a=", 0) == 0, "test function parameter must be a=<width>, got '" + rest + "'");
    try {
      std::size_t used = 0;
      a = std::stod(rest.substr(2), &used);
      require(used == rest.size() - 2, "bad test function width '" + rest + "'");
    } catch (const std::logic_error&) {
      throw PreconditionError("bad test function width '" + rest + "'");
    }
  }
  if (kind == "zero") return zero_testfn(n);
  require(colon != std::string::npos, "test function needs a width, e.g. triangle:a=0.8");
  if (kind == "triangle") return builtin_testfn(TestFnKind::Triangle, n, a);
  if (kind == "bump") return builtin_testfn(TestFnKind::Bump, n, a);
  throw PreconditionError("unknown test function kind '" + kind + "'");
}

namespace {

constexpr std::uint64_t kLatticeBudget = 10'000'000;

}  // namespace

std::vector<LatticePoint> support_lattice(const TestFunction& tf, int N) {
  require(N >= 1, "matrix size N must be >= 1");
  const int n = tf.n();
  const double bound = tf.rho() * N;
  const int R = static_cast<int>(std::ceil(bound));
  std::vector<LatticePoint> out;
  std::vector<int> r(n, 0);
  std::vector<double> xi(n, 0.0);
  std::uint64_t visited = 0;

  // Depth-first over r_0..r_{n-2} with partial l1 pruning; r_{n-1} closes the sum.
  auto recurse = [&](auto&& self, int depth, int sum, int l1) -> void {
    if (depth == n - 1) {
      if (++visited > kLatticeBudget) throw PreconditionError("lattice enumeration budget (1e7 points) exceeded");
      r[n - 1] = -sum;
      const int total = l1 + std::abs(sum);
      if (total >= bound) return;
      for (int j = 0; j < n; ++j) xi[j] = static_cast<double>(r[j]) / N;
      const double phi = tf(xi);
      if (phi != 0.0) out.push_back({r, phi});
      return;
    }
    for (int v = -R; v <= R; ++v) {
      if (l1 + std::abs(v) >= bound) continue;
      r[depth] = v;
      self(self, depth + 1, sum + v, l1 + std::abs(v));
    }
    r[depth] = 0;
  };
  recurse(recurse, 0, 0, 0);
  return out;
}

double periodized(const TestFunction& tf, int N, std::span<const double> x) {
  require(static_cast<int>(x.size()) == tf.n(), "point dimension does not match test function order");
  const auto lattice = support_lattice(tf, N);
  double acc = 0.0;
  for (const auto& pt : lattice) {
    double phase = 0.0;
    for (int j = 0; j < tf.n(); ++j) phase += pt.r[j] * x[j];
    acc += pt.phi * std::cos(2.0 * std::numbers::pi * phase);
  }
  return acc * std::pow(static_cast<double>(N), 1 - tf.n());
}

namespace {

// Visits all index tuples (distinct or not) and sums the periodized function,
// using precomputed e^{2 pi i r theta_j} tables per coordinate value.
double tuple_sum(const UnitarySample& U, const TestFunction& tf, bool distinct) {
  const int N = U.N();
  const int n = tf.n();
  const auto lattice = support_lattice(tf, N);
  if (lattice.empty()) return 0.0;
  int R = 0;
  for (const auto& pt : lattice)
    for (int v : pt.r) R = std::max(R, std::abs(v));
  // phase[j][v + R] = e^{2 pi i v theta_j}
  std::vector<std::vector<cplx>> phase(N, std::vector<cplx>(2 * R + 1));
  for (int j = 0; j < N; ++j)
    for (int v = -R; v <= R; ++v) phase[j][v + R] = std::polar(1.0, 2.0 * std::numbers::pi * v * U.angles[j]);

  std::vector<int> idx(n, 0);
  double total = 0.0;
  for (;;) {
    bool ok = true;
    if (distinct)
      for (int a = 0; a < n && ok; ++a)
        for (int b = a + 1; b < n && ok; ++b) ok = idx[a] != idx[b];
    if (ok) {
      double acc = 0.0;
      for (const auto& pt : lattice) {
        cplx e = 1.0;
        for (int k = 0; k < n; ++k) e *= phase[idx[k]][pt.r[k] + R];
        acc += pt.phi * e.real();
      }
      total += acc;
    }
    int k = n - 1;
    while (k >= 0 && ++idx[k] == N) idx[k--] = 0;
    if (k < 0) break;
  }
  return total * std::pow(static_cast<double>(N), 1 - n) / N;
}

}  // namespace

double c_n_eigen(const UnitarySample& U, const TestFunction& tf) { return tuple_sum(U, tf, false); }

double r_n_eigen(const UnitarySample& U, const TestFunction& tf) { return tuple_sum(U, tf, true); }

cplx c_n_fourier(const UnitarySample& U, const TestFunction& tf) {
  const int N = U.N();
  const auto lattice = support_lattice(tf, N);
  int R = 0;
  for (const auto& pt : lattice)
    for (int v : pt.r) R = std::max(R, std::abs(v));
  std::vector<cplx> tr(2 * R + 1);
  for (int v = -R; v <= R; ++v) tr[v + R] = U.trace(v);
  cplx acc = 0.0;
  for (const auto& pt : lattice) {
    cplx prod = pt.phi;
    for (int v : pt.r) prod *= tr[v + R];
    acc += prod;
  }
  return acc / std::pow(static_cast<double>(N), tf.n());
}

double expected_c_exact(int N, const TestFunction& tf) {
  double acc = 0.0;
  DSMomentSpec spec{{}, N};
  for (const auto& pt : support_lattice(tf, N)) {
    spec.r = pt.r;
    const double m = ds_moment(spec);
    if (m != 0.0) acc += pt.phi * m;
  }
  return acc / std::pow(static_cast<double>(N), tf.n());
}

std::uint64_t pair_set_count(int n, int m) {
  require(n >= 0 && m >= 0 && 2 * m <= n, "pair set count needs 2m <= n");
  // n! / (2^m m! (n-2m)!) = C(n, 2m) (2m - 1)!!
  double binom = 1.0;
  for (int k = 1; k <= 2 * m; ++k) binom = binom * (n - 2 * m + k) / k;
  double dfact = 1.0;
  for (int k = 2 * m - 1; k > 1; k -= 2) dfact *= k;
  return static_cast<std::uint64_t>(std::llround(binom * dfact));
}

std::vector<PairSet> pair_sets(int n, int m) {
  require(n >= 2, "pair sets need n >= 2");
  require(m >= 1 && 2 * m <= n, "pair sets need 1 <= m <= n/2");
  std::vector<PairSet> out;
  std::vector<bool> used(n, false);
  PairSet cur;
  // Pairs are generated with increasing alpha, so each set appears once.
  auto recurse = [&](auto&& self, int min_alpha) -> void {
    if (static_cast<int>(cur.pairs.size()) == m) {
      out.push_back(cur);
      return;
    }
    for (int a = min_alpha; a < n; ++a) {
      if (used[a]) continue;
      used[a] = true;
      for (int b = a + 1; b < n; ++b) {
        if (used[b]) continue;
        used[b] = true;
        cur.pairs.emplace_back(a, b);
        self(self, a + 1);
        cur.pairs.pop_back();
        used[b] = false;
      }
      used[a] = false;
    }
  };
  recurse(recurse, 0);
  return out;
}

namespace {

double adaptive(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double err = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, lo, hi, 20, tol, &err);
  if (!std::isfinite(value) || err > 1e-8) throw NumericalError("quadrature did not converge (error estimate " +
                                                                std::to_string(err) + ")");
  return value;
}

// The integrand is kinked at 0 through |xi|; split there.
double integrate_symmetric(const std::function<double(double)>& f, double tol) {
  return adaptive(f, -1.0, 0.0, tol) + adaptive(f, 0.0, 1.0, tol);
}

}  // namespace

double pair_set_integral(const TestFunction& tf, const PairSet& sigma) {
  const int n = tf.n();
  const int m = static_cast<int>(sigma.pairs.size());
  require(m >= 1 && m <= 2, "pair-set integrals are implemented for m <= 2 (n <= 5)");
  for (const auto& [a, b] : sigma.pairs) require(a >= 0 && a < b && b < n, "malformed pair set");
  std::vector<double> xi(n, 0.0);
  auto phi_at = [&](std::span<const double> s) {
    std::fill(xi.begin(), xi.end(), 0.0);
    for (int j = 0; j < m; ++j) {
      xi[sigma.pairs[j].first] += s[j];
      xi[sigma.pairs[j].second] -= s[j];
    }
    return tf(xi);
  };
  if (m == 1) {
    return integrate_symmetric(
        [&](double s) {
          const double v[1] = {s};
          return phi_at(v) * std::abs(s);
        },
        1e-12);
  }
  return integrate_symmetric(
      [&](double s0) {
        const auto inner = integrate_symmetric(
            [&](double s1) {
              const double v[2] = {s0, s1};
              return phi_at(v) * std::abs(s1);
            },
            1e-12);
        return inner * std::abs(s0);
      },
      1e-11);
}

double limit_value(const TestFunction& tf) {
  std::vector<double> zero(tf.n(), 0.0);
  double total = tf(zero);
  for (int m = 1; 2 * m <= tf.n(); ++m)
    for (const auto& sigma : pair_sets(tf.n(), m)) total += pair_set_integral(tf, sigma);
  return total;
}

ConvergenceSummary convergence_report(const TestFunction& tf, const std::vector<int>& sizes) {
  require(!sizes.empty(), "convergence report needs at least one size");
  require(std::is_sorted(sizes.begin(), sizes.end()), "sizes must be ascending");
  ConvergenceSummary out;
  const double limit = limit_value(tf);
  for (int N : sizes) {
    CorrelationReport rep;
    rep.N = N;
    rep.exact = expected_c_exact(N, tf);
    rep.limit = limit;
    rep.difference = std::abs(rep.exact - limit);
    out.reports.push_back(rep);
  }
  out.strictly_decreasing = true;
  for (std::size_t i = 1; i < out.reports.size(); ++i)
    out.strictly_decreasing = out.strictly_decreasing && out.reports[i].difference < out.reports[i - 1].difference;
  const auto& first = out.reports.front();
  const auto& last = out.reports.back();
  out.calibrated_constant = first.difference * first.N;
  out.within_band = last.difference <= 1.5 * out.calibrated_constant / last.N;
  return out;
}

}  // namespace asl
