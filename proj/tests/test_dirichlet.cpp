#include <doctest.h>

#include <numbers>
#include <random>
#include <set>

#include "asl/dirichlet.hpp"
#include "asl/error.hpp"
#include "asl/family.hpp"

using namespace asl;

namespace {

Poly random_poly(std::mt19937_64& rng, PrimeField F, int degree, bool unit_constant = true) {
  std::vector<Residue> c(degree + 1);
  for (auto& x : c) x = rng() % F.p();
  if (unit_constant && c[0] == 0) c[0] = 1;
  if (c[degree] == 0) c[degree] = 1;
  return Poly(F, c);
}

// Newton's identities on w = u / u(0) mod x^{d+1}: the power sums of the
// inverse roots of u, which is what the profile should hold.
std::vector<Residue> newton_profile(const Poly& u, int d) {
  const PrimeField& F = u.field();
  const Residue inv0 = F.inv(u.coeff(0));
  std::vector<Residue> w(d + 1), ps(d + 1, 0);
  for (int i = 0; i <= d; ++i) w[i] = F.mul(u.coeff(i), inv0);
  for (int k = 1; k <= d; ++k) {
    Residue acc = F.neg(F.mul(F.reduce(k), w[k]));
    for (int i = 1; i < k; ++i) acc = F.sub(acc, F.mul(w[i], ps[k - i]));
    ps[k] = acc;
  }
  return {ps.begin() + 1, ps.end()};
}

}  // namespace

TEST_CASE("chi basics") {
  const PrimeField F7(7);
  const ASPolynomial f(7, {1, 2, 3, 4});
  CHECK(chi(f, Poly::constant(F7, 1)) == cplx(1.0));
  CHECK(chi(f, Poly::constant(F7, 5)) == cplx(1.0));
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const Poly u = random_poly(rng, F7, 1 + trial % 5, false);
    CHECK(chi(f, Poly::x(F7) * u) == cplx(0.0));
  }
  CHECK_THROWS_AS(chi(f, Poly(F7)), PreconditionError);
}

TEST_CASE("chi is multiplicative and of order p") {
  const PrimeField F7(7);
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    const ASPolynomial f = family_member(FamilySpec{7, 4}, rng() % 2058);
    const Poly u = random_poly(rng, F7, 1 + trial % 4);
    const Poly v = random_poly(rng, F7, 1 + trial % 3);
    CHECK(std::abs(chi(f, u) * chi(f, v) - chi(f, u * v)) < 1e-12);
    CHECK(std::abs(std::pow(chi(f, u), 7) - 1.0) < 1e-12);
  }
}

TEST_CASE("profile agrees with Newton's identities on u mod x^{d+1}") {
  std::mt19937_64 rng(3);
  for (auto [p, d] : {std::pair{7u, 4}, {11u, 5}, {7u, 2}}) {
    const PrimeField F(p);
    for (int trial = 0; trial < 40; ++trial) {
      const Poly u = random_poly(rng, F, 1 + trial % 7);
      CHECK(*character_profile(u, d) == newton_profile(u, d));
    }
  }
}

TEST_CASE("prime profile does not depend on the choice of root") {
  const PrimeField F7(7);
  const int d = 4;
  for (int m = 1; m <= 4; ++m) {
    const ExtField K = make_ext_field(7, m);
    for (const Poly& P : primes_of_degree(m, F7)) {
      if (P.coeff(0) == 0) continue;
      int roots = 0;
      for (std::uint64_t i = 1; i < K.size(); ++i) {
        const ExtElem alpha = K.element(i);
        if (K.eval(P, alpha) != K.zero()) continue;
        ++roots;
        const ExtElem beta = K.inv(alpha);
        std::vector<Residue> t;
        for (int k = 1; k <= d; ++k) t.push_back(abs_trace(K.pow(beta, k), K));
        CHECK(t == prime_profile(P, d));
      }
      CHECK(roots == m);
    }
  }
}

TEST_CASE("chi is periodic modulo x^{d+1}") {
  const PrimeField F7(7);
  std::mt19937_64 rng(4);
  const Modulus Q(4);
  for (int trial = 0; trial < 30; ++trial) {
    const ASPolynomial f = family_member(FamilySpec{7, 4}, rng() % 2058);
    CharacterEvaluator chi_f(f);
    const Poly u = random_poly(rng, F7, 1 + trial % 4);
    const Poly v = u + Q.poly(F7) * random_poly(rng, F7, trial % 3, false);
    CHECK(reduce_mod(u, Q) == reduce_mod(v, Q));
    CHECK(std::abs(chi(f, u) - chi(f, v)) < 1e-10);
    CHECK(chi_f(u) == chi_f(v));
  }
}

TEST_CASE("distinct family members give distinct characters") {
  const PrimeField F7(7);
  std::vector<Poly> basis;
  for (Residue c = 1; c <= 4; ++c) basis.push_back(Poly(F7, {1, F7.neg(c)}));
  std::set<std::vector<std::pair<double, double>>> seen;
  enumerate_family(FamilySpec{7, 4}, [&](const ASPolynomial& f) {
    std::vector<std::pair<double, double>> values;
    for (const auto& u : basis) {
      const cplx z = chi(f, u);
      values.emplace_back(std::round(z.real() * 1e9), std::round(z.imag() * 1e9));
    }
    seen.insert(values);
  });
  CHECK(seen.size() == 2058);
}

TEST_CASE("explicit formula") {
  const ASPolynomial g(7, {0, 1});
  const AdditiveCharacter psi{PrimeField(7)};
  cplx hand = 1.0;
  for (Residue a = 1; a < 7; ++a) hand += psi(a * a % 7);
  hand *= -1.0 / std::sqrt(7.0);
  CHECK(std::abs(explicit_formula_rhs(g, 1) - hand) < 1e-12);
  CHECK(std::abs(explicit_formula_rhs(g, 1) + power_sum(g, 1) / std::sqrt(7.0)) < 1e-12);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 4; ++trial) {
    const ASPolynomial f = family_member(FamilySpec{11, 5}, rng() % FamilySpec{11, 5}.size());
    const FrobeniusClass theta = frobenius_class(l_polynomial(f));
    for (int r = 1; r <= 3; ++r) {
      const cplx rhs = explicit_formula_rhs(f, r);
      CHECK(std::abs(rhs - trace_power(theta, r)) < 1e-8);
      CHECK(std::abs(rhs + std::pow(11.0, -r / 2.0) * power_sum(f, r)) < 1e-8);
    }
  }
}

TEST_CASE("orthogonality relation") {
  const PrimeField F7(7);
  const Poly scalar(F7, {3, 0, 0, 0, 0, 2, 5});
  const Poly twist(F7, {2, 0, 0, 0, 5});
  const Poly other(F7, {1, 1});
  CHECK(classify_residue(scalar, 4) == ResidueClass::Scalar);
  CHECK(classify_residue(twist, 4) == ResidueClass::TopTwist);
  CHECK(classify_residue(other, 4) == ResidueClass::Other);
  CHECK(std::abs(character_family_average(scalar, 7, 4) - 1.0) < 1e-10);
  CHECK(std::abs(character_family_average(twist, 7, 4) + 1.0 / 6.0) < 1e-10);
  CHECK(std::abs(character_family_average(other, 7, 4)) < 1e-10);

  CHECK_THROWS_AS(character_family_average(Poly::constant(F7, 2), 7, 4), PreconditionError);
  CHECK_THROWS_AS(character_family_average(Poly(F7, {0, 1, 1}), 7, 4), PreconditionError);
  CHECK_THROWS_AS(character_family_average(Poly(F7, {1, 1}), 7, 7), PreconditionError);
}
