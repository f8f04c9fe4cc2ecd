#include "asl/dirichlet.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "asl/error.hpp"
#include "asl/family.hpp"

namespace asl {

const std::vector<Residue>& prime_profile(const Poly& P, int d) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, int, std::vector<Residue>>, std::vector<Residue>> cache;
  require(P.is_monic() && P.degree() >= 1, "prime profile needs a monic prime");
  require(P.coeff(0) != 0, "x has no profile (chi vanishes there)");
  auto key = std::make_tuple(P.field().p(), d, P.coeffs());
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  // In K = F_p[x]/(P) the class of x is a root alpha of P.
  ExtField K(P.field(), P);
  const ExtElem beta = K.inv(K.root());
  std::vector<Residue> t(d);
  ExtElem pw = beta;
  for (int i = 0; i < d; ++i) {
    t[i] = abs_trace(pw, K);
    pw = K.mul(pw, beta);
  }
  std::lock_guard lock(mu);
  return cache.emplace(std::move(key), std::move(t)).first->second;
}

std::optional<std::vector<Residue>> character_profile(const Poly& u, int d) {
  require(!u.is_zero(), "character of the zero polynomial");
  if (u.coeff(0) == 0) return std::nullopt;
  const PrimeField& F = u.field();
  std::vector<Residue> t(d, 0);
  if (u.degree() == 0) return t;
  for (const auto& [P, k] : factor(u).factors) {
    const auto& tp = prime_profile(P, d);
    for (int i = 0; i < d; ++i) t[i] = F.add(t[i], F.mul(tp[i], F.reduce(k)));
  }
  return t;
}

CharacterEvaluator::CharacterEvaluator(ASPolynomial f)
    : f_(std::move(f)), Q_(f_.d()), psi_(PrimeField(f_.p())) {}

cplx CharacterEvaluator::from_profile(std::span<const Residue> t) const {
  std::uint64_t s = 0;
  for (int i = 1; i <= f_.d(); ++i) s += std::uint64_t{f_.coeff(i)} * t[i - 1];
  return psi_(static_cast<Residue>(s % f_.p()));
}

cplx CharacterEvaluator::operator()(const Poly& u) {
  require(!u.is_zero(), "character of the zero polynomial");
  require(u.field().p() == f_.p(), "polynomial over the wrong prime field");
  const std::string key = reduce_mod(u, Q_).to_string();
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  auto t = character_profile(u, f_.d());
  const cplx value = t ? from_profile(*t) : cplx(0.0);
  memo_.emplace(key, value);
  return value;
}

cplx chi(const ASPolynomial& f, const Poly& u) {
  auto t = character_profile(u, f.d());
  if (!t) return 0.0;
  return CharacterEvaluator(f).from_profile(*t);
}

namespace {

struct WeightedProfile {
  int lambda;
  std::vector<Residue> t;
};

// Every monic u of degree r with Lambda(u) chi(u) possibly nonzero.
const std::vector<WeightedProfile>& explicit_formula_terms(std::uint32_t p, int d, int r) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, int, int>, std::vector<WeightedProfile>> cache;
  const auto key = std::make_tuple(p, d, r);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  std::vector<WeightedProfile> terms;
  for_each_monic(PrimeField(p), r, [&](const Poly& u) {
    if (u.coeff(0) == 0) return;
    const int lambda = von_mangoldt(u);
    if (lambda == 0) return;
    terms.push_back({lambda, *character_profile(u, d)});
  });
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(terms)).first->second;
}

}  // namespace

cplx explicit_formula_rhs(const ASPolynomial& f, int r) {
  require(r >= 1, "explicit formula needs r >= 1");
  const auto& terms = explicit_formula_terms(f.p(), f.d(), r);
  CharacterEvaluator chi_f(f);
  cplx acc = 0.0;
  for (const auto& term : terms) acc += static_cast<double>(term.lambda) * chi_f.from_profile(term.t);
  const double scale = std::pow(static_cast<double>(f.p()), -r / 2.0);
  return -scale - scale * acc;
}

ResidueClass classify_residue(const Poly& u, int d) {
  require(u.coeff(0) != 0, "residue class needs u prime to x");
  bool middle_zero = true;
  for (int i = 1; i < d; ++i) middle_zero = middle_zero && u.coeff(i) == 0;
  if (!middle_zero) return ResidueClass::Other;
  return u.coeff(d) == 0 ? ResidueClass::Scalar : ResidueClass::TopTwist;
}

double orthogonality_prediction(ResidueClass c, std::uint32_t p) {
  switch (c) {
    case ResidueClass::Scalar: return 1.0;
    case ResidueClass::TopTwist: return -1.0 / (static_cast<double>(p) - 1.0);
    case ResidueClass::Other: return 0.0;
  }
  return 0.0;
}

cplx character_family_average(const Poly& u, std::uint32_t p, int d) {
  const FamilySpec spec{p, d};
  spec.validate();
  require(u.field().p() == p, "polynomial over the wrong prime field");
  require(u.degree() >= 1, "orthogonality needs a nonconstant u");
  require(u.coeff(0) != 0, "orthogonality needs u prime to x");
  const auto t = *character_profile(u, d);
  const PrimeField F(p);
  const AdditiveCharacter psi(F);
  // Enumerate f in F_d; only the value a . t mod p matters, so tally it.
  std::vector<std::uint64_t> counts(p, 0);
  const std::uint64_t n = spec.size();
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    const auto a = family_coefficients(spec, idx);
    std::uint64_t s = 0;
    for (int i = 0; i < d; ++i) s += std::uint64_t{a[i]} * t[i];
    ++counts[s % p];
  }
  cplx acc = 0.0;
  for (std::uint32_t k = 0; k < p; ++k) acc += static_cast<double>(counts[k]) * psi(k);
  return acc / static_cast<double>(n);
}

}  // namespace asl
