#include "asl/polyring.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>

#include "asl/error.hpp"

namespace asl {

Poly::Poly(PrimeField F, std::vector<Residue> coeffs) : F_(F), c_(std::move(coeffs)) {
  for (auto& c : c_) c %= F_.p();
  trim();
}

Poly::Poly(PrimeField F, std::initializer_list<std::int64_t> coeffs) : F_(F) {
  c_.reserve(coeffs.size());
  for (auto c : coeffs) c_.push_back(F_.reduce(c));
  trim();
}

Poly Poly::monomial(PrimeField F, int degree, Residue c) {
  std::vector<Residue> v(static_cast<std::size_t>(degree) + 1, 0);
  v.back() = c;
  return Poly(F, std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Residue Poly::eval(Residue a) const {
  Residue acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = F_.add(F_.mul(acc, a), *it);
  return acc;
}

Poly Poly::monic() const {
  require(!is_zero(), "monic() of the zero polynomial");
  return scaled(F_.inv(leading()));
}

Poly Poly::scaled(Residue s) const {
  std::vector<Residue> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = F_.mul(c_[i], s);
  return Poly(F_, std::move(v));
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c_[i]);
  }
  return s;
}

Poly operator+(const Poly& a, const Poly& b) {
  const auto& F = a.field();
  std::vector<Residue> v(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.add(a.coeff(i), b.coeff(i));
  return Poly(F, std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) {
  const auto& F = a.field();
  std::vector<Residue> v(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.sub(a.coeff(i), b.coeff(i));
  return Poly(F, std::move(v));
}

Poly operator*(const Poly& a, const Poly& b) {
  const auto& F = a.field();
  if (a.is_zero() || b.is_zero()) return Poly(F);
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<std::uint64_t> acc(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t{x[i]} * y[j]) % F.p();
  std::vector<Residue> v(acc.begin(), acc.end());
  return Poly(F, std::move(v));
}

DivRem divrem(const Poly& a, const Poly& b) {
  require(!b.is_zero(), "division by the zero polynomial");
  const auto& F = a.field();
  if (a.degree() < b.degree()) return {Poly(F), a};
  std::vector<Residue> r = a.coeffs();
  const auto& d = b.coeffs();
  const int db = b.degree();
  const Residue lead_inv = F.inv(b.leading());
  std::vector<Residue> q(static_cast<std::size_t>(a.degree() - db) + 1, 0);
  for (int k = a.degree() - db; k >= 0; --k) {
    Residue t = F.mul(r[k + db], lead_inv);
    q[k] = t;
    if (t == 0) continue;
    for (int j = 0; j <= db; ++j) r[k + j] = F.sub(r[k + j], F.mul(t, d[j]));
  }
  r.resize(static_cast<std::size_t>(db));
  return {Poly(F, std::move(q)), Poly(F, std::move(r))};
}

Poly operator%(const Poly& a, const Poly& b) { return divrem(a, b).rem; }

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod) {
  const auto& F = base.field();
  Poly result = Poly::constant(F, 1) % mod;
  Poly b = base % mod;
  while (e) {
    if (e & 1) result = (result * b) % mod;
    b = (b * b) % mod;
    e >>= 1;
  }
  return result;
}

Poly derivative(const Poly& a) {
  const auto& F = a.field();
  if (a.degree() < 1) return Poly(F);
  std::vector<Residue> v(static_cast<std::size_t>(a.degree()));
  for (int i = 1; i <= a.degree(); ++i) v[i - 1] = F.mul(a.coeff(i), F.reduce(i));
  return Poly(F, std::move(v));
}

bool is_irreducible(const Poly& P) {
  const int m = P.degree();
  if (m < 1) return false;
  if (m == 1) return true;
  const auto& F = P.field();
  if (P.coeff(0) == 0) return false;
  for (Residue a = 1; a < F.p(); ++a)
    if (P.eval(a) == 0) return false;
  const Poly x = Poly::x(F);
  // Ben-Or: P is irreducible iff gcd(x^{p^i} - x, P) = 1 for i <= m/2.
  Poly h = x % P;
  for (int i = 1; 2 * i <= m; ++i) {
    h = powmod(h, F.p(), P);
    if (gcd(h - x, P).degree() != 0) return false;
  }
  return true;
}

Poly monic_from_lex_index(PrimeField F, int r, std::uint64_t idx) {
  std::vector<Residue> v(static_cast<std::size_t>(r) + 1, 0);
  v[r] = 1;
  for (int i = r - 1; i >= 0; --i) {
    v[i] = static_cast<Residue>(idx % F.p());
    idx /= F.p();
  }
  return Poly(F, std::move(v));
}

std::uint64_t lex_index(const Poly& monic) {
  std::uint64_t idx = 0;
  for (int i = 0; i < monic.degree(); ++i) idx = idx * monic.field().p() + monic.coeff(i);
  return idx;
}

bool lex_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(),
                                      b.coeffs().end());
}

namespace {

std::uint64_t checked_power(std::uint32_t p, int r, std::uint64_t cap) {
  std::uint64_t n = 1;
  for (int i = 0; i < r; ++i) {
    n *= p;
    require(n <= cap, "p^r exceeds the enumeration cap of " + std::to_string(cap));
  }
  return n;
}

constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 24;

}  // namespace

void for_each_monic(PrimeField F, int r, const std::function<void(const Poly&)>& fn) {
  require(r >= 0, "degree must be nonnegative");
  const std::uint64_t n = checked_power(F.p(), r, kEnumerationCap);
  for (std::uint64_t idx = 0; idx < n; ++idx) fn(monic_from_lex_index(F, r, idx));
}

const std::vector<Poly>& primes_of_degree(int r, PrimeField F) {
  require(r >= 1, "prime degree must be at least 1");
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, int>, std::vector<Poly>> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(F.p(), r);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::vector<Poly> primes;
  for_each_monic(F, r, [&](const Poly& u) {
    if (is_irreducible(u)) primes.push_back(u);
  });
  return cache.emplace(key, std::move(primes)).first->second;
}

Poly Factorization::product(PrimeField F) const {
  Poly acc = Poly::constant(F, scalar);
  for (const auto& [P, k] : factors)
    for (int i = 0; i < k; ++i) acc = acc * P;
  return acc;
}

Factorization factor(const Poly& u) {
  require(!u.is_zero(), "cannot factor the zero polynomial");
  const auto& F = u.field();
  Factorization out;
  out.scalar = u.leading();
  Poly w = u.monic();
  for (int m = 1; 2 * m <= w.degree(); ++m) {
    for (const Poly& P : primes_of_degree(m, F)) {
      if (2 * m > w.degree()) break;
      int k = 0;
      for (;;) {
        auto [q, r] = divrem(w, P);
        if (!r.is_zero()) break;
        w = std::move(q);
        ++k;
      }
      if (k) out.factors.emplace_back(P, k);
    }
  }
  if (w.degree() >= 1) out.factors.emplace_back(w, 1);
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
  return out;
}

int von_mangoldt(const Poly& u) {
  require(u.degree() >= 1, "von Mangoldt needs a nonconstant polynomial");
  require(u.is_monic(), "von Mangoldt needs a monic polynomial");
  auto fac = factor(u);
  return fac.factors.size() == 1 ? fac.factors.front().first.degree() : 0;
}

Modulus::Modulus(int d) : d_(d) { require(d >= 2, "modulus x^{d+1} needs d >= 2"); }

Poly reduce_mod(const Poly& u, const Modulus& Q) {
  const auto& c = u.coeffs();
  const std::size_t keep = std::min(c.size(), static_cast<std::size_t>(Q.d()) + 1);
  return Poly(u.field(), std::vector<Residue>(c.begin(), c.begin() + keep));
}

Poly parse_poly(std::string_view text, PrimeField F) {
  std::vector<Residue> v;
  require(!text.empty(), "empty polynomial text");
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    require(ec == std::errc() && ptr == tok.data() + tok.size() && !tok.empty(),
            "bad polynomial coefficient '" + std::string(tok) + "'");
    v.push_back(F.reduce(value));
    pos = end + 1;
  }
  return Poly(F, std::move(v));
}

}  // namespace asl
