#include "asl/finite_field.hpp"

#include <map>
#include <mutex>
#include <numbers>

#include "asl/error.hpp"

namespace asl {

namespace {
constexpr std::uint64_t kFieldCap = std::uint64_t{1} << 31;
constexpr std::uint64_t kTableCap = std::uint64_t{1} << 27;
}  // namespace

ExtField::ExtField(PrimeField F, Poly modulus) : F_(F), modulus_(std::move(modulus)), m_(modulus_.degree()) {
  require(m_ >= 1, "extension modulus must have degree >= 1");
  require(modulus_.is_monic(), "extension modulus must be monic");
  size_ = 1;
  for (int i = 0; i < m_; ++i) {
    size_ *= F_.p();
    require(size_ <= kFieldCap, "extension field exceeds 2^31 elements");
  }
  require(is_irreducible(modulus_), "extension modulus " + modulus_.to_string() + " is reducible");
  basis_trace_.resize(m_);
  ExtElem xk = from_prime(1);
  const ExtElem x = root();
  for (int k = 0; k < m_; ++k) {
    basis_trace_[k] = abs_trace(xk, *this);
    xk = mul(xk, x);
  }
}

ExtElem ExtField::from_prime(Residue a) const {
  ExtElem e = zero();
  e.c[0] = a % F_.p();
  return e;
}

ExtElem ExtField::from_poly(const Poly& g) const {
  Poly r = g % modulus_;
  ExtElem e = zero();
  for (int i = 0; i <= r.degree(); ++i) e.c[i] = r.coeff(i);
  return e;
}

ExtElem ExtField::element(std::uint64_t idx) const {
  ExtElem e = zero();
  for (int i = 0; i < m_; ++i) {
    e.c[i] = static_cast<Residue>(idx % F_.p());
    idx /= F_.p();
  }
  return e;
}

std::uint64_t ExtField::index(const ExtElem& a) const {
  std::uint64_t idx = 0;
  for (int i = m_ - 1; i >= 0; --i) idx = idx * F_.p() + a.c[i];
  return idx;
}

ExtElem ExtField::add(const ExtElem& a, const ExtElem& b) const {
  ExtElem e = zero();
  for (int i = 0; i < m_; ++i) e.c[i] = F_.add(a.c[i], b.c[i]);
  return e;
}

ExtElem ExtField::sub(const ExtElem& a, const ExtElem& b) const {
  ExtElem e = zero();
  for (int i = 0; i < m_; ++i) e.c[i] = F_.sub(a.c[i], b.c[i]);
  return e;
}

ExtElem ExtField::mul(const ExtElem& a, const ExtElem& b) const {
  const std::uint64_t p = F_.p();
  std::vector<std::uint64_t> acc(2 * m_ - 1, 0);
  for (int i = 0; i < m_; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < m_; ++j) acc[i + j] = (acc[i + j] + std::uint64_t{a.c[i]} * b.c[j]) % p;
  }
  const auto& mod = modulus_.coeffs();
  for (int k = 2 * m_ - 2; k >= m_; --k) {
    const std::uint64_t t = acc[k];
    if (t == 0) continue;
    for (int j = 0; j < m_; ++j) acc[k - m_ + j] = (acc[k - m_ + j] + (p - t) * mod[j]) % p;
    acc[k] = 0;
  }
  ExtElem e = zero();
  for (int i = 0; i < m_; ++i) e.c[i] = static_cast<Residue>(acc[i]);
  return e;
}

ExtElem ExtField::pow(const ExtElem& a, std::uint64_t e) const {
  ExtElem result = from_prime(1);
  ExtElem base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

ExtElem ExtField::inv(const ExtElem& a) const {
  require(a != zero(), "inverse of zero in extension field");
  return pow(a, size_ - 2);
}

ExtElem ExtField::eval(const Poly& g, const ExtElem& a) const {
  ExtElem acc = zero();
  const auto& c = g.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = add(mul(acc, a), from_prime(*it));
  return acc;
}

bool ExtField::is_prime_subfield(const ExtElem& a) const {
  for (int i = 1; i < m_; ++i)
    if (a.c[i] != 0) return false;
  return true;
}

Residue ExtField::trace(const ExtElem& a) const {
  std::uint64_t acc = 0;
  for (int k = 0; k < m_; ++k) acc += std::uint64_t{a.c[k]} * basis_trace_[k];
  return static_cast<Residue>(acc % F_.p());
}

Residue abs_trace(const ExtElem& a, const ExtField& K) {
  ExtElem acc = a;
  ExtElem conj = a;
  for (int i = 1; i < K.degree(); ++i) {
    conj = K.frobenius(conj);
    acc = K.add(acc, conj);
  }
  if (!K.is_prime_subfield(acc)) throw NumericalError("trace left the prime subfield");
  return acc.c[0];
}

ExtField make_ext_field(std::uint32_t p, int m) {
  PrimeField F(p);
  require(m >= 1, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (int i = 0; i < m; ++i) {
    q *= p;
    require(q <= kFieldCap, "p^m exceeds the field-size cap 2^31");
  }
  if (m == 1) return ExtField(F, Poly::x(F));
  for (std::uint64_t idx = 0;; ++idx) {
    Poly P = monic_from_lex_index(F, m, idx);
    if (is_irreducible(P)) return ExtField(F, std::move(P));
  }
}

std::shared_ptr<const ExtField> shared_ext_field(std::uint32_t p, int m) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, int>, std::shared_ptr<const ExtField>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{p, m}];
  if (!slot) slot = std::make_shared<const ExtField>(make_ext_field(p, m));
  return slot;
}

AdditiveCharacter::AdditiveCharacter(PrimeField F) : table_(F.p()) {
  table_[0] = 1.0;
  for (std::uint32_t a = 1; a < F.p(); ++a)
    table_[a] = std::polar(1.0, 2.0 * std::numbers::pi * a / F.p());
}

PowerTraceTable::PowerTraceTable(const ExtField& K, int max_power)
    : p_(K.p()), D_(max_power), n_(K.size()) {
  require(max_power >= 1, "trace table needs max_power >= 1");
  require(n_ * static_cast<std::uint64_t>(D_) <= kTableCap, "trace table too large");
  data_.resize(n_ * D_);
  for (std::uint64_t idx = 0; idx < n_; ++idx) {
    const ExtElem a = K.element(idx);
    ExtElem pw = a;
    std::uint16_t* out = data_.data() + idx * D_;
    for (int i = 0; i < D_; ++i) {
      out[i] = static_cast<std::uint16_t>(K.trace(pw));
      if (i + 1 < D_) pw = K.mul(pw, a);
    }
  }
}

std::shared_ptr<const PowerTraceTable> shared_power_trace_table(std::uint32_t p, int m, int max_power) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, int>, std::shared_ptr<const PowerTraceTable>> cache;
  auto K = shared_ext_field(p, m);
  std::lock_guard lock(mu);
  auto& slot = cache[{p, m}];
  if (!slot || slot->max_power() < max_power) slot = std::make_shared<const PowerTraceTable>(*K, max_power);
  return slot;
}

}  // namespace asl
