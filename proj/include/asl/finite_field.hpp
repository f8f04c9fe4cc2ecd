#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "asl/polyring.hpp"
#include "asl/prime_field.hpp"

namespace asl {

/// Element of F_p[x]/(modulus), polynomial basis, exactly m coefficients.
struct ExtElem {
  std::vector<Residue> c;

  bool operator==(const ExtElem&) const = default;
};

/// F_{p^m} realized as F_p[x]/(P) for a monic irreducible P of degree m.
/// Immutable after construction.
class ExtField {
public:
  /// Throws PreconditionError if the modulus is not monic irreducible or
  /// the field would exceed 2^31 elements.
  ExtField(PrimeField F, Poly modulus);

  const PrimeField& prime_field() const { return F_; }
  std::uint32_t p() const { return F_.p(); }
  int degree() const { return m_; }
  std::uint64_t size() const { return size_; }
  const Poly& modulus() const { return modulus_; }

  ExtElem zero() const { return ExtElem{std::vector<Residue>(m_, 0)}; }
  ExtElem from_prime(Residue a) const;
  ExtElem from_poly(const Poly& g) const;
  /// The class of x, a root of the modulus.
  ExtElem root() const { return from_poly(Poly::x(F_)); }

  /// Bijection {0..size-1} <-> elements, idx = sum c_i p^i.
  ExtElem element(std::uint64_t idx) const;
  std::uint64_t index(const ExtElem& a) const;

  ExtElem add(const ExtElem& a, const ExtElem& b) const;
  ExtElem sub(const ExtElem& a, const ExtElem& b) const;
  ExtElem mul(const ExtElem& a, const ExtElem& b) const;
  ExtElem pow(const ExtElem& a, std::uint64_t e) const;
  /// Throws PreconditionError on zero.
  ExtElem inv(const ExtElem& a) const;
  ExtElem frobenius(const ExtElem& a) const { return pow(a, F_.p()); }
  /// Evaluates g (coefficients in F_p) at a.
  ExtElem eval(const Poly& g, const ExtElem& a) const;
  bool is_prime_subfield(const ExtElem& a) const;

  /// Trace through the precomputed linear functional tr(x^k), k < m.
  /// Agrees with abs_trace; used in the enumeration kernels.
  Residue trace(const ExtElem& a) const;

private:
  PrimeField F_;
  Poly modulus_;
  int m_;
  std::uint64_t size_;
  std::vector<Residue> basis_trace_;
};

/// Absolute trace sum_{i<m} a^{p^i}, computed by iterated Frobenius in K.
Residue abs_trace(const ExtElem& a, const ExtField& K);

/// F_{p^m} with the lex-first monic irreducible modulus of degree m.
ExtField make_ext_field(std::uint32_t p, int m);

/// Shared, lazily built instance of make_ext_field(p, m).
std::shared_ptr<const ExtField> shared_ext_field(std::uint32_t p, int m);

/// psi(a) = exp(2 pi i a / p), tabulated.
class AdditiveCharacter {
public:
  explicit AdditiveCharacter(PrimeField F);
  std::complex<double> operator()(Residue a) const { return table_[a % table_.size()]; }
  const std::vector<std::complex<double>>& table() const { return table_; }

private:
  std::vector<std::complex<double>> table_;
};

/// tr(alpha^i) for every alpha in K and 1 <= i <= max_power, flattened as
/// row-per-element. The raw material of every exponential-sum kernel.
class PowerTraceTable {
public:
  PowerTraceTable(const ExtField& K, int max_power);

  std::uint32_t p() const { return p_; }
  int max_power() const { return D_; }
  std::uint64_t elements() const { return n_; }
  const std::uint16_t* row(std::uint64_t idx) const { return data_.data() + idx * D_; }

private:
  std::uint32_t p_;
  int D_;
  std::uint64_t n_;
  std::vector<std::uint16_t> data_;
};

/// Cached table for F_{p^m} covering at least powers 1..max_power.
std::shared_ptr<const PowerTraceTable> shared_power_trace_table(std::uint32_t p, int m, int max_power);

}  // namespace asl
