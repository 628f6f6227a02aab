#pragma once

// Dense univariate polynomials over a finite field context.

#include <climits>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "frobmod/finite_field.hpp"

namespace frobmod::ff {

class Poly {
 public:
  /// Degree reported for the zero polynomial.
  static constexpr int kNegInfDegree = INT_MIN;

  explicit Poly(FieldCtx ctx) : ctx_(std::move(ctx)) {}
  /// Coefficients from x^0 upward; trailing zeros are trimmed.
  Poly(FieldCtx ctx, std::vector<FieldElement> coeffs);

  static Poly constant(const FieldCtx& ctx, const FieldElement& c);
  /// The monomial c * x^d.
  static Poly monomial(const FieldCtx& ctx, const FieldElement& c, int d);
  static Poly x(const FieldCtx& ctx) { return monomial(ctx, ctx.one(), 1); }
  static Poly from_ints(const FieldCtx& ctx, const std::vector<i64>& coeffs);

  const FieldCtx& ctx() const { return ctx_; }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? kNegInfDegree : static_cast<int>(c_.size()) - 1; }
  FieldElement coeff(int i) const;
  FieldElement leading() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(const FieldElement& c) const;

  /// Quotient and remainder; throws DomainError on a zero divisor.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly operator%(const Poly& d) const { return divmod(d).second; }

  Poly monic() const;
  Poly derivative() const;
  FieldElement eval(const FieldElement& x) const;
  std::string to_string() const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.ctx_ == b.ctx_ && a.c_ == b.c_; }

 private:
  void trim();
  FieldCtx ctx_;
  std::vector<FieldElement> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
/// base^e mod m.
Poly powmod(const Poly& base, const Integer& e, const Poly& m);

/// Field homomorphism F_q -> F_{q^e} sending the generator of the source
/// power basis to a fixed root of its modulus in the target.
class Embedding {
 public:
  Embedding(FieldCtx source, FieldCtx target);
  const FieldCtx& source() const { return source_; }
  const FieldCtx& target() const { return target_; }
  FieldElement operator()(const FieldElement& a) const;
  Poly operator()(const Poly& f) const;

 private:
  FieldCtx source_;
  FieldCtx target_;
  FieldElement image_;
};

/// Distinct roots of f in the field of f, sorted in index order. Uses an
/// exhaustive scan when q <= 10^6 and seeded equal-degree splitting above.
std::vector<FieldElement> poly_factor_distinct_roots(const Poly& f, u64 seed = 0);

}  // namespace frobmod::ff
