#pragma once

// Arithmetic in F_p and F_{p^k}. Extension elements are stored in the power
// basis of a deterministic monic irreducible modulus.

#include <compare>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "frobmod/arith.hpp"

namespace frobmod::ff {

namespace detail {
struct FieldData;
}

class FieldElement;

/// Handle to an immutable field context. Copies share the same context;
/// elements hold a pointer into it and stay valid while any handle lives.
class FieldCtx {
 public:
  /// F_{p^k} with the first monic irreducible modulus found by a search that
  /// starts at the lexicographically least candidate (seed 0) or at a
  /// seed-derived offset.
  static FieldCtx make(u64 p, int k, u64 seed = 0);
  /// F_p[x]/(modulus); `modulus` lists coefficients from x^0 up to the
  /// leading 1 and must be irreducible.
  static FieldCtx with_modulus(u64 p, std::vector<u64> modulus);

  u64 characteristic() const;
  int degree() const;
  /// q = p^k.
  const Integer& order() const;
  /// q when it fits in 64 bits.
  std::optional<u64> small_order() const;
  const std::vector<u64>& modulus_poly() const;
  bool is_prime_field() const { return degree() == 1; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(i64 v) const;
  FieldElement from_coeffs(std::span<const u64> coeffs) const;
  /// Element whose base-p digits (x^0 first) are the coefficients.
  FieldElement from_index(u64 index) const;
  /// The class of x in F_p[x]/(modulus).
  FieldElement generator() const;
  /// Least nonsquare in index order; absent in characteristic 2.
  std::optional<FieldElement> least_nonsquare() const;

  const detail::FieldData* data() const { return data_.get(); }

  friend bool operator==(const FieldCtx& x, const FieldCtx& y) { return x.data_ == y.data_; }

 private:
  explicit FieldCtx(std::shared_ptr<const detail::FieldData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::FieldData> data_;
};

class FieldElement {
 public:
  using Coeffs = boost::container::small_vector<u64, 4>;

  FieldElement() = default;
  FieldElement(const detail::FieldData* field, Coeffs coeffs) : field_(field), coeffs_(std::move(coeffs)) {}

  const detail::FieldData* field() const { return field_; }
  std::span<const u64> coeffs() const { return {coeffs_.data(), coeffs_.size()}; }

  bool is_zero() const;
  bool is_one() const;
  bool in_prime_field() const;
  /// Value of an element of the prime subfield.
  u64 prime_value() const;
  u64 index() const;
  Integer big_index() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  FieldElement inverse() const;
  FieldElement pow(const Integer& e) const;
  FieldElement pow(u64 e) const;
  /// x -> x^{p^times}.
  FieldElement frobenius(int times = 1) const;
  FieldElement scaled(u64 c) const;

  std::string to_string() const;

  friend bool operator==(const FieldElement& x, const FieldElement& y) {
    return x.field_ == y.field_ && x.coeffs_ == y.coeffs_;
  }
  /// Index order: compares coefficients from the highest power down.
  friend std::strong_ordering operator<=>(const FieldElement& x, const FieldElement& y);

 private:
  const detail::FieldData* field_ = nullptr;
  Coeffs coeffs_;
};

/// Euler-criterion Legendre symbol of a prime-field element.
int legendre(const FieldElement& a);
bool is_square(const FieldElement& a);
std::optional<FieldElement> sqrt(const FieldElement& a);
/// Product of the conjugates a^{p^i}, i < k, as a residue mod p.
u64 norm_to_prime(const FieldElement& a);

/// Whether the monic polynomial over F_p (coefficients x^0 first) is irreducible.
bool is_irreducible(u64 p, std::span<const u64> monic);

namespace detail {

struct FieldData {
  u64 p = 0;
  int k = 0;
  std::vector<u64> modulus;  // monic, size k + 1
  std::vector<u64> neg_modulus;  // -modulus mod p
  Integer order;
  std::optional<u64> small_order;
  std::optional<std::vector<u64>> nonsquare;
};

}  // namespace detail

}  // namespace frobmod::ff
