#include "frobmod/formulas.hpp"

#include <cmath>
#include <stdexcept>

namespace frobmod::formulas {

namespace {

void require_coprime(i64 q, u64 modulus) {
  if (modulus < 2) throw DomainError("modulus must be at least 2");
  if (gcd_u64(mod_floor(q, modulus), modulus) != 1) throw DomainError("gcd(N, q) must be 1");
}

double sqrt_q(i64 q) {
  if (q <= 0) throw DomainError("q must be positive for an error bound");
  return std::sqrt(static_cast<double>(q));
}

// (4[L:K] + 4g_L + 2)/(l^n - l^{n-1}) * (sqrt(q) + 23)/q at level l^n.
double prime_power_bound(u64 ell, int n, i64 q) {
  const double c = to_double(chebotarev_constant(ipow(ell, n)));
  const double units = static_cast<double>(ipow(ell, n) - ipow(ell, n - 1));
  const double qd = static_cast<double>(q);
  return round_up(c / units * (sqrt_q(q) + 23.0) / qd);
}

Integer pow_big(u64 base, int exp) { return ipow_big(base, exp); }

Integer phi_odd(u64 ell, int n, const Integer& delta) {
  const u64 modulus = ipow(ell, n);
  const u64 d = mod_floor(delta, modulus);
  const Integer base = pow_big(ell, 2 * n) + pow_big(ell, 2 * n - 1);
  Valuation ord = valuation_mod(d, ell, n);
  if (ord.is_infinite()) {
    return n % 2 == 0 ? base - pow_big(ell, 3 * n / 2 - 1) : base - pow_big(ell, (3 * n - 1) / 2);
  }
  const int k = ord.value();
  if (k % 2 == 1) return base - Integer(ell + 1) * pow_big(ell, 2 * n - (k + 3) / 2);
  const u64 unit = (d / ipow(ell, k)) % ell;
  const bool square = pow_mod(unit, (ell - 1) / 2, ell) == 1;
  if (square) return base;
  return base - 2 * pow_big(ell, 2 * n - k / 2 - 1);
}

Integer phi_two(int n, const Integer& delta) {
  const u64 modulus = ipow(2, n + 2);
  const u64 d = mod_floor(delta, modulus);
  const Integer base = pow_big(2, 2 * n) + pow_big(2, 2 * n - 1);
  if (d % 2 == 1) return pow_big(2, 2 * n - 1);
  if (d == 0) return n % 2 == 0 ? base - pow_big(2, 3 * n / 2 - 1) : base - pow_big(2, (3 * n - 1) / 2);
  const int ord = valuation(d, 2);
  if (ord % 2 == 1) return base - 3 * pow_big(2, 2 * n - (ord + 1) / 2);
  // ord = 2k, delta = 2^{2k} D with D odd; ord <= n+1 forces n >= 2k-1.
  const int k = ord / 2;
  const u64 unit = d >> ord;
  if (n == 2 * k - 1) return base - pow_big(2, (3 * n - 1) / 2);
  if (n == 2 * k) return unit % 4 == 1 ? base - pow_big(2, 3 * n / 2 - 1) : base - 3 * pow_big(2, 3 * n / 2 - 1);
  if (unit % 4 == 3) return base - 3 * pow_big(2, 2 * n - k - 1);
  if (unit % 8 == 5) return base - pow_big(2, 2 * n - k);
  return base;
}

}  // namespace

std::string_view to_string(Statistic s) {
  switch (s) {
    case Statistic::TraceResidue: return "trace_residue";
    case Statistic::OrderProb: return "order_prob";
    case Statistic::ClassProb: return "class_prob";
    case Statistic::GroupStructure: return "group_structure";
  }
  return "unknown";
}

LevelData level_data(u64 modulus) {
  if (modulus < 2) throw DomainError("modulus must be at least 2");
  LevelData out;
  out.modulus = modulus;
  out.degree_lk = zn::group_sizes(modulus).psl2;
  out.genus = Rational(1) + Rational(Integer(out.degree_lk) * (Integer(modulus) - 6), Integer(12 * modulus));
  if (boost::multiprecision::denominator(out.genus) != 1 || out.genus < 0) {
    throw std::logic_error("genus of level " + std::to_string(modulus) + " is not a nonnegative integer");
  }
  return out;
}

Rational chebotarev_constant(u64 modulus) {
  LevelData level = level_data(modulus);
  return Rational(4 * level.degree_lk) + 4 * level.genus + 2;
}

Integer phi(const PhiInput& input) {
  if (!is_prime(input.ell)) throw DomainError("l must be prime");
  if (input.n < 1) throw DomainError("n must be positive");
  return input.ell == 2 ? phi_two(input.n, input.delta) : phi_odd(input.ell, input.n, input.delta);
}

Rational theta(u64 ell, int n, i64 q) {
  if (!is_prime(ell)) throw DomainError("l must be prime");
  if (n < 1) throw DomainError("n must be positive");
  if (mod_floor(q, ell) == 0) throw DomainError("l divides q");
  const u64 modulus = ipow(ell, n);
  Valuation nu = valuation_mod(mod_floor(q - 1, modulus), ell, n);
  if (nu.is_infinite()) return Rational(1) / (rpow(ell, n) - rpow(ell, n - 2));
  if (nu.value() == 0) {
    // With l not dividing q - 1, a point of order l^n exists iff l^n | #E,
    // i.e. trace = q + 1 mod l^n.
    const Integer delta = Integer(q - 1) * Integer(q - 1);
    return Rational(phi({ell, n, delta}), Integer(zn::group_sizes(modulus).sl2));
  }
  const int v = nu.value();
  return Rational(ipow_big(ell, 2 * v + 1) + 1, ipow_big(ell, n + 2 * v - 1) * (ell * ell - 1));
}

Prediction trace_prediction(i64 q, u64 modulus, i64 t) {
  require_coprime(q, modulus);
  Prediction p{Rational(1), 0.0, modulus, Statistic::TraceResidue};
  const Integer delta = Integer(t) * t - 4 * Integer(q);
  for (const auto& [ell, n] : factorize(modulus)) {
    const u64 sl2 = zn::group_sizes(ipow(ell, n)).sl2;
    p.value *= Rational(phi({ell, n, delta}), Integer(sl2));
    p.error_bound = round_up(p.error_bound + prime_power_bound(ell, n, q));
  }
  return p;
}

Prediction class_prediction(i64 q, u64 modulus, const zn::ConjClass& cls) {
  require_coprime(q, modulus);
  if (cls.representative.modulus != modulus) throw DomainError("class modulus does not match N");
  if (cls.representative.det() != mod_floor(q, modulus)) throw DomainError("class determinant is not q mod N");
  Prediction p;
  p.modulus = modulus;
  p.statistic = Statistic::ClassProb;
  p.value = Rational(Integer(cls.size), Integer(zn::group_sizes(modulus).sl2));
  const double c = to_double(chebotarev_constant(modulus));
  p.error_bound = round_up(to_double(p.value) * c / sqrt_q(q) + 23.0 / static_cast<double>(q));
  return p;
}

Prediction order_prediction(i64 q, u64 modulus) {
  require_coprime(q, modulus);
  Prediction p{Rational(1), 0.0, modulus, Statistic::OrderProb};
  for (const auto& [ell, n] : factorize(modulus)) {
    p.value *= theta(ell, n, q);
    p.error_bound = round_up(p.error_bound + prime_power_bound(ell, n, q));
  }
  return p;
}

Prediction group_structure_prediction(i64 q, u64 ell, int a, int b) {
  const u64 modulus = ipow(ell, a + b + 1);
  require_coprime(q, modulus);
  // The event is a union of conjugacy classes; the class bound is summed
  // over those classes.
  u64 members = 0;
  u64 classes = 0;
  for (const auto& cls : zn::classes_with_det(modulus, q)) {
    if (!zn::matches_group_structure(cls.representative, ell, a, b, q)) continue;
    members += cls.size;
    ++classes;
  }
  Prediction p;
  p.modulus = modulus;
  p.statistic = Statistic::GroupStructure;
  p.value = Rational(Integer(members), Integer(zn::group_sizes(modulus).sl2));
  const double c = to_double(chebotarev_constant(modulus));
  p.error_bound =
      round_up(to_double(p.value) * c / sqrt_q(q) + static_cast<double>(classes) * 23.0 / static_cast<double>(q));
  return p;
}

}  // namespace frobmod::formulas
