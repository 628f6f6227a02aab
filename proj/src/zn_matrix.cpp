#include "frobmod/zn_matrix.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_set>

#include "frobmod/parallel.hpp"

namespace frobmod::zn {

namespace {

void require_modulus(u64 modulus) {
  if (modulus < 2) throw DomainError("modulus must be at least 2");
}

void require_scan(u64 modulus) {
  require_modulus(modulus);
  if (modulus > 100 || ipow(modulus, 4) > kMaxScan) {
    throw CapExceeded("exhaustive scan of M^4 = " + std::to_string(modulus) + "^4 matrices exceeds the cap");
  }
}

PrimePower require_prime_power(u64 modulus) {
  auto pp = as_prime_power(modulus);
  if (!pp) throw DomainError(std::to_string(modulus) + " is not a prime power");
  return *pp;
}

u64 unit_residue(i64 q, u64 modulus) {
  u64 r = mod_floor(q, modulus);
  if (gcd_u64(r, modulus) != 1) throw DomainError("q is not a unit modulo " + std::to_string(modulus));
  return r;
}

std::shared_ptr<const DetTraceTable> cached_table(u64 modulus) {
  static std::mutex mu;
  static std::map<u64, std::shared_ptr<const DetTraceTable>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[modulus];
  if (!slot) slot = std::make_shared<const DetTraceTable>(modulus);
  return slot;
}

std::vector<ResidueMatrix> conjugators(u64 modulus) {
  std::vector<ResidueMatrix> gens{ResidueMatrix::make(1, 1, 0, 1, modulus), ResidueMatrix::make(1, 0, 1, 1, modulus)};
  for (u64 u = 2; u < modulus; ++u) {
    if (gcd_u64(u, modulus) == 1) gens.push_back(ResidueMatrix::make(static_cast<i64>(u), 0, 0, 1, modulus));
  }
  return gens;
}

// Breadth-first closure of m under conjugation by a generating set of GL2.
std::vector<ResidueMatrix> orbit(const ResidueMatrix& m) {
  const auto gens = conjugators(m.modulus);
  std::vector<ResidueMatrix> inverses;
  inverses.reserve(gens.size());
  for (const auto& g : gens) inverses.push_back(g.inverse());

  std::unordered_set<u64> seen{m.index()};
  std::vector<ResidueMatrix> members{m};
  for (std::size_t head = 0; head < members.size(); ++head) {
    const ResidueMatrix cur = members[head];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      ResidueMatrix next = gens[i] * cur * inverses[i];
      if (seen.insert(next.index()).second) members.push_back(next);
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace

Residue::Residue(i64 value, u64 modulus) : value_(0), modulus_(modulus) {
  require_modulus(modulus);
  value_ = mod_floor(value, modulus);
}

ResidueMatrix ResidueMatrix::make(i64 a, i64 b, i64 c, i64 d, u64 modulus) {
  require_modulus(modulus);
  return {mod_floor(a, modulus), mod_floor(b, modulus), mod_floor(c, modulus), mod_floor(d, modulus), modulus};
}

ResidueMatrix ResidueMatrix::from_index(u64 index, u64 modulus) {
  ResidueMatrix m;
  m.modulus = modulus;
  m.d = index % modulus;
  index /= modulus;
  m.c = index % modulus;
  index /= modulus;
  m.b = index % modulus;
  m.a = index / modulus;
  return m;
}

u64 ResidueMatrix::det() const {
  return (mul_mod(a, d, modulus) + modulus - mul_mod(b, c, modulus)) % modulus;
}

u64 ResidueMatrix::trace() const { return (a + d) % modulus; }

ResidueMatrix ResidueMatrix::operator*(const ResidueMatrix& o) const {
  const u64 m = modulus;
  return {(mul_mod(a, o.a, m) + mul_mod(b, o.c, m)) % m, (mul_mod(a, o.b, m) + mul_mod(b, o.d, m)) % m,
          (mul_mod(c, o.a, m) + mul_mod(d, o.c, m)) % m, (mul_mod(c, o.b, m) + mul_mod(d, o.d, m)) % m, m};
}

ResidueMatrix ResidueMatrix::operator-() const {
  const u64 m = modulus;
  return {(m - a) % m, (m - b) % m, (m - c) % m, (m - d) % m, m};
}

ResidueMatrix ResidueMatrix::inverse() const {
  u64 inv = inv_mod(det(), modulus);
  const u64 m = modulus;
  return {mul_mod(d, inv, m), mul_mod((m - b) % m, inv, m), mul_mod((m - c) % m, inv, m), mul_mod(a, inv, m), m};
}

ResidueMatrix ResidueMatrix::pow(u64 e) const {
  ResidueMatrix result = identity(modulus);
  ResidueMatrix base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

ResidueMatrix ResidueMatrix::reduce(u64 divisor) const {
  if (divisor == 0 || modulus % divisor != 0) throw DomainError("reduction modulus must divide the modulus");
  return {a % divisor, b % divisor, c % divisor, d % divisor, divisor};
}

std::string ResidueMatrix::to_string() const {
  std::ostringstream os;
  os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
  return os.str();
}

GroupSizes group_sizes(u64 modulus) {
  require_modulus(modulus);
  GroupSizes g{1, 1, 1};
  for (const auto& [ell, n] : factorize(modulus)) {
    g.gl2 *= ipow(ell, 4 * n - 4) * (ell * ell - ell) * (ell * ell - 1);
    g.sl2 *= ipow(ell, 3 * n - 2) * (ell * ell - 1);
  }
  // -I is a nontrivial central element of SL2 exactly when M > 2.
  g.psl2 = modulus == 2 ? g.sl2 : g.sl2 / 2;
  return g;
}

DetTraceTable::DetTraceTable(u64 modulus, unsigned threads) : modulus_(modulus) {
  require_scan(modulus);
  const u64 m = modulus;
  using Counts = std::vector<u64>;
  counts_ = parallel_reduce(
      0, m, threads, Counts(m * m, 0),
      [m](u64 lo, u64 hi, Counts& acc) {
        for (u64 a = lo; a < hi; ++a)
          for (u64 d = 0; d < m; ++d) {
            const u64 ad = a * d % m;
            const u64 tr = (a + d) % m;
            for (u64 b = 0; b < m; ++b)
              for (u64 c = 0; c < m; ++c) {
                const u64 det = (ad + m - b * c % m) % m;
                ++acc[det * m + tr];
              }
          }
      },
      [](Counts& into, const Counts& from) {
        for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
      });
}

u64 count_det_trace_exhaustive(u64 modulus, i64 q, i64 t) {
  u64 qr = unit_residue(q, modulus);
  return cached_table(modulus)->count(qr, mod_floor(t, modulus));
}

u64 count_det_trace(u64 modulus, i64 q, i64 t) {
  require_modulus(modulus);
  unit_residue(q, modulus);
  u64 total = 1;
  for (const auto& pp : factorize(modulus)) total *= count_det_trace_exhaustive(pp.value(), q, t);
  return total;
}

u64 count_xy_eq_alpha(u64 modulus, i64 alpha) {
  auto [ell, n] = require_prime_power(modulus);
  const u64 units = ipow(ell, n) - ipow(ell, n - 1);
  Valuation k = valuation_mod(mod_floor(alpha, modulus), ell, n);
  if (k.is_infinite()) return static_cast<u64>(n + 1) * units + ipow(ell, n - 1);
  return static_cast<u64>(k.value() + 1) * units;
}

InductionSum induction_sum(u64 ell, int n, int k) {
  if (!is_prime(ell)) throw DomainError("l must be prime");
  if (n < 1) throw DomainError("n must be positive");
  if (k < 0 || k > n) throw DomainError("k must lie in [0, n]");
  InductionSum s;
  const Rational units = rpow(ell, n) - rpow(ell, n - 1);
  for (int i = 0; i <= k; ++i) s.literal += (rpow(ell, n - i) - rpow(ell, n - i - 1)) * (2 * i + 1) * units;
  s.closed_form = rpow(ell, 2 * n) + rpow(ell, 2 * n - 1) - Rational(2 * k + 3) * rpow(ell, 2 * n - k - 1) +
                  Rational(2 * k + 1) * rpow(ell, 2 * n - k - 2);
  return s;
}

ConjClass conj_class_of(const ResidueMatrix& m) {
  if (!m.invertible()) throw DomainError("matrix " + m.to_string() + " is singular");
  auto members = orbit(m);
  return {members.front(), members.size(), members.front().index()};
}

std::vector<ResidueMatrix> class_members(const ResidueMatrix& m) {
  if (!m.invertible()) throw DomainError("matrix " + m.to_string() + " is singular");
  return orbit(m);
}

u64 stabilizer_order(const ResidueMatrix& m) {
  require_scan(m.modulus);
  const u64 total = ipow(m.modulus, 4);
  u64 count = 0;
  for (u64 idx = 0; idx < total; ++idx) {
    ResidueMatrix x = ResidueMatrix::from_index(idx, m.modulus);
    if (x.invertible() && x * m == m * x) ++count;
  }
  return count;
}

std::vector<ConjClass> classes_with_det(u64 modulus, i64 q) {
  require_scan(modulus);
  const u64 qr = unit_residue(q, modulus);
  const u64 total = ipow(modulus, 4);
  std::vector<bool> seen(total, false);
  std::vector<ConjClass> out;
  for (u64 idx = 0; idx < total; ++idx) {
    if (seen[idx]) continue;
    ResidueMatrix m = ResidueMatrix::from_index(idx, modulus);
    if (m.det() != qr) continue;
    auto members = orbit(m);
    for (const auto& x : members) seen[x.index()] = true;
    out.push_back({members.front(), members.size(), members.front().index()});
  }
  return out;
}

bool fixes_primitive_vector(const ResidueMatrix& m, u64 ell, int level) {
  if (level == 0) return true;
  const u64 mod = ipow(ell, level);
  if (m.modulus % mod != 0) throw DomainError("level exceeds the matrix modulus");
  const ResidueMatrix r = m.reduce(mod);
  const u64 am1 = (r.a + mod - 1) % mod;
  const u64 dm1 = (r.d + mod - 1) % mod;
  auto fixed = [&](u64 x, u64 y) {
    return (am1 * x + r.b * y) % mod == 0 && (r.c * x + dm1 * y) % mod == 0;
  };
  // Primitive vectors up to unit scaling: (1, y) and (x, 1) with l | x.
  for (u64 y = 0; y < mod; ++y)
    if (fixed(1, y)) return true;
  for (u64 x = 0; x < mod; x += ell)
    if (fixed(x, 1)) return true;
  return false;
}

u64 count_order_class(u64 modulus, i64 q) {
  auto [ell, n] = require_prime_power(modulus);
  require_scan(modulus);
  const u64 qr = unit_residue(q, modulus);
  const u64 total = ipow(modulus, 4);
  u64 count = 0;
  for (u64 idx = 0; idx < total; ++idx) {
    ResidueMatrix m = ResidueMatrix::from_index(idx, modulus);
    if (m.det() == qr && fixes_primitive_vector(m, ell, n)) ++count;
  }
  return count;
}

std::vector<ResidueMatrix> conj_representatives_ma(u64 ell, int n, i64 q) {
  if (!is_prime(ell)) throw DomainError("l must be prime");
  if (n < 1) throw DomainError("n must be positive");
  const u64 modulus = ipow(ell, n);
  if (mod_floor(q, ell) == 0) throw DomainError("l divides q");
  const int nu = valuation_mod(mod_floor(q - 1, modulus), ell, n).value_or(n);
  std::vector<ResidueMatrix> reps;
  for (int a = 0; a <= nu; ++a) reps.push_back(ResidueMatrix::make(1, static_cast<i64>(ipow(ell, a)), 0, q, modulus));
  return reps;
}

namespace {

void require_group_structure_args(u64 ell, int a, int b, i64 q) {
  if (!is_prime(ell)) throw DomainError("l must be prime");
  if (a < 0 || a > b) throw DomainError("group structure needs 0 <= a <= b");
  if (mod_floor(q, ell) == 0) throw DomainError("l divides q");
}

}  // namespace

bool matches_group_structure(const ResidueMatrix& m, u64 ell, int a, int b, i64 q) {
  require_group_structure_args(ell, a, b, q);
  const u64 modulus = ipow(ell, a + b + 1);
  if (m.modulus != modulus) throw DomainError("matrix modulus must be l^(a+b+1)");
  const u64 qr = mod_floor(q, modulus);
  if (m.det() != qr) return false;
  const u64 target = (qr + 1) % modulus;
  const u64 tr = m.trace();
  if (tr == target) return false;
  if ((tr + modulus - target) % ipow(ell, a + b) != 0) return false;
  const u64 low = ipow(ell, a);
  if ((m.a + modulus - 1) % low != 0 || m.b % low != 0 || m.c % low != 0 || (m.d + modulus - 1) % low != 0) {
    return false;
  }
  return fixes_primitive_vector(m, ell, b);
}

u64 count_group_structure_matrices(u64 ell, int a, int b, i64 q) {
  require_group_structure_args(ell, a, b, q);
  const u64 modulus = ipow(ell, a + b + 1);
  require_scan(modulus);
  const u64 total = ipow(modulus, 4);
  u64 count = 0;
  for (u64 idx = 0; idx < total; ++idx) {
    if (matches_group_structure(ResidueMatrix::from_index(idx, modulus), ell, a, b, q)) ++count;
  }
  return count;
}

}  // namespace frobmod::zn
