// frobmod: predictions, exhaustive oracles and curve censuses from the shell.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frobmod/census.hpp"
#include "frobmod/elliptic.hpp"
#include "frobmod/formulas.hpp"
#include "frobmod/modp.hpp"
#include "frobmod/report.hpp"
#include "frobmod/zn_matrix.hpp"

namespace {

using namespace frobmod;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckResult {
  bool pass = true;
  u64 checked = 0;
  std::string counterexample;

  void fail(const std::string& what) {
    if (pass) counterexample = what;
    pass = false;
  }
};

int report_check(const std::string& name, const CheckResult& r) {
  if (r.pass) {
    std::cout << "PASS " << name << ": " << r.checked << " cases checked\n";
    return kExitPass;
  }
  std::cout << "FAIL " << name << ": " << r.counterexample << "\n";
  return kExitFail;
}

std::vector<u64> units(u64 modulus) {
  std::vector<u64> out;
  for (u64 q = 1; q < modulus; ++q)
    if (gcd_u64(q, modulus) == 1) out.push_back(q);
  return out;
}

PrimePower require_prime_power(u64 modulus) {
  const auto pp = as_prime_power(modulus);
  if (!pp) throw UsageError("--modulus must be a prime power");
  return *pp;
}

// ---- oracle ----

CheckResult oracle_phi(u64 m) {
  CheckResult r;
  const u64 sl2 = zn::group_sizes(m).sl2;
  for (u64 q : units(m)) {
    for (u64 t = 0; t < m; ++t) {
      const u64 count = zn::count_det_trace_exhaustive(m, static_cast<i64>(q), static_cast<i64>(t));
      const Rational predicted = formulas::trace_prediction(static_cast<i64>(q), m, static_cast<i64>(t)).value;
      ++r.checked;
      if (predicted * sl2 != Rational(count)) {
        r.fail("(q,t)=(" + std::to_string(q) + "," + std::to_string(t) + ") enumerated " + std::to_string(count) +
               " predicted " + to_string(predicted * sl2));
      }
    }
  }
  return r;
}

CheckResult oracle_theta(u64 m) {
  const PrimePower pp = require_prime_power(m);
  const u64 ell = pp.prime;
  const int n = pp.exponent;
  const u64 sl2 = zn::group_sizes(m).sl2;
  CheckResult r;
  for (u64 q : units(m)) {
    const u64 count = zn::count_order_class(m, static_cast<i64>(q));
    const Rational th = formulas::theta(ell, n, static_cast<i64>(q));
    const Valuation nu = valuation_mod(mod_floor(static_cast<i64>(q) - 1, m), ell, n);
    const int v = nu.value_or(n);
    const u64 closed = v >= n ? ipow(ell, 2 * n) : ipow(ell, 2 * n) + ipow(ell, 2 * n - 2 * v - 1);
    ++r.checked;
    if (th * sl2 != Rational(count) || count != closed) {
      r.fail("q=" + std::to_string(q) + " enumerated " + std::to_string(count) + " theta*#SL2 " +
             to_string(th * sl2) + " closed form " + std::to_string(closed));
    }
  }
  return r;
}

CheckResult oracle_lemma_xy(u64 m) {
  require_prime_power(m);
  CheckResult r;
  std::vector<u64> hist(m, 0);
  for (u64 x = 0; x < m; ++x)
    for (u64 y = 0; y < m; ++y) ++hist[x * y % m];
  for (u64 alpha = 0; alpha < m; ++alpha) {
    ++r.checked;
    const u64 formula = zn::count_xy_eq_alpha(m, static_cast<i64>(alpha));
    if (formula != hist[alpha]) {
      r.fail("alpha=" + std::to_string(alpha) + " enumerated " + std::to_string(hist[alpha]) + " formula " +
             std::to_string(formula));
    }
  }
  return r;
}

CheckResult oracle_lemma7(u64 m) {
  const PrimePower pp = require_prime_power(m);
  CheckResult r;
  for (u64 q : units(m)) {
    const auto reps = zn::conj_representatives_ma(pp.prime, pp.exponent, static_cast<i64>(q));
    std::set<u64> fps;
    for (const auto& rep : reps) fps.insert(zn::conj_class_of(rep).fingerprint);
    ++r.checked;
    if (fps.size() != reps.size()) r.fail("q=" + std::to_string(q) + ": two representatives are conjugate");
    for (u64 w = 0; w < m; ++w) {
      const auto mat = zn::ResidueMatrix::make(1, static_cast<i64>(w), 0, static_cast<i64>(q), m);
      if (!fps.count(zn::conj_class_of(mat).fingerprint)) {
        r.fail("q=" + std::to_string(q) + ": " + mat.to_string() + " matches no representative");
      }
    }
  }
  return r;
}

CheckResult oracle_group_structure(u64 m) {
  const PrimePower pp = require_prime_power(m);
  const u64 ell = pp.prime;
  const int s = pp.exponent - 1;
  CheckResult r;
  for (u64 q : units(m)) {
    Rational lhs = 0;
    for (int a = 0; 2 * a <= s; ++a) {
      lhs += Rational(zn::count_group_structure_matrices(ell, a, s - a, static_cast<i64>(q)),
                      zn::group_sizes(m).sl2);
    }
    const Integer delta = Integer(q + 1) * (q + 1) - 4 * Integer(q);
    const Rational upper = s == 0 ? Rational(1)
                                  : Rational(formulas::phi({ell, s, delta}), zn::group_sizes(ipow(ell, s)).sl2);
    const Rational rhs = upper - Rational(formulas::phi({ell, s + 1, delta}), zn::group_sizes(m).sl2);
    ++r.checked;
    if (lhs != rhs) r.fail("q=" + std::to_string(q) + " sum " + to_string(lhs) + " expected " + to_string(rhs));
  }
  return r;
}

// ---- verify ----

const std::vector<u64> kVerifyFields = {5, 7, 11, 13, 25, 49};

CheckResult verify_squarefree(u64 pmax) {
  CheckResult r;
  for (u64 p = 5; p <= pmax; ++p) {
    if (!is_prime(p)) continue;
    const auto rep = modp::verify_squarefree(p);
    ++r.checked;
    if (!rep.ok) {
      r.fail("p=" + std::to_string(p) + " r=" + std::to_string(rep.r) + " closed form " +
             std::to_string(rep.r_closed_form));
    }
  }
  return r;
}

CheckResult verify_dualtrace(unsigned threads) {
  CheckResult r;
  for (u64 q : kVerifyFields) {
    const auto rep = modp::dual_trace_check(census::census_field(q), threads);
    r.checked += rep.pairs;
    if (rep.mismatches > 0) {
      r.fail("q=" + std::to_string(q) + " first mismatch at (A,B) indices (" +
             std::to_string(rep.first_mismatch->first) + "," + std::to_string(rep.first_mismatch->second) + ")");
    }
  }
  return r;
}

CheckResult verify_massformula() {
  CheckResult r;
  for (u64 q : kVerifyFields) {
    const auto ctx = census::census_field(q);
    const auto recs = ec::enumerate_classes(ctx);
    Rational mass = 0;
    u64 couples = 0;
    for (const auto& rec : recs) {
      mass += Rational(1, rec.aut_order);
      couples += rec.multiplicity;
    }
    ++r.checked;
    const std::string tag = "q=" + std::to_string(q) + ": ";
    if (recs.size() < 2 * q || recs.size() > 2 * q + 22) r.fail(tag + "class count " + std::to_string(recs.size()));
    if (mass != Rational(q)) r.fail(tag + "sum of 1/#Aut is " + to_string(mass));
    if (couples != q * q - q) r.fail(tag + "class sizes sum to " + std::to_string(couples));
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const auto& j = recs[i].j_inv;
      if (j.is_zero() || j == ctx.from_int(1728)) continue;
      std::vector<i64> traces;
      for (const auto& other : recs)
        if (other.j_inv == j) traces.push_back(other.trace);
      if (traces.size() != 2 || traces[0] != -traces[1]) r.fail(tag + "twist pairing fails at j=" + j.to_string());
    }
  }
  return r;
}

// ---- predict ----

void print_prediction(const std::string& what, const formulas::Prediction& p, const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json j;
    j["statistic"] = std::string(formulas::to_string(p.statistic));
    j["what"] = what;
    j["N"] = p.modulus;
    j["value_num"] = boost::multiprecision::numerator(p.value).str();
    j["value_den"] = boost::multiprecision::denominator(p.value).str();
    j["value"] = to_double(p.value);
    j["bound"] = p.error_bound;
    std::cout << j.dump() << "\n";
    return;
  }
  std::cout << what << " = " << to_string(p.value) << " ~ " << to_double(p.value) << "  (error bound "
            << p.error_bound << ")\n";
}

zn::ResidueMatrix parse_class_rep(const std::string& s, u64 modulus) {
  std::vector<i64> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw UsageError("--class-rep expects four integers a,b,c,d");
    }
  }
  if (v.size() != 4) throw UsageError("--class-rep expects four integers a,b,c,d");
  return zn::ResidueMatrix::make(v[0], v[1], v[2], v[3], modulus);
}

u64 seed_default() {
  if (const char* env = std::getenv("FROBMOD_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("FROBMOD_SEED must be a nonnegative integer");
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frobenius statistics modulo N: predictions, oracles and censuses"};
  app.require_subcommand(1);

  // predict
  auto* predict = app.add_subcommand("predict", "Closed-form prediction for a residue class of q");
  i64 p_q = 0;
  u64 p_mod = 0;
  std::optional<i64> p_t;
  bool p_order = false;
  std::string p_class;
  std::string p_format = "table";
  predict->add_option("--q", p_q, "q, any integer coprime to N")->required();
  predict->add_option("--modulus", p_mod, "N")->required()->check(CLI::Range(u64{2}, u64{1} << 20));
  auto* opt_t = predict->add_option("--t", p_t, "trace residue");
  auto* opt_order = predict->add_flag("--order", p_order, "point of order N");
  auto* opt_class = predict->add_option("--class-rep", p_class, "class representative a,b,c,d");
  opt_t->excludes(opt_order)->excludes(opt_class);
  opt_order->excludes(opt_class);
  predict->add_option("--format", p_format, "table or json")->check(CLI::IsMember({"table", "json"}));

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Check a formula against exhaustive matrix enumeration");
  u64 o_mod = 0;
  std::string o_what;
  oracle->add_option("--modulus", o_mod, "modulus M")->required()->check(CLI::Range(u64{2}, u64{100}));
  oracle->add_option("--what", o_what, "phi, theta, lemma-xy, lemma7 or group-structure")
      ->required()
      ->check(CLI::IsMember({"phi", "theta", "lemma-xy", "lemma7", "group-structure"}));

  // census
  auto* census_cmd = app.add_subcommand("census", "Exhaustive census over all curves over F_q");
  u64 c_q = 0;
  u64 c_mod = 0;
  std::string c_stat = "trace";
  std::string c_weight = "class";
  std::string c_out;
  std::string c_format = "table";
  unsigned c_threads = 1;
  u64 c_seed = 0;
  u64 c_ell = 3;
  int c_a = 1;
  int c_b = 1;
  census_cmd->add_option("--q", c_q, "field size, a prime power with p >= 5")->required();
  census_cmd->add_option("--modulus", c_mod, "N");
  census_cmd->add_option("--statistic", c_stat, "trace, order, class, group or modp")
      ->check(CLI::IsMember({"trace", "order", "class", "group", "modp"}));
  census_cmd->add_option("--weighting", c_weight, "class or pair")->check(CLI::IsMember({"class", "pair"}));
  census_cmd->add_option("--out", c_out, "output path (default stdout)");
  census_cmd->add_option("--format", c_format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  census_cmd->add_option("--threads", c_threads, "worker threads (0 = all cores)");
  auto* opt_seed = census_cmd->add_option("--seed", c_seed, "seed (default FROBMOD_SEED or 0)");
  census_cmd->add_option("--ell", c_ell, "prime l for --statistic group");
  census_cmd->add_option("--a", c_a, "exponent a for --statistic group");
  census_cmd->add_option("--b", c_b, "exponent b for --statistic group");

  // verify
  auto* verify = app.add_subcommand("verify", "Invariant suites over the default field list");
  std::string v_suite = "all";
  u64 v_pmax = 101;
  unsigned v_threads = 1;
  verify->add_option("--suite", v_suite, "squarefree, dualtrace, massformula or all")
      ->check(CLI::IsMember({"squarefree", "dualtrace", "massformula", "all"}));
  verify->add_option("--pmax", v_pmax, "largest p for the squarefree suite");
  verify->add_option("--threads", v_threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*predict) {
      if (gcd_u64(mod_floor(p_q, p_mod), p_mod) != 1) throw UsageError("gcd(q, N) must be 1");
      if (p_t) {
        print_prediction("P(T = " + std::to_string(*p_t) + " mod " + std::to_string(p_mod) + ")",
                         formulas::trace_prediction(p_q, p_mod, *p_t), p_format);
      } else if (p_order) {
        print_prediction("P(point of order " + std::to_string(p_mod) + ")", formulas::order_prediction(p_q, p_mod),
                         p_format);
      } else if (!p_class.empty()) {
        const auto m = parse_class_rep(p_class, p_mod);
        if (!m.invertible()) throw UsageError("class representative is not invertible mod N");
        const auto cls = zn::conj_class_of(m);
        print_prediction("P(Frobenius in class of " + cls.representative.to_string() + ")",
                         formulas::class_prediction(p_q, p_mod, cls), p_format);
      } else {
        for (u64 t = 0; t < p_mod; ++t) {
          print_prediction("P(T = " + std::to_string(t) + " mod " + std::to_string(p_mod) + ")",
                           formulas::trace_prediction(p_q, p_mod, static_cast<i64>(t)), p_format);
        }
      }
      return kExitPass;
    }

    if (*oracle) {
      CheckResult r;
      if (o_what == "phi") r = oracle_phi(o_mod);
      else if (o_what == "theta") r = oracle_theta(o_mod);
      else if (o_what == "lemma-xy") r = oracle_lemma_xy(o_mod);
      else if (o_what == "lemma7") r = oracle_lemma7(o_mod);
      else r = oracle_group_structure(o_mod);
      return report_check(o_what + " mod " + std::to_string(o_mod), r);
    }

    if (*census_cmd) {
      census::CensusOptions opts;
      opts.threads = c_threads;
      opts.seed = opt_seed->count() > 0 ? c_seed : seed_default();
      opts.weighting = c_weight == "pair" ? census::Weighting::PerPair : census::Weighting::PerClass;
      census::CensusReport rep;
      if (c_stat == "modp") {
        rep = census::run_modp_census(c_q, opts);
      } else if (c_stat == "group") {
        rep = census::run_group_structure_census(c_q, c_ell, c_a, c_b, opts);
      } else {
        if (c_mod < 2) throw UsageError("--modulus >= 2 is required for this statistic");
        if (c_stat == "trace") rep = census::run_trace_census(c_q, c_mod, opts);
        else if (c_stat == "order") rep = census::run_order_census(c_q, c_mod, opts);
        else rep = census::run_class_census(c_q, c_mod, opts);
      }
      const std::string text = c_format == "json"  ? report::to_json(rep)
                               : c_format == "csv" ? report::to_csv(rep)
                                                   : report::to_table(rep);
      if (c_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(c_out, std::ios::binary);
        if (!out) throw UsageError("cannot open " + c_out);
        out << text;
      }
      for (const auto* row : rep.failing_rows()) {
        std::cerr << "failing row " << row->key << ": gap " << row->gap << " (" << row->regime << ", bound "
                  << row->bound << ")\n";
      }
      return rep.passed() ? kExitPass : kExitFail;
    }

    if (*verify) {
      int code = kExitPass;
      if (v_suite == "squarefree" || v_suite == "all") {
        code = std::max(code, report_check("squarefree p<=" + std::to_string(v_pmax), verify_squarefree(v_pmax)));
      }
      if (v_suite == "dualtrace" || v_suite == "all") {
        code = std::max(code, report_check("dualtrace", verify_dualtrace(v_threads)));
      }
      if (v_suite == "massformula" || v_suite == "all") {
        code = std::max(code, report_check("massformula", verify_massformula()));
      }
      return code;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitPass;
}
