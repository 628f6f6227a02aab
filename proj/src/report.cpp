#include "frobmod/report.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace frobmod::report {

namespace {

using nlohmann::ordered_json;

ordered_json integer_json(const Integer& v) {
  if (v >= std::numeric_limits<i64>::min() && v <= std::numeric_limits<i64>::max()) {
    return static_cast<i64>(v);
  }
  return v.str();
}

std::string decimal(double v, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

std::string to_json(const census::CensusReport& r, bool include_runtime) {
  ordered_json meta;
  meta["q"] = r.meta.q;
  meta["N"] = r.meta.modulus;
  meta["statistic"] = r.meta.statistic;
  meta["weighting"] = r.meta.weighting;
  meta["seed"] = r.meta.seed;
  meta["version"] = r.meta.version;
  meta["class_count"] = r.meta.class_count;
  meta["delta"] = r.meta.delta;
  meta["soft_tolerance"] = r.meta.soft_tolerance;
  if (include_runtime) meta["runtime_ms"] = r.meta.runtime_ms;
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows) {
    ordered_json j;
    j["key"] = row.key;
    j["predicted_num"] = integer_json(boost::multiprecision::numerator(row.predicted));
    j["predicted_den"] = integer_json(boost::multiprecision::denominator(row.predicted));
    j["bound"] = row.bound;
    j["empirical_num"] = integer_json(boost::multiprecision::numerator(row.empirical));
    j["empirical_den"] = integer_json(boost::multiprecision::denominator(row.empirical));
    j["gap"] = row.gap;
    j["within_bound"] = row.within_bound;
    j["regime"] = row.regime;
    rows.push_back(std::move(j));
  }
  ordered_json doc;
  doc["meta"] = std::move(meta);
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string to_csv(const census::CensusReport& r) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "key,predicted_num,predicted_den,bound,empirical_num,empirical_den,gap,within_bound,regime\n";
  for (const auto& row : r.rows) {
    os << '"' << row.key << "\"," << boost::multiprecision::numerator(row.predicted) << ','
       << boost::multiprecision::denominator(row.predicted) << ',' << row.bound << ','
       << boost::multiprecision::numerator(row.empirical) << ',' << boost::multiprecision::denominator(row.empirical)
       << ',' << row.gap << ',' << (row.within_bound ? "true" : "false") << ',' << row.regime << '\n';
  }
  return os.str();
}

std::string to_table(const census::CensusReport& r) {
  std::ostringstream os;
  os << "q=" << r.meta.q << " N=" << r.meta.modulus << " statistic=" << r.meta.statistic
     << " weighting=" << r.meta.weighting << " classes=" << r.meta.class_count << " delta=" << r.meta.delta << "\n";
  os << std::left << std::setw(12) << "key" << std::setw(16) << "predicted" << std::setw(12) << "pred~"
     << std::setw(16) << "empirical" << std::setw(12) << "emp~" << std::setw(12) << "gap" << std::setw(12) << "bound"
     << std::setw(16) << "regime" << "ok\n";
  for (const auto& row : r.rows) {
    os << std::left << std::setw(12) << row.key << std::setw(16) << to_string(row.predicted) << std::setw(12)
       << decimal(to_double(row.predicted), 6) << std::setw(16) << to_string(row.empirical) << std::setw(12)
       << decimal(to_double(row.empirical), 6) << std::setw(12) << decimal(row.gap, 4) << std::setw(12)
       << decimal(row.bound, 4) << std::setw(16) << row.regime << (row.within_bound ? "yes" : "NO") << "\n";
  }
  os << (r.passed() ? "PASS" : "FAIL") << " (" << r.meta.runtime_ms << " ms)\n";
  return os.str();
}

}  // namespace frobmod::report
