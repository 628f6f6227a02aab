#pragma once

// Serialization of census reports.

#include <string>

#include "frobmod/census.hpp"

namespace frobmod::report {

/// JSON with "meta" and "rows". With `include_runtime` false the runtime
/// field is dropped so reruns compare byte for byte.
std::string to_json(const census::CensusReport& r, bool include_runtime = true);
/// One header line and one line per row, same columns as the JSON rows.
std::string to_csv(const census::CensusReport& r);
/// Aligned human-readable table.
std::string to_table(const census::CensusReport& r);

}  // namespace frobmod::report
