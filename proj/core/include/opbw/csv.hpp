#ifndef OPBW_CSV_HPP
#define OPBW_CSV_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace opbw {

/// Shortest round-trip decimal form of a double; deterministic for a
/// given value.
std::string format_double(double value);

/// RFC 4180 quoting: fields containing commas, quotes or newlines are
/// quoted, embedded quotes doubled.
std::string csv_quote(const std::string& field);

/// One output record of an experiment. Optional fields render as empty
/// cells. Wall-clock timing deliberately lives in the JSON sidecar, not
/// here, so re-runs with the same config and seed are byte-identical.
struct ResultRow {
  std::string experiment;
  std::string metric;
  std::optional<double> p;
  std::optional<int64_t> n;
  std::optional<int64_t> horizon;
  std::optional<uint64_t> replicates;
  std::optional<uint64_t> seed;
  std::string params;  // "key=value;key=value" extras
  std::optional<double> estimate;
  std::optional<double> se;
  std::optional<double> target;
  std::optional<bool> pass;
  uint64_t failures = 0;
  std::string status = "ok";
};

extern const char* const kCsvHeader;

std::string rows_to_csv(const std::vector<ResultRow>& rows);

}  // namespace opbw

#endif  // OPBW_CSV_HPP
