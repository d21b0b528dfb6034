#include "opbw/csv.hpp"

#include <charconv>

namespace opbw {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

const char* const kCsvHeader =
    "experiment,metric,p,n,horizon,replicates,seed,params,estimate,se,"
    "target,pass,failures,status";

namespace {

void append_cell(std::string& out, const std::string& field, bool last) {
  out += csv_quote(field);
  out.push_back(last ? '\n' : ',');
}

template <class T>
std::string opt_int(const std::optional<T>& v) {
  return v.has_value() ? std::to_string(*v) : std::string();
}

std::string opt_double(const std::optional<double>& v) {
  return v.has_value() ? format_double(*v) : std::string();
}

}  // namespace

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::string out(kCsvHeader);
  out.push_back('\n');
  for (const auto& r : rows) {
    append_cell(out, r.experiment, false);
    append_cell(out, r.metric, false);
    append_cell(out, opt_double(r.p), false);
    append_cell(out, opt_int(r.n), false);
    append_cell(out, opt_int(r.horizon), false);
    append_cell(out, opt_int(r.replicates), false);
    append_cell(out, opt_int(r.seed), false);
    append_cell(out, r.params, false);
    append_cell(out, opt_double(r.estimate), false);
    append_cell(out, opt_double(r.se), false);
    append_cell(out, opt_double(r.target), false);
    append_cell(out,
                r.pass.has_value() ? (*r.pass ? "true" : "false")
                                   : std::string(),
                false);
    append_cell(out, std::to_string(r.failures), false);
    append_cell(out, r.status, true);
  }
  return out;
}

}  // namespace opbw
