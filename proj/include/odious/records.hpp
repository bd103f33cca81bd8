#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "odious/analysis.hpp"
#include "odious/identities.hpp"
#include "odious/prime_census.hpp"

namespace odious {

enum class FieldKind { Int, Real, Bool, Text, Null };

/// One named value, already rendered in its canonical text form: integers in
/// full, reals with 17 significant digits and always a '.' or exponent,
/// booleans as true/false. Null renders as an empty string.
struct Field {
  std::string name;
  FieldKind kind = FieldKind::Text;
  std::string text;
  friend bool operator==(const Field&, const Field&) = default;
};

/// Ordered fields; the first is conventionally "record" naming the record type.
using Record = std::vector<Field>;

std::string format_real(double v);

Field int_field(std::string name, std::int64_t v);
Field uint_field(std::string name, std::uint64_t v);
Field real_field(std::string name, double v);
Field real_field(std::string name, std::optional<double> v);
Field bool_field(std::string name, bool v);
Field text_field(std::string name, std::string v);

const Field& field(const Record& r, std::string_view name);

enum class OutputFormat { Table, Csv, JsonLines };

std::string_view to_string(OutputFormat f) noexcept;
std::optional<OutputFormat> output_format_from_string(std::string_view s) noexcept;

/// Consecutive records sharing a field layout form one block. Table and csv
/// print a header per block and separate blocks with a blank line.
void write_records(std::ostream& out, std::span<const Record> records, OutputFormat format);

/// Inverse of write_records for the csv and json-lines encodings.
std::vector<Record> parse_csv(std::istream& in);
std::vector<Record> parse_json_lines(std::istream& in);

Record to_record(const Checkpoint& cp);
Checkpoint checkpoint_from_record(const Record& r);

Record to_record(const IdentityReport& report);
IdentityReport identity_report_from_record(const Record& r);

Record to_record(const HeuristicPrediction& p);
Record to_record(const RatioRow& row);
Record to_record(const ClosingLimitRow& row);
Record to_record(const RegimeDiagnostic& d);
Record to_record(const GrowthRow& row);

}  // namespace odious
