#include "odious/records.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace odious {

namespace {

bool same_layout(const Record& a, const Record& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j].name != b[j].name) return false;
  }
  return !a.empty() && a.front().text == b.front().text;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t j = 0; j < line.size(); ++j) {
    const char c = line[j];
    if (quoted) {
      if (c == '"' && j + 1 < line.size() && line[j + 1] == '"') {
        cur += '"';
        ++j;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(std::move(cur));
  return cells;
}

bool looks_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t j = s[0] == '-' ? 1 : 0;
  if (j == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(j), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

FieldKind infer_kind(const std::string& s) {
  if (s.empty()) return FieldKind::Null;
  if (s == "true" || s == "false") return FieldKind::Bool;
  if (looks_integer(s)) return FieldKind::Int;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  if (end != nullptr && *end == '\0') return FieldKind::Real;
  return FieldKind::Text;
}

std::string json_escape(const std::string& s) { return nlohmann::json(s).dump(); }

std::uint64_t as_u64(const Record& r, std::string_view name) { return std::stoull(field(r, name).text); }
std::int64_t as_i64(const Record& r, std::string_view name) { return std::stoll(field(r, name).text); }

ReportValue report_value(const Field& f) {
  if (f.kind == FieldKind::Int) return static_cast<std::int64_t>(std::stoll(f.text));
  return std::strtod(f.text.c_str(), nullptr);
}

Field report_field(std::string name, const ReportValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return int_field(std::move(name), *i);
  return real_field(std::move(name), std::get<double>(v));
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

Field int_field(std::string name, std::int64_t v) { return {std::move(name), FieldKind::Int, std::to_string(v)}; }
Field uint_field(std::string name, std::uint64_t v) { return {std::move(name), FieldKind::Int, std::to_string(v)}; }
Field real_field(std::string name, double v) { return {std::move(name), FieldKind::Real, format_real(v)}; }
Field real_field(std::string name, std::optional<double> v) {
  if (!v) return {std::move(name), FieldKind::Null, ""};
  return real_field(std::move(name), *v);
}
Field bool_field(std::string name, bool v) { return {std::move(name), FieldKind::Bool, v ? "true" : "false"}; }
Field text_field(std::string name, std::string v) { return {std::move(name), FieldKind::Text, std::move(v)}; }

const Field& field(const Record& r, std::string_view name) {
  for (const auto& f : r) {
    if (f.name == name) return f;
  }
  throw std::out_of_range("record has no field '" + std::string(name) + "'");
}

std::string_view to_string(OutputFormat f) noexcept {
  switch (f) {
    case OutputFormat::Table:
      return "table";
    case OutputFormat::Csv:
      return "csv";
    case OutputFormat::JsonLines:
      return "json-lines";
  }
  return "table";
}

std::optional<OutputFormat> output_format_from_string(std::string_view s) noexcept {
  if (s == "table") return OutputFormat::Table;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json-lines") return OutputFormat::JsonLines;
  return std::nullopt;
}

void write_records(std::ostream& out, std::span<const Record> records, OutputFormat format) {
  if (format == OutputFormat::JsonLines) {
    for (const auto& r : records) {
      out << '{';
      for (std::size_t j = 0; j < r.size(); ++j) {
        if (j > 0) out << ',';
        out << json_escape(r[j].name) << ':';
        switch (r[j].kind) {
          case FieldKind::Text:
            out << json_escape(r[j].text);
            break;
          case FieldKind::Null:
            out << "null";
            break;
          default:
            out << r[j].text;
        }
      }
      out << "}\n";
    }
    return;
  }

  std::size_t begin = 0;
  bool first_block = true;
  while (begin < records.size()) {
    std::size_t end = begin + 1;
    while (end < records.size() && same_layout(records[begin], records[end])) ++end;
    if (!first_block) out << '\n';
    first_block = false;
    const auto block = records.subspan(begin, end - begin);
    const std::size_t cols = block.front().size();

    if (format == OutputFormat::Csv) {
      for (std::size_t c = 0; c < cols; ++c) out << (c ? "," : "") << csv_escape(block.front()[c].name);
      out << '\n';
      for (const auto& r : block) {
        for (std::size_t c = 0; c < cols; ++c) out << (c ? "," : "") << csv_escape(r[c].text);
        out << '\n';
      }
    } else {
      std::vector<std::size_t> width(cols);
      for (std::size_t c = 0; c < cols; ++c) width[c] = block.front()[c].name.size();
      for (const auto& r : block) {
        for (std::size_t c = 0; c < cols; ++c) width[c] = std::max(width[c], std::max<std::size_t>(r[c].text.size(), 1));
      }
      auto cell = [&](const std::string& s, std::size_t c) {
        if (c > 0) out << "  ";
        out << std::string(width[c] - s.size(), ' ') << s;
      };
      for (std::size_t c = 0; c < cols; ++c) cell(block.front()[c].name, c);
      out << '\n';
      for (const auto& r : block) {
        for (std::size_t c = 0; c < cols; ++c) cell(r[c].kind == FieldKind::Null ? "-" : r[c].text, c);
        out << '\n';
      }
    }
    begin = end;
  }
}

std::vector<Record> parse_csv(std::istream& in) {
  std::vector<Record> out;
  std::vector<std::string> header;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) {
      header.clear();
      continue;
    }
    auto cells = csv_split(line);
    if (header.empty()) {
      header = std::move(cells);
      continue;
    }
    if (cells.size() != header.size()) throw std::runtime_error("csv row width does not match its header");
    Record r;
    r.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      r.push_back({header[c], infer_kind(cells[c]), cells[c]});
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Record> parse_json_lines(std::istream& in) {
  std::vector<Record> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::ordered_json::parse(line);
    Record r;
    for (const auto& [key, value] : j.items()) {
      if (value.is_null()) {
        r.push_back({key, FieldKind::Null, ""});
      } else if (value.is_boolean()) {
        r.push_back(bool_field(key, value.get<bool>()));
      } else if (value.is_number_unsigned()) {
        r.push_back(uint_field(key, value.get<std::uint64_t>()));
      } else if (value.is_number_integer()) {
        r.push_back(int_field(key, value.get<std::int64_t>()));
      } else if (value.is_number_float()) {
        r.push_back(real_field(key, value.get<double>()));
      } else if (value.is_string()) {
        r.push_back(text_field(key, value.get<std::string>()));
      } else {
        throw std::runtime_error("json-lines field '" + key + "' is not a scalar");
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

Record to_record(const Checkpoint& cp) {
  const auto& c = cp.counters;
  return {text_field("record", "checkpoint"),
          uint_field("n", cp.n),
          uint_field("pi", c.pi),
          uint_field("pi_odious", c.pi_odious),
          uint_field("pi_evil", c.pi_evil),
          uint_field("pi_31_odious", c.pi_31_odious),
          uint_field("pi_31_evil", c.pi_31_evil),
          uint_field("pi_32_odious", c.pi_32_odious),
          uint_field("pi_32_evil", c.pi_32_evil),
          int_field("delta_primes_31", c.delta_primes_31()),
          int_field("delta_primes_32", c.delta_primes_32()),
          real_field("wall_seconds", cp.wall_seconds)};
}

Checkpoint checkpoint_from_record(const Record& r) {
  Checkpoint cp;
  cp.n = as_u64(r, "n");
  cp.counters.pi = as_u64(r, "pi");
  cp.counters.pi_odious = as_u64(r, "pi_odious");
  cp.counters.pi_evil = as_u64(r, "pi_evil");
  cp.counters.pi_31_odious = as_u64(r, "pi_31_odious");
  cp.counters.pi_31_evil = as_u64(r, "pi_31_evil");
  cp.counters.pi_32_odious = as_u64(r, "pi_32_odious");
  cp.counters.pi_32_evil = as_u64(r, "pi_32_evil");
  cp.wall_seconds = std::strtod(field(r, "wall_seconds").text.c_str(), nullptr);
  if (as_i64(r, "delta_primes_31") != cp.counters.delta_primes_31() ||
      as_i64(r, "delta_primes_32") != cp.counters.delta_primes_32()) {
    throw std::runtime_error("checkpoint record has inconsistent delta_primes fields");
  }
  return cp;
}

Record to_record(const IdentityReport& report) {
  return {text_field("record", "identity"),
          text_field("identity_id", std::string(to_string(report.identity_id))),
          uint_field("n", report.n),
          report_field("lhs", report.lhs),
          report_field("rhs", report.rhs),
          bool_field("passed", report.passed),
          text_field("convention", report.include_zero ? "include_zero" : "exclude_zero")};
}

IdentityReport identity_report_from_record(const Record& r) {
  IdentityReport report;
  const auto id = identity_from_string(field(r, "identity_id").text);
  if (!id) throw std::runtime_error("unknown identity id '" + field(r, "identity_id").text + "'");
  report.identity_id = *id;
  report.n = as_u64(r, "n");
  report.lhs = report_value(field(r, "lhs"));
  report.rhs = report_value(field(r, "rhs"));
  report.passed = field(r, "passed").text == "true";
  report.include_zero = field(r, "convention").text == "include_zero";
  return report;
}

Record to_record(const HeuristicPrediction& p) {
  return {text_field("record", "prediction"), uint_field("n", p.n),
          uint_field("i", p.i.value()),        real_field("predicted", p.predicted),
          int_field("observed", p.observed),   real_field("ratio", p.ratio)};
}

Record to_record(const RatioRow& row) {
  return {text_field("record", "ratio"), uint_field("n", row.n), real_field("odious_share", row.odious_share),
          real_field("odious_share_31", row.odious_share_31), real_field("odious_share_32", row.odious_share_32)};
}

Record to_record(const ClosingLimitRow& row) {
  return {text_field("record", "closing_limit"),
          uint_field("n", row.n),
          bool_field("odd_power_of_two", row.odd_power_of_two),
          int_field("excess_31", row.excess_31),
          int_field("evil_excess_32", row.evil_excess_32),
          real_field("ratio_31", row.ratio_31),
          real_field("ratio_32", row.ratio_32)};
}

Record to_record(const RegimeDiagnostic& d) {
  return {text_field("record", "regime"),
          uint_field("n", d.n),
          int_field("delta_odd_32", d.delta_odd_32),
          real_field("sqrt_n", d.sqrt_n),
          text_field("regime", d.small_residue2 ? "small_residue2" : "large_residue2"),
          real_field("predictor", d.predictor),
          int_field("observed", d.observed)};
}

Record to_record(const GrowthRow& row) {
  return {text_field("record", "odd_excess_growth"), uint_field("n", row.n), int_field("delta_odd_3", row.excess),
          real_field("log_ratio", row.log_ratio), real_field("alpha", alpha())};
}

}  // namespace odious
