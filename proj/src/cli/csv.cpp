#include "ep/cli/csv.hpp"

#include <charconv>
#include <fmt/format.h>
#include <map>
#include <utility>

namespace ep::cli {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <class T>
T parse_number(std::string_view field, std::size_t line, std::string_view column) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw CsvError(line, "invalid " + std::string(column) + " '" + std::string(field) + "'");
  }
  return value;
}

std::optional<double> parse_optional(std::string_view field, std::size_t line, std::string_view column) {
  if (field.empty()) return std::nullopt;
  return parse_number<double>(field, line, column);
}

}  // namespace

std::string format_real(double value) { return fmt::format("{:.9g}", value); }

void write_header(std::ostream& out) { out << kCsvHeader << '\n'; }

void write_trace(std::ostream& out, const harness::Trace& trace) {
  fmt::memory_buffer buf;
  for (const auto& rec : trace.records) {
    fmt::format_to(std::back_inserter(buf), "{},{},{},{},{},{:.9g},", trace.algorithm, trace.seed,
                   rec.t, rec.arm, rec.reward, rec.regret);
    if (rec.ep) {
      fmt::format_to(std::back_inserter(buf), "{:.9g},{:.9g}", rec.ep->value, rec.ep->std_error);
    } else {
      buf.push_back(',');
    }
    buf.push_back('\n');
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

std::vector<CsvRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError(1, "missing header");
  if (line != kCsvHeader) throw CsvError(1, "unexpected header '" + line + "'");
  std::vector<CsvRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 8) {
      throw CsvError(lineno, "expected 8 fields, got " + std::to_string(f.size()));
    }
    CsvRow row;
    if (f[0].empty()) throw CsvError(lineno, "empty algorithm name");
    row.algorithm = std::string(f[0]);
    row.seed = parse_number<std::size_t>(f[1], lineno, "seed");
    row.t = parse_number<std::size_t>(f[2], lineno, "t");
    row.arm = parse_number<std::size_t>(f[3], lineno, "arm");
    row.reward = parse_number<int>(f[4], lineno, "reward");
    if (row.reward != 0 && row.reward != 1) throw CsvError(lineno, "reward must be 0 or 1");
    row.regret = parse_number<double>(f[5], lineno, "regret");
    row.ep = parse_optional(f[6], lineno, "ep");
    row.ep_stderr = parse_optional(f[7], lineno, "ep_stderr");
    if (row.ep.has_value() != row.ep_stderr.has_value()) {
      throw CsvError(lineno, "ep and ep_stderr must be both present or both empty");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<harness::Trace> rows_to_traces(const std::vector<CsvRow>& rows) {
  std::vector<harness::Trace> traces;
  std::map<std::pair<std::string, std::size_t>, std::size_t> index;
  for (const auto& row : rows) {
    auto key = std::make_pair(row.algorithm, row.seed);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, traces.size()).first;
      traces.push_back({row.algorithm, row.seed, {}});
    }
    harness::StepRecord rec;
    rec.t = static_cast<std::uint32_t>(row.t);
    rec.arm = static_cast<std::uint32_t>(row.arm);
    rec.reward = static_cast<std::uint8_t>(row.reward);
    rec.regret = row.regret;
    if (row.ep) rec.ep = EPEstimate{*row.ep, *row.ep_stderr, 0};
    traces[it->second].records.push_back(rec);
  }
  return traces;
}

}  // namespace ep::cli
