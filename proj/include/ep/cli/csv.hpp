#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ep/harness/episode.hpp"

namespace ep::cli {

inline constexpr std::string_view kCsvHeader = "algorithm,seed,t,arm,reward,regret,ep,ep_stderr";

/// Nine significant digits, the precision of every real in the CSV.
std::string format_real(double value);

struct CsvRow {
  std::string algorithm;
  std::size_t seed = 0;
  std::size_t t = 0;
  std::size_t arm = 0;
  int reward = 0;
  double regret = 0.0;
  std::optional<double> ep;
  std::optional<double> ep_stderr;
};

class CsvError : public std::runtime_error {
 public:
  CsvError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

void write_header(std::ostream& out);
/// One row per step of the trace, LF line endings.
void write_trace(std::ostream& out, const harness::Trace& trace);

/// Parses a CSV with the mandatory header. Throws CsvError naming the
/// offending line.
std::vector<CsvRow> read_csv(std::istream& in);

/// Groups rows into traces keyed by (algorithm, seed), in order of first
/// appearance.
std::vector<harness::Trace> rows_to_traces(const std::vector<CsvRow>& rows);

}  // namespace ep::cli
