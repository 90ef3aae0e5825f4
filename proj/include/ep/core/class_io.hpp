#pragma once

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>

#include "ep/core/environment.hpp"

namespace ep::core {

class ClassFormatError : public std::runtime_error {
 public:
  ClassFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Parses the plain-text class description format (docs/class-format.md).
/// Environment weights are normalized to a prior.
FiniteEnvironmentClass parse_class(std::istream& in);
FiniteEnvironmentClass load_class(const std::filesystem::path& path);

/// Writes `cls` in the same format; parse_class(write_class(cls)) reproduces
/// the class up to the printed precision.
std::string write_class(const FiniteEnvironmentClass& cls);

}  // namespace ep::core
