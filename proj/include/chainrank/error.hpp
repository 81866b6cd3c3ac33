#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace chainrank {

// Error categories; the CLI maps these onto process exit codes
// (resource-type errors -> 3, everything else input-type -> 2).
enum class errc {
  size_limit,         // group or product would exceed the configured size limit
  resource_limit,     // node budget exhausted during tree expansion
  invalid_permutation,
  parent_mismatch,    // subgroups of different parent groups combined
  not_normal,
  not_contained,
  syntax,             // DSL or ordinal/generator-file parse error
  unbound_parameter,  // symbolic union evaluated without an instantiation
  word_resolution,    // word references a generator the group does not have
  invalid_input,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, std::string what) : std::runtime_error(std::move(what)), code_(code) {}

  errc code() const { return code_; }

  bool is_resource() const { return code_ == errc::size_limit || code_ == errc::resource_limit; }

 private:
  errc code_;
};

// Parse error carrying a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(std::string what, std::size_t line, std::size_t column)
      : Error(errc::syntax,
              what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace chainrank
