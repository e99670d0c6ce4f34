#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace elpath {

/// Failure classes carried by every library error. The CLI maps them to
/// exit codes (config=2, ingest-side parse/data/io=3, alignment=4,
/// correlation=5).
enum class ErrorKind {
  Config,       // bad/missing configuration or metadata
  Parse,        // malformed input row or value
  Data,         // structurally valid input violating a data contract
  Io,           // file not readable/writable
  Input,        // precondition violation on an operation argument
  Domain,       // mathematically undefined request (T<=0, arg(0), ...)
  Alignment,    // no common timestamp grid
  Correlation,  // undefined or empty correlation result
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  /// Pipeline stage that raised the error; filled in by run_analyze.
  const std::string& stage() const { return stage_; }
  void set_stage(std::string stage) { stage_ = std::move(stage); }

 private:
  ErrorKind kind_;
  std::string stage_;
};

}  // namespace elpath
