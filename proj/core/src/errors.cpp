#include "elpath/errors.hpp"

namespace elpath {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return "config";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Data: return "data";
    case ErrorKind::Io: return "io";
    case ErrorKind::Input: return "input";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Alignment: return "alignment";
    case ErrorKind::Correlation: return "correlation";
  }
  return "unknown";
}

}  // namespace elpath
