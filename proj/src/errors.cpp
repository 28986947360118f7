#include "dagdec/errors.hpp"

namespace dagdec {

const char *ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kPathShape: return "path-shape error";
    case ErrorKind::kShape: return "shape error";
    case ErrorKind::kVocab: return "vocab error";
    case ErrorKind::kPosition: return "position error";
    case ErrorKind::kInfeasibleLength: return "infeasible-length error";
    case ErrorKind::kUnreachableTerminal: return "unreachable-terminal error";
    case ErrorKind::kDeadEnd: return "dead-end error";
    case ErrorKind::kOracleCap: return "oracle cap error";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kValidation: return "validation error";
    case ErrorKind::kConfig: return "config error";
    case ErrorKind::kPrecondition: return "precondition error";
  }
  return "error";
}

}  // namespace dagdec
