#ifndef DAGDEC_ERRORS_HPP
#define DAGDEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dagdec {

enum class ErrorKind {
  kPathShape,           // path not strictly increasing or not anchored at 1 and L
  kShape,               // table / sequence dimensions disagree
  kVocab,               // token id outside [0, V)
  kPosition,            // lattice position outside [1, L]
  kInfeasibleLength,    // no path of the requested length reaches L
  kUnreachableTerminal, // no length reaches L at all
  kDeadEnd,             // a transition row has no finite successor
  kOracleCap,           // lattice too large for brute-force enumeration
  kParse,               // malformed instance document
  kValidation,          // instance violates distribution invariants
  kConfig,              // bad generator / analysis configuration
  kPrecondition,        // other caller contract violation
};

const char *ErrorKindName(ErrorKind kind);

class DecodeError : public std::runtime_error {
 public:
  DecodeError(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dagdec

#endif  // DAGDEC_ERRORS_HPP
