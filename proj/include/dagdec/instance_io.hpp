#ifndef DAGDEC_INSTANCE_IO_HPP
#define DAGDEC_INSTANCE_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dagdec/errors.hpp"
#include "dagdec/instance.hpp"
#include "json.hpp"

namespace dagdec {

/// Raised when a parsed instance fails Validate; carries every violation.
class ValidationError : public DecodeError {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation> &violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

struct ParseOptions {
  bool validate = true;
};

/// Instance document layout:
///   {"L": int, "V": int,
///    "log_transitions": L x L numbers (null = -inf),
///    "log_emissions":   L x V numbers (null = -inf),
///    "vocab": [V strings] (optional), "meta": any (optional)}
Instance ParseInstance(const nlohmann::json &document, const ParseOptions &options = {});
Instance ParseInstanceText(std::string_view text, const ParseOptions &options = {});

nlohmann::json SerializeInstance(const Instance &instance,
                                 const nlohmann::json &meta = nullptr);

/// Reads the whole file; throws DecodeError(kParse) if it cannot be opened.
std::string ReadFile(const std::filesystem::path &path);

/// Lowercase hex SHA-256 of the bytes.
std::string Sha256Hex(std::string_view bytes);

/// Log-probability for output documents: null for -inf, otherwise rounded
/// to 12 significant digits.
nlohmann::json LogProbJson(double value);

}  // namespace dagdec

#endif  // DAGDEC_INSTANCE_IO_HPP
