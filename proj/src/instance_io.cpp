#include "dagdec/instance_io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dagdec/log_math.hpp"

namespace dagdec {

namespace {

std::string Summarize(const std::vector<Violation> &violations) {
  std::ostringstream os;
  os << violations.size() << " invariant violation(s)";
  for (const Violation &v : violations) os << "; " << v.message;
  return os.str();
}

[[noreturn]] void ParseFail(const std::string &where, const std::string &why) {
  throw DecodeError(ErrorKind::kParse, where + ": " + why);
}

std::size_t ReadDimension(const nlohmann::json &doc, const char *key) {
  auto it = doc.find(key);
  if (it == doc.end()) ParseFail(key, "missing key");
  if (!it->is_number_integer() || it->get<long long>() < 1)
    ParseFail(key, "expected a positive integer");
  return it->get<std::size_t>();
}

LogMatrix ReadTable(const nlohmann::json &doc, const char *key, std::size_t rows,
                    std::size_t cols) {
  auto it = doc.find(key);
  if (it == doc.end()) ParseFail(key, "missing key");
  if (!it->is_array()) ParseFail(key, "expected an array of rows");
  if (it->size() != rows)
    throw DecodeError(ErrorKind::kShape, std::string(key) + " has " +
                                             std::to_string(it->size()) + " rows, expected " +
                                             std::to_string(rows));
  LogMatrix m(rows, cols, kLogZero);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto &row = (*it)[r];
    const std::string where = std::string(key) + "[" + std::to_string(r) + "]";
    if (!row.is_array()) ParseFail(where, "expected an array");
    if (row.size() != cols)
      throw DecodeError(ErrorKind::kShape, where + " has " + std::to_string(row.size()) +
                                               " entries, expected " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) {
      const auto &cell = row[c];
      if (cell.is_null()) continue;
      if (!cell.is_number())
        ParseFail(where + "[" + std::to_string(c) + "]", "expected a number or null");
      m(r, c) = cell.get<double>();
    }
  }
  return m;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : DecodeError(ErrorKind::kValidation, Summarize(violations)),
      violations_(std::move(violations)) {}

Instance ParseInstance(const nlohmann::json &doc, const ParseOptions &options) {
  if (!doc.is_object()) ParseFail("document", "expected a JSON object");
  const std::size_t L = ReadDimension(doc, "L");
  const std::size_t V = ReadDimension(doc, "V");
  LogMatrix transitions = ReadTable(doc, "log_transitions", L, L);
  LogMatrix emissions = ReadTable(doc, "log_emissions", L, V);
  std::vector<std::string> vocab;
  if (auto it = doc.find("vocab"); it != doc.end() && !it->is_null()) {
    if (!it->is_array()) ParseFail("vocab", "expected an array of strings");
    for (const auto &entry : *it) {
      if (!entry.is_string()) ParseFail("vocab", "expected an array of strings");
      vocab.push_back(entry.get<std::string>());
    }
    if (vocab.size() != V)
      throw DecodeError(ErrorKind::kShape, "vocab has " + std::to_string(vocab.size()) +
                                               " entries, expected " + std::to_string(V));
  }
  Instance instance(std::move(transitions), std::move(emissions), std::move(vocab));
  if (options.validate) {
    auto violations = Validate(instance);
    if (!violations.empty()) throw ValidationError(std::move(violations));
  }
  return instance;
}

Instance ParseInstanceText(std::string_view text, const ParseOptions &options) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    ParseFail("byte " + std::to_string(e.byte), e.what());
  }
  return ParseInstance(doc, options);
}

nlohmann::json SerializeInstance(const Instance &instance, const nlohmann::json &meta) {
  auto table = [](const LogMatrix &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (double v : m.row(r)) {
        if (v == kLogZero)
          row.push_back(nullptr);
        else
          row.push_back(v);
      }
      rows.push_back(std::move(row));
    }
    return rows;
  };
  nlohmann::json doc;
  doc["L"] = instance.length();
  doc["V"] = instance.vocab_size();
  doc["log_transitions"] = table(instance.log_transitions());
  doc["log_emissions"] = table(instance.log_emissions());
  if (!instance.vocab().empty()) doc["vocab"] = instance.vocab();
  if (!meta.is_null()) doc["meta"] = meta;
  return doc;
}

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw DecodeError(ErrorKind::kParse, "cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int size = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &size, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * size);
  for (unsigned int i = 0; i < size; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

nlohmann::json LogProbJson(double value) {
  if (value == kLogZero) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::strtod(buf, nullptr);
}

}  // namespace dagdec
