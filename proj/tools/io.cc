#include "io.h"

#include <openssl/evp.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qifkit/errors.h"

namespace qifkit::cli {
namespace {

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

bool ParseDouble(const std::string& field, double& out) {
  const char* first = field.data();
  const char* last = first + field.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

Matrix ParseCsvMatrix(const std::string& text, const std::string& source) {
  Matrix rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(Trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();

    std::vector<double> row;
    bool numeric = true;
    for (const std::string& f : fields) {
      double v = 0.0;
      if (!ParseDouble(f, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    const bool header = first_content && !numeric;
    first_content = false;
    if (header) continue;
    if (!numeric) {
      throw InvalidArgument(source + ":" + std::to_string(line_no) +
                            ": non-numeric field");
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InvalidArgument(source + ":" + std::to_string(line_no) +
                            ": row length differs from the first row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidArgument(source + ": no numeric rows");
  return rows;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string Sha256Hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

}  // namespace qifkit::cli
