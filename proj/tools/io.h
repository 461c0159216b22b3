#ifndef QIFKIT_TOOLS_IO_H_
#define QIFKIT_TOOLS_IO_H_

#include <string>
#include <vector>

namespace qifkit::cli {

using Matrix = std::vector<std::vector<double>>;

// Comma-separated numbers, one row per line. A first line with any
// non-numeric field is treated as a header and skipped. Blank lines are
// ignored. Throws InvalidArgument on ragged rows or unparsable fields.
Matrix ParseCsvMatrix(const std::string& text, const std::string& source);

// Whole file as bytes. Throws InvalidArgument when it cannot be opened.
std::string ReadFile(const std::string& path);

// Lowercase hex SHA-256 of the bytes.
std::string Sha256Hex(const std::string& bytes);

}  // namespace qifkit::cli

#endif  // QIFKIT_TOOLS_IO_H_
