#include "dmulti/csv.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>

namespace dmulti {

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double ParseNumber(const std::string& token) {
  std::string t;
  for (char ch : token) {
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  }
  std::string lower;
  for (char ch : t) lower.push_back(static_cast<char>(std::tolower(ch)));
  if (lower == "inf" || lower == "+inf" || lower == "infinity") return kInf;
  if (lower == "-inf" || lower == "-infinity") return -kInf;
  if (lower == "nan" || lower == "-nan" || lower == "+nan") {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const char* begin = t.data();
  if (!t.empty() && t[0] == '+') ++begin;
  double value = 0.0;
  auto res = std::from_chars(begin, t.data() + t.size(), value);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw ConfigError("malformed number '" + token + "'");
  }
  return value;
}

void WriteCsv(std::ostream& out, const std::vector<std::string>& header,
              const std::vector<Vector>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    out << (i ? "," : "") << header[i];
  }
  out << '\n';
  for (const Vector& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << FormatNumber(row[i]);
    }
    out << '\n';
  }
}

namespace {

std::vector<std::string> SplitComma(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::vector<Vector> ReadCsv(std::istream& in, std::vector<std::string>* header) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("CSV input is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> names = SplitComma(line);
  if (header) *header = names;
  std::vector<Vector> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = SplitComma(line);
    if (fields.size() != names.size()) {
      throw ConfigError("CSV row has " + std::to_string(fields.size()) +
                        " fields, header has " + std::to_string(names.size()));
    }
    Vector row;
    row.reserve(fields.size());
    for (const std::string& f : fields) row.push_back(ParseNumber(f));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Vector> ReadCsvFile(const std::string& path,
                                std::vector<std::string>* header) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return ReadCsv(in, header);
}

std::vector<std::string> NumberedColumns(const std::string& prefix,
                                         std::size_t count) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= count; ++i) {
    names.push_back(prefix + "_" + std::to_string(i));
  }
  return names;
}

}  // namespace dmulti
