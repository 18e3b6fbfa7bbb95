// Locale-independent number formatting and small CSV helpers.

#ifndef DMULTI_CSV_H_
#define DMULTI_CSV_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "dmulti/core.h"

namespace dmulti {

// Every finite value is printed with 17
// significant digits so that files are byte-stable. Infinities print as
// "inf"/"-inf", NaN as "nan".
std::string FormatNumber(double value);

// Parses a decimal token ("inf", "nan" accepted). Throws ConfigError.
double ParseNumber(const std::string& token);

// Writes `header` then one row per entry of `rows`.
void WriteCsv(std::ostream& out, const std::vector<std::string>& header,
              const std::vector<Vector>& rows);

// Reads a numeric CSV with a header row. Throws ConfigError on malformed
// input or ragged rows.
std::vector<Vector> ReadCsv(std::istream& in, std::vector<std::string>* header);
std::vector<Vector> ReadCsvFile(const std::string& path,
                                std::vector<std::string>* header = nullptr);

// Column names prefix_1..prefix_count.
std::vector<std::string> NumberedColumns(const std::string& prefix,
                                         std::size_t count);

}  // namespace dmulti

#endif  // DMULTI_CSV_H_
