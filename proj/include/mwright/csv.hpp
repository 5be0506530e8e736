#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace mwright {

/// Splits one RFC 4180 record. Quoted fields may contain commas and doubled
/// quotes; a record spanning lines is not supported.
std::vector<std::string> split_csv_record(std::string_view line);

/// Locale-independent strict parse of a whole field (surrounding blanks
/// allowed). Returns false on anything else.
bool parse_double(std::string_view text, double& out);

/// Reads one numeric column. `column` is a header name or a 0-based index.
/// A header is assumed when the selected column of the first record is not
/// numeric (always when selecting by name). Blank lines are skipped; any other
/// unparsable or non-finite cell throws InputError naming its 1-based line.
std::vector<double> read_csv_column(std::istream& in, const std::string& column);
std::vector<double> read_csv_column_file(const std::string& path, const std::string& column);

}  // namespace mwright
