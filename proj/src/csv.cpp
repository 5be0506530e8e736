#include "mwright/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>

#include "mwright/errors.hpp"

namespace mwright {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::optional<std::size_t> as_index(const std::string& column) {
    if (column.empty() || !std::all_of(column.begin(), column.end(), [](unsigned char c) { return std::isdigit(c); })) {
        return std::nullopt;
    }
    std::size_t idx = 0;
    const auto res = std::from_chars(column.data(), column.data() + column.size(), idx);
    if (res.ec != std::errc{}) {
        return std::nullopt;
    }
    return idx;
}

}  // namespace

std::vector<std::string> split_csv_record(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

bool parse_double(std::string_view text, double& out) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    if (text.empty()) {
        return false;
    }
    const auto res = std::from_chars(text.data(), text.data() + text.size(), out);
    return res.ec == std::errc{} && res.ptr == text.data() + text.size();
}

std::vector<double> read_csv_column(std::istream& in, const std::string& column) {
    const std::optional<std::size_t> by_index = as_index(column);
    std::optional<std::size_t> idx = by_index;
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    bool first_record = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const std::vector<std::string> fields = split_csv_record(line);
        if (first_record) {
            first_record = false;
            if (!idx) {
                const auto it = std::find_if(fields.begin(), fields.end(),
                                             [&](const std::string& f) { return trim(f) == column; });
                if (it == fields.end()) {
                    throw InputError("column '" + column + "' not found in header (line " +
                                     std::to_string(line_no) + ")");
                }
                idx = static_cast<std::size_t>(it - fields.begin());
                continue;
            }
            double v = 0.0;
            if (*idx < fields.size() && !parse_double(fields[*idx], v)) {
                continue;  // header row
            }
        }
        if (*idx >= fields.size()) {
            throw InputError("line " + std::to_string(line_no) + ": no column " + std::to_string(*idx));
        }
        double v = 0.0;
        if (!parse_double(fields[*idx], v)) {
            throw InputError("line " + std::to_string(line_no) + ": cannot parse '" + fields[*idx] +
                             "' as a number");
        }
        if (!std::isfinite(v)) {
            throw InputError("line " + std::to_string(line_no) + ": non-finite value '" + fields[*idx] + "'");
        }
        values.push_back(v);
    }
    return values;
}

std::vector<double> read_csv_column_file(const std::string& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    return read_csv_column(in, column);
}

}  // namespace mwright
