#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cxlab {

/// RFC 4180 reader: comma separated, fields optionally double-quoted with
/// "" as an escaped quote; quoted fields may hold commas and line breaks.
/// Accepts LF or CRLF line ends and skips a leading UTF-8 byte-order mark.
class CsvReader {
public:
    explicit CsvReader(std::istream& in);

    /// Next record, or nullopt at end of input. Throws ValidationError on
    /// an unterminated quoted field.
    std::optional<std::vector<std::string>> next();

    /// 1-based line number where the last returned record started.
    std::size_t line() const noexcept { return record_line_; }

private:
    std::istream& in_;
    std::size_t line_ = 1;
    std::size_t record_line_ = 0;
    bool first_ = true;
};

/// Writes one record, quoting fields that contain a comma, quote, CR or LF.
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

} // namespace cxlab
