#include "cxlab/csv.hpp"

#include "cxlab/error.hpp"

namespace cxlab {

CsvReader::CsvReader(std::istream& in) : in_(in) {}

std::optional<std::vector<std::string>> CsvReader::next()
{
    if (first_) {
        first_ = false;
        if (in_.peek() == 0xEF) {
            char bom[3];
            in_.read(bom, 3);
        }
    }
    if (in_.peek() == std::char_traits<char>::eof())
        return std::nullopt;

    record_line_ = line_;
    std::vector<std::string> fields(1);
    bool quoted = false;
    bool was_quoted = false;
    for (;;) {
        const int c = in_.get();
        if (c == std::char_traits<char>::eof()) {
            if (quoted)
                throw ValidationError("csv: unterminated quoted field starting on line " +
                                      std::to_string(record_line_));
            return fields;
        }
        const char ch = static_cast<char>(c);
        if (quoted) {
            if (ch == '"') {
                if (in_.peek() == '"') {
                    in_.get();
                    fields.back() += '"';
                } else {
                    quoted = false;
                }
            } else {
                if (ch == '\n')
                    ++line_;
                fields.back() += ch;
            }
            continue;
        }
        switch (ch) {
        case '"':
            if (fields.back().empty() && !was_quoted) {
                quoted = was_quoted = true;
            } else {
                fields.back() += ch;
            }
            break;
        case ',':
            fields.emplace_back();
            was_quoted = false;
            break;
        case '\r':
            if (in_.peek() == '\n')
                break;
            fields.back() += ch;
            break;
        case '\n':
            ++line_;
            return fields;
        default:
            fields.back() += ch;
        }
    }
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            out << ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\r\n") == std::string::npos) {
            out << f;
            continue;
        }
        out << '"';
        for (char c : f) {
            if (c == '"')
                out << '"';
            out << c;
        }
        out << '"';
    }
    out << '\n';
}

} // namespace cxlab
