#include "windsim/csv.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "windsim/errors.hpp"

namespace windsim {

namespace {

// Splits CSV content into records honoring quoted fields (quotes may contain
// commas, escaped quotes "" and line breaks).
std::vector<std::vector<std::string>> parse_records(const std::string& content,
                                                    const std::string& origin,
                                                    std::vector<std::size_t>& record_lines,
                                                    std::vector<std::string>& comments) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool at_record_start = true;
    std::size_t line = 1;
    std::size_t record_line = 1;

    auto end_field = [&] {
        fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(fields));
        record_lines.push_back(record_line);
        fields.clear();
        at_record_start = true;
    };

    for (std::size_t i = 0; i < content.size(); ++i) {
        const char c = content[i];
        if (at_record_start) {
            if (c == '#' && records.empty()) {
                // leading comment line
                std::size_t eol = content.find('\n', i);
                if (eol == std::string::npos) eol = content.size();
                std::string comment = content.substr(i, eol - i);
                if (!comment.empty() && comment.back() == '\r') comment.pop_back();
                comments.push_back(comment);
                i = eol;
                ++line;
                continue;
            }
            if (c == '\n') {  // skip blank lines
                ++line;
                continue;
            }
            if (c == '\r' && i + 1 < content.size() && content[i + 1] == '\n') continue;
            at_record_start = false;
            record_line = line;
        }
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            if (!field.empty() || field_was_quoted)
                throw DataError(origin + ":" + std::to_string(line) + ": stray quote inside unquoted field");
            in_quotes = true;
            field_was_quoted = true;
            break;
        case ',':
            end_field();
            break;
        case '\r':
            break;
        case '\n':
            end_record();
            ++line;
            break;
        default:
            field += c;
        }
    }
    if (in_quotes) throw DataError(origin + ": unterminated quoted field");
    if (!at_record_start) end_record();
    return records;
}

}  // namespace

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

int CsvTable::require_column(const std::string& name) const {
    const int i = column(name);
    if (i < 0) throw DataError("missing required CSV column '" + name + "'");
    return i;
}

CsvTable parse_csv(const std::string& content, const std::string& origin) {
    CsvTable table;
    std::vector<std::size_t> lines;
    auto records = parse_records(content, origin, lines, table.comments);
    if (records.empty()) throw DataError(origin + ": empty CSV (header row is mandatory)");
    table.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != table.header.size())
            throw DataError(origin + ":" + std::to_string(lines[r]) + ": expected " +
                            std::to_string(table.header.size()) + " fields, got " +
                            std::to_string(records[r].size()));
        table.rows.push_back(std::move(records[r]));
        table.row_lines.push_back(lines[r]);
    }
    return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str(), path.string());
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : out_(path, std::ios::binary), path_(path) {
    if (!out_) throw DataError("cannot write '" + path.string() + "'");
}

void CsvWriter::write_comment(const std::string& text) { out_ << "# " << text << "\n"; }

void CsvWriter::write_row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        const std::string& f = fields[i];
        const bool needs_quotes = f.find_first_of(",\"\r\n") != std::string::npos;
        if (needs_quotes) {
            out_ << '"';
            for (char c : f) {
                if (c == '"') out_ << '"';
                out_ << c;
            }
            out_ << '"';
        } else {
            out_ << f;
        }
    }
    out_ << '\n';
    if (!out_) throw DataError("write failed on '" + path_.string() + "'");
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

double parse_double(const std::string& s, const std::string& context) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw DataError(context + ": unparseable number '" + s + "'");
    return v;
}

}  // namespace windsim
