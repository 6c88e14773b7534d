#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace windsim {

/// One parsed CSV table. RFC-4180 quoting, mandatory header row.
/// Lines starting with '#' before the header are kept as comments.
struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    /// 1-based source line of each data row, for error reporting.
    std::vector<std::size_t> row_lines;

    int column(const std::string& name) const;           // -1 when absent
    int require_column(const std::string& name) const;   // throws DataError
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& content, const std::string& origin = "<string>");

/// Streaming RFC-4180 writer. Fields are quoted only when needed.
class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path);

    void write_row(const std::vector<std::string>& fields);
    void write_comment(const std::string& text);

private:
    std::ofstream out_;
    std::filesystem::path path_;
};

/// Shortest round-trip decimal representation (deterministic across runs).
std::string format_double(double v);
double parse_double(const std::string& s, const std::string& context);

}  // namespace windsim
