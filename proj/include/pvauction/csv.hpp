#pragma once

// Minimal strict CSV support for the register files: UTF-8, comma separator,
// RFC-4180 quoting, first row is the header. Readers keep source line numbers
// so loaders can report row-level diagnostics.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pvauction {

class CsvTable {
  public:
    static CsvTable read_file(const std::filesystem::path& path);
    static CsvTable read_string(std::string_view text, std::string source_name = "<string>");

    const std::string& source() const { return source_; }
    const std::vector<std::string>& header() const { return header_; }
    std::size_t rows() const { return rows_.size(); }

    // Column index, or -1 when absent.
    int column(std::string_view name) const;
    // Throws ParseError naming the file and the missing column.
    int require_column(std::string_view name) const;

    const std::string& cell(std::size_t row, int col) const;
    std::size_t line_of(std::size_t row) const { return lines_[row]; }

  private:
    std::string source_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::size_t> lines_;

    void parse(std::string_view text);
};

class CsvWriter {
  public:
    explicit CsvWriter(const std::filesystem::path& path);
    void row(std::span<const std::string> cells);
    void row(std::initializer_list<std::string> cells);

  private:
    std::ofstream out_;
    std::filesystem::path path_;
};

// Shortest stable decimal rendering used everywhere a double is emitted.
std::string format_double(double v);

}  // namespace pvauction
