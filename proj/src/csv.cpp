#include "pvauction/csv.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "pvauction/errors.hpp"

namespace pvauction {

CsvTable CsvTable::read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return read_string(buf.str(), path.string());
}

CsvTable CsvTable::read_string(std::string_view text, std::string source_name) {
    CsvTable t;
    t.source_ = std::move(source_name);
    t.parse(text);
    return t;
}

void CsvTable::parse(std::string_view text) {
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool record_open = false;
    std::size_t line = 1;
    std::size_t record_line = 1;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
    };
    auto end_record = [&] {
        end_field();
        if (header_.empty()) {
            header_ = std::move(record);
        } else {
            if (record.size() != header_.size())
                throw ParseError(source_ + ":" + std::to_string(record_line) + ": expected " +
                                 std::to_string(header_.size()) + " fields, got " +
                                 std::to_string(record.size()));
            rows_.push_back(std::move(record));
            lines_.push_back(record_line);
        }
        record.clear();
        record_open = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (!record_open) {
            record_open = true;
            record_line = line;
        }
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
        } else if (c == '"') {
            if (!field.empty())
                throw ParseError(source_ + ":" + std::to_string(line) + ": quote inside unquoted field");
            in_quotes = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\r') {
            // swallowed; meaningful only before '\n'
        } else if (c == '\n') {
            end_record();
            ++line;
        } else {
            field += c;
        }
    }
    if (in_quotes) throw ParseError(source_ + ": unterminated quoted field");
    if (record_open) end_record();
    if (header_.empty()) throw ParseError(source_ + ": missing header row");
}

int CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header_.size(); ++i)
        if (header_[i] == name) return static_cast<int>(i);
    return -1;
}

int CsvTable::require_column(std::string_view name) const {
    int c = column(name);
    if (c < 0) throw ParseError(source_ + ": missing column '" + std::string(name) + "'");
    return c;
}

const std::string& CsvTable::cell(std::size_t row, int col) const {
    return rows_[row][static_cast<std::size_t>(col)];
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : out_(path, std::ios::binary), path_(path) {
    if (!out_) throw IoError("cannot write '" + path.string() + "'");
}

namespace {

bool needs_quoting(std::string_view s) {
    return s.find_first_of(",\"\n\r") != std::string_view::npos;
}

}  // namespace

void CsvWriter::row(std::span<const std::string> cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        const std::string& c = cells[i];
        if (needs_quoting(c)) {
            out_ << '"';
            for (char ch : c) {
                if (ch == '"') out_ << '"';
                out_ << ch;
            }
            out_ << '"';
        } else {
            out_ << c;
        }
    }
    out_ << '\n';
    if (!out_) throw IoError("write failed on '" + path_.string() + "'");
}

void CsvWriter::row(std::initializer_list<std::string> cells) {
    row(std::span<const std::string>(cells.begin(), cells.size()));
}

std::string format_double(double v) {
    if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace pvauction
