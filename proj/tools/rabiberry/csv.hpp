// Minimal CSV emitter: header plus rows of pre-formatted cells, LF line endings.
#pragma once

#include <string>
#include <vector>

namespace rabiberry::cli {

// Shortest decimal that round-trips to the same double; "inf", "-inf", "nan" otherwise.
std::string format_double(double v);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);

    // Throws std::invalid_argument if the cell count differs from the header.
    void add_row(std::vector<std::string> cells);

    std::size_t rows() const noexcept { return rows_.size(); }
    std::string str() const;
    // Throws std::runtime_error if the file cannot be written.
    void write(const std::string& path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

void write_text_file(const std::string& path, const std::string& text);

} // namespace rabiberry::cli
