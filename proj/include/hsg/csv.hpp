#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "hsg/common.hpp"

namespace hsg {

// Minimal comma-separated reader for the plain-file formats used here.
// No quoting: keys and values must not contain commas. UTF-8, LF endings.

struct CsvRow {
    long line = 0;  // 1-based line number in the file
    std::vector<std::string> fields;
};

struct CsvFile {
    std::string path;
    std::string comment;       // first line when it starts with '#' (without the marker)
    std::vector<std::string> header;
    std::vector<CsvRow> rows;
};

std::vector<std::string> split_csv_line(const std::string& line);

// Reads path. An initial '# ...' line is stored as `comment`; the next line is
// the header; everything after that is data. Blank lines are skipped.
CsvFile read_csv(const std::string& path);

// Line-oriented writer that always emits LF endings.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);
    void write_raw(const std::string& line);
    void write_row(const std::vector<std::string>& fields);
    void close();

private:
    std::ofstream out_;
    std::string path_;
};

}  // namespace hsg
