#include "hsg/csv.hpp"

#include <sstream>

namespace hsg {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

static std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

CsvFile read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    CsvFile f;
    f.path = path;
    std::string line;
    long lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        if (!header_seen && line[0] == '#') {
            std::size_t start = line.find_first_not_of("# ");
            f.comment = start == std::string::npos ? "" : line.substr(start);
            continue;
        }
        if (!header_seen) {
            f.header = split_csv_line(line);
            header_seen = true;
            continue;
        }
        f.rows.push_back({lineno, split_csv_line(line)});
    }
    if (!header_seen) throw DataError("missing header line in " + path);
    return f;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary), path_(path) {
    if (!out_) throw DataError("cannot open file for writing: " + path);
}

void CsvWriter::write_raw(const std::string& line) {
    out_ << line << '\n';
}

void CsvWriter::write_row(const std::vector<std::string>& fields) {
    std::ostringstream ss;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) ss << ',';
        ss << fields[i];
    }
    out_ << ss.str() << '\n';
}

void CsvWriter::close() {
    out_.close();
    if (!out_) throw DataError("write failed: " + path_);
}

}  // namespace hsg
