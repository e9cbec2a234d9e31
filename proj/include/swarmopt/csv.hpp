#pragma once

#include "swarmopt/errors.hpp"

#include <cstdio>
#include <fstream>
#include <string>

namespace swarmopt {

/// Shortest form that still round-trips a double exactly (17 significant
/// digits, '.' decimal point).
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Line-oriented CSV writer: comma separator, LF endings, no trailing
/// whitespace. Opening or writing failures raise io_error.
class CsvFile {
public:
    explicit CsvFile(const std::string& path) : path_(path), out_(path, std::ios::binary) {
        if (!out_)
            throw io_error("cannot open '" + path + "' for writing");
    }

    void raw_line(const std::string& line) {
        out_ << line << '\n';
        if (!out_)
            throw io_error("write failed on '" + path_ + "'");
    }

    template <typename... Cells>
    void row(const Cells&... cells) {
        std::string line;
        bool first = true;
        auto append = [&](const auto& c) {
            if (!first)
                line += ',';
            first = false;
            line += cell(c);
        };
        (append(cells), ...);
        raw_line(line);
    }

private:
    static std::string cell(double v) { return format_double(v); }
    static std::string cell(const std::string& s) { return s; }
    static std::string cell(const char* s) { return s; }
    static std::string cell(unsigned long v) { return std::to_string(v); }
    static std::string cell(unsigned long long v) { return std::to_string(v); }
    static std::string cell(unsigned v) { return std::to_string(v); }
    static std::string cell(int v) { return std::to_string(v); }

    std::string path_;
    std::ofstream out_;
};

} // namespace swarmopt
