#include "core/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace mfc {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write file '" + path + "'");
    out << content;
    if (!out)
        throw IoError("write to '" + path + "' failed");
}

ScalarField read_field_csv(const std::string& path, const Grid2D& grid) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open field file '" + path + "'");
    ScalarField field(grid);
    std::string line;
    int j = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (j >= grid.ny())
            throw ParseError("field file '" + path + "' has more than " +
                             std::to_string(grid.ny()) + " rows");
        std::istringstream row(line);
        std::string cell;
        int i = 0;
        while (std::getline(row, cell, ',')) {
            if (i >= grid.nx())
                throw ParseError("field file '" + path + "' row " + std::to_string(j) +
                                 " has more than " + std::to_string(grid.nx()) +
                                 " columns");
            double value = 0.0;
            const char* begin = cell.data();
            const char* end = begin + cell.size();
            size_t b = cell.find_first_not_of(" \t");
            size_t e = cell.find_last_not_of(" \t");
            if (b != std::string::npos) {
                begin = cell.data() + b;
                end = cell.data() + e + 1;
            }
            const auto res = std::from_chars(begin, end, value);
            if (res.ec != std::errc() || res.ptr != end)
                throw ParseError("field file '" + path + "' row " + std::to_string(j) +
                                 " column " + std::to_string(i) +
                                 " is not a number: '" + cell + "'");
            field.values[grid.index(i, j)] = value;
            ++i;
        }
        if (i != grid.nx())
            throw ParseError("field file '" + path + "' row " + std::to_string(j) +
                             " has " + std::to_string(i) + " columns, expected " +
                             std::to_string(grid.nx()));
        ++j;
    }
    if (j != grid.ny())
        throw ParseError("field file '" + path + "' has " + std::to_string(j) +
                         " rows, expected " + std::to_string(grid.ny()));
    return field;
}

void write_snapshot(const std::string& path, const ScalarField& field) {
    const Grid2D& grid = *field.grid;
    std::ostringstream os;
    os << "x,y,value\n";
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const int idx = grid.index(i, j);
            if (!grid.is_free(idx))
                continue;
            os << format_double(grid.cx(i)) << ',' << format_double(grid.cy(j)) << ','
               << format_double(field.values[idx]) << '\n';
        }
    }
    write_text_file(path, os.str());
}

void write_key_values(const std::string& path,
                      const std::vector<std::pair<std::string, std::string>>& items) {
    std::ostringstream os;
    for (const auto& [key, value] : items)
        os << key << '=' << value << '\n';
    write_text_file(path, os.str());
}

std::string join_doubles(const std::vector<double>& values) {
    std::string out;
    for (size_t k = 0; k < values.size(); ++k) {
        if (k > 0)
            out.push_back(',');
        out += format_double(values[k]);
    }
    return out;
}

}  // namespace mfc
