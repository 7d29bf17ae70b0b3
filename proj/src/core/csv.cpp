#include "tlasso/core/dataset.hpp"

#include "tlasso/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <string_view>

namespace tlasso {
namespace {

std::vector<std::string> split_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.emplace_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_cell(std::string_view cell, std::size_t row, std::size_t col) {
    cell = trim(cell);
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    double value = 0.0;
    const auto* end = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
    if (cell.empty() || ec != std::errc() || ptr != end) {
        throw ParseError(row, col, "'" + std::string(cell) + "' is not a number");
    }
    return value;
}

}  // namespace

CsvTable read_numeric_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");

    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw IoError("'" + path.string() + "' is empty");
    // UTF-8 byte order mark
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    for (auto& h : split_line(line)) table.header.emplace_back(trim(h));

    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty() || line == "\r") continue;
        const auto cells = split_line(line);
        if (cells.size() != table.header.size()) {
            throw ParseError(row, cells.size(), "expected " + std::to_string(table.header.size()) +
                                                    " cells, found " + std::to_string(cells.size()));
        }
        std::vector<double> values(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) values[c] = parse_cell(cells[c], row, c + 1);
        table.rows.push_back(std::move(values));
    }
    if (in.bad()) throw IoError("read failure on '" + path.string() + "'");
    return table;
}

Dataset load_csv(const std::filesystem::path& path, const std::string& response_column) {
    const CsvTable table = read_numeric_csv(path);
    const auto it = std::find(table.header.begin(), table.header.end(), response_column);
    if (it == table.header.end()) throw MissingColumn(response_column);
    const auto response = static_cast<std::size_t>(it - table.header.begin());
    if (table.rows.empty()) throw ValidationError("'" + path.string() + "' has no data rows");
    if (table.header.size() < 2) throw ValidationError("need at least one feature column");

    const auto n = static_cast<Index>(table.rows.size());
    const auto p = static_cast<Index>(table.header.size() - 1);
    Matrix x(n, p);
    Vector y(n);
    std::vector<std::string> names;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c != response) names.push_back(table.header[c]);
    }
    for (Index i = 0; i < n; ++i) {
        const auto& values = table.rows[static_cast<std::size_t>(i)];
        Index j = 0;
        for (std::size_t c = 0; c < values.size(); ++c) {
            if (c == response) {
                y(i) = values[c];
            } else {
                x(i, j++) = values[c];
            }
        }
    }
    return Dataset(std::move(x), std::move(y), std::move(names));
}

Coefficients load_coefficients(const std::filesystem::path& path, const Dataset& d) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw IoError("'" + path.string() + "' is empty");
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    const auto header = split_line(line);
    if (header.size() != 2 || trim(header[0]) != "feature" || trim(header[1]) != "beta") {
        throw ParseError(1, 1, "coefficient files start with the header 'feature,beta'");
    }

    Coefficients c = Coefficients::zeros(d.p());
    std::vector<char> seen(static_cast<std::size_t>(d.p()), 0);
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty() || line == "\r") continue;
        const auto cells = split_line(line);
        if (cells.size() != 2) throw ParseError(row, cells.size(), "expected 2 cells");
        const std::string name(trim(cells[0]));
        const double value = parse_cell(cells[1], row, 2);
        if (name == "(intercept)") {
            c.intercept = value;
            continue;
        }
        Index j = 0;
        while (j < d.p() && d.column_name(j) != name) ++j;
        if (j == d.p()) throw MissingColumn(name);
        if (seen[static_cast<std::size_t>(j)]) throw ParseError(row, 1, "feature '" + name + "' listed twice");
        seen[static_cast<std::size_t>(j)] = 1;
        c.beta(j) = value;
    }
    if (in.bad()) throw IoError("read failure on '" + path.string() + "'");
    return c;
}

}  // namespace tlasso
