#include "topolabel/csv.hpp"

#include "topolabel/error.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

namespace topolabel {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

} // namespace

CsvTable read_csv(std::istream& is, const std::string& source_name) {
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_line(line);
        if (table.header.empty()) {
            table.header = std::move(cells);
            continue;
        }
        if (cells.size() != table.header.size())
            throw Error(Errc::IngestError, source_name + ": row " + std::to_string(line_no) +
                                               " has " + std::to_string(cells.size()) +
                                               " cells, header has " +
                                               std::to_string(table.header.size()));
        table.rows.push_back(std::move(cells));
    }
    if (table.header.empty())
        throw Error(Errc::IngestError, source_name + ": missing header row");
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error(Errc::IngestError, "cannot open '" + path + "'");
    return read_csv(is, path);
}

PointCloud table_to_cloud(const CsvTable& table, const std::string& label_column) {
    const std::size_t n_cols = table.header.size();
    const bool has_label = n_cols >= 2 && table.header.back() == label_column;
    const std::size_t n_features = has_label ? n_cols - 1 : n_cols;
    if (n_features == 0) throw Error(Errc::IngestError, "no feature columns");

    PointCloud cloud;
    cloud.dim = n_features;
    cloud.coords.reserve(table.rows.size() * n_features);
    cloud.ids.reserve(table.rows.size());
    if (has_label) cloud.labels.reserve(table.rows.size());

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        for (std::size_t c = 0; c < n_features; ++c) {
            const std::string& cell = row[c];
            const char* begin = cell.c_str();
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (cell.empty() || end != begin + cell.size() || !std::isfinite(v))
                throw Error(Errc::IngestError, "row " + std::to_string(r + 2) + ", column " +
                                                   std::to_string(c + 1) + ": bad numeric value '" +
                                                   cell + "'");
            cloud.coords.push_back(v);
        }
        cloud.ids.push_back(static_cast<int>(r));
        if (has_label) {
            const std::string& cell = row.back();
            int label = 0;
            if (cell == "1")
                label = 1;
            else if (cell == "2")
                label = 2;
            else if (!cell.empty())
                throw Error(Errc::IngestError, "row " + std::to_string(r + 2) + ", column " +
                                                   std::to_string(n_cols) + ": label must be 1, 2 " +
                                                   "or empty, got '" + cell + "'");
            cloud.labels.push_back(label);
        }
    }
    if (cloud.size() == 0) throw Error(Errc::IngestError, "no data rows");
    return cloud;
}

PointCloud load_point_cloud(const std::string& path, const std::string& label_column) {
    return table_to_cloud(read_csv_file(path), label_column);
}

} // namespace topolabel
