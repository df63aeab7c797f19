#pragma once

#include "topolabel/point_cloud.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace topolabel {

/// Raw CSV contents; cell text is preserved verbatim so tools can
/// re-emit input rows untouched.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(std::istream& is, const std::string& source_name = "<stream>");
CsvTable read_csv_file(const std::string& path);

/// Interprets a table as a point cloud: float feature columns plus an
/// optional final label column (values 1, 2 or empty) identified by
/// name. ids are 0-based data-row indices. Throws IngestError with
/// row/column position on malformed cells.
PointCloud table_to_cloud(const CsvTable& table, const std::string& label_column = "label");

PointCloud load_point_cloud(const std::string& path, const std::string& label_column = "label");

} // namespace topolabel
