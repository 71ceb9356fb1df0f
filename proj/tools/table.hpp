#pragma once

#include <string>
#include <utility>
#include <vector>

namespace omec::cli {

struct Column {
    std::string name;
    std::string unit;
};

// Rectangular numeric table; columns are fixed before the first row.
class ResultTable {
public:
    explicit ResultTable(std::vector<Column> cols) : cols_(std::move(cols)) {}

    void add_row(std::vector<double> row);
    void meta(const std::string& key, const std::string& value) { meta_.emplace_back(key, value); }

    const std::vector<Column>& columns() const { return cols_; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }

    // '#' metadata lines, header row, then one row per line in %.17e.
    std::string to_csv() const;
    // Line chart of columns ys against column 0.
    std::string to_svg(const std::string& title, const std::vector<int>& ys, bool logx,
                       bool logy) const;

private:
    std::vector<Column> cols_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::pair<std::string, std::string>> meta_;
};

void write_file(const std::string& path, const std::string& text);

}  // namespace omec::cli
