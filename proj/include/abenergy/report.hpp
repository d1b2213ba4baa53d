#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace abenergy {

enum class OutputFormat { text, csv, json };

using Cell = std::variant<double, std::string, bool>;

/// Ordered named columns; every row has one cell per column.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// 12 significant digits ("%.12g"), negative zero printed as 0.
std::string format_number(double v);

/// text: space-aligned columns under a header line; csv: header row then one
/// line per row; json: an array with one object per row. Booleans print as
/// yes/no in text and csv.
void write_table(std::ostream& out, const Table& t, OutputFormat format);

}  // namespace abenergy
