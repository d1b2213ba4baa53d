#include "abenergy/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include <json.hpp>

namespace abenergy {
namespace {

std::string cell_text(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) {
        return format_number(*d);
    }
    if (const bool* b = std::get_if<bool>(&c)) {
        return *b ? "yes" : "no";
    }
    return std::get<std::string>(c);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    return out + "\"";
}

void write_text(std::ostream& out, const Table& t) {
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        width[i] = t.columns[i].size();
    }
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : t.rows) {
        std::vector<std::string> line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line.push_back(cell_text(row[i]));
            width[i] = std::max(width[i], line.back().size());
        }
        cells.push_back(std::move(line));
    }
    auto emit = [&](const std::vector<std::string>& line) {
        std::string s;
        for (std::size_t i = 0; i < line.size(); ++i) {
            s += line[i];
            if (i + 1 < line.size()) {
                s += std::string(width[i] - line[i].size() + 2, ' ');
            }
        }
        out << s << '\n';
    };
    emit(t.columns);
    for (const auto& line : cells) {
        emit(line);
    }
}

void write_csv(std::ostream& out, const Table& t) {
    auto emit = [&](const std::vector<std::string>& line) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            out << (i ? "," : "") << csv_escape(line[i]);
        }
        out << '\n';
    };
    emit(t.columns);
    for (const auto& row : t.rows) {
        std::vector<std::string> line;
        for (const auto& c : row) {
            line.push_back(cell_text(c));
        }
        emit(line);
    }
}

void write_json(std::ostream& out, const Table& t) {
    out << "[\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        // ordered_json keeps the column order.
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            const Cell& c = t.rows[r][i];
            if (const double* d = std::get_if<double>(&c)) {
                // Round to 12 digits; the shortest round-trip print is then those digits.
                obj[t.columns[i]] = std::strtod(format_number(*d).c_str(), nullptr);
            } else if (const bool* b = std::get_if<bool>(&c)) {
                obj[t.columns[i]] = *b;
            } else {
                obj[t.columns[i]] = std::get<std::string>(c);
            }
        }
        out << "  " << obj.dump() << (r + 1 < t.rows.size() ? ",\n" : "\n");
    }
    out << "]\n";
}

}  // namespace

std::string format_number(double v) {
    if (v == 0.0) {
        return "0";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_table(std::ostream& out, const Table& t, OutputFormat format) {
    for (const auto& row : t.rows) {
        if (row.size() != t.columns.size()) {
            throw std::logic_error("report row width does not match its columns");
        }
    }
    switch (format) {
        case OutputFormat::text: write_text(out, t); break;
        case OutputFormat::csv: write_csv(out, t); break;
        case OutputFormat::json: write_json(out, t); break;
    }
}

}  // namespace abenergy
