#include "trunctail/csv.hpp"

#include "trunctail/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace trunctail {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_sample_csv(const ObservedSample& sample, std::ostream& os) {
    os << "x,y\n";
    for (std::size_t i = 0; i < sample.size(); ++i) {
        os << format_double(sample.x[i]) << ',' << format_double(sample.y[i]) << '\n';
    }
}

namespace {

bool parse_pair(const std::string& line, double& x, double& y) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
        return false;
    }
    try {
        std::size_t used = 0;
        x = std::stod(line.substr(0, comma), &used);
        const std::string rest = line.substr(comma + 1);
        y = std::stod(rest, &used);
        // allow trailing whitespace/carriage return only
        for (std::size_t i = used; i < rest.size(); ++i) {
            if (!std::isspace(static_cast<unsigned char>(rest[i]))) {
                return false;
            }
        }
    } catch (const std::exception&) {
        return false;
    }
    return std::isfinite(x) && std::isfinite(y);
}

} // namespace

ObservedSample read_sample_csv(std::istream& is) {
    std::vector<double> xs;
    std::vector<double> ys;
    std::string line;
    std::size_t data_row = 0;
    bool first = true;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        double x = 0.0, y = 0.0;
        if (first) {
            first = false;
            if (!parse_pair(line, x, y)) {
                continue; // header line
            }
        } else if (!parse_pair(line, x, y)) {
            throw CsvError("row " + std::to_string(data_row + 1) + ": expected two numeric fields",
                           data_row + 1);
        }
        ++data_row;
        if (!(x > 0.0) || !(y > 0.0)) {
            throw CsvError("row " + std::to_string(data_row) + ": values must be positive",
                           data_row);
        }
        if (x > y) {
            throw CsvError("row " + std::to_string(data_row) + ": x > y violates truncation",
                           data_row);
        }
        xs.push_back(x);
        ys.push_back(y);
    }
    if (xs.empty()) {
        throw EmptySampleError("CSV contains no data rows");
    }
    return ObservedSample::from_pairs(std::move(xs), std::move(ys));
}

void write_tables_csv(const ProductLimitTables& tables, std::ostream& os) {
    os << "i,x,c,f,ratio\n";
    for (std::size_t i = 0; i < tables.n(); ++i) {
        os << i + 1 << ',' << format_double(tables.sorted_x[i]) << ','
           << format_double(tables.c_at_x[i]) << ',' << format_double(tables.f_at_x[i]) << ','
           << format_double(tables.ratio[i]) << '\n';
    }
}

} // namespace trunctail
