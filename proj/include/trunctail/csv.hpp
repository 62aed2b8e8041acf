#ifndef TRUNCTAIL_CSV_HPP
#define TRUNCTAIL_CSV_HPP

#include "trunctail/product_limit.hpp"
#include "trunctail/sampling.hpp"

#include <iosfwd>
#include <string>

namespace trunctail {

/// Formats a double with 17 significant digits (lossless round trip).
std::string format_double(double v);

/// Writes the observed pairs as `x,y` CSV with a mandatory header.
void write_sample_csv(const ObservedSample& sample, std::ostream& os);

/// Reads an `x,y` CSV. The header is optional (sniffed: a first line that
/// does not parse as two numbers is treated as a header). Throws CsvError
/// with the 1-based data row on malformed rows or rows violating x <= y.
ObservedSample read_sample_csv(std::istream& is);

/// Debug dump of the product-limit tables: `i,x,c,f,ratio`.
void write_tables_csv(const ProductLimitTables& tables, std::ostream& os);

} // namespace trunctail

#endif
