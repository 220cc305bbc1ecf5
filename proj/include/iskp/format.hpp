#pragma once

#include <string>
#include <vector>

namespace iskp {

// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

// Fixed notation with the given number of fractional digits.
std::string format_fixed(double x, int digits);

double parse_double(const std::string& s);

std::string csv_escape(const std::string& field);
std::string csv_row(const std::vector<std::string>& fields);

// Splits a single CSV line; quoted fields may contain commas and doubled quotes.
std::vector<std::string> csv_split(const std::string& line);

} // namespace iskp
