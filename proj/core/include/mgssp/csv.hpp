#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mgssp/dense.hpp"

namespace mgssp::csv {

/// Scientific notation, 3 significant digits ("9.88e-07").
std::string format_residual(double value);
/// Shortest text that parses back to the same double.
std::string format_exact(double value);
std::string format_fixed(double value, int decimals);

double parse_double(std::string_view text);
std::size_t parse_count(std::string_view text);
bool parse_bool(std::string_view text);

std::vector<std::string> split_line(std::string_view line);

/// `step,res`, one line per entry of the history.
void write_history(std::ostream& out, std::span<const double> res_history);
/// `re,im`.
void write_eigenvalues(std::ostream& out, std::span<const Complex> eigenvalues);

}  // namespace mgssp::csv
