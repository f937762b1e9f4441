#include "mgssp/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "mgssp/error.hpp"

namespace mgssp::csv {

std::string format_residual(double value) {
  if (std::isnan(value)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", value);
  return buf;
}

std::string format_exact(double value) {
  if (std::isnan(value)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return {buf, res.ptr};
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

double parse_double(std::string_view text) {
  if (text == "nan") return std::nan("");
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidInput, "not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::size_t parse_count(std::string_view text) {
  std::size_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidInput, "not a count: '" + std::string(text) + "'");
  }
  return v;
}

bool parse_bool(std::string_view text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw Error(ErrorCode::InvalidInput, "not a boolean: '" + std::string(text) + "'");
}

std::vector<std::string> split_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

void write_history(std::ostream& out, std::span<const double> res_history) {
  out << "step,res\n";
  for (std::size_t k = 0; k < res_history.size(); ++k) out << k << ',' << format_residual(res_history[k]) << '\n';
}

void write_eigenvalues(std::ostream& out, std::span<const Complex> eigenvalues) {
  out << "re,im\n";
  for (const auto& l : eigenvalues) out << format_exact(l.real()) << ',' << format_exact(l.imag()) << '\n';
}

}  // namespace mgssp::csv
