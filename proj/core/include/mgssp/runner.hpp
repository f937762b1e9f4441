#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mgssp/preconditioner.hpp"
#include "mgssp/solvers.hpp"

namespace mgssp {

enum class SolverKind { Stationary, Gmres };

std::string_view to_string(SolverKind solver) noexcept;
std::optional<SolverKind> parse_solver(std::string_view text) noexcept;

/// Largest p for which run() computes spectra unless allow_large_spectra is set.
inline constexpr std::size_t kSpectraMaxP = 8;

struct RunSpec {
  int example = 1;
  std::size_t p = 16;
  double v = 1.0;
  /// nullopt means unpreconditioned (GMRES only).
  std::optional<FamilyKind> kind = FamilyKind::MGSSP;
  SolverKind solver = SolverKind::Gmres;
  double alpha = 1.0;
  double beta = 1.0;
  double tolerance = 1e-6;
  std::size_t max_iterations = 500;

  std::optional<std::filesystem::path> summary_path;
  std::optional<std::filesystem::path> history_path;
  std::optional<std::filesystem::path> eigs_path;
  bool allow_large_spectra = false;

  /// Throws InvalidParameter with a readable message.
  void validate() const;
  /// "gmres+MGSSP", "stationary+GSS", "gmres".
  [[nodiscard]] std::string method_label() const;
};

struct SummaryRow {
  std::string method;
  int example = 1;
  std::size_t p = 0;
  double v = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::size_t iterations = 0;
  double res = 0.0;
  bool converged = false;
  double time_ms = 0.0;
  /// Set when the run threw; not serialized.
  std::string failure;

  bool operator==(const SummaryRow&) const = default;
};

struct RunResult {
  SummaryRow row;
  IterationReport report;
};

/// Builds the system, solves, writes the requested files. Throws on failure.
RunResult run(const RunSpec& spec);

/// Like run() but turns a thrown Error into a row with converged=false,
/// res=nan and `failure` set.
SummaryRow run_guarded(const RunSpec& spec);

/// Cartesian product kinds x alphas x betas (betas ignored when tie_beta or
/// for tied kinds). Rows come back sorted by (kind, alpha, beta).
/// `workers` = 0 picks the hardware concurrency.
std::vector<SummaryRow> sweep(const RunSpec& base, std::span<const double> alphas, std::span<const double> betas,
                              std::span<const std::optional<FamilyKind>> kinds, bool tie_beta = false,
                              unsigned workers = 0);

/// "LO:HI:STEP" -> {LO, LO+STEP, ..., <= HI}, each rounded to 12 digits.
std::vector<double> parse_range(std::string_view text);

struct TableOptions {
  /// Adds the p = 48 and p = 64 rows.
  bool extended = false;
  double tolerance = 1e-6;
  std::size_t max_iterations = 500;
  unsigned workers = 0;
};

struct TableRow {
  int table = 0;
  SummaryRow row;
  /// nullopt for "--" (no convergence within the iteration budget).
  std::optional<std::size_t> expected;
  std::size_t tolerance = 0;
  bool pass = false;
};

/// Iteration-count tolerance: max(base, floor(expected / 10)), base 3 for
/// the stationary tables and 2 for GMRES.
std::size_t table_tolerance(SolverKind solver, std::size_t expected) noexcept;

/// Reruns the parameter set of table 1..8 and compares IT with the reference.
std::vector<TableRow> table_repro(int table_id, const TableOptions& opts = {});

void write_summary(std::ostream& out, std::span<const SummaryRow> rows);
std::vector<SummaryRow> read_summary(std::istream& in);
void write_table(std::ostream& out, std::span<const TableRow> rows);

}  // namespace mgssp
