// mgssp: build a test problem, run a shift-splitting solver, emit CSV.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mgssp/error.hpp"
#include "mgssp/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

int exit_code_for(mgssp::ErrorCode code) {
  using mgssp::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidDimension:
    case ErrorCode::InvalidParameter:
    case ErrorCode::InvalidInput:
    case ErrorCode::ResourceLimit:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

std::vector<std::optional<mgssp::FamilyKind>> parse_kinds(const std::string& list) {
  std::vector<std::optional<mgssp::FamilyKind>> kinds;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "none") {
      kinds.emplace_back(std::nullopt);
      continue;
    }
    const auto kind = mgssp::parse_kind(item);
    if (!kind) throw mgssp::Error(mgssp::ErrorCode::InvalidParameter, "unknown preconditioner '" + item + "'");
    kinds.emplace_back(*kind);
  }
  if (kinds.empty()) throw mgssp::Error(mgssp::ErrorCode::InvalidParameter, "empty preconditioner list");
  return kinds;
}

// Writes to `path` or stdout when empty.
template <class Writer>
void emit(const std::string& path, Writer&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw mgssp::Error(mgssp::ErrorCode::InvalidInput, "cannot open '" + path + "' for writing");
  write(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shift-splitting preconditioners for saddle-point systems"};

  int example = 1;
  std::size_t p = 16;
  double v = 1.0;
  std::string solver = "gmres";
  std::string precond = "mgssp";
  double alpha = 1.0;
  double beta = 1.0;
  double tol = 1e-6;
  std::size_t maxit = 500;
  std::string out_path, history_path, eigs_path;
  std::optional<int> table;
  std::string sweep_alpha, sweep_beta;
  bool beta_equals_alpha = false;
  bool extended = false;
  unsigned workers = 0;

  app.add_option("--example", example, "Test problem")->check(CLI::IsMember({1, 2}));
  app.add_option("--p", p, "Grid size; the system has 3p^2 unknowns")->check(CLI::PositiveNumber);
  app.add_option("--v", v, "Viscosity");
  app.add_option("--solver", solver, "stationary or gmres")->check(CLI::IsMember({"stationary", "gmres"}));
  app.add_option("--precond", precond, "none|ss|gss|mss|gmss|mssp|mgssp, comma-separated for sweeps");
  app.add_option("--alpha", alpha, "First-block shift");
  app.add_option("--beta", beta, "Second-block shift (ignored by SS, MSS, MSSP)");
  app.add_option("--tol", tol, "Stop when RES drops below this")->capture_default_str();
  app.add_option("--maxit", maxit, "Iteration budget")->capture_default_str();
  app.add_option("--out", out_path, "Summary CSV (default: stdout)");
  app.add_option("--history", history_path, "Residual history CSV (single runs)");
  app.add_option("--eigs", eigs_path, "Eigenvalues of the preconditioned matrix (single runs)");
  app.add_option("--table", table, "Reproduce a reference table")->check(CLI::Range(1, 8));
  app.add_option("--sweep-alpha", sweep_alpha, "LO:HI:STEP");
  app.add_option("--sweep-beta", sweep_beta, "LO:HI:STEP");
  app.add_flag("--beta-equals-alpha", beta_equals_alpha, "Sweep with beta tied to alpha");
  app.add_flag("--extended", extended, "Allow p = 48/64 table rows and spectra above p = 8");
  app.add_option("--workers", workers, "Worker threads for sweeps and tables (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (table) {
      mgssp::TableOptions opts;
      opts.extended = extended;
      opts.tolerance = tol;
      opts.max_iterations = maxit;
      opts.workers = workers;
      const auto rows = mgssp::table_repro(*table, opts);
      emit(out_path, [&](std::ostream& os) { mgssp::write_table(os, rows); });
      const auto failed = std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.pass; });
      std::cerr << "table " << *table << ": " << rows.size() - failed << "/" << rows.size() << " rows pass\n";
      return failed == 0 ? kExitOk : kExitFailure;
    }

    mgssp::RunSpec spec;
    spec.example = example;
    spec.p = p;
    spec.v = v;
    spec.solver = *mgssp::parse_solver(solver);
    spec.alpha = alpha;
    spec.beta = beta;
    spec.tolerance = tol;
    spec.max_iterations = maxit;
    spec.allow_large_spectra = extended;
    const auto kinds = parse_kinds(precond);

    if (!sweep_alpha.empty() || !sweep_beta.empty()) {
      const auto alphas = sweep_alpha.empty() ? std::vector<double>{alpha} : mgssp::parse_range(sweep_alpha);
      const auto betas = sweep_beta.empty() ? std::vector<double>{beta} : mgssp::parse_range(sweep_beta);
      const auto rows = mgssp::sweep(spec, alphas, betas, kinds, beta_equals_alpha, workers);
      emit(out_path, [&](std::ostream& os) { mgssp::write_summary(os, rows); });
      bool any_failed = false;
      for (const auto& r : rows) {
        if (r.failure.empty()) continue;
        std::cerr << r.method << " alpha=" << r.alpha << " beta=" << r.beta << ": " << r.failure << '\n';
        any_failed = true;
      }
      return any_failed ? kExitFailure : kExitOk;
    }

    if (kinds.size() != 1) {
      throw mgssp::Error(mgssp::ErrorCode::InvalidParameter, "a list of preconditioners needs --sweep-alpha");
    }
    spec.kind = kinds.front();
    if (!history_path.empty()) spec.history_path = history_path;
    if (!eigs_path.empty()) spec.eigs_path = eigs_path;
    spec.validate();

    const mgssp::SummaryRow row = mgssp::run_guarded(spec);
    emit(out_path, [&](std::ostream& os) { mgssp::write_summary(os, std::span(&row, 1)); });
    if (!row.failure.empty()) {
      std::cerr << "error: " << row.failure << '\n';
      return kExitFailure;
    }
    if (!row.converged) {
      std::cerr << "error: no convergence within " << maxit << " iterations (RES " << row.res << ")\n";
      return kExitFailure;
    }
    return kExitOk;
  } catch (const mgssp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}
