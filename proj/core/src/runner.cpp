#include "mgssp/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <tuple>

#include "mgssp/csv.hpp"
#include "mgssp/eigen.hpp"
#include "mgssp/error.hpp"
#include "mgssp/problems.hpp"
#include "mgssp/spectral.hpp"

namespace mgssp {

namespace {

constexpr const char* kSummaryHeader = "method,example,p,v,alpha,beta,iterations,res,converged,time_ms";

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot open '" + path.string() + "' for writing");
  return out;
}

SaddlePointSystem build_system(const RunSpec& spec) {
  return spec.example == 1 ? build_example1(spec.p, spec.v) : build_example2(spec.p, spec.v);
}

}  // namespace

std::string_view to_string(SolverKind solver) noexcept {
  return solver == SolverKind::Stationary ? "stationary" : "gmres";
}

std::optional<SolverKind> parse_solver(std::string_view text) noexcept {
  if (text == "stationary") return SolverKind::Stationary;
  if (text == "gmres") return SolverKind::Gmres;
  return std::nullopt;
}

void RunSpec::validate() const {
  if (example != 1 && example != 2) throw Error(ErrorCode::InvalidParameter, "example must be 1 or 2");
  if (p < 2) throw Error(ErrorCode::InvalidParameter, "p must be >= 2");
  if (example == 2 && p % 2 != 0) throw Error(ErrorCode::InvalidParameter, "example 2 needs an even p");
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorCode::InvalidParameter, "v must be positive");
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidParameter, "tolerance must be > 0");
  if (max_iterations == 0) throw Error(ErrorCode::InvalidParameter, "max_iterations must be >= 1");
  if (!kind && solver == SolverKind::Stationary) {
    throw Error(ErrorCode::InvalidParameter, "the stationary solver needs a preconditioner");
  }
  if (kind) ShiftParams{alpha, beta}.validate();
  if (eigs_path && p > kSpectraMaxP && !allow_large_spectra) {
    throw Error(ErrorCode::InvalidParameter,
                "eigenvalues are limited to p <= " + std::to_string(kSpectraMaxP) + " (got p = " +
                    std::to_string(p) + "); pass the extended flag to lift this");
  }
}

std::string RunSpec::method_label() const {
  std::string label(to_string(solver));
  if (kind) {
    label += '+';
    label += to_string(*kind);
  }
  return label;
}

RunResult run(const RunSpec& spec) {
  spec.validate();
  const SaddlePointSystem system = build_system(spec);

  SolveConfig cfg;
  cfg.tolerance = spec.tolerance;
  cfg.max_iterations = spec.max_iterations;

  RunResult result;
  std::optional<ShiftSplitPreconditioner> precond;
  ShiftParams params{spec.alpha, spec.beta};
  if (spec.kind) {
    params = params.effective(*spec.kind);
    precond = ShiftSplitPreconditioner::build(*spec.kind, system, params);
  }
  if (spec.solver == SolverKind::Stationary) {
    result.report = stationary_solve(system, *precond, cfg);
  } else {
    result.report = gmres_solve(system, precond ? &*precond : nullptr, cfg);
  }

  SummaryRow& row = result.row;
  row.method = spec.method_label();
  row.example = spec.example;
  row.p = spec.p;
  row.v = spec.v;
  row.alpha = params.alpha;
  row.beta = params.beta;
  row.iterations = result.report.iterations;
  row.res = result.report.final_res;
  row.converged = result.report.converged;
  row.time_ms = result.report.wall_time_ms;

  if (spec.history_path) {
    auto out = open_output(*spec.history_path);
    csv::write_history(out, result.report.res_history);
  }
  if (spec.eigs_path) {
    const DenseMatrix m =
        precond ? preconditioned_matrix(system, *precond) : to_dense(assemble_saddle(system.A, system.B));
    auto out = open_output(*spec.eigs_path);
    csv::write_eigenvalues(out, dense_eigenvalues(m));
  }
  if (spec.summary_path) {
    auto out = open_output(*spec.summary_path);
    write_summary(out, std::span(&row, 1));
  }
  return result;
}

SummaryRow run_guarded(const RunSpec& spec) {
  std::string failure;
  try {
    return run(spec).row;
  } catch (const std::exception& e) {
    failure = e.what();
  }
  SummaryRow row;
  row.method = spec.method_label();
  row.example = spec.example;
  row.p = spec.p;
  row.v = spec.v;
  const ShiftParams params =
      spec.kind ? ShiftParams{spec.alpha, spec.beta}.effective(*spec.kind) : ShiftParams{spec.alpha, spec.beta};
  row.alpha = params.alpha;
  row.beta = params.beta;
  row.res = std::nan("");
  row.converged = false;
  row.failure = std::move(failure);
  return row;
}

namespace {

int kind_rank(const std::optional<FamilyKind>& kind) { return kind ? static_cast<int>(*kind) + 1 : 0; }

// Runs every spec, at most `workers` at a time. Order of `specs` is kept.
std::vector<SummaryRow> run_all(const std::vector<RunSpec>& specs, unsigned workers) {
  std::vector<SummaryRow> rows(specs.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, specs.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) rows[i] = run_guarded(specs[i]);
  };
  if (workers <= 1) {
    worker();
    return rows;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();
  return rows;
}

}  // namespace

std::vector<SummaryRow> sweep(const RunSpec& base, std::span<const double> alphas, std::span<const double> betas,
                              std::span<const std::optional<FamilyKind>> kinds, bool tie_beta, unsigned workers) {
  if (kinds.empty()) throw Error(ErrorCode::InvalidParameter, "sweep needs at least one preconditioner kind");
  if (alphas.empty()) throw Error(ErrorCode::InvalidParameter, "sweep needs at least one alpha");
  if (betas.empty() && !tie_beta) throw Error(ErrorCode::InvalidParameter, "sweep needs at least one beta");

  struct Job {
    RunSpec spec;
    int rank;
  };
  std::vector<Job> jobs;
  for (const auto& kind : kinds) {
    const bool tied = tie_beta || !kind || describe(*kind).ties_beta_to_alpha;
    for (double a : alphas) {
      const std::span<const double> bs = tied ? std::span<const double>(&a, 1) : betas;
      for (double b : bs) {
        RunSpec s = base;
        s.kind = kind;
        s.alpha = a;
        s.beta = b;
        s.summary_path.reset();
        s.history_path.reset();
        s.eigs_path.reset();
        jobs.push_back({s, kind_rank(kind)});
      }
    }
  }
  std::stable_sort(jobs.begin(), jobs.end(), [](const Job& l, const Job& r) {
    return std::tie(l.rank, l.spec.alpha, l.spec.beta) < std::tie(r.rank, r.spec.alpha, r.spec.beta);
  });
  std::vector<RunSpec> specs;
  specs.reserve(jobs.size());
  for (auto& j : jobs) specs.push_back(std::move(j.spec));
  return run_all(specs, workers);
}

std::vector<double> parse_range(std::string_view text) {
  const auto bad = [&] {
    return Error(ErrorCode::InvalidParameter, "range must look like LO:HI:STEP, got '" + std::string(text) + "'");
  };
  const std::size_t c1 = text.find(':');
  const std::size_t c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw bad();
  double lo = 0, hi = 0, step = 0;
  try {
    lo = csv::parse_double(text.substr(0, c1));
    hi = csv::parse_double(text.substr(c1 + 1, c2 - c1 - 1));
    step = csv::parse_double(text.substr(c2 + 1));
  } catch (const Error&) {
    throw bad();
  }
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(hi) || !std::isfinite(lo)) throw bad();
  const double count = std::floor((hi - lo) / step * (1.0 + 1e-12) + 1e-9);
  if (count > 1e6) throw Error(ErrorCode::ResourceLimit, "range has too many points");
  std::vector<double> values;
  for (std::size_t k = 0; k <= static_cast<std::size_t>(count); ++k) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", lo + static_cast<double>(k) * step);
    values.push_back(std::strtod(buf, nullptr));
  }
  return values;
}

// ---------------------------------------------------------------------------
// Reference tables

namespace {

constexpr std::size_t kNotConverged = 0;

struct StationaryRef {
  FamilyKind kind;
  std::size_t p;
  double alpha;
  double beta;
  std::size_t it;
};

struct StationaryTable {
  int id;
  int example;
  double v;
  std::vector<StationaryRef> rows;
};

// Columns: I, SS, GSS, MSS, GMSS, MGSSP. kNotConverged marks "--".
struct GmresRef {
  std::size_t p;
  std::size_t it[6];
};

struct GmresTable {
  int id;
  int example;
  double v;
  double alpha;
  double beta;
  std::vector<GmresRef> rows;
};

const std::vector<StationaryTable>& stationary_tables() {
  using K = FamilyKind;
  static const std::vector<StationaryTable> tables = {
      {1, 1, 0.1,
       {{K::GSS, 16, 20, 2.7, 58},
        {K::GSS, 32, 51, 5, 72},
        {K::GSS, 64, 125, 1.5, 102},
        {K::GMSS, 16, 22, 16, 66},
        {K::GMSS, 32, 36, 8.3, 73},
        {K::GMSS, 64, 38, 5.9, 89},
        {K::MGSSP, 16, 0.2, 0.1, 21},
        {K::MGSSP, 32, 0.5, 0.1, 21},
        {K::MGSSP, 64, 0.2, 0.1, 21}}},
      {5, 2, 0.1,
       {{K::GSS, 16, 13, 39, 85},
        {K::GSS, 32, 29, 53, 136},
        {K::GSS, 64, 66, 60, 230},
        {K::GMSS, 16, 16, 75, 143},
        {K::GMSS, 32, 18, 134.4, 213},
        {K::GMSS, 64, 24, 240, 337},
        {K::MGSSP, 16, 0.02, 0.1, 21},
        {K::MGSSP, 32, 0.01, 0.05, 21},
        {K::MGSSP, 64, 0.05, 0.1, 21}}},
  };
  return tables;
}

const std::vector<GmresTable>& gmres_tables() {
  constexpr std::size_t X = kNotConverged;
  static const std::vector<GmresTable> tables = {
      {2, 1, 1.0, 0.6, 0.8,
       {{16, {121, 9, 9, 15, 13, 7}},
        {32, {264, 10, 9, 15, 14, 7}},
        {48, {429, 10, 10, 16, 15, 8}},
        {64, {X, 11, 10, 16, 15, 8}}}},
      {3, 1, 0.1, 1.0, 0.8,
       {{16, {115, 8, 8, 17, 17, 6}},
        {32, {240, 9, 8, 17, 17, 7}},
        {48, {367, 9, 9, 18, 17, 7}},
        {64, {495, 9, 9, 18, 17, 7}}}},
      {4, 1, 0.01, 1.2, 1.5,
       {{16, {246, 9, 10, 51, 54, 7}},
        {32, {429, 9, 10, 55, 56, 7}},
        {48, {X, 9, 10, 57, 58, 7}},
        {64, {X, 9, 10, 57, 57, 7}}}},
      {6, 2, 1.0, 0.6, 0.8,
       {{16, {145, 9, 8, 15, 13, 6}},
        {32, {278, 10, 9, 15, 14, 7}},
        {48, {366, 10, 9, 16, 15, 7}},
        {64, {465, 11, 9, 16, 15, 8}}}},
      {7, 2, 0.1, 1.8, 1.5,
       {{16, {122, 9, 9, 19, 19, 7}},
        {32, {237, 10, 9, 19, 19, 7}},
        {48, {350, 10, 9, 19, 19, 7}},
        {64, {461, 10, 9, 19, 19, 7}}}},
      {8, 2, 0.01, 1.85, 1.75,
       {{16, {250, 10, 10, 59, 59, 7}},
        {32, {419, 10, 10, 60, 60, 7}},
        {48, {X, 10, 10, 60, 60, 7}},
        {64, {X, 10, 10, 60, 60, 7}}}},
  };
  return tables;
}

constexpr std::optional<FamilyKind> kGmresColumns[6] = {std::nullopt,      FamilyKind::SS,   FamilyKind::GSS,
                                                        FamilyKind::MSS,   FamilyKind::GMSS, FamilyKind::MGSSP};

}  // namespace

std::size_t table_tolerance(SolverKind solver, std::size_t expected) noexcept {
  const std::size_t base = solver == SolverKind::Stationary ? 3 : 2;
  return std::max(base, expected / 10);
}

std::vector<TableRow> table_repro(int table_id, const TableOptions& opts) {
  if (table_id < 1 || table_id > 8) throw Error(ErrorCode::InvalidParameter, "table must be in 1..8");
  const auto keep = [&](std::size_t p) { return opts.extended || p <= 32; };

  std::vector<RunSpec> specs;
  std::vector<TableRow> rows;
  const auto add = [&](RunSpec s, std::size_t expected) {
    s.tolerance = opts.tolerance;
    s.max_iterations = opts.max_iterations;
    TableRow row;
    row.table = table_id;
    if (expected != kNotConverged) {
      row.expected = expected;
      row.tolerance = table_tolerance(s.solver, expected);
    }
    specs.push_back(s);
    rows.push_back(row);
  };

  for (const auto& t : stationary_tables()) {
    if (t.id != table_id) continue;
    for (const auto& r : t.rows) {
      if (!keep(r.p)) continue;
      RunSpec s;
      s.example = t.example;
      s.v = t.v;
      s.p = r.p;
      s.kind = r.kind;
      s.solver = SolverKind::Stationary;
      s.alpha = r.alpha;
      s.beta = r.beta;
      add(s, r.it);
    }
  }
  for (const auto& t : gmres_tables()) {
    if (t.id != table_id) continue;
    for (const auto& r : t.rows) {
      if (!keep(r.p)) continue;
      for (std::size_t c = 0; c < 6; ++c) {
        RunSpec s;
        s.example = t.example;
        s.v = t.v;
        s.p = r.p;
        s.kind = kGmresColumns[c];
        s.solver = SolverKind::Gmres;
        s.alpha = t.alpha;
        s.beta = t.beta;
        add(s, r.it[c]);
      }
    }
  }

  const std::vector<SummaryRow> observed = run_all(specs, opts.workers);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    TableRow& row = rows[i];
    row.row = observed[i];
    if (!row.row.failure.empty()) {
      row.pass = false;
    } else if (!row.expected) {
      row.pass = !row.row.converged;
    } else {
      const auto diff = static_cast<std::ptrdiff_t>(row.row.iterations) - static_cast<std::ptrdiff_t>(*row.expected);
      row.pass = row.row.converged && static_cast<std::size_t>(std::abs(diff)) <= row.tolerance;
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// CSV

void write_summary(std::ostream& out, std::span<const SummaryRow> rows) {
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << r.method << ',' << r.example << ',' << r.p << ',' << csv::format_exact(r.v) << ','
        << csv::format_exact(r.alpha) << ',' << csv::format_exact(r.beta) << ',' << r.iterations << ','
        << csv::format_residual(r.res) << ',' << (r.converged ? "true" : "false") << ','
        << csv::format_fixed(r.time_ms, 3) << '\n';
  }
}

std::vector<SummaryRow> read_summary(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || csv::split_line(line).size() != 10 ||
      line.substr(0, std::char_traits<char>::length(kSummaryHeader)) != kSummaryHeader) {
    throw Error(ErrorCode::InvalidInput, "missing summary header");
  }
  std::vector<SummaryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto f = csv::split_line(line);
    if (f.size() != 10) throw Error(ErrorCode::InvalidInput, "summary line needs 10 fields: " + line);
    SummaryRow r;
    r.method = f[0];
    r.example = static_cast<int>(csv::parse_count(f[1]));
    r.p = csv::parse_count(f[2]);
    r.v = csv::parse_double(f[3]);
    r.alpha = csv::parse_double(f[4]);
    r.beta = csv::parse_double(f[5]);
    r.iterations = csv::parse_count(f[6]);
    r.res = csv::parse_double(f[7]);
    r.converged = csv::parse_bool(f[8]);
    r.time_ms = csv::parse_double(f[9]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_table(std::ostream& out, std::span<const TableRow> rows) {
  out << "table,method,example,p,v,alpha,beta,expected,iterations,tolerance,res,converged,pass,time_ms\n";
  for (const auto& t : rows) {
    const SummaryRow& r = t.row;
    out << t.table << ',' << r.method << ',' << r.example << ',' << r.p << ',' << csv::format_exact(r.v) << ','
        << csv::format_exact(r.alpha) << ',' << csv::format_exact(r.beta) << ','
        << (t.expected ? std::to_string(*t.expected) : std::string("--")) << ',' << r.iterations << ','
        << t.tolerance << ',' << csv::format_residual(r.res) << ',' << (r.converged ? "true" : "false") << ','
        << (t.pass ? "pass" : "fail") << ',' << csv::format_fixed(r.time_ms, 3) << '\n';
  }
}

}  // namespace mgssp
