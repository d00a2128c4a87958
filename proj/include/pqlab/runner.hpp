#pragma once

#include "pqlab/config.hpp"
#include "pqlab/curves.hpp"
#include "pqlab/solve.hpp"
#include "pqlab/verify.hpp"

#include <string>
#include <vector>

namespace pqlab {

/// One sweep point of the phase diagram.  sign_census is a "Sign:count"
/// listing in declaration order of SignClass, e.g. "Zero:1;Positive:2";
/// empty when the scan found nothing.
struct PhaseRow {
    double alpha = 0.0;
    double beta = 0.0;
    Region label = Region::ExistsUnclassified;
    int solution_count = 0;
    std::string sign_census;
};

struct PhaseDiagram {
    std::vector<PhaseRow> rows;
};

struct SolveJob {
    double alpha = 0.0;
    double beta = 0.0;
    ScanOptions scan;   ///< endpoint/residual tolerances are overwritten from config
};

struct QscanJob {
    SampleRange h_range{0.5, 4.0, 8};
    SampleRange f_range{0.5, 4.0, 8};
};

struct PiconeSummary {
    int pairs = 0;
    double min_classical = 0.0;
    double min_generalized = 0.0;
    bool ok = true;     ///< every gap >= -1e-6
};

struct QscanSummary {
    double max_residual = 0.0;
    bool ok = true;     ///< max relative double-root residual <= 1e-9
};

/// First eigenvalues for r in {q, p} and mode indices 1..kmax, against the
/// closed-form values: k = 1 rows come from the iterative solver, k >= 2
/// rows evaluate the discrete Rayleigh quotient of the sampled analytic
/// mode.  Writes eigen.csv.
void run_eigen(const RunConfig& cfg, int kmax = 4);

/// Critical-curve samples over the config alpha range: beta_f upper bounds,
/// beta^f lower bounds (alpha >= lambda_1(p) only), and the certificate-based
/// positive-supersolution lower bound.  Writes curves.csv, plus
/// curves_certificates.json when requested.
void run_curves(const RunConfig& cfg, bool certificates = false);

/// Full slope scan at one (alpha, beta); writes solutions.json and
/// solve_trajectories.csv (x column plus one column per solution, boundary
/// rows included).
std::vector<SolutionRecord> run_solve(const RunConfig& cfg, const SolveJob& job);

/// Sign-theorem harness over the config alpha x beta grid; writes verify.csv.
/// Requires f >= 0 (the theorems assume it).
std::vector<TheoremCheck> run_verify(const RunConfig& cfg);

/// Region label + solution census at every (alpha, beta) sample; writes
/// phase.csv and phase.json.
PhaseDiagram run_phase(const RunConfig& cfg);

/// Discrete Picone gaps over seeded random positive pairs plus the
/// (phi_p, phi_q) eigenfunction pair in both argument orders; writes
/// picone.csv.
PiconeSummary run_picone(const RunConfig& cfg, int pairs = 100);

/// Fiber-polynomial tangency table over an (H, F) grid; writes qscan.csv
/// with closed-form outputs and numeric double-root residuals.
QscanSummary run_qscan(const RunConfig& cfg, const QscanJob& job);

}  // namespace pqlab
