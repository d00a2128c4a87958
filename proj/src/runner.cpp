#include "pqlab/runner.hpp"

#include "pqlab/io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <random>
#include <thread>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace pqlab {

namespace {

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory: " + dir + " (" + ec.message() + ")");
}

std::string out_path(const RunConfig& cfg, const char* name) {
    return (fs::path(cfg.output_dir) / name).string();
}

/// Runs fn(0..count-1) on a bounded pool.  Results must be written into
/// index-addressed slots; the merge order is then canonical regardless of
/// scheduling, keeping outputs byte-identical across runs.
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
    const unsigned hw = std::thread::hardware_concurrency();
    const int workers = std::max(1, std::min({count, static_cast<int>(hw ? hw : 1), 8}));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i; (i = next.fetch_add(1)) < count;) fn(i);
            } catch (...) {
                errors[static_cast<size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string census_string(const std::vector<SolutionRecord>& records) {
    int counts[6] = {0, 0, 0, 0, 0, 0};
    for (const auto& rec : records) ++counts[static_cast<int>(rec.sign)];
    std::string out;
    for (int s = 0; s < 6; ++s) {
        if (!counts[s]) continue;
        if (!out.empty()) out += ';';
        out += to_string(static_cast<SignClass>(s));
        out += ':';
        out += std::to_string(counts[s]);
    }
    return out;
}

json census_json(const std::vector<SolutionRecord>& records) {
    int counts[6] = {0, 0, 0, 0, 0, 0};
    for (const auto& rec : records) ++counts[static_cast<int>(rec.sign)];
    json j = json::object();
    for (int s = 0; s < 6; ++s)
        if (counts[s]) j[to_string(static_cast<SignClass>(s))] = counts[s];
    return j;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

CurveOptions curve_options(const RunConfig& cfg) {
    CurveOptions opts;
    opts.tol = cfg.tol("curve_tol");
    opts.seed = cfg.seed;
    return opts;
}

ScanOptions scan_options(const RunConfig& cfg, ScanOptions base = {}) {
    base.endpoint_tol = cfg.tol("endpoint_tol");
    base.residual_tol = cfg.tol("residual_tol");
    return base;
}

}  // namespace

void run_eigen(const RunConfig& cfg, int kmax) {
    cfg.validate();
    if (kmax < 1) throw DomainError("run_eigen: kmax >= 1 required");
    ensure_dir(cfg.output_dir);
    const Grid1D grid(cfg.grid_n);
    EigenOptions eopts;
    eopts.tol = cfg.tol("eigen_tol");
    std::vector<double> rs = {cfg.q, cfg.p};
    std::vector<std::vector<std::string>> rows;
    for (double r : rs) {
        for (int k = 1; k <= kmax; ++k) {
            double lambda_disc;
            if (k == 1) {
                lambda_disc = first_eigenpair(r, grid, eopts).lambda;
            } else {
                const EigenPair mode = analytic_eigenfunction(r, k, grid);
                lambda_disc = seminorm_pow(mode.phi, r) / norm_pow(mode.phi, r);
            }
            const double lambda_ana = analytic_lambda_k(r, k);
            const double rel = std::fabs(lambda_disc - lambda_ana) / std::fabs(lambda_ana);
            rows.push_back({format_double(r), std::to_string(k), format_double(lambda_disc),
                            format_double(lambda_ana), format_double(rel)});
        }
    }
    write_csv(out_path(cfg, "eigen.csv"), {"r", "k", "lambda_discrete", "lambda_analytic", "rel_error"},
              rows, config_hash(cfg));
}

void run_curves(const RunConfig& cfg, bool certificates) {
    cfg.validate();
    ensure_dir(cfg.output_dir);
    const Grid1D grid(cfg.grid_n);
    const GridFunction f = make_source(cfg.f_spec, grid);
    const CurveOptions copts = curve_options(cfg);
    EigenOptions eopts;
    eopts.tol = cfg.tol("eigen_tol");
    const EigenPair pp = first_eigenpair(cfg.p, grid, eopts);
    const EigenPair pq = first_eigenpair(cfg.q, grid, eopts);

    const std::vector<double> alphas = cfg.alpha_range.points();
    const std::vector<CurvePoint> lower = beta_f_curve(alphas, cfg.p, cfg.q, grid, f, copts);
    std::vector<double> upper_alphas;
    for (double a : alphas)
        if (a >= pp.lambda) upper_alphas.push_back(a);
    const std::vector<CurvePoint> upper =
        beta_sup_f_curve(upper_alphas, cfg.p, cfg.q, grid, f, copts);

    std::vector<std::vector<std::string>> rows;
    json certs = json::array();
    size_t iu = 0;
    for (size_t ia = 0; ia < alphas.size(); ++ia) {
        const double alpha = alphas[ia];
        const CurvePoint& bf = lower[ia];
        const CurvePoint* bsup = nullptr;
        if (iu < upper_alphas.size() && alpha == upper_alphas[iu]) bsup = &upper[iu++];

        std::vector<GridFunction> candidates = {pp.phi, pq.phi, bf.certificate};
        if (bsup) candidates.push_back(bsup->certificate);
        const PsBounds ps = beta_ps_bounds(alpha, cfg.p, cfg.q, grid, candidates);

        std::string labels = to_string(bf.kind);
        labels += ';';
        if (bsup) labels += to_string(bsup->kind);
        labels += ';';
        labels += to_string(ps.lower.kind);
        rows.push_back({format_double(alpha), format_double(bf.value),
                        bsup ? format_double(bsup->value) : "", format_double(ps.lower.value),
                        labels});

        if (certificates) {
            json c;
            c["alpha"] = alpha;
            c["beta_f"] = {{"value", bf.value},
                           {"kind", to_string(bf.kind)},
                           {"certificate", bf.certificate.values}};
            if (bsup)
                c["beta_sup_f"] = {{"value", bsup->value},
                                   {"kind", to_string(bsup->kind)},
                                   {"certificate", bsup->certificate.values}};
            else
                c["beta_sup_f"] = nullptr;
            c["beta_ps_lower"] = {{"value", ps.lower.value},
                                  {"kind", to_string(ps.lower.kind)},
                                  {"certificate", ps.lower.certificate.values}};
            c["beta_ps_upper"] = {{"value", ps.upper.value}, {"kind", to_string(ps.upper.kind)}};
            certs.push_back(c);
        }
    }
    write_csv(out_path(cfg, "curves.csv"),
              {"alpha", "beta_f_ub", "beta_supf_lb", "beta_ps_lb", "labels"}, rows,
              config_hash(cfg));
    if (certificates) {
        json doc;
        doc["config_hash"] = hash_hex(config_hash(cfg));
        doc["samples"] = std::move(certs);
        write_json_file(out_path(cfg, "curves_certificates.json"), doc);
    }
}

std::vector<SolutionRecord> run_solve(const RunConfig& cfg, const SolveJob& job) {
    cfg.validate();
    ensure_dir(cfg.output_dir);
    const Grid1D grid(cfg.grid_n);
    const GridFunction f = make_source(cfg.f_spec, grid);
    const Params prm{cfg.p, cfg.q, job.alpha, job.beta};
    const std::vector<SolutionRecord> records =
        find_solutions(prm, f, scan_options(cfg, job.scan));

    json list = json::array();
    for (const auto& rec : records) {
        json r;
        r["slope0"] = rec.slope0;
        r["residual"] = rec.residual;
        r["sign"] = to_string(rec.sign);
        r["energy"] = {
            {"E", rec.energy.E}, {"H", rec.energy.H}, {"G", rec.energy.G}, {"F", rec.energy.F}};
        r["u"] = rec.u.values;
        list.push_back(std::move(r));
    }
    json doc;
    doc["alpha"] = job.alpha;
    doc["beta"] = job.beta;
    doc["config_hash"] = hash_hex(config_hash(cfg));
    doc["solutions"] = std::move(list);
    write_json_file(out_path(cfg, "solutions.json"), doc);

    std::vector<std::string> header = {"x"};
    for (size_t s = 1; s <= records.size(); ++s) header.push_back("u" + std::to_string(s));
    std::vector<std::vector<std::string>> rows;
    const double h = grid.h();
    for (int i = 0; i <= grid.n() + 1; ++i) {
        std::vector<std::string> row = {format_double(i * h)};
        for (const auto& rec : records) {
            const bool interior = i >= 1 && i <= grid.n();
            row.push_back(format_double(interior ? rec.u[i - 1] : 0.0));
        }
        rows.push_back(std::move(row));
    }
    write_csv(out_path(cfg, "solve_trajectories.csv"), header, rows, config_hash(cfg));
    return records;
}

std::vector<TheoremCheck> run_verify(const RunConfig& cfg) {
    cfg.validate();
    ensure_dir(cfg.output_dir);
    const Grid1D grid(cfg.grid_n);
    const GridFunction f = make_source(cfg.f_spec, grid);
    if (*std::min_element(f.values.begin(), f.values.end()) < 0.0)
        throw DomainError("run_verify: the sign theorems assume f >= 0");

    const std::vector<double> alphas = cfg.alpha_range.points();
    const std::vector<double> betas = cfg.beta_range.points();
    const CurvesContext ctx = build_context(cfg.p, cfg.q, grid, f, alphas, curve_options(cfg));

    VerifyOptions vopts;
    vopts.scan = scan_options(cfg);
    std::vector<std::pair<double, double>> samples;
    for (double a : alphas)
        for (double b : betas) samples.emplace_back(a, b);

    std::vector<std::vector<TheoremCheck>> slots(samples.size());
    parallel_for(static_cast<int>(samples.size()), [&](int i) {
        slots[static_cast<size_t>(i)] = verify_sign_theorems(
            {samples[static_cast<size_t>(i)]}, f, ctx, vopts);
    });

    std::vector<TheoremCheck> checks;
    for (auto& part : slots)
        for (auto& c : part) checks.push_back(std::move(c));

    std::vector<std::vector<std::string>> rows;
    for (const auto& c : checks)
        rows.push_back({format_double(c.alpha), format_double(c.beta), c.theorem,
                        std::to_string(c.solutions), c.passed ? "true" : "false", c.detail});
    write_csv(out_path(cfg, "verify.csv"),
              {"alpha", "beta", "theorem", "solutions", "passed", "detail"}, rows,
              config_hash(cfg));
    return checks;
}

PhaseDiagram run_phase(const RunConfig& cfg) {
    cfg.validate();
    ensure_dir(cfg.output_dir);
    const Grid1D grid(cfg.grid_n);
    const GridFunction f = make_source(cfg.f_spec, grid);
    const std::vector<double> alphas = cfg.alpha_range.points();
    const std::vector<double> betas = cfg.beta_range.points();
    const CurvesContext ctx = build_context(cfg.p, cfg.q, grid, f, alphas, curve_options(cfg));
    const ScanOptions scan = scan_options(cfg);

    std::vector<std::pair<double, double>> points;
    for (double a : alphas)
        for (double b : betas) points.emplace_back(a, b);

    PhaseDiagram diagram;
    diagram.rows.resize(points.size());
    std::vector<json> censuses(points.size());
    parallel_for(static_cast<int>(points.size()), [&](int i) {
        const auto [alpha, beta] = points[static_cast<size_t>(i)];
        const Params prm{ctx.p, ctx.q, alpha, beta};
        const std::vector<SolutionRecord> records = find_solutions(prm, f, scan);
        PhaseRow& row = diagram.rows[static_cast<size_t>(i)];
        row.alpha = alpha;
        row.beta = beta;
        row.label = classify_region(alpha, beta, ctx);
        row.solution_count = static_cast<int>(records.size());
        row.sign_census = census_string(records);
        censuses[static_cast<size_t>(i)] = census_json(records);
    });

    std::vector<std::vector<std::string>> rows;
    json jrows = json::array();
    for (size_t i = 0; i < diagram.rows.size(); ++i) {
        const PhaseRow& row = diagram.rows[i];
        rows.push_back({format_double(row.alpha), format_double(row.beta), to_string(row.label),
                        std::to_string(row.solution_count), row.sign_census});
        json jr;
        jr["alpha"] = row.alpha;
        jr["beta"] = row.beta;
        jr["label"] = to_string(row.label);
        jr["solution_count"] = row.solution_count;
        jr["sign_census"] = censuses[i];
        jrows.push_back(std::move(jr));
    }
    write_csv(out_path(cfg, "phase.csv"),
              {"alpha", "beta", "region", "solution_count", "sign_census"}, rows,
              config_hash(cfg));
    json doc;
    doc["config_hash"] = hash_hex(config_hash(cfg));
    doc["rows"] = std::move(jrows);
    write_json_file(out_path(cfg, "phase.json"), doc);
    return diagram;
}

PiconeSummary run_picone(const RunConfig& cfg, int pairs) {
    cfg.validate();
    if (pairs < 1) throw DomainError("run_picone: pairs >= 1 required");
    ensure_dir(cfg.output_dir);
    const Grid1D grid(cfg.grid_n);
    EigenOptions eopts;
    eopts.tol = cfg.tol("eigen_tol");
    const EigenPair pp = first_eigenpair(cfg.p, grid, eopts);
    const EigenPair pq = first_eigenpair(cfg.q, grid, eopts);

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    PiconeSummary summary;
    summary.min_classical = std::numeric_limits<double>::infinity();
    summary.min_generalized = std::numeric_limits<double>::infinity();
    std::vector<std::vector<std::string>> rows;
    const auto emit = [&](int idx, const char* kind, const GridFunction& u,
                          const GridFunction& v) {
        const double classical = picone_classical_gap(u, v, cfg.p);
        const double generalized = picone_generalized_gap(u, v, cfg.p, cfg.q);
        summary.min_classical = std::min(summary.min_classical, classical);
        summary.min_generalized = std::min(summary.min_generalized, generalized);
        rows.push_back({std::to_string(idx), kind, format_double(classical),
                        format_double(generalized)});
        ++summary.pairs;
    };
    for (int j = 0; j < pairs; ++j) {
        GridFunction u(grid), v(grid);
        for (int i = 0; i < grid.n(); ++i) u[i] = unif(rng);
        for (int i = 0; i < grid.n(); ++i) v[i] = unif(rng);
        emit(j, "random", u, v);
    }
    emit(pairs, "eigen", pp.phi, pq.phi);
    emit(pairs + 1, "eigen", pq.phi, pp.phi);
    summary.ok = summary.min_classical >= -1e-6 && summary.min_generalized >= -1e-6;
    write_csv(out_path(cfg, "picone.csv"), {"pair", "kind", "classical_gap", "generalized_gap"},
              rows, config_hash(cfg));
    return summary;
}

QscanSummary run_qscan(const RunConfig& cfg, const QscanJob& job) {
    cfg.validate();
    if (!(job.h_range.lo > 0.0) || !(job.f_range.lo > 0.0))
        throw DomainError("run_qscan: H and F ranges must be positive");
    ensure_dir(cfg.output_dir);
    QscanSummary summary;
    std::vector<std::vector<std::string>> rows;
    for (double H : job.h_range.points()) {
        for (double F : job.f_range.points()) {
            const Tangency tg = tangency(H, F, cfg.p, cfg.q);
            const double scale = H * std::pow(tg.t_star, cfg.p) +
                                 std::fabs(tg.g_tilde) * std::pow(tg.t_star, cfg.q) +
                                 F * tg.t_star;
            const double rq =
                std::fabs(q_eval(tg.t_star, H, tg.g_tilde, F, cfg.p, cfg.q)) / scale;
            const double rqp =
                std::fabs(q_prime(tg.t_star, H, tg.g_tilde, F, cfg.p, cfg.q)) / scale;
            summary.max_residual = std::max({summary.max_residual, rq, rqp});
            rows.push_back({format_double(cfg.p), format_double(cfg.q), format_double(H),
                            format_double(F), format_double(tg.t_star), format_double(tg.g_tilde),
                            format_double(rq), format_double(rqp)});
        }
    }
    summary.ok = summary.max_residual <= 1e-9;
    write_csv(out_path(cfg, "qscan.csv"),
              {"p", "q", "H", "F", "t_star", "g_tilde", "residual_q", "residual_qp"}, rows,
              config_hash(cfg));
    return summary;
}

}  // namespace pqlab
