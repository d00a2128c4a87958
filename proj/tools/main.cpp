#include "pqlab/config.hpp"
#include "pqlab/io.hpp"
#include "pqlab/runner.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON config file");
    cmd->add_option("--set", args.sets, "override a config entry, key=value (repeatable)");
}

pqlab::RunConfig resolve_config(const CommonArgs& args) {
    pqlab::RunConfig cfg;
    if (!args.config_path.empty()) cfg = pqlab::load_config(args.config_path);
    for (const auto& s : args.sets) pqlab::apply_override(cfg, s);
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for the two-exponent Dirichlet problem on (0,1)"};
    app.require_subcommand(1);
    std::function<int()> action;

    CommonArgs eigen_args;
    int kmax = 4;
    CLI::App* eigen_cmd = app.add_subcommand("eigen", "first eigenvalues against closed forms");
    add_common(eigen_cmd, eigen_args);
    eigen_cmd->add_option("--kmax", kmax, "highest mode index")->check(CLI::PositiveNumber);
    eigen_cmd->callback([&] {
        action = [&]() -> int {
            const pqlab::RunConfig cfg = resolve_config(eigen_args);
            pqlab::run_eigen(cfg, kmax);
            std::printf("wrote %s/eigen.csv\n", cfg.output_dir.c_str());
            return 0;
        };
    });

    CommonArgs curves_args;
    bool certificates = false;
    CLI::App* curves_cmd = app.add_subcommand("curves", "critical-curve bounds over the alpha range");
    add_common(curves_cmd, curves_args);
    curves_cmd->add_flag("--certificates", certificates, "also emit certificate functions as JSON");
    curves_cmd->callback([&] {
        action = [&]() -> int {
            const pqlab::RunConfig cfg = resolve_config(curves_args);
            pqlab::run_curves(cfg, certificates);
            std::printf("wrote %s/curves.csv%s\n", cfg.output_dir.c_str(),
                        certificates ? " and curves_certificates.json" : "");
            return 0;
        };
    });

    CommonArgs solve_args;
    pqlab::SolveJob solve_job;
    CLI::App* solve_cmd = app.add_subcommand("solve", "slope scan at one (alpha, beta)");
    add_common(solve_cmd, solve_args);
    solve_cmd->add_option("--alpha", solve_job.alpha, "alpha coefficient")->required();
    solve_cmd->add_option("--beta", solve_job.beta, "beta coefficient")->required();
    solve_cmd->add_option("--slope-min", solve_job.scan.slope_min, "lowest initial slope");
    solve_cmd->add_option("--slope-max", solve_job.scan.slope_max, "highest initial slope");
    solve_cmd->add_option("--scan-count", solve_job.scan.scan_count, "slope samples")
        ->check(CLI::PositiveNumber);
    solve_cmd->callback([&] {
        action = [&]() -> int {
            const pqlab::RunConfig cfg = resolve_config(solve_args);
            const auto records = pqlab::run_solve(cfg, solve_job);
            std::printf("%zu solution(s); wrote %s/solutions.json and solve_trajectories.csv\n",
                        records.size(), cfg.output_dir.c_str());
            return 0;
        };
    });

    CommonArgs verify_args;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "sign-theorem checks over the alpha x beta grid");
    add_common(verify_cmd, verify_args);
    verify_cmd->callback([&] {
        action = [&]() -> int {
            const pqlab::RunConfig cfg = resolve_config(verify_args);
            const auto checks = pqlab::run_verify(cfg);
            int failed = 0;
            for (const auto& c : checks) failed += c.passed ? 0 : 1;
            std::printf("%zu check(s), %d failure(s); wrote %s/verify.csv\n", checks.size(),
                        failed, cfg.output_dir.c_str());
            return failed ? 3 : 0;
        };
    });

    CommonArgs phase_args;
    CLI::App* phase_cmd =
        app.add_subcommand("phase", "region labels and solution census over the grid");
    add_common(phase_cmd, phase_args);
    phase_cmd->callback([&] {
        action = [&]() -> int {
            const pqlab::RunConfig cfg = resolve_config(phase_args);
            const pqlab::PhaseDiagram diagram = pqlab::run_phase(cfg);
            std::printf("%zu row(s); wrote %s/phase.csv and phase.json\n", diagram.rows.size(),
                        cfg.output_dir.c_str());
            return 0;
        };
    });

    CommonArgs picone_args;
    int pairs = 100;
    CLI::App* picone_cmd = app.add_subcommand("picone", "discrete Picone gaps on random pairs");
    add_common(picone_cmd, picone_args);
    picone_cmd->add_option("--pairs", pairs, "random pair count")->check(CLI::PositiveNumber);
    picone_cmd->callback([&] {
        action = [&]() -> int {
            const pqlab::RunConfig cfg = resolve_config(picone_args);
            const pqlab::PiconeSummary s = pqlab::run_picone(cfg, pairs);
            std::printf("%d pair(s); min classical gap %.3e, min generalized gap %.3e; wrote "
                        "%s/picone.csv\n",
                        s.pairs, s.min_classical, s.min_generalized, cfg.output_dir.c_str());
            if (!s.ok) std::fprintf(stderr, "picone: a gap fell below -1e-6\n");
            return s.ok ? 0 : 3;
        };
    });

    CommonArgs qscan_args;
    pqlab::QscanJob qscan_job;
    CLI::App* qscan_cmd = app.add_subcommand("qscan", "fiber-polynomial tangency table");
    add_common(qscan_cmd, qscan_args);
    qscan_cmd->add_option("--h-lo", qscan_job.h_range.lo, "lowest H");
    qscan_cmd->add_option("--h-hi", qscan_job.h_range.hi, "highest H");
    qscan_cmd->add_option("--h-count", qscan_job.h_range.count, "H samples")
        ->check(CLI::PositiveNumber);
    qscan_cmd->add_option("--f-lo", qscan_job.f_range.lo, "lowest F");
    qscan_cmd->add_option("--f-hi", qscan_job.f_range.hi, "highest F");
    qscan_cmd->add_option("--f-count", qscan_job.f_range.count, "F samples")
        ->check(CLI::PositiveNumber);
    qscan_cmd->callback([&] {
        action = [&]() -> int {
            const pqlab::RunConfig cfg = resolve_config(qscan_args);
            const pqlab::QscanSummary s = pqlab::run_qscan(cfg, qscan_job);
            std::printf("max double-root residual %.3e; wrote %s/qscan.csv\n", s.max_residual,
                        cfg.output_dir.c_str());
            if (!s.ok) std::fprintf(stderr, "qscan: residual exceeded 1e-9\n");
            return s.ok ? 0 : 3;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    }

    try {
        return action();
    } catch (const pqlab::SolverError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const pqlab::IoError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    } catch (const pqlab::DomainError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
