#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "rml/errors.hpp"
#include "rml/experiment.hpp"

namespace rml {

namespace {

void add_common_options(CLI::App* cmd, ExperimentConfig& cfg) {
    cmd->add_option("--p", cfg.p, "characteristic of the base field");
    cmd->add_option("--e", cfg.e, "degree of F_q over F_p");
    cmd->add_option("--m", cfg.m, "extension degree of the ambient field");
    cmd->add_option("--n", cfg.n, "code length");
    cmd->add_option("--k", cfg.k, "code dimension");
    cmd->add_option("--ell", cfg.ell, "order / list size parameter");
    cmd->add_option("--trials", cfg.trials, "number of seeded trials");
    cmd->add_option("--seed", cfg.seed, "64-bit experiment seed");
    cmd->add_option("--mode", cfg.mode, "exhaustive|sampled");
    cmd->add_option("--samples", cfg.samples, "tuple samples in sampled mode");
    cmd->add_option("--out", cfg.out, "report output file (default stdout)");
    cmd->add_option("--format", cfg.format, "json|csv");
}

void write_report(const ExperimentReport& report, const ExperimentConfig& cfg) {
    std::string payload = cfg.format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(cfg.out);
        if (!out) throw InvalidArgError("cannot open output file " + cfg.out);
        out << payload;
    }
}

}  // namespace

int cli_main(int argc, char** argv) {
    if (const char* env = std::getenv("RML_GUARD_OVERRIDE")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) set_guard_limit(v);
    }

    CLI::App app{"rank-metric code verification experiments"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    auto* gkp_mc = app.add_subcommand(
        "gkp-mc", "Monte-Carlo kernel-pattern attainment over random evaluation points");
    add_common_options(gkp_mc, cfg);
    auto* equivalence = app.add_subcommand(
        "equivalence", "cross-check pattern attainment, intersection dims and dual list decoding");
    add_common_options(equivalence, cfg);
    auto* ld_mrd = app.add_subcommand(
        "ld-mrd", "average-radius list decodability through the dual intersection property");
    add_common_options(ld_mrd, cfg);
    auto* ms_scan = app.add_subcommand(
        "ms-scan", "exhaustive determinant-criterion scan (--ell bounds the part count)");
    add_common_options(ms_scan, cfg);
    auto* dual = app.add_subcommand("dual", "dual evaluation points and duality verification");
    add_common_options(dual, cfg);
    dual->add_option("--in", cfg.in, "input code JSON file");
    auto* intersection = app.add_subcommand(
        "intersection", "actual vs generic intersection dimensions on a certified code");
    add_common_options(intersection, cfg);
    std::string message_path;
    auto* encode_cmd = app.add_subcommand("encode", "encode a message file against a code file");
    add_common_options(encode_cmd, cfg);
    encode_cmd->add_option("--in", cfg.in, "input code JSON file");
    encode_cmd->add_option("--message", message_path, "message JSON file (array of elements)")
        ->required();
    auto* min_distance = app.add_subcommand("min-distance",
                                            "exhaustive minimum rank distance of a code file");
    add_common_options(min_distance, cfg);
    min_distance->add_option("--in", cfg.in, "input code JSON file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? 0 : 2;
    }

    try {
        ExperimentReport report;
        if (gkp_mc->parsed()) {
            cfg.command = "gkp-mc";
            cfg.validate();
            report = cmd_gkp_mc(cfg);
        } else if (equivalence->parsed()) {
            cfg.command = "equivalence";
            cfg.validate();
            report = cmd_equivalence(cfg);
        } else if (ld_mrd->parsed()) {
            cfg.command = "ld-mrd";
            cfg.validate();
            report = cmd_ld_mrd(cfg);
        } else if (ms_scan->parsed()) {
            cfg.command = "ms-scan";
            cfg.validate();
            report = cmd_ms_scan(cfg);
        } else if (dual->parsed()) {
            cfg.command = "dual";
            if (cfg.in.empty()) cfg.validate();
            report = cmd_dual(cfg);
        } else if (intersection->parsed()) {
            cfg.command = "intersection";
            cfg.validate();
            report = cmd_intersection(cfg);
        } else if (encode_cmd->parsed()) {
            cfg.command = "encode";
            if (cfg.in.empty()) cfg.validate();
            report = cmd_encode(cfg, message_path);
        } else if (min_distance->parsed()) {
            cfg.command = "min-distance";
            if (cfg.in.empty()) cfg.validate();
            report = cmd_min_distance(cfg);
        }
        write_report(report, cfg);
        return report.violations > 0 ? 1 : 0;
    } catch (const GuardError& err) {
        std::cerr << "guard exceeded: " << err.what() << "\n";
        return 3;
    } catch (const InvalidArgError& err) {
        std::cerr << "invalid arguments: " << err.what() << "\n";
        return 2;
    } catch (const InternalError& err) {
        std::cerr << "internal defect: " << err.what() << "\n";
        return 1;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
}

}  // namespace rml
