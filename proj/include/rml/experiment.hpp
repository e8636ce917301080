#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rml/json_io.hpp"

namespace rml {

inline constexpr const char* kVersion = "0.1.0";

struct ExperimentConfig {
    std::string command;
    uint32_t p = 2;
    uint32_t e = 1;
    uint32_t m = 0;
    uint32_t n = 0;
    uint32_t k = 0;
    uint32_t ell = 1;
    uint64_t trials = 0;
    uint64_t seed = 0;
    std::string mode = "exhaustive";  // exhaustive | sampled
    uint64_t samples = 200;           // sampled-mode tuple count
    std::string in;                   // input code file, where applicable
    std::string out;                  // report path; empty = stdout
    std::string format = "json";      // json | csv

    void validate() const;  // throws InvalidArgError
    json to_json() const;
};

struct TrialResult {
    uint64_t trial = 0;
    bool pass = true;
    json detail;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<TrialResult> trials;
    uint64_t pass_count = 0;
    // Deterministic theorem violations found during the run; nonzero means
    // process exit code 1.
    uint64_t violations = 0;
    json extra;  // command-specific fields (floor, verification blocks, ...)
    double wall_clock_ms = 0.0;

    json to_json() const;
    std::string to_csv() const;
};

// Success-probability floor for the random-evaluation-point construction:
// 1 - 3k q^{nk min(ell,k) + k - m}, reported with its factor and exponent.
json attainment_floor(uint32_t q, uint32_t n, uint32_t k, uint32_t ell, uint32_t m);

ExperimentReport cmd_gkp_mc(const ExperimentConfig& cfg);
ExperimentReport cmd_equivalence(const ExperimentConfig& cfg);
ExperimentReport cmd_ld_mrd(const ExperimentConfig& cfg);
ExperimentReport cmd_ms_scan(const ExperimentConfig& cfg);
ExperimentReport cmd_dual(const ExperimentConfig& cfg);
ExperimentReport cmd_intersection(const ExperimentConfig& cfg);
// File-level utilities over the code wire format.
ExperimentReport cmd_encode(const ExperimentConfig& cfg, const std::string& message_path);
ExperimentReport cmd_min_distance(const ExperimentConfig& cfg);

// Parses argv, runs the subcommand, writes the report. Exit codes: 0 clean,
// 1 theorem-violation witness found, 2 usage/validation error, 3 guard
// exceeded. Honors the RML_GUARD_OVERRIDE environment variable.
int cli_main(int argc, char** argv);

}  // namespace rml
