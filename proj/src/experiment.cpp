#include "rml/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include "rml/errors.hpp"

namespace rml {

void ExperimentConfig::validate() const {
    if (!is_prime_u32(p)) throw InvalidArgError("config: p must be prime");
    if (e == 0) throw InvalidArgError("config: e must be positive");
    if (m == 0) throw InvalidArgError("config: m must be positive");
    if (in.empty()) {
        if (n == 0 || k == 0) throw InvalidArgError("config: n and k must be positive");
        if (k > n) throw InvalidArgError("config: need k <= n");
        if (n > m) throw InvalidArgError("config: need n <= m");
    }
    if (mode != "exhaustive" && mode != "sampled")
        throw InvalidArgError("config: mode must be exhaustive or sampled");
    if (format != "json" && format != "csv")
        throw InvalidArgError("config: format must be json or csv");
}

json ExperimentConfig::to_json() const {
    json out{{"command", command}, {"p", p},         {"e", e},
             {"m", m},             {"n", n},         {"k", k},
             {"ell", ell},         {"trials", trials}, {"seed", seed},
             {"mode", mode}};
    if (mode == "sampled") out["samples"] = samples;
    if (!in.empty()) out["in"] = in;
    return out;
}

json ExperimentReport::to_json() const {
    json trial_list = json::array();
    for (const auto& t : trials) {
        json entry{{"trial", t.trial}, {"pass", t.pass}};
        if (!t.detail.is_null()) entry["detail"] = t.detail;
        trial_list.push_back(entry);
    }
    json out{{"version", kVersion},
             {"config", config.to_json()},
             {"trials", trial_list},
             {"pass_count", pass_count},
             {"violations", violations},
             {"wall_clock_ms", wall_clock_ms}};
    for (auto it = extra.begin(); it != extra.end(); ++it) out[it.key()] = it.value();
    return out;
}

std::string ExperimentReport::to_csv() const {
    std::ostringstream os;
    os << "trial,pass\n";
    for (const auto& t : trials) os << t.trial << "," << (t.pass ? 1 : 0) << "\n";
    return os.str();
}

json attainment_floor(uint32_t q, uint32_t n, uint32_t k, uint32_t ell, uint32_t m) {
    const uint64_t factor = 3ull * k;
    const int64_t exponent =
        int64_t{n} * k * std::min(ell, k) + int64_t{k} - int64_t{m};
    const double value = 1.0 - double(factor) * std::pow(double(q), double(exponent));
    return json{{"factor", factor}, {"exponent", exponent}, {"value", value},
                {"formula", "1 - 3k q^(nk min(ell,k) + k - m)"}};
}

namespace {

// Worker pool over trial indices; trial t derives its own RNG stream from
// (seed, t), so results are independent of the thread count and are merged
// in index order.
void run_trials(uint64_t trials, const std::function<TrialResult(uint64_t)>& fn,
                std::vector<TrialResult>& out) {
    out.resize(trials);
    if (trials == 0) return;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = static_cast<unsigned>(std::min<uint64_t>(hw, trials));
    if (workers <= 1) {
        for (uint64_t t = 0; t < trials; ++t) out[t] = fn(t);
        return;
    }
    std::atomic<uint64_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (;;) {
                    const uint64_t t = next.fetch_add(1);
                    if (t >= trials) break;
                    out[t] = fn(t);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void finalize(ExperimentReport& report, const Stopwatch& sw) {
    report.pass_count = 0;
    for (const auto& t : report.trials)
        if (t.pass) ++report.pass_count;
    report.wall_clock_ms = sw.ms();
}

}  // namespace

ExperimentReport cmd_gkp_mc(const ExperimentConfig& cfg) {
    Stopwatch sw;
    ExperimentReport report;
    report.config = cfg;
    const TowerPtr tower = tower_create(cfg.p, cfg.e, cfg.m, cfg.seed);
    report.extra["floor"] = attainment_floor(tower->q(), cfg.n, cfg.k, cfg.ell, cfg.m);
    const uint64_t pattern_count =
        enumerate_gkp_patterns(tower->base_field(), cfg.n, cfg.k, cfg.ell).size();
    report.extra["patterns_per_trial"] = pattern_count;

    run_trials(cfg.trials, [&](uint64_t t) {
        Rng rng(Rng::derive(cfg.seed, t));
        GabidulinCode code = random_gabidulin(tower, cfg.n, cfg.k, rng);
        CheckerVerdict verdict = gkp_check(code.as_linear(), cfg.ell);
        TrialResult result{t, verdict.holds, {}};
        if (!verdict.holds) result.detail = verdict_to_json(verdict);
        return result;
    }, report.trials);

    finalize(report, sw);
    const double rate = cfg.trials ? double(report.pass_count) / double(cfg.trials) : 1.0;
    report.extra["pass_rate"] = rate;
    report.extra["meets_floor"] =
        cfg.trials == 0 || rate >= report.extra["floor"]["value"].get<double>();
    return report;
}

ExperimentReport cmd_equivalence(const ExperimentConfig& cfg) {
    Stopwatch sw;
    ExperimentReport report;
    report.config = cfg;
    const TowerPtr tower = tower_create(cfg.p, cfg.e, cfg.m, cfg.seed);

    run_trials(cfg.trials, [&](uint64_t t) {
        Rng rng(Rng::derive(cfg.seed, t));
        // Alternate code families so the harness sees pass and fail cases.
        LinearCode code = (t % 2 == 0) ? random_gabidulin(tower, cfg.n, cfg.k, rng).as_linear()
                                       : random_linear_code(tower, cfg.n, cfg.k, rng);
        EquivalenceReport eq = equivalence_harness(code, cfg.ell);
        TrialResult result{t, eq.agree, {}};
        result.detail = json{{"kind", t % 2 == 0 ? "gabidulin" : "random-linear"},
                             {"gkp", eq.gkp.holds},
                             {"mrd_ell", eq.mrd_ell.holds}};
        if (eq.ld_mrd_feasible) result.detail["ld_mrd_dual"] = eq.ld_mrd_dual.holds;
        if (!eq.agree) {
            result.detail["gkp_verdict"] = verdict_to_json(eq.gkp);
            result.detail["mrd_ell_verdict"] = verdict_to_json(eq.mrd_ell);
            if (eq.ld_mrd_feasible)
                result.detail["ld_mrd_dual_verdict"] = verdict_to_json(eq.ld_mrd_dual);
        }
        return result;
    }, report.trials);

    finalize(report, sw);
    report.violations = cfg.trials - report.pass_count;
    return report;
}

ExperimentReport cmd_ld_mrd(const ExperimentConfig& cfg) {
    Stopwatch sw;
    ExperimentReport report;
    report.config = cfg;
    const TowerPtr tower = tower_create(cfg.p, cfg.e, cfg.m, cfg.seed);
    // The property is checked through the dual code, so the floor carries
    // the dual's parameters.
    report.extra["floor"] = attainment_floor(tower->q(), cfg.n, cfg.n - cfg.k, cfg.ell + 1, cfg.m);

    // Brute-force cross-check only when the center scan fits the guards.
    uint64_t centers = 1;
    bool brute_feasible = true;
    const uint64_t field_size_bound = [&] {
        uint64_t s = 1;
        for (uint32_t i = 0; i < cfg.m; ++i) {
            if (s > guard_limit()) return guard_limit() + 1;
            s *= tower->q();
        }
        return s;
    }();
    for (uint32_t i = 0; i < cfg.n && brute_feasible; ++i) {
        if (centers > guard_limit() / field_size_bound) brute_feasible = false;
        else centers *= field_size_bound;
    }
    brute_feasible = brute_feasible && centers <= guard_limit();
    report.extra["brute_force_cross_check"] = brute_feasible;

    std::atomic<uint64_t> disagreements{0};
    run_trials(cfg.trials, [&](uint64_t t) {
        Rng rng(Rng::derive(cfg.seed, t));
        GabidulinCode code = random_gabidulin(tower, cfg.n, cfg.k, rng);
        MrdEllOptions opt;
        if (cfg.mode == "sampled") {
            opt.exhaustive = false;
            opt.samples = cfg.samples;
            opt.seed = Rng::derive(cfg.seed, t ^ 0xd1a1ULL);
        }
        CheckerVerdict via_dual = is_mrd_ell(dual_code_linear(code.as_linear()), cfg.ell + 1, opt);
        via_dual.property = "LD-MRD(<=" + std::to_string(cfg.ell) + ") via dual MRD(" +
                            std::to_string(cfg.ell + 1) + ")";
        TrialResult result{t, via_dual.holds, {}};
        result.detail = json{{"via_dual", via_dual.holds}};
        if (brute_feasible) {
            CheckerVerdict brute = is_ld_mrd(code.as_linear(), cfg.ell);
            result.detail["brute"] = brute.holds;
            if (brute.holds != via_dual.holds) {
                ++disagreements;
                result.detail["disagreement"] = json{{"brute", verdict_to_json(brute)},
                                                     {"via_dual", verdict_to_json(via_dual)}};
            }
        }
        if (!via_dual.holds) result.detail["verdict"] = verdict_to_json(via_dual);
        return result;
    }, report.trials);

    finalize(report, sw);
    report.violations = disagreements.load();
    const double rate = cfg.trials ? double(report.pass_count) / double(cfg.trials) : 1.0;
    report.extra["pass_rate"] = rate;
    return report;
}

ExperimentReport cmd_ms_scan(const ExperimentConfig& cfg) {
    Stopwatch sw;
    ExperimentReport report;
    report.config = cfg;
    const TowerPtr tower = tower_create(cfg.p, cfg.e, cfg.m, cfg.seed);
    const FqFieldPtr F = tower->base_field();
    const uint32_t max_parts = cfg.ell;  // --ell bounds the number of parts here

    // Tuple shapes are enumerated once; per trial a fresh embedding is drawn
    // and the determinant criterion evaluated on every shape.
    struct Shape {
        uint32_t k;
        std::vector<MsPart> parts;
    };
    std::vector<Shape> shapes;
    const std::vector<FqSubspace> all_subspaces = enumerate_subspaces_up_to(F, cfg.n, cfg.k);
    std::function<void(Shape&, uint32_t)> build = [&](Shape& shape, uint32_t left) {
        if (left == 0) {
            shapes.push_back(shape);
            return;
        }
        if (shape.parts.size() == max_parts) return;
        for (uint32_t r = 1; r <= left; ++r) {
            for (const auto& v : all_subspaces) {
                if (v.dim() + r > shape.k) continue;
                shape.parts.push_back(MsPart{v, r});
                build(shape, left - r);
                shape.parts.pop_back();
            }
        }
    };
    for (uint32_t k = 1; k <= cfg.k; ++k) {
        Shape shape{k, {}};
        build(shape, k);
    }
    check_guard(shapes.size(), "ms-scan shape enumeration");
    report.extra["shapes"] = shapes.size();

    std::atomic<uint64_t> hard_violations{0};
    std::atomic<uint64_t> misses{0};
    std::atomic<uint64_t> persistent_misses{0};
    run_trials(cfg.trials, [&](uint64_t t) {
        Rng rng(Rng::derive(cfg.seed, t));
        Embedding embed{tower, sample_independent_alphas(tower, cfg.n, rng)};
        uint64_t trial_hard = 0, trial_miss = 0, trial_persist = 0;
        json miss_list = json::array();
        for (size_t s = 0; s < shapes.size(); ++s) {
            MsTuple tuple(shapes[s].k, shapes[s].parts, embed);
            MsCheck check = ms_theorem_check(tuple);
            if (check.hard_violation()) ++trial_hard;
            if (check.probabilistic_miss()) {
                ++trial_miss;
                // One re-draw of the evaluation points for this shape.
                Rng redraw_rng(Rng::derive(cfg.seed, (t << 20) ^ s ^ 0x5eedULL));
                Embedding redraw{tower, sample_independent_alphas(tower, cfg.n, redraw_rng)};
                MsCheck again = ms_theorem_check(MsTuple(shapes[s].k, shapes[s].parts, redraw));
                if (again.probabilistic_miss()) ++trial_persist;
                miss_list.push_back(json{{"shape", s}, {"persisted", again.probabilistic_miss()}});
            }
        }
        hard_violations += trial_hard;
        misses += trial_miss;
        persistent_misses += trial_persist;
        TrialResult result{t, trial_hard == 0, {}};
        result.detail = json{{"hard_violations", trial_hard},
                             {"misses", trial_miss},
                             {"miss_rate", shapes.empty() ? 0.0 : double(trial_miss) / shapes.size()}};
        if (!miss_list.empty()) result.detail["miss_shapes"] = miss_list;
        return result;
    }, report.trials);

    finalize(report, sw);
    report.violations = hard_violations.load();
    report.extra["hard_violations"] = hard_violations.load();
    report.extra["misses"] = misses.load();
    report.extra["persistent_misses"] = persistent_misses.load();
    return report;
}

ExperimentReport cmd_dual(const ExperimentConfig& cfg) {
    Stopwatch sw;
    ExperimentReport report;
    report.config = cfg;
    GabidulinCode code = [&] {
        if (!cfg.in.empty()) {
            std::ifstream in(cfg.in);
            if (!in) throw InvalidArgError("cmd_dual: cannot open " + cfg.in);
            json j;
            in >> j;
            return gabidulin_from_json(j);
        }
        const TowerPtr tower = tower_create(cfg.p, cfg.e, cfg.m, cfg.seed);
        Rng rng(Rng::derive(cfg.seed, 0));
        return random_gabidulin(tower, cfg.n, cfg.k, rng);
    }();
    if (code.k() >= code.n()) throw InvalidArgError("cmd_dual: need k < n");

    const std::vector<Elt> betas = dual_basis(code.alphas(), code.k());
    GabidulinCode dual = dual_code(code);
    const bool pairings_ok = pairings_all_zero(code.alphas(), betas, code.k());
    const bool betas_independent = rank_fq(betas) == code.n();
    // Row spans of the double dual and the original must agree.
    GabidulinCode ddual = dual_code(dual);
    const bool involution =
        ddual.generator().row_space_rref() == code.generator().row_space_rref();

    json beta_json = json::array();
    for (const Elt& b : betas) beta_json.push_back(elt_to_json(b));
    report.extra["code"] = gabidulin_to_json(code);
    report.extra["beta"] = beta_json;
    report.extra["verification"] = json{{"pairings_all_zero", pairings_ok},
                                        {"beta_independent", betas_independent},
                                        {"double_dual_equals_code", involution}};
    const bool all_ok = pairings_ok && betas_independent && involution;
    report.trials.push_back(TrialResult{0, all_ok, {}});
    report.violations = all_ok ? 0 : 1;
    finalize(report, sw);
    return report;
}

namespace {

GabidulinCode load_or_sample_code(const ExperimentConfig& cfg) {
    if (!cfg.in.empty()) {
        std::ifstream in(cfg.in);
        if (!in) throw InvalidArgError("cannot open " + cfg.in);
        json j;
        in >> j;
        return gabidulin_from_json(j);
    }
    const TowerPtr tower = tower_create(cfg.p, cfg.e, cfg.m, cfg.seed);
    Rng rng(Rng::derive(cfg.seed, 0));
    return random_gabidulin(tower, cfg.n, cfg.k, rng);
}

}  // namespace

ExperimentReport cmd_encode(const ExperimentConfig& cfg, const std::string& message_path) {
    Stopwatch sw;
    ExperimentReport report;
    report.config = cfg;
    GabidulinCode code = load_or_sample_code(cfg);
    std::ifstream in(message_path);
    if (!in) throw InvalidArgError("cmd_encode: cannot open " + message_path);
    json msg_json;
    in >> msg_json;
    ExtVector message;
    for (const auto& c : msg_json) message.push_back(elt_from_json(code.tower(), c));
    ExtVector word = encode(code, message);
    json word_json = json::array();
    for (const Elt& c : word) word_json.push_back(elt_to_json(c));
    report.extra["codeword"] = word_json;
    report.extra["rank"] = rank_fq(word);
    report.trials.push_back(TrialResult{0, true, {}});
    finalize(report, sw);
    return report;
}

ExperimentReport cmd_min_distance(const ExperimentConfig& cfg) {
    Stopwatch sw;
    ExperimentReport report;
    report.config = cfg;
    GabidulinCode code = load_or_sample_code(cfg);
    const uint32_t dist = min_rank_distance(code.as_linear());
    report.extra["min_rank_distance"] = dist;
    report.extra["singleton_bound"] = code.n() - code.k() + 1;
    report.extra["mrd"] = dist == code.n() - code.k() + 1;
    report.trials.push_back(TrialResult{0, true, {}});
    finalize(report, sw);
    return report;
}

ExperimentReport cmd_intersection(const ExperimentConfig& cfg) {
    Stopwatch sw;
    ExperimentReport report;
    report.config = cfg;
    const TowerPtr tower = tower_create(cfg.p, cfg.e, cfg.m, cfg.seed);

    // Sample evaluation points until the pattern checker certifies the code,
    // then compare actual against generic intersection dims exhaustively.
    const uint64_t max_attempts = 64;
    uint64_t attempts = 0;
    std::optional<GabidulinCode> code;
    for (uint64_t a = 0; a < max_attempts; ++a) {
        Rng rng(Rng::derive(cfg.seed, a));
        GabidulinCode candidate = random_gabidulin(tower, cfg.n, cfg.k, rng);
        ++attempts;
        if (gkp_check(candidate.as_linear(), cfg.ell).holds) {
            code = std::move(candidate);
            break;
        }
    }
    report.extra["certification_attempts"] = attempts;
    if (!code) {
        report.extra["certified"] = false;
        report.violations = 0;
        finalize(report, sw);
        return report;
    }
    report.extra["certified"] = true;

    MrdEllOptions opt;
    if (cfg.mode == "sampled") {
        opt.exhaustive = false;
        opt.samples = cfg.samples;
        opt.seed = Rng::derive(cfg.seed, 0x5ca1eULL);
    }
    CheckerVerdict verdict = is_mrd_ell(code->as_linear(), cfg.ell, opt);
    report.extra["verdict"] = verdict_to_json(verdict);
    report.extra["tuples_checked"] = verdict.tuples_checked;
    report.trials.push_back(TrialResult{0, verdict.holds, {}});
    // A certified code disagreeing with the closed form is a theorem
    // violation.
    report.violations = verdict.holds ? 0 : 1;
    finalize(report, sw);
    return report;
}

}  // namespace rml
