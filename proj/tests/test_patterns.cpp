#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "rml/errors.hpp"
#include "rml/patterns.hpp"

using namespace rml;

namespace {
FqSubspace sp(const FqFieldPtr& F, uint32_t n, std::vector<FqVec> gens) {
    return FqSubspace::span_of(F, n, gens);
}
}  // namespace

TEST_CASE("kernel pattern canonicalization and gkp predicate") {
    auto F = FqField::make(2, 1);
    auto e1 = sp(F, 3, {{1, 0, 0}});
    auto e2 = sp(F, 3, {{0, 1, 0}});

    KernelPattern all_zero(2, {PatternEntry{FqSubspace::zero(F, 3), 1}});
    CHECK(all_zero.order() == 0);
    CHECK(all_zero.zero_slots() == 2);
    CHECK(is_gkp(all_zero));

    // Two copies of the same line on two slots violate the condition.
    KernelPattern doubled(2, {PatternEntry{e1, 1}, PatternEntry{e1, 1}});
    CHECK(doubled.order() == 1);
    CHECK(doubled.entries()[0].multiplicity == 2);
    CHECK(!is_gkp(doubled));

    KernelPattern split(2, {PatternEntry{e1, 1}, PatternEntry{e2, 1}});
    CHECK(split.order() == 2);
    CHECK(is_gkp(split));

    CHECK_THROWS_AS(KernelPattern(2, {PatternEntry{e1, 3}}), InvalidArgError);
}

TEST_CASE("multiplicity form matches the expanded slot form") {
    // Random patterns over a few shapes; both checkers implemented
    // independently.
    auto F = FqField::make(2, 1);
    Rng rng(29);
    for (int iter = 0; iter < 400; ++iter) {
        const uint32_t n = 3 + static_cast<uint32_t>(rng.below(2));
        const uint32_t k = 2 + static_cast<uint32_t>(rng.below(3));
        const uint32_t l = 1 + static_cast<uint32_t>(rng.below(3));
        std::vector<PatternEntry> entries;
        uint32_t budget = k;
        for (uint32_t i = 0; i < l && budget > 0; ++i) {
            const uint32_t delta = 1 + static_cast<uint32_t>(rng.below(budget));
            budget -= delta;
            entries.push_back(PatternEntry{
                sample_subspace(F, n, static_cast<uint32_t>(rng.below(std::min(k, n) + 1)), rng),
                delta});
        }
        KernelPattern p(k, entries);
        CHECK(is_gkp(p) == oracles::brute_is_gkp(p));
    }
}

TEST_CASE("hall padding, slot form") {
    auto F2 = FqField::make(2, 1);
    // Two zero subspaces at k=2, n=2: padded to two distinct lines.
    auto zero2 = FqSubspace::zero(F2, 2);
    auto padded = hall_pad_dual({zero2, zero2});
    REQUIRE(padded.size() == 2);
    CHECK(padded[0] == sp(F2, 2, {{1, 0}}));
    CHECK(padded[1] == sp(F2, 2, {{0, 1}}));

    // Fixed point: already at dimension k-1.
    auto e1 = sp(F2, 2, {{1, 0}});
    auto e2 = sp(F2, 2, {{0, 1}});
    auto unchanged = hall_pad_dual({e1, e2});
    CHECK(unchanged[0] == e1);
    CHECK(unchanged[1] == e2);

    CHECK_THROWS_AS(hall_pad_dual({e1, e1}), InvalidArgError);

    // Random valid families stay valid with exact dimensions.
    Rng rng(37);
    for (int iter = 0; iter < 100; ++iter) {
        const uint32_t n = 4;
        const uint32_t k = 2 + static_cast<uint32_t>(rng.below(2));
        std::vector<FqSubspace> v;
        for (uint32_t i = 0; i < k; ++i)
            v.push_back(sample_subspace(F2, n, static_cast<uint32_t>(rng.below(k)), rng));
        std::vector<uint32_t> ones(k, 1);
        KernelPattern as_pattern(k, [&] {
            std::vector<PatternEntry> e;
            for (const auto& s : v) e.push_back(PatternEntry{s, 1});
            return e;
        }());
        if (!oracles::brute_is_gkp(as_pattern)) continue;
        auto out = hall_pad_dual(v);
        for (uint32_t i = 0; i < k; ++i) {
            CHECK(out[i].dim() == k - 1);
            CHECK(out[i].contains(v[i]));
        }
    }
}

TEST_CASE("hall padding, multiplicity form") {
    auto F = FqField::make(2, 1);
    // Single zero entry with delta 1 at k=2, n=3: any line works.
    auto padded = hall_pad_multiplicity({FqSubspace::zero(F, 3)}, {1}, 2);
    REQUIRE(padded.size() == 1);
    CHECK(padded[0].dim() == 1);

    // Already exact dims: unchanged.
    auto e1 = sp(F, 3, {{1, 0, 0}});
    auto out = hall_pad_multiplicity({e1}, {1}, 2);
    CHECK(out[0] == e1);

    // delta_i = 1 on k entries reproduces the slot form's validity.
    Rng rng(41);
    for (int iter = 0; iter < 50; ++iter) {
        const uint32_t k = 3;
        std::vector<FqSubspace> v;
        for (uint32_t i = 0; i < k; ++i)
            v.push_back(sample_subspace(F, 4, static_cast<uint32_t>(rng.below(2)), rng));
        bool ok_slot = true;
        try {
            hall_pad_dual(v);
        } catch (const InvalidArgError&) {
            ok_slot = false;
        }
        bool ok_mult = true;
        try {
            hall_pad_multiplicity(v, std::vector<uint32_t>(k, 1), k);
        } catch (const InvalidArgError&) {
            ok_mult = false;
        }
        CHECK(ok_slot == ok_mult);
    }
}

TEST_CASE("order characterization: partition and multiplicity conditions agree") {
    auto F = FqField::make(2, 1);
    // Exhaustive families at l = 2 and n = 3 for k in {2, 3}, all d.
    for (uint32_t k : {2u, 3u}) {
        auto pool = enumerate_subspaces_up_to(F, 3, k);
        for (const auto& a : pool) {
            for (const auto& b : pool) {
                for (uint32_t d = 0; d <= k; ++d) {
                    OrderEllVerdict verdict = order_ell_characterize({a, b}, k, d);
                    // Independent route: do integers delta with the weighted
                    // bound exist?
                    bool expect = false;
                    for (uint32_t d1 = 0; d1 <= k - d && !expect; ++d1) {
                        const uint32_t d2 = k - d - d1;
                        const bool ok1 = a.dim() + d1 <= k;
                        const bool ok2 = b.dim() + d2 <= k;
                        const bool ok12 = intersect(a, b).dim() + d1 + d2 <= k;
                        expect = ok1 && ok2 && ok12;
                    }
                    CHECK(verdict.ok == expect);
                    if (verdict.ok) {
                        REQUIRE(verdict.deltas.size() == 2);
                        CHECK(verdict.deltas[0] + verdict.deltas[1] == k - d);
                        CHECK(a.dim() + verdict.deltas[0] <= k);
                        CHECK(b.dim() + verdict.deltas[1] <= k);
                        CHECK(intersect(a, b).dim() + (k - d) <= k);
                    } else {
                        CHECK(!verdict.violating_partition.empty());
                    }
                }
            }
        }
    }
    // Spot shapes at l = 3 against the same independent search.
    Rng rng(53);
    for (int iter = 0; iter < 150; ++iter) {
        const uint32_t k = 2 + static_cast<uint32_t>(rng.below(2));
        std::vector<FqSubspace> v;
        for (int i = 0; i < 3; ++i)
            v.push_back(sample_subspace(F, 3, static_cast<uint32_t>(rng.below(k + 1)), rng));
        for (uint32_t d = 0; d <= k; ++d) {
            OrderEllVerdict verdict = order_ell_characterize(v, k, d);
            bool expect = false;
            for (uint32_t d1 = 0; d1 <= k - d && !expect; ++d1)
                for (uint32_t d2 = 0; d1 + d2 <= k - d && !expect; ++d2) {
                    const uint32_t d3 = k - d - d1 - d2;
                    std::vector<uint32_t> delta{d1, d2, d3};
                    bool ok = true;
                    for (uint32_t mask = 1; mask < 8 && ok; ++mask) {
                        std::optional<FqSubspace> inter;
                        uint32_t w = 0;
                        for (uint32_t i = 0; i < 3; ++i) {
                            if (!(mask & (1u << i))) continue;
                            w += delta[i];
                            inter = inter ? intersect(*inter, v[i]) : v[i];
                        }
                        ok = inter->dim() + w <= k;
                    }
                    expect = ok;
                }
            CHECK(verdict.ok == expect);
        }
    }

    // ell = 1 base case: single subspace of dim k-d.
    auto line = sp(F, 3, {{1, 0, 0}});
    OrderEllVerdict single = order_ell_characterize({line}, 2, 1);
    CHECK(single.ok);
    CHECK(single.deltas == std::vector<uint32_t>{1});
}

TEST_CASE("attainment on the worked tower") {
    auto t = tower_create(2, 1, 3);
    auto F = t->base_field();
    Elt x = t->gen();
    std::vector<Elt> alphas{t->one(), x, x * x};
    GabidulinCode code(t, 2, alphas);

    // P = (span{e1}, span{e2}): rows (1,1) and (x^2, x) up to scale.
    KernelPattern p(2, {PatternEntry{sp(F, 3, {{1, 0, 0}})}, PatternEntry{sp(F, 3, {{0, 1, 0}})}});
    auto cert = attain(code.generator(), p);
    REQUIRE(cert.has_value());
    CHECK(cert->verify());
    CHECK(cert->m.det_nonzero());
    // The slot holding span{e1} gets a row annihilating G e_1 = (1, 1), so
    // that row is a multiple of (1, 1).
    const FqSubspace e1 = sp(F, 3, {{1, 0, 0}});
    bool found = false;
    for (uint32_t slot = 0; slot < 2; ++slot) {
        if (cert->pattern.slot(slot) && *cert->pattern.slot(slot) == e1) {
            CHECK(cert->m.at(slot, 0) == cert->m.at(slot, 1));
            found = true;
        }
    }
    CHECK(found);

    // All-zero pattern: no constraints, M is the identity by greedy
    // extension.
    KernelPattern pz(2, {PatternEntry{FqSubspace::zero(F, 3), 1}});
    auto certz = attain(code.generator(), pz);
    REQUIRE(certz.has_value());
    for (uint32_t i = 0; i < 2; ++i)
        for (uint32_t j = 0; j < 2; ++j)
            CHECK(certz->m.at(i, j) == (i == j ? t->one() : t->zero()));

    // A non-generic pattern is rejected before any work.
    KernelPattern bad(2, {PatternEntry{sp(F, 3, {{1, 0, 0}}), 2}});
    CHECK_THROWS_AS(attain(code.generator(), bad), InvalidArgError);
}

TEST_CASE("pattern enumeration") {
    auto F = FqField::make(2, 1);
    // (n=3, k=2): 7 lines; order-1 patterns are the 7 lines with delta 1,
    // order-2 patterns the 21 pairs, plus the all-zero pattern.
    auto patterns = enumerate_gkp_patterns(F, 3, 2, 2);
    CHECK(patterns.size() == 1 + 7 + 21);
    for (const auto& p : patterns) {
        CHECK(is_gkp(p));
        CHECK(oracles::brute_is_gkp(p));
        CHECK(p.order() <= 2);
    }
    // Order cap respected.
    CHECK(enumerate_gkp_patterns(F, 3, 2, 1).size() == 1 + 7);
}

TEST_CASE("attainment certificates across enumerated patterns") {
    auto t = tower_create(2, 1, 7);
    Rng rng(61);
    GabidulinCode code = random_gabidulin(t, 3, 2, rng);
    auto patterns = enumerate_gkp_patterns(t->base_field(), 3, 2, 2);
    int attained = 0;
    for (const auto& p : patterns) {
        auto cert = attain(code.generator(), p);
        if (cert) {
            CHECK(cert->verify());
            ++attained;
        }
    }
    // At m = 7 the failure probability is small; most patterns attain.
    CHECK(attained >= static_cast<int>(patterns.size()) - 2);
}

TEST_CASE("ms matrix worked examples") {
    auto t = tower_create(2, 1, 28);
    auto F = t->base_field();
    Rng rng(67);
    Embedding emb{t, sample_independent_alphas(t, 3, rng)};
    const Elt a1 = emb.images[0];
    const Elt a2 = emb.images[1];

    // Single part ({0}, k): the identity matrix.
    for (uint32_t k : {1u, 2u, 3u}) {
        MsTuple s(k, {MsPart{FqSubspace::zero(F, 3), k}}, emb);
        ExtMatrix m = ms_matrix(s);
        for (uint32_t i = 0; i < k; ++i)
            for (uint32_t j = 0; j < k; ++j)
                CHECK(m.at(i, j) == (i == j ? t->one() : t->zero()));
        CHECK(ms_condition(s));
        CHECK(!ms_theorem_check(s).det_zero);
    }

    auto span1 = sp(F, 3, {{1, 0, 0}});
    auto span2 = sp(F, 3, {{0, 1, 0}});

    // Equal parts: rows coincide, det = 0 and the condition fails.
    MsTuple dup(2, {MsPart{span1, 1}, MsPart{span1, 1}}, emb);
    ExtMatrix mdup = ms_matrix(dup);
    CHECK(mdup.at(0, 0) == a1);
    CHECK(mdup.at(0, 1) == t->one());
    CHECK(mdup.at(1, 0) == a1);
    MsCheck cdup = ms_theorem_check(dup);
    CHECK(cdup.det_zero);
    CHECK(!cdup.condition);
    CHECK(!cdup.hard_violation());

    // Distinct lines: det = a1 - a2 != 0, condition holds.
    MsTuple ok(2, {MsPart{span1, 1}, MsPart{span2, 1}}, emb);
    ExtMatrix mok = ms_matrix(ok);
    CHECK(mok.at(0, 0) == a1);
    CHECK(mok.at(1, 0) == a2);
    MsCheck cok = ms_theorem_check(ok);
    CHECK(!cok.det_zero);
    CHECK(cok.condition);

    CHECK_THROWS_AS(MsTuple(2, {MsPart{span1, 2}}, emb), InvalidArgError);
    CHECK_THROWS_AS(MsTuple(2, {MsPart{span1, 1}}, emb), InvalidArgError);
}

TEST_CASE("ms null witness") {
    auto t = tower_create(2, 1, 8);
    auto F = t->base_field();
    Rng rng(71);
    Embedding emb{t, sample_independent_alphas(t, 3, rng)};
    auto span1 = sp(F, 3, {{1, 0, 0}});
    auto span2 = sp(F, 3, {{0, 1, 0}});

    // Nonsingular instance: no witness.
    MsTuple ok(2, {MsPart{span1, 1}, MsPart{span2, 1}}, emb);
    CHECK(!ms_null_witness(ok).has_value());

    // Equal rows: witness g_1 = g_2 = X in characteristic 2.
    MsTuple dup(2, {MsPart{span1, 1}, MsPart{span1, 1}}, emb);
    auto witness = ms_null_witness(dup);
    REQUIRE(witness.has_value());
    REQUIRE(witness->size() == 2);
    bool any_nonzero = false;
    for (const auto& g : *witness) {
        if (!g.is_zero()) any_nonzero = true;
        if (auto d = g.q_degree()) CHECK(*d == 0);  // deg_q(g_i) <= r_i - 1 = 0
    }
    CHECK(any_nonzero);
    // The verification that sum g_i o f_i = 0 runs inside ms_null_witness.
}

TEST_CASE("ms determinant criterion, zero-tolerance direction") {
    // Whenever the subset condition fails, det must vanish; scan everything
    // small.
    auto t = tower_create(2, 1, 12);
    auto F = t->base_field();
    Rng rng(73);
    Embedding emb{t, sample_independent_alphas(t, 3, rng)};
    auto pool = enumerate_subspaces_up_to(F, 3, 2);
    uint64_t condition_false = 0;
    for (uint32_t k : {2u, 3u}) {
        for (const auto& v1 : pool) {
            for (uint32_t r1 = 1; r1 < k; ++r1) {
                if (v1.dim() + r1 > k) continue;
                for (const auto& v2 : pool) {
                    const uint32_t r2 = k - r1;
                    if (v2.dim() + r2 > k) continue;
                    MsTuple s(k, {MsPart{v1, r1}, MsPart{v2, r2}}, emb);
                    MsCheck check = ms_theorem_check(s);
                    CHECK(!check.hard_violation());
                    if (!check.condition) {
                        ++condition_false;
                        CHECK(check.det_zero);
                    }
                }
            }
        }
    }
    CHECK(condition_false > 0);  // the scan exercises both sides
}

TEST_CASE("ms criterion at large m: condition-true instances are nonsingular") {
    // 100 seeded draws; at m = 28 a vanishing determinant on a condition-true
    // instance is a once-in-2^14 event, so demand at least 99 clean draws.
    auto t = tower_create(2, 1, 28);
    auto F = t->base_field();
    auto span1 = sp(F, 3, {{1, 0, 0}});
    auto span2 = sp(F, 3, {{0, 1, 0}});
    auto plane = sp(F, 3, {{1, 0, 0}, {0, 1, 0}});
    int clean = 0;
    for (uint64_t trial = 0; trial < 100; ++trial) {
        Rng rng(Rng::derive(79, trial));
        Embedding emb{t, sample_independent_alphas(t, 3, rng)};
        bool all_ok = true;
        for (const MsTuple& s :
             {MsTuple(2, {MsPart{span1, 1}, MsPart{span2, 1}}, emb),
              MsTuple(3, {MsPart{plane, 1}, MsPart{span2, 1}, MsPart{span1, 1}}, emb),
              MsTuple(3, {MsPart{span1, 1}, MsPart{span2, 2}}, emb)}) {
            MsCheck check = ms_theorem_check(s);
            REQUIRE(check.condition);
            if (check.det_zero) all_ok = false;
        }
        if (all_ok) ++clean;
    }
    CHECK(clean >= 99);
}
