#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "rml/errors.hpp"
#include "rml/fqspace.hpp"

using namespace rml;

namespace {
FqSubspace sp(const FqFieldPtr& F, uint32_t n, std::vector<FqVec> gens) {
    return FqSubspace::span_of(F, n, gens);
}
}  // namespace

TEST_CASE("span_of canonicality") {
    auto F = FqField::make(2, 1);
    CHECK(sp(F, 3, {}).dim() == 0);
    CHECK(sp(F, 3, {{1, 0, 0}, {1, 1, 0}, {0, 1, 0}}).dim() == 2);
    CHECK(sp(F, 3, {{1, 0, 0}}) == sp(F, 3, {{1, 0, 0}}));
    CHECK_THROWS_AS(sp(F, 3, {{1, 0}}), InvalidArgError);

    // Shuffled generators give byte-identical canonical bases.
    Rng rng(5);
    auto F3 = FqField::make(3, 1);
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<FqVec> gens;
        for (int i = 0; i < 3; ++i) {
            FqVec v(4);
            for (auto& x : v) x = static_cast<uint32_t>(rng.below(3));
            gens.push_back(v);
        }
        FqSubspace a = sp(F3, 4, gens);
        std::reverse(gens.begin(), gens.end());
        std::swap(gens[0], gens[1]);
        FqSubspace b = sp(F3, 4, gens);
        CHECK(a == b);
        CHECK(a.basis().data() == b.basis().data());
    }
}

TEST_CASE("sum and intersection") {
    auto F = FqField::make(2, 1);
    auto e12 = sp(F, 3, {{1, 0, 0}, {0, 1, 0}});
    auto e23 = sp(F, 3, {{0, 1, 0}, {0, 0, 1}});
    CHECK(intersect(e12, e23) == sp(F, 3, {{0, 1, 0}}));
    auto zero = FqSubspace::zero(F, 3);
    CHECK(sum(e12, zero) == e12);
    CHECK(intersect(e12, e12) == e12);
}

TEST_CASE("intersection agrees with brute enumeration") {
    auto F = FqField::make(2, 1);
    auto all = enumerate_subspaces_up_to(F, 4, 4);
    Rng rng(11);
    for (int iter = 0; iter < 200; ++iter) {
        const FqSubspace& a = all[rng.below(all.size())];
        const FqSubspace& b = all[rng.below(all.size())];
        CHECK(intersect(a, b) == oracles::brute_intersect(a, b));
    }
}

TEST_CASE("dimension formula over all pairs") {
    for (uint32_t q : {2u, 3u}) {
        auto F = FqField::make(q, 1);
        for (uint32_t n = 1; n <= 4; ++n) {
            if (q == 3 && n == 4) continue;  // covered separately below
            auto all = enumerate_subspaces_up_to(F, n, n);
            for (const auto& a : all) {
                for (const auto& b : all) {
                    CHECK(a.dim() + b.dim() == sum(a, b).dim() + intersect(a, b).dim());
                }
            }
        }
    }
    // q=3, n=4 in full.
    auto F3 = FqField::make(3, 1);
    auto all = enumerate_subspaces_up_to(F3, 4, 4);
    for (const auto& a : all)
        for (const auto& b : all)
            CHECK(a.dim() + b.dim() == sum(a, b).dim() + intersect(a, b).dim());
}

TEST_CASE("orthogonal complement") {
    auto F = FqField::make(2, 1);
    CHECK(orthogonal_complement(FqSubspace::zero(F, 3)) == FqSubspace::full(F, 3));
    CHECK(orthogonal_complement(sp(F, 3, {{1, 0, 0}})) == sp(F, 3, {{0, 1, 0}, {0, 0, 1}}));
    // Self-orthogonality in characteristic 2.
    auto v = sp(F, 3, {{1, 1, 0}});
    auto vp = orthogonal_complement(v);
    CHECK(vp == sp(F, 3, {{1, 1, 0}, {0, 0, 1}}));
    CHECK(vp.contains(v));

    for (uint32_t n = 1; n <= 4; ++n) {
        auto all = enumerate_subspaces_up_to(F, n, n);
        for (const auto& a : all) {
            auto c = orthogonal_complement(a);
            CHECK(c.dim() == n - a.dim());
            CHECK(orthogonal_complement(c) == a);
        }
    }
}

TEST_CASE("complement of intersections is sum of complements") {
    // Exhaustive triples at n=3 and pairs at n=4 over F_2.
    auto F = FqField::make(2, 1);
    {
        auto all = enumerate_subspaces_up_to(F, 3, 3);
        for (const auto& a : all)
            for (const auto& b : all)
                for (const auto& c : all) {
                    auto lhs = orthogonal_complement(intersect(intersect(a, b), c));
                    auto rhs = sum(sum(orthogonal_complement(a), orthogonal_complement(b)),
                                   orthogonal_complement(c));
                    CHECK(lhs == rhs);
                }
    }
    {
        auto all = enumerate_subspaces_up_to(F, 4, 4);
        for (const auto& a : all)
            for (const auto& b : all) {
                CHECK(orthogonal_complement(intersect(a, b)) ==
                      sum(orthogonal_complement(a), orthogonal_complement(b)));
            }
    }
}

TEST_CASE("intersection of sums bound") {
    // dim(cap (A_i + B_i)) <= dim(cap A_i) + sum dim B_i on random tuples.
    auto F = FqField::make(2, 1);
    Rng rng(17);
    for (int iter = 0; iter < 500; ++iter) {
        const uint32_t count = 2 + static_cast<uint32_t>(rng.below(2));
        std::vector<FqSubspace> as, bs;
        for (uint32_t i = 0; i < count; ++i) {
            as.push_back(sample_subspace(F, 4, static_cast<uint32_t>(rng.below(4)), rng));
            bs.push_back(sample_subspace(F, 4, static_cast<uint32_t>(rng.below(3)), rng));
        }
        std::optional<FqSubspace> lhs, inter_a;
        uint32_t b_total = 0;
        for (uint32_t i = 0; i < count; ++i) {
            FqSubspace s = sum(as[i], bs[i]);
            lhs = lhs ? intersect(*lhs, s) : s;
            inter_a = inter_a ? intersect(*inter_a, as[i]) : as[i];
            b_total += bs[i].dim();
        }
        CHECK(lhs->dim() <= inter_a->dim() + b_total);
    }
}

TEST_CASE("subspace enumeration counts") {
    auto F = FqField::make(2, 1);
    CHECK(enumerate_subspaces(F, 3, 1).size() == 7);
    CHECK(enumerate_subspaces(F, 3, 0).size() == 1);
    CHECK(enumerate_subspaces(F, 3, 2).size() == 7);
    CHECK(gaussian_binomial(3, 1, 2) == 7);
    CHECK(gaussian_binomial(3, 2, 2) == 7);

    for (uint32_t q : {2u, 3u}) {
        auto Fq = FqField::make(q, 1);
        for (uint32_t n = 0; n <= 4; ++n) {
            for (uint32_t d = 0; d <= n; ++d) {
                auto subs = enumerate_subspaces(Fq, n, d);
                CHECK(subs.size() == gaussian_binomial(n, d, q));
                // Each exactly once.
                std::sort(subs.begin(), subs.end());
                CHECK(std::adjacent_find(subs.begin(), subs.end()) == subs.end());
                for (const auto& s : subs) CHECK(s.dim() == d);
            }
        }
    }
}

TEST_CASE("complement_in") {
    auto F = FqField::make(2, 1);
    auto w = sp(F, 3, {{1, 0, 0}, {0, 1, 0}});
    CHECK(complement_in(FqSubspace::zero(F, 3), w) == w);
    CHECK(complement_in(w, w).dim() == 0);
    CHECK(complement_in(sp(F, 3, {{1, 0, 0}}), w) == sp(F, 3, {{0, 1, 0}}));
    CHECK_THROWS_AS(complement_in(sp(F, 3, {{0, 0, 1}}), w), InvalidArgError);

    // Direct-sum property over random pairs.
    Rng rng(23);
    for (int iter = 0; iter < 100; ++iter) {
        FqSubspace w2 = sample_subspace(F, 4, 1 + static_cast<uint32_t>(rng.below(4)), rng);
        // Random subspace of w2 via random subset of its elements.
        std::vector<FqVec> gens;
        const auto elements = w2.elements();
        for (const auto& x : elements)
            if (rng.below(2)) gens.push_back(x);
        FqSubspace v = FqSubspace::span_of(F, 4, gens);
        FqSubspace u = complement_in(v, w2);
        CHECK(intersect(u, v).dim() == 0);
        CHECK(sum(u, v) == w2);
    }
}

TEST_CASE("sample_subspace distribution sanity") {
    auto F = FqField::make(2, 1);
    Rng rng(31);
    // All 7 lines of F_2^3 appear across enough draws.
    std::vector<FqSubspace> seen;
    for (int iter = 0; iter < 200; ++iter) {
        FqSubspace s = sample_subspace(F, 3, 1, rng);
        CHECK(s.dim() == 1);
        if (std::find(seen.begin(), seen.end(), s) == seen.end()) seen.push_back(s);
    }
    CHECK(seen.size() == 7);
}
