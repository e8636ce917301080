#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rml/gabidulin.hpp"
#include "rml/patterns.hpp"

namespace rml {

// Streams the set partitions of [l] exactly once each (Bell(l) in total),
// as restricted growth strings expanded into blocks.
class PartitionIterator {
   public:
    explicit PartitionIterator(uint32_t l);
    bool next(std::vector<std::vector<uint32_t>>& blocks);

   private:
    uint32_t l_;
    std::vector<uint32_t> rgs_;
    bool first_ = true;
};

uint64_t bell_number(uint32_t l);

// The closed-form maximum over partitions: max over P_1 u ... u P_s of
// (sum_i dim intersection over P_i) - (s-1) k. No symbolic arithmetic is
// done anywhere; this formula is the generic side.
uint32_t generic_intersection_dim(const std::vector<FqSubspace>& vs, uint32_t k);
// dim of the intersection of the pushed-forward spans G_{V_i} through the
// stacked block-matrix rank identity.
uint32_t actual_intersection_dim(const ExtMatrix& g, const std::vector<FqSubspace>& vs);

struct CheckerVerdict {
    std::string property;
    bool holds = true;
    uint64_t tuples_checked = 0;
    std::string mode = "exhaustive";
    std::string note;
    // Witness payloads, present when holds is false.
    std::vector<FqSubspace> witness_tuple;
    std::optional<uint32_t> witness_actual_dim;
    std::optional<uint32_t> witness_generic_dim;
    std::optional<ExtVector> witness_center;
    std::vector<ExtVector> witness_codewords;
    std::optional<KernelPattern> witness_pattern;
};

struct MrdEllOptions {
    bool exhaustive = true;
    uint64_t samples = 0;  // sampled mode tuple count
    uint64_t seed = 0;
    // Only compare zero/nonzero intersection agreement (plus the MRD check)
    // instead of full dimensions.
    bool zero_test_only = false;
};

// Compares actual against generic intersection dimensions over tuples of l
// subspaces of dimension <= k. For an MRD code a discrepancy can only have
// actual > generic; actual < generic on a verified-MRD code is a bug.
CheckerVerdict is_mrd_ell(const LinearCode& c, uint32_t ell, const MrdEllOptions& opt = {});

// MRD plus attainment of every generic kernel pattern of order <= l.
CheckerVerdict gkp_check(const LinearCode& c, uint32_t ell);

// Brute-force average-radius list decodability at the generalized Singleton
// radius, all list sizes in [l]. Centers range over the whole space;
// codeword subsets are restricted to those containing the zero codeword,
// which suffices by translation invariance of the rank distance and
// linearity of the code.
CheckerVerdict is_ld_mrd(const LinearCode& c, uint32_t ell);
// The dual route: the code is average-radius list decodable up to list size
// l exactly when its dual satisfies the order-(l+1) intersection property.
// Usable far beyond the brute-force oracle's range.
CheckerVerdict is_ld_mrd_via_dual(const LinearCode& c, uint32_t ell);

struct EquivalenceReport {
    CheckerVerdict gkp;
    CheckerVerdict mrd_ell;
    CheckerVerdict ld_mrd_dual;  // brute-force on the dual code
    bool ld_mrd_feasible = false;
    bool agree = true;
};
// Runs the order-(l+1) pattern attainment check, the order-(l+1)
// intersection check, and (when guards allow) the brute-force list
// decodability check on the dual, and compares the three verdicts.
EquivalenceReport equivalence_harness(const LinearCode& c, uint32_t ell);

}  // namespace rml
