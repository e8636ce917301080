#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rml/ext_matrix.hpp"
#include "rml/fqspace.hpp"
#include "rml/qlinpoly.hpp"

namespace rml {

struct PatternEntry {
    FqSubspace subspace;
    uint32_t multiplicity = 1;
};

// A kernel pattern on k slots: distinct nonzero subspaces with
// multiplicities, implicit zero-subspace copies filling the remaining slots.
// Construction canonicalizes (drops zero entries, merges duplicates, sorts),
// so patterns compare up to slot permutation.
class KernelPattern {
   public:
    KernelPattern(uint32_t k, std::vector<PatternEntry> entries);

    uint32_t k() const { return k_; }
    uint32_t ambient_dim() const { return n_; }
    const std::vector<PatternEntry>& entries() const { return entries_; }
    uint32_t order() const { return static_cast<uint32_t>(entries_.size()); }
    uint32_t zero_slots() const;
    // Slot i's subspace in canonical order: entry 0's copies first, zeros last.
    const FqSubspace* slot(uint32_t i) const;

    bool operator==(const KernelPattern& rhs) const;

   private:
    uint32_t k_;
    uint32_t n_;
    std::vector<PatternEntry> entries_;
};

// The generic-kernel-pattern condition, evaluated in multiplicity form over
// the nonempty subsets of the distinct entries (2^order - 1 checks instead
// of 2^k - 1).
bool is_gkp(const KernelPattern& p);

// Pads each of the k slots to dimension k-1 while preserving all subset
// intersection constraints; greedy over candidate vectors in canonical
// order. Duplicate subspaces in the input keep separate slots.
std::vector<FqSubspace> hall_pad_dual(const std::vector<FqSubspace>& v);
// Multiplicity form: pads entry i to dimension k - delta_i preserving the
// weighted constraints.
std::vector<FqSubspace> hall_pad_multiplicity(const std::vector<FqSubspace>& v,
                                              const std::vector<uint32_t>& delta, uint32_t k);

struct OrderEllVerdict {
    bool ok = false;
    // When ok: the multiplicities promised by the characterization.
    std::vector<uint32_t> deltas;
    // When not ok: a partition witnessing the violated inequality.
    std::vector<std::vector<uint32_t>> violating_partition;
};
// Decides whether copies of V_1..V_l plus d zero slots can form a generic
// kernel pattern on k slots, via the partition inequalities; on success an
// exhaustive composition search recovers a valid multiplicity vector.
OrderEllVerdict order_ell_characterize(const std::vector<FqSubspace>& v, uint32_t k, uint32_t d);

// Invertible M whose rows annihilate G*A_i slot by slot, the padded
// null-space construction. Verified before return; row order follows the
// pattern slots.
struct AttainmentCertificate {
    ExtMatrix m;
    KernelPattern pattern;
    ExtMatrix generator;
    bool verify() const;
};
// nullopt means the null spaces failed to assemble into a direct sum of the
// right dimension: the code does not attain the pattern at these parameters
// (a legitimate outcome for small m, not a bug).
std::optional<AttainmentCertificate> attain(const ExtMatrix& g, const KernelPattern& p);

// Every generic kernel pattern of order <= l on k slots over F_q^n, up to
// slot permutation: distinct nonzero subspaces of dimension <= k-1 with
// multiplicities >= 1 summing to <= k.
std::vector<KernelPattern> enumerate_gkp_patterns(const FqFieldPtr& f, uint32_t n, uint32_t k,
                                                  uint32_t ell);

// A tuple S = ((V_i, r_i)) with sum r_i = k and dim V_i + r_i <= k, plus the
// embedding of the V_i into F_{q^m}. Defines the stacked coefficient matrix
// M_S of the powered annihilators.
struct MsPart {
    FqSubspace subspace;
    uint32_t r = 1;
};
class MsTuple {
   public:
    MsTuple(uint32_t k, std::vector<MsPart> parts, Embedding embed);

    uint32_t k() const { return k_; }
    const std::vector<MsPart>& parts() const { return parts_; }
    const Embedding& embedding() const { return embed_; }

   private:
    uint32_t k_;
    std::vector<MsPart> parts_;
    Embedding embed_;
};

// Block i holds the coefficients of f_i(X)^{q^{j-1}} for j in [r_i], where
// f_i is the annihilator of V_i composed with X^{q^{k - dim V_i - r_i}}.
ExtMatrix ms_matrix(const MsTuple& s);
// dim(intersection over Omega) + sum r_i <= max (dim V_i + r_i) for all
// nonempty Omega.
bool ms_condition(const MsTuple& s);
struct MsCheck {
    bool det_zero = false;
    bool condition = false;
    // det != 0 with the condition false contradicts the deterministic
    // direction of the determinant criterion.
    bool hard_violation() const { return !condition && !det_zero; }
    // det = 0 with the condition true is a probabilistic miss of the random
    // instantiation; re-draw the evaluation points.
    bool probabilistic_miss() const { return det_zero && condition; }
};
MsCheck ms_theorem_check(const MsTuple& s);
// When det(M_S) = 0: polynomials g_i, deg_q(g_i) <= r_i - 1, not all zero,
// with sum g_i o f_i = 0 exactly; nullopt when det != 0.
std::optional<std::vector<QLinPoly>> ms_null_witness(const MsTuple& s);

}  // namespace rml
