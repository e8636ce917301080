#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rml/ext_matrix.hpp"
#include "rml/ffield.hpp"
#include "rml/fqspace.hpp"
#include "rml/rng.hpp"

namespace rml {

// A word in F_{q^m}^n.
using ExtVector = std::vector<Elt>;

// An [n, k] linear code over F_{q^m} given by a full-rank generator matrix.
class LinearCode {
   public:
    LinearCode(TowerPtr t, ExtMatrix generator);

    const TowerPtr& tower() const { return tw_; }
    uint32_t n() const { return g_.cols(); }
    uint32_t k() const { return g_.rows(); }
    const ExtMatrix& generator() const { return g_; }

   private:
    TowerPtr tw_;
    ExtMatrix g_;
};

// Evaluations of q-linearized polynomials of q-degree < k at F_q-independent
// points alpha_1..alpha_n; generator entry (i, j) is alpha_j^{q^{i-1}}.
class GabidulinCode {
   public:
    GabidulinCode(TowerPtr t, uint32_t k, std::vector<Elt> alphas);

    const TowerPtr& tower() const { return tw_; }
    uint32_t n() const { return static_cast<uint32_t>(alphas_.size()); }
    uint32_t k() const { return k_; }
    const std::vector<Elt>& alphas() const { return alphas_; }
    const ExtMatrix& generator() const { return g_; }
    LinearCode as_linear() const { return LinearCode(tw_, g_); }

   private:
    TowerPtr tw_;
    uint32_t k_;
    std::vector<Elt> alphas_;
    ExtMatrix g_;
};

// dim of the F_q-span of the coordinates, computed on the coordinate
// expansion; always n - dim kernel_subspace(v).
uint32_t rank_fq(const ExtVector& v);
// {u in F_q^n : sum u_i v_i = 0}.
FqSubspace kernel_subspace(const ExtVector& v);
// Coordinate expansion of a word: row i holds the F_q coordinates of v_i.
FqMatrix coordinate_matrix(const ExtVector& v);

ExtVector encode(const GabidulinCode& c, const ExtVector& message);
// Exact minimum of rank_fq over nonzero codewords, scanning messages
// (q^{mk} of them, guarded).
uint32_t min_rank_distance(const LinearCode& c);

struct MrdVerdict {
    bool mrd = true;
    std::optional<FqSubspace> witness;  // a dim-k column span with singular G*A
};
// Full-rank G*A for one representative A per dimension-k column span.
MrdVerdict mrd_witness(const LinearCode& c);
bool is_mrd(const LinearCode& c);

// The dual evaluation points: the nonzero solution of the bilinear pairing
// system, normalized so the first nonzero coordinate is 1.
std::vector<Elt> dual_basis(const std::vector<Elt>& alphas, uint32_t k);
// All k(n-k) pairing sums sum_i alphas[i]^{q^{j-1}} betas[i]^{q^{h-1}}.
bool pairings_all_zero(const std::vector<Elt>& alphas, const std::vector<Elt>& betas, uint32_t k);
GabidulinCode dual_code(const GabidulinCode& c);
// Parity-check generator via the right null space of G.
LinearCode dual_code_linear(const LinearCode& c);

// Canonical basis (RREF rows) of the column span of G*A for any A with
// column span V; independent of the choice of A.
ExtMatrix column_span_image(const ExtMatrix& g, const FqSubspace& v);
// Rank of the block matrix [G*A_1 | G*A_i] stacked over i = 2..l, so that
// dim of the intersection of the G_{V_i} equals sum dim G_{V_i} minus this.
uint32_t stacked_block_rank(const ExtMatrix& g, const std::vector<FqSubspace>& vs);

// Exact uniform draw over tuples with F_q-independent coordinates: each
// alpha_i is drawn uniformly from the complement of the span of the previous
// picks by unranking, not by rejection from the full field.
std::vector<Elt> sample_independent_alphas(const TowerPtr& t, uint32_t n, Rng& rng);
GabidulinCode random_gabidulin(const TowerPtr& t, uint32_t n, uint32_t k, Rng& rng);
LinearCode random_linear_code(const TowerPtr& t, uint32_t n, uint32_t k, Rng& rng);

}  // namespace rml
