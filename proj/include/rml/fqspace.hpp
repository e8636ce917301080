#pragma once

#include <cstdint>
#include <vector>

#include "rml/fq.hpp"
#include "rml/rng.hpp"

namespace rml {

// A vector over F_q: entries are field element indices in [0, q).
using FqVec = std::vector<uint32_t>;

class FqMatrix {
   public:
    FqMatrix() = default;
    FqMatrix(FqFieldPtr F, uint32_t rows, uint32_t cols);

    uint32_t rows() const { return rows_; }
    uint32_t cols() const { return cols_; }
    const FqFieldPtr& field() const { return F_; }
    uint32_t at(uint32_t i, uint32_t j) const { return data_[size_t{i} * cols_ + j]; }
    void set(uint32_t i, uint32_t j, uint32_t v) { data_[size_t{i} * cols_ + j] = v; }
    FqVec row(uint32_t i) const;
    void set_row(uint32_t i, const FqVec& v);
    const std::vector<uint32_t>& data() const { return data_; }

    FqMatrix transpose() const;
    FqMatrix mul(const FqMatrix& rhs) const;
    static FqMatrix from_rows(FqFieldPtr F, uint32_t cols, const std::vector<FqVec>& rows);
    static FqMatrix vstack(const FqMatrix& top, const FqMatrix& bottom);

    // In-place reduced row echelon form; returns the pivot columns.
    std::vector<uint32_t> rref();
    uint32_t rank() const;
    // Rows span the right null space {x : M x = 0}.
    FqMatrix right_nullspace() const;

    bool operator==(const FqMatrix& rhs) const;

   private:
    FqFieldPtr F_;
    uint32_t rows_ = 0, cols_ = 0;
    std::vector<uint32_t> data_;
};

// A subspace of F_q^n held in canonical form: the unique RREF basis of any
// generating set, so equality of subspaces is equality of the stored bytes.
class FqSubspace {
   public:
    static FqSubspace zero(FqFieldPtr F, uint32_t n);
    static FqSubspace full(FqFieldPtr F, uint32_t n);
    static FqSubspace span_of(FqFieldPtr F, uint32_t n, const std::vector<FqVec>& vectors);
    // Validates that the given basis is already in RREF (the wire format
    // guarantees it); re-canonicalizes and rejects on mismatch.
    static FqSubspace from_rref_exact(FqMatrix basis, uint32_t n);

    uint32_t dim() const { return basis_.rows(); }
    uint32_t ambient_dim() const { return n_; }
    const FqMatrix& basis() const { return basis_; }
    const FqFieldPtr& field() const { return basis_.field(); }

    bool contains(const FqVec& v) const;
    bool contains(const FqSubspace& other) const;
    bool is_zero() const { return dim() == 0; }

    uint64_t element_count() const;           // q^dim, guarded
    FqVec element_at(uint64_t idx) const;     // coefficient odometer over the basis
    std::vector<FqVec> elements() const;      // guarded materialization

    bool operator==(const FqSubspace& rhs) const;
    bool operator!=(const FqSubspace& rhs) const { return !(*this == rhs); }
    bool operator<(const FqSubspace& rhs) const;  // canonical ordering for dedup

   private:
    FqSubspace(uint32_t n, FqMatrix basis) : n_(n), basis_(std::move(basis)) {}
    uint32_t n_ = 0;
    FqMatrix basis_;
};

FqSubspace sum(const FqSubspace& a, const FqSubspace& b);
FqSubspace intersect(const FqSubspace& a, const FqSubspace& b);
FqSubspace orthogonal_complement(const FqSubspace& v);
// Deterministic complement U with V (+) U = W, chosen by greedy extension in
// the canonical ambient vector order. Requires V <= W.
FqSubspace complement_in(const FqSubspace& v, const FqSubspace& w);

// Streams the dimension-d subspaces of F_q^n, each exactly once, by RREF
// pivot profile; the total count is the Gaussian binomial [n choose d]_q.
class SubspaceEnumerator {
   public:
    SubspaceEnumerator(FqFieldPtr F, uint32_t n, uint32_t d);
    bool next(FqSubspace& out);

   private:
    bool advance_filling();
    bool advance_profile();
    void load_profile();

    FqFieldPtr F_;
    uint32_t n_, d_;
    bool done_ = false;
    std::vector<uint32_t> pivots_;             // increasing pivot columns
    std::vector<std::pair<uint32_t, uint32_t>> free_cells_;
    std::vector<uint32_t> filling_;
};

uint64_t gaussian_binomial(uint32_t n, uint32_t d, uint32_t q);
// Guarded materializations.
std::vector<FqSubspace> enumerate_subspaces(FqFieldPtr F, uint32_t n, uint32_t d);
std::vector<FqSubspace> enumerate_subspaces_up_to(FqFieldPtr F, uint32_t n, uint32_t dmax);
// Uniform over dimension-d subspaces: rejection-sample a full-rank d x n
// matrix and canonicalize.
FqSubspace sample_subspace(FqFieldPtr F, uint32_t n, uint32_t d, Rng& rng);

uint64_t vec_to_index(const FqVec& v, uint32_t q);
FqVec vec_from_index(uint64_t idx, uint32_t n, uint32_t q);

}  // namespace rml
