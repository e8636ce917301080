#pragma once

#include <cstdint>
#include <vector>

#include "rml/ffield.hpp"
#include "rml/fqspace.hpp"

namespace rml {

// Dense matrix over F_{q^m} with exact Gaussian elimination. Sizes stay at
// desk scale throughout, so everything is schoolbook.
class ExtMatrix {
   public:
    ExtMatrix() = default;
    ExtMatrix(TowerPtr t, uint32_t rows, uint32_t cols);

    uint32_t rows() const { return rows_; }
    uint32_t cols() const { return cols_; }
    const TowerPtr& tower() const { return tw_; }
    const Elt& at(uint32_t i, uint32_t j) const { return data_[size_t{i} * cols_ + j]; }
    void set(uint32_t i, uint32_t j, Elt v) { data_[size_t{i} * cols_ + j] = std::move(v); }
    std::vector<Elt> row(uint32_t i) const;

    static ExtMatrix from_rows(const TowerPtr& t, uint32_t cols,
                               const std::vector<std::vector<Elt>>& rows);
    ExtMatrix transpose() const;
    ExtMatrix mul(const ExtMatrix& rhs) const;
    // Right-multiplication by an F_q matrix (columns of A select F_q-linear
    // combinations of this matrix's columns).
    ExtMatrix mul_fq(const FqMatrix& a) const;

    // In-place reduced row echelon form; returns pivot columns.
    std::vector<uint32_t> rref();
    uint32_t rank() const;
    Elt det() const;  // square only
    bool det_nonzero() const { return !det().is_zero(); }
    // Rows span {x : M x = 0} / {y : y M = 0} respectively.
    ExtMatrix right_nullspace() const;
    ExtMatrix left_nullspace() const { return transpose().right_nullspace(); }
    // Canonical basis (RREF rows, zero rows dropped) of the row space.
    ExtMatrix row_space_rref() const;

    bool operator==(const ExtMatrix& rhs) const;

   private:
    TowerPtr tw_;
    uint32_t rows_ = 0, cols_ = 0;
    std::vector<Elt> data_;
};

// Intersection of the row spaces of two matrices over F_{q^m}, canonical
// basis rows. Used by the checkers' independent cross-validation paths.
ExtMatrix row_space_intersection(const ExtMatrix& a, const ExtMatrix& b);

}  // namespace rml
