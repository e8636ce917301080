#include "rml/ext_matrix.hpp"

#include <algorithm>

#include "rml/errors.hpp"

namespace rml {

ExtMatrix::ExtMatrix(TowerPtr t, uint32_t rows, uint32_t cols)
    : tw_(std::move(t)), rows_(rows), cols_(cols) {
    data_.assign(size_t{rows} * cols, tw_->zero());
}

std::vector<Elt> ExtMatrix::row(uint32_t i) const {
    return std::vector<Elt>(data_.begin() + size_t{i} * cols_,
                            data_.begin() + size_t{i + 1} * cols_);
}

ExtMatrix ExtMatrix::from_rows(const TowerPtr& t, uint32_t cols,
                               const std::vector<std::vector<Elt>>& rows) {
    ExtMatrix out(t, static_cast<uint32_t>(rows.size()), cols);
    for (uint32_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw InvalidArgError("ExtMatrix: row length mismatch");
        for (uint32_t j = 0; j < cols; ++j) out.set(i, j, rows[i][j]);
    }
    return out;
}

ExtMatrix ExtMatrix::transpose() const {
    ExtMatrix t(tw_, cols_, rows_);
    for (uint32_t i = 0; i < rows_; ++i)
        for (uint32_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
    return t;
}

ExtMatrix ExtMatrix::mul(const ExtMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw InvalidArgError("ExtMatrix: dimension mismatch in product");
    ExtMatrix out(tw_, rows_, rhs.cols_);
    for (uint32_t i = 0; i < rows_; ++i) {
        for (uint32_t t = 0; t < cols_; ++t) {
            const Elt& a = at(i, t);
            if (a.is_zero()) continue;
            for (uint32_t j = 0; j < rhs.cols_; ++j) {
                out.set(i, j, out.at(i, j) + a * rhs.at(t, j));
            }
        }
    }
    return out;
}

ExtMatrix ExtMatrix::mul_fq(const FqMatrix& a) const {
    if (cols_ != a.rows()) throw InvalidArgError("ExtMatrix: dimension mismatch in F_q product");
    ExtMatrix out(tw_, rows_, a.cols());
    for (uint32_t i = 0; i < rows_; ++i) {
        for (uint32_t t = 0; t < cols_; ++t) {
            const Elt& x = at(i, t);
            if (x.is_zero()) continue;
            for (uint32_t j = 0; j < a.cols(); ++j) {
                const uint32_t c = a.at(t, j);
                if (c == 0) continue;
                out.set(i, j, out.at(i, j) + tw_->scale_base(x, c));
            }
        }
    }
    return out;
}

std::vector<uint32_t> ExtMatrix::rref() {
    std::vector<uint32_t> pivots;
    uint32_t r = 0;
    for (uint32_t col = 0; col < cols_ && r < rows_; ++col) {
        uint32_t pivot = rows_;
        for (uint32_t i = r; i < rows_; ++i) {
            if (!at(i, col).is_zero()) {
                pivot = i;
                break;
            }
        }
        if (pivot == rows_) continue;
        if (pivot != r) {
            for (uint32_t j = 0; j < cols_; ++j) {
                std::swap(data_[size_t{pivot} * cols_ + j], data_[size_t{r} * cols_ + j]);
            }
        }
        const Elt inv = at(r, col).inv();
        for (uint32_t j = col; j < cols_; ++j) set(r, j, at(r, j) * inv);
        for (uint32_t i = 0; i < rows_; ++i) {
            if (i == r) continue;
            const Elt f = at(i, col);
            if (f.is_zero()) continue;
            for (uint32_t j = col; j < cols_; ++j) {
                set(i, j, at(i, j) - f * at(r, j));
            }
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

uint32_t ExtMatrix::rank() const {
    ExtMatrix copy = *this;
    return static_cast<uint32_t>(copy.rref().size());
}

Elt ExtMatrix::det() const {
    if (rows_ != cols_) throw InvalidArgError("ExtMatrix: determinant of a non-square matrix");
    if (rows_ == 0) return tw_->one();
    ExtMatrix a = *this;
    Elt result = tw_->one();
    for (uint32_t col = 0; col < cols_; ++col) {
        uint32_t pivot = rows_;
        for (uint32_t i = col; i < rows_; ++i) {
            if (!a.at(i, col).is_zero()) {
                pivot = i;
                break;
            }
        }
        if (pivot == rows_) return tw_->zero();
        if (pivot != col) {
            for (uint32_t j = 0; j < cols_; ++j) {
                std::swap(a.data_[size_t{pivot} * cols_ + j], a.data_[size_t{col} * cols_ + j]);
            }
            result = -result;
        }
        const Elt& p = a.at(col, col);
        result = result * p;
        const Elt pinv = p.inv();
        for (uint32_t i = col + 1; i < rows_; ++i) {
            const Elt f = a.at(i, col) * pinv;
            if (f.is_zero()) continue;
            for (uint32_t j = col; j < cols_; ++j) {
                a.set(i, j, a.at(i, j) - f * a.at(col, j));
            }
        }
    }
    return result;
}

ExtMatrix ExtMatrix::right_nullspace() const {
    ExtMatrix red = *this;
    const std::vector<uint32_t> pivots = red.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (uint32_t p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Elt>> rows;
    for (uint32_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Elt> x(cols_, tw_->zero());
        x[f] = tw_->one();
        for (uint32_t i = 0; i < pivots.size(); ++i) {
            x[pivots[i]] = -red.at(i, f);
        }
        rows.push_back(std::move(x));
    }
    return ExtMatrix::from_rows(tw_, cols_, rows);
}

ExtMatrix ExtMatrix::row_space_rref() const {
    ExtMatrix red = *this;
    const uint32_t rank = static_cast<uint32_t>(red.rref().size());
    ExtMatrix out(tw_, rank, cols_);
    for (uint32_t i = 0; i < rank; ++i)
        for (uint32_t j = 0; j < cols_; ++j) out.set(i, j, red.at(i, j));
    return out;
}

bool ExtMatrix::operator==(const ExtMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) return false;
    for (size_t i = 0; i < data_.size(); ++i)
        if (data_[i] != rhs.data_[i]) return false;
    return true;
}

ExtMatrix row_space_intersection(const ExtMatrix& a, const ExtMatrix& b) {
    if (a.cols() != b.cols()) throw InvalidArgError("row_space_intersection: width mismatch");
    const TowerPtr& t = a.tower();
    // Coefficients (c | d) with c*A + d*B = 0 give intersection vectors c*A.
    std::vector<std::vector<Elt>> stacked;
    for (uint32_t i = 0; i < a.rows(); ++i) stacked.push_back(a.row(i));
    for (uint32_t i = 0; i < b.rows(); ++i) stacked.push_back(b.row(i));
    ExtMatrix big = ExtMatrix::from_rows(t, a.cols(), stacked);
    ExtMatrix ln = big.left_nullspace();
    std::vector<std::vector<Elt>> vecs;
    for (uint32_t i = 0; i < ln.rows(); ++i) {
        std::vector<Elt> v(a.cols(), t->zero());
        for (uint32_t r = 0; r < a.rows(); ++r) {
            const Elt& c = ln.at(i, r);
            if (c.is_zero()) continue;
            for (uint32_t j = 0; j < a.cols(); ++j) v[j] = v[j] + c * a.at(r, j);
        }
        vecs.push_back(std::move(v));
    }
    return ExtMatrix::from_rows(t, a.cols(), vecs).row_space_rref();
}

}  // namespace rml
