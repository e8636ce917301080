#include "rml/fqspace.hpp"

#include <algorithm>

#include "rml/errors.hpp"

namespace rml {

FqMatrix::FqMatrix(FqFieldPtr F, uint32_t rows, uint32_t cols)
    : F_(std::move(F)), rows_(rows), cols_(cols), data_(size_t{rows} * cols, 0) {}

FqVec FqMatrix::row(uint32_t i) const {
    return FqVec(data_.begin() + size_t{i} * cols_, data_.begin() + size_t{i + 1} * cols_);
}

void FqMatrix::set_row(uint32_t i, const FqVec& v) {
    if (v.size() != cols_) throw InvalidArgError("FqMatrix: row length mismatch");
    std::copy(v.begin(), v.end(), data_.begin() + size_t{i} * cols_);
}

FqMatrix FqMatrix::transpose() const {
    FqMatrix t(F_, cols_, rows_);
    for (uint32_t i = 0; i < rows_; ++i)
        for (uint32_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
    return t;
}

FqMatrix FqMatrix::mul(const FqMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw InvalidArgError("FqMatrix: dimension mismatch in product");
    FqMatrix out(F_, rows_, rhs.cols_);
    for (uint32_t i = 0; i < rows_; ++i) {
        for (uint32_t t = 0; t < cols_; ++t) {
            const uint32_t a = at(i, t);
            if (a == 0) continue;
            for (uint32_t j = 0; j < rhs.cols_; ++j) {
                out.set(i, j, F_->add(out.at(i, j), F_->mul(a, rhs.at(t, j))));
            }
        }
    }
    return out;
}

FqMatrix FqMatrix::from_rows(FqFieldPtr F, uint32_t cols, const std::vector<FqVec>& rows) {
    FqMatrix out(std::move(F), static_cast<uint32_t>(rows.size()), cols);
    for (uint32_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw InvalidArgError("FqMatrix: row length mismatch");
        out.set_row(i, rows[i]);
    }
    return out;
}

FqMatrix FqMatrix::vstack(const FqMatrix& top, const FqMatrix& bottom) {
    if (top.cols_ != bottom.cols_) throw InvalidArgError("FqMatrix: vstack width mismatch");
    FqMatrix out(top.F_, top.rows_ + bottom.rows_, top.cols_);
    std::copy(top.data_.begin(), top.data_.end(), out.data_.begin());
    std::copy(bottom.data_.begin(), bottom.data_.end(),
              out.data_.begin() + top.data_.size());
    return out;
}

std::vector<uint32_t> FqMatrix::rref() {
    std::vector<uint32_t> pivots;
    uint32_t r = 0;
    for (uint32_t col = 0; col < cols_ && r < rows_; ++col) {
        uint32_t pivot = rows_;
        for (uint32_t i = r; i < rows_; ++i) {
            if (at(i, col) != 0) {
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
        const uint32_t inv = F_->inv(at(r, col));
        for (uint32_t j = col; j < cols_; ++j) set(r, j, F_->mul(at(r, j), inv));
        for (uint32_t i = 0; i < rows_; ++i) {
            if (i == r) continue;
            const uint32_t f = at(i, col);
            if (f == 0) continue;
            for (uint32_t j = col; j < cols_; ++j) {
                set(i, j, F_->sub(at(i, j), F_->mul(f, at(r, j))));
            }
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

uint32_t FqMatrix::rank() const {
    FqMatrix copy = *this;
    return static_cast<uint32_t>(copy.rref().size());
}

FqMatrix FqMatrix::right_nullspace() const {
    FqMatrix red = *this;
    const std::vector<uint32_t> pivots = red.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (uint32_t p : pivots) is_pivot[p] = true;
    std::vector<FqVec> rows;
    for (uint32_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        FqVec x(cols_, 0);
        x[f] = 1;
        for (uint32_t i = 0; i < pivots.size(); ++i) {
            x[pivots[i]] = F_->neg(red.at(i, f));
        }
        rows.push_back(std::move(x));
    }
    return FqMatrix::from_rows(F_, cols_, rows);
}

bool FqMatrix::operator==(const FqMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

FqSubspace FqSubspace::zero(FqFieldPtr F, uint32_t n) {
    return FqSubspace(n, FqMatrix(std::move(F), 0, n));
}

FqSubspace FqSubspace::full(FqFieldPtr F, uint32_t n) {
    FqMatrix id(F, n, n);
    for (uint32_t i = 0; i < n; ++i) id.set(i, i, 1);
    return FqSubspace(n, std::move(id));
}

FqSubspace FqSubspace::span_of(FqFieldPtr F, uint32_t n, const std::vector<FqVec>& vectors) {
    for (const auto& v : vectors)
        if (v.size() != n) throw InvalidArgError("FqSubspace: vector length != ambient dimension");
    FqMatrix stacked = FqMatrix::from_rows(F, n, vectors);
    const uint32_t rank = static_cast<uint32_t>(stacked.rref().size());
    FqMatrix basis(F, rank, n);
    for (uint32_t i = 0; i < rank; ++i)
        for (uint32_t j = 0; j < n; ++j) basis.set(i, j, stacked.at(i, j));
    return FqSubspace(n, std::move(basis));
}

FqSubspace FqSubspace::from_rref_exact(FqMatrix basis, uint32_t n) {
    if (basis.cols() != n) throw InvalidArgError("FqSubspace: basis width != ambient dimension");
    std::vector<FqVec> rows;
    for (uint32_t i = 0; i < basis.rows(); ++i) rows.push_back(basis.row(i));
    FqSubspace canonical = span_of(basis.field(), n, rows);
    if (canonical.dim() != basis.rows() || !(canonical.basis() == basis))
        throw InvalidArgError("FqSubspace: basis is not in reduced row echelon form");
    return canonical;
}

bool FqSubspace::contains(const FqVec& v) const {
    if (v.size() != n_) throw InvalidArgError("FqSubspace: vector length != ambient dimension");
    // Reduce v against the echelon basis: the pivot of each row is its
    // leading nonzero entry.
    const auto& F = *field();
    FqVec r = v;
    for (uint32_t i = 0; i < dim(); ++i) {
        uint32_t pivot_col = n_;
        for (uint32_t j = 0; j < n_; ++j) {
            if (basis_.at(i, j) != 0) {
                pivot_col = j;
                break;
            }
        }
        if (pivot_col == n_) continue;
        const uint32_t c = r[pivot_col];
        if (c != 0) {
            for (uint32_t j = 0; j < n_; ++j) r[j] = F.sub(r[j], F.mul(c, basis_.at(i, j)));
        }
    }
    for (uint32_t x : r)
        if (x) return false;
    return true;
}

bool FqSubspace::contains(const FqSubspace& other) const {
    if (other.ambient_dim() != n_) return false;
    for (uint32_t i = 0; i < other.dim(); ++i) {
        if (!contains(other.basis().row(i))) return false;
    }
    return true;
}

uint64_t FqSubspace::element_count() const {
    uint64_t n = 1;
    const uint32_t q = field()->q();
    for (uint32_t i = 0; i < dim(); ++i) {
        if (n > UINT64_MAX / q) throw GuardError("FqSubspace: q^dim does not fit in 64 bits");
        n *= q;
    }
    return n;
}

FqVec FqSubspace::element_at(uint64_t idx) const {
    const auto& F = *field();
    FqVec out(n_, 0);
    for (uint32_t i = 0; i < dim(); ++i) {
        const uint32_t c = static_cast<uint32_t>(idx % F.q());
        idx /= F.q();
        if (c == 0) continue;
        for (uint32_t j = 0; j < n_; ++j) out[j] = F.add(out[j], F.mul(c, basis_.at(i, j)));
    }
    return out;
}

std::vector<FqVec> FqSubspace::elements() const {
    const uint64_t count = element_count();
    check_guard(count, "FqSubspace::elements");
    std::vector<FqVec> out;
    out.reserve(count);
    for (uint64_t i = 0; i < count; ++i) out.push_back(element_at(i));
    return out;
}

bool FqSubspace::operator==(const FqSubspace& rhs) const {
    return n_ == rhs.n_ && basis_ == rhs.basis_;
}

bool FqSubspace::operator<(const FqSubspace& rhs) const {
    if (n_ != rhs.n_) return n_ < rhs.n_;
    if (dim() != rhs.dim()) return dim() < rhs.dim();
    return basis_.data() < rhs.basis_.data();
}

FqSubspace sum(const FqSubspace& a, const FqSubspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw InvalidArgError("sum: ambient dimension mismatch");
    std::vector<FqVec> rows;
    for (uint32_t i = 0; i < a.dim(); ++i) rows.push_back(a.basis().row(i));
    for (uint32_t i = 0; i < b.dim(); ++i) rows.push_back(b.basis().row(i));
    return FqSubspace::span_of(a.field(), a.ambient_dim(), rows);
}

FqSubspace intersect(const FqSubspace& a, const FqSubspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw InvalidArgError("intersect: ambient dimension mismatch");
    const auto& F = a.field();
    const uint32_t n = a.ambient_dim();
    // Left null space of the stacked basis system: coefficients (c | d) with
    // c*A + d*B = 0 give intersection vectors c*A.
    FqMatrix stacked = FqMatrix::vstack(a.basis(), b.basis());
    FqMatrix ln = stacked.transpose().right_nullspace();
    std::vector<FqVec> vecs;
    for (uint32_t i = 0; i < ln.rows(); ++i) {
        FqVec v(n, 0);
        for (uint32_t t = 0; t < a.dim(); ++t) {
            const uint32_t c = ln.at(i, t);
            if (c == 0) continue;
            for (uint32_t j = 0; j < n; ++j) v[j] = F->add(v[j], F->mul(c, a.basis().at(t, j)));
        }
        vecs.push_back(std::move(v));
    }
    FqSubspace result = FqSubspace::span_of(F, n, vecs);
    // Built-in cross-check: the dimension formula is an identity.
    const uint32_t sum_dim = sum(a, b).dim();
    if (a.dim() + b.dim() != sum_dim + result.dim())
        throw InternalError("intersect: dimension formula violated");
    return result;
}

FqSubspace orthogonal_complement(const FqSubspace& v) {
    if (v.dim() == 0) return FqSubspace::full(v.field(), v.ambient_dim());
    FqMatrix ns = v.basis().right_nullspace();
    std::vector<FqVec> rows;
    for (uint32_t i = 0; i < ns.rows(); ++i) rows.push_back(ns.row(i));
    return FqSubspace::span_of(v.field(), v.ambient_dim(), rows);
}

FqSubspace complement_in(const FqSubspace& v, const FqSubspace& w) {
    if (v.ambient_dim() != w.ambient_dim())
        throw InvalidArgError("complement_in: ambient dimension mismatch");
    if (!w.contains(v)) throw InvalidArgError("complement_in: V is not a subspace of W");
    const uint64_t count = w.element_count();
    check_guard(count, "complement_in");
    // Sort W by ambient index so "canonical vector order" is unambiguous.
    std::vector<std::pair<uint64_t, FqVec>> pool;
    pool.reserve(count);
    for (uint64_t i = 0; i < count; ++i) {
        FqVec x = w.element_at(i);
        pool.emplace_back(vec_to_index(x, w.field()->q()), std::move(x));
    }
    std::sort(pool.begin(), pool.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    std::vector<FqVec> picked;
    FqSubspace span = v;
    for (const auto& [idx, x] : pool) {
        if (span.dim() == w.dim()) break;
        if (span.contains(x)) continue;
        picked.push_back(x);
        std::vector<FqVec> gens;
        for (uint32_t i = 0; i < span.dim(); ++i) gens.push_back(span.basis().row(i));
        gens.push_back(x);
        span = FqSubspace::span_of(w.field(), w.ambient_dim(), gens);
    }
    return FqSubspace::span_of(w.field(), w.ambient_dim(), picked);
}

SubspaceEnumerator::SubspaceEnumerator(FqFieldPtr F, uint32_t n, uint32_t d)
    : F_(std::move(F)), n_(n), d_(d) {
    if (d_ > n_) {
        done_ = true;
        return;
    }
    pivots_.resize(d_);
    for (uint32_t i = 0; i < d_; ++i) pivots_[i] = i;
    load_profile();
}

void SubspaceEnumerator::load_profile() {
    // Free cells: entries to the right of each pivot that are not themselves
    // in a pivot column.
    free_cells_.clear();
    std::vector<bool> is_pivot(n_, false);
    for (uint32_t p : pivots_) is_pivot[p] = true;
    for (uint32_t i = 0; i < d_; ++i) {
        for (uint32_t j = pivots_[i] + 1; j < n_; ++j) {
            if (!is_pivot[j]) free_cells_.emplace_back(i, j);
        }
    }
    filling_.assign(free_cells_.size(), 0);
}

bool SubspaceEnumerator::advance_filling() {
    for (size_t i = 0; i < filling_.size(); ++i) {
        if (++filling_[i] < F_->q()) return true;
        filling_[i] = 0;
    }
    return false;
}

bool SubspaceEnumerator::advance_profile() {
    // Next combination of pivot columns in lexicographic order.
    if (d_ == 0) return false;
    uint32_t i = d_;
    while (i-- > 0) {
        if (pivots_[i] + 1 <= n_ - d_ + i) {
            ++pivots_[i];
            for (uint32_t j = i + 1; j < d_; ++j) pivots_[j] = pivots_[j - 1] + 1;
            return true;
        }
    }
    return false;
}

bool SubspaceEnumerator::next(FqSubspace& out) {
    if (done_) return false;
    FqMatrix basis(F_, d_, n_);
    for (uint32_t i = 0; i < d_; ++i) basis.set(i, pivots_[i], 1);
    for (size_t t = 0; t < free_cells_.size(); ++t) {
        basis.set(free_cells_[t].first, free_cells_[t].second, filling_[t]);
    }
    out = FqSubspace::from_rref_exact(std::move(basis), n_);
    if (!advance_filling()) {
        if (!advance_profile()) {
            done_ = true;
        } else {
            load_profile();
        }
    }
    return true;
}

uint64_t gaussian_binomial(uint32_t n, uint32_t d, uint32_t q) {
    if (d > n) return 0;
    d = std::min(d, n - d);
    // [n choose d]_q = prod_i (q^{n-i} - 1) / (q^{i+1} - 1); integral at
    // every step when evaluated as a rising product.
    unsigned __int128 num = 1;
    const unsigned __int128 cap = (unsigned __int128)1 << 100;
    for (uint32_t i = 0; i < d; ++i) {
        unsigned __int128 top = 1;
        for (uint32_t t = 0; t < n - i; ++t) {
            top *= q;
            if (top > cap) throw GuardError("gaussian_binomial: intermediate overflow");
        }
        top -= 1;
        unsigned __int128 bot = 1;
        for (uint32_t t = 0; t < i + 1; ++t) bot *= q;
        bot -= 1;
        num = num * top / bot;
        if (num > UINT64_MAX) throw GuardError("gaussian_binomial: count does not fit in 64 bits");
    }
    return static_cast<uint64_t>(num);
}

std::vector<FqSubspace> enumerate_subspaces(FqFieldPtr F, uint32_t n, uint32_t d) {
    check_guard(gaussian_binomial(n, d, F->q()), "enumerate_subspaces");
    std::vector<FqSubspace> out;
    SubspaceEnumerator it(F, n, d);
    FqSubspace s = FqSubspace::zero(F, n);
    while (it.next(s)) out.push_back(s);
    return out;
}

std::vector<FqSubspace> enumerate_subspaces_up_to(FqFieldPtr F, uint32_t n, uint32_t dmax) {
    std::vector<FqSubspace> out;
    for (uint32_t d = 0; d <= std::min(dmax, n); ++d) {
        auto part = enumerate_subspaces(F, n, d);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

FqSubspace sample_subspace(FqFieldPtr F, uint32_t n, uint32_t d, Rng& rng) {
    if (d > n) throw InvalidArgError("sample_subspace: d > n");
    if (d == 0) return FqSubspace::zero(F, n);
    for (;;) {
        std::vector<FqVec> rows(d, FqVec(n));
        for (auto& r : rows)
            for (auto& x : r) x = static_cast<uint32_t>(rng.below(F->q()));
        FqSubspace s = FqSubspace::span_of(F, n, rows);
        if (s.dim() == d) return s;
    }
}

uint64_t vec_to_index(const FqVec& v, uint32_t q) {
    uint64_t idx = 0;
    for (size_t i = v.size(); i-- > 0;) idx = idx * q + v[i];
    return idx;
}

FqVec vec_from_index(uint64_t idx, uint32_t n, uint32_t q) {
    FqVec v(n);
    for (uint32_t i = 0; i < n; ++i) {
        v[i] = static_cast<uint32_t>(idx % q);
        idx /= q;
    }
    return v;
}

}  // namespace rml
