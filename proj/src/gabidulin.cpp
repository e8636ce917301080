#include "rml/gabidulin.hpp"

#include <algorithm>

#include "rml/errors.hpp"
#include "rml/qlinpoly.hpp"

namespace rml {

LinearCode::LinearCode(TowerPtr t, ExtMatrix generator) : tw_(std::move(t)), g_(std::move(generator)) {
    if (g_.rows() == 0 || g_.cols() == 0 || g_.rows() > g_.cols())
        throw InvalidArgError("LinearCode: need 1 <= k <= n");
    if (g_.rank() != g_.rows()) throw InvalidArgError("LinearCode: generator is not full rank");
}

GabidulinCode::GabidulinCode(TowerPtr t, uint32_t k, std::vector<Elt> alphas)
    : tw_(std::move(t)), k_(k), alphas_(std::move(alphas)) {
    const uint32_t n = static_cast<uint32_t>(alphas_.size());
    if (k_ == 0 || k_ > n) throw InvalidArgError("GabidulinCode: need 1 <= k <= n");
    if (n > tw_->m()) throw InvalidArgError("GabidulinCode: need n <= m");
    if (rank_fq(alphas_) != n)
        throw InvalidArgError("GabidulinCode: evaluation points are F_q-dependent");
    g_ = moore_matrix(alphas_, k_);
}

FqMatrix coordinate_matrix(const ExtVector& v) {
    if (v.empty()) throw InvalidArgError("coordinate_matrix: empty word");
    const TowerPtr& t = v[0].tower();
    FqMatrix coords(t->base_field(), static_cast<uint32_t>(v.size()), t->m());
    for (uint32_t i = 0; i < v.size(); ++i) {
        for (uint32_t j = 0; j < t->m(); ++j) coords.set(i, j, v[i].coords()[j]);
    }
    return coords;
}

uint32_t rank_fq(const ExtVector& v) {
    if (v.empty()) return 0;
    return coordinate_matrix(v).rank();
}

FqSubspace kernel_subspace(const ExtVector& v) {
    const FqMatrix coords = coordinate_matrix(v);
    // u * coords = 0  <=>  coords^T u = 0.
    FqMatrix null = coords.transpose().right_nullspace();
    std::vector<FqVec> rows;
    for (uint32_t i = 0; i < null.rows(); ++i) rows.push_back(null.row(i));
    return FqSubspace::span_of(coords.field(), static_cast<uint32_t>(v.size()), rows);
}

ExtVector encode(const GabidulinCode& c, const ExtVector& message) {
    if (message.size() != c.k()) throw InvalidArgError("encode: message length != k");
    ExtVector out(c.n(), c.tower()->zero());
    for (uint32_t j = 0; j < c.n(); ++j) {
        for (uint32_t i = 0; i < c.k(); ++i) {
            if (!message[i].is_zero()) out[j] = out[j] + message[i] * c.generator().at(i, j);
        }
    }
    return out;
}

uint32_t min_rank_distance(const LinearCode& c) {
    const TowerPtr& t = c.tower();
    const uint64_t field_size = t->element_count();
    uint64_t total = 1;
    for (uint32_t i = 0; i < c.k(); ++i) {
        if (total > UINT64_MAX / field_size)
            throw GuardError("min_rank_distance: q^{mk} message scan overflows");
        total *= field_size;
    }
    check_guard(total, "min_rank_distance");
    // Scan messages, not stored codewords, to avoid materializing the code.
    std::vector<uint64_t> digits(c.k(), 0);
    uint32_t best = c.n() + 1;
    for (uint64_t idx = 1; idx < total; ++idx) {
        uint32_t pos = 0;
        while (true) {
            if (++digits[pos] < field_size) break;
            digits[pos] = 0;
            ++pos;
        }
        ExtVector word(c.n(), t->zero());
        for (uint32_t i = 0; i < c.k(); ++i) {
            if (digits[i] == 0) continue;
            const Elt coef = t->from_index(digits[i]);
            for (uint32_t j = 0; j < c.n(); ++j) word[j] = word[j] + coef * c.generator().at(i, j);
        }
        best = std::min(best, rank_fq(word));
        if (best == 1) break;  // cannot get smaller for a nonzero word
    }
    return best;
}

MrdVerdict mrd_witness(const LinearCode& c) {
    check_guard(gaussian_binomial(c.n(), c.k(), c.tower()->q()), "mrd_witness subspace scan");
    SubspaceEnumerator it(c.tower()->base_field(), c.n(), c.k());
    FqSubspace v = FqSubspace::zero(c.tower()->base_field(), c.n());
    while (it.next(v)) {
        ExtMatrix ga = c.generator().mul_fq(v.basis().transpose());
        if (!ga.det_nonzero()) return MrdVerdict{false, v};
    }
    return MrdVerdict{};
}

bool is_mrd(const LinearCode& c) { return mrd_witness(c).mrd; }

std::vector<Elt> dual_basis(const std::vector<Elt>& alphas, uint32_t k) {
    const uint32_t n = static_cast<uint32_t>(alphas.size());
    if (k == 0 || k >= n) throw InvalidArgError("dual_basis: need 1 <= k < n");
    const TowerPtr& t = alphas[0].tower();
    if (n > t->m()) throw InvalidArgError("dual_basis: need n <= m");
    // The pairing system is equivalent, after applying a global Frobenius
    // power, to M delta = 0 where M is the (n-1)-row Moore matrix of the
    // alphas and delta_i = beta_i^{q^{n-k-1}}. That null space is a line.
    ExtMatrix moore = moore_matrix(alphas, n - 1);
    ExtMatrix null = moore.right_nullspace();
    if (null.rows() != 1) throw MathError("dual_basis: degenerate pairing system");
    const uint64_t back = (uint64_t{t->m()} - ((n - k - 1) % t->m())) % t->m();
    std::vector<Elt> betas(n, t->zero());
    for (uint32_t i = 0; i < n; ++i) betas[i] = null.at(0, i).frob(back);
    // Normalize the scalar ambiguity: first nonzero coordinate becomes 1.
    Elt lead = t->zero();
    for (const Elt& b : betas) {
        if (!b.is_zero()) {
            lead = b;
            break;
        }
    }
    if (lead.is_zero()) throw MathError("dual_basis: degenerate pairing system");
    const Elt scale = lead.inv();
    for (Elt& b : betas) b = b * scale;
    if (!pairings_all_zero(alphas, betas, k) || rank_fq(betas) != n)
        throw MathError("dual_basis: pairing verification failed");
    return betas;
}

bool pairings_all_zero(const std::vector<Elt>& alphas, const std::vector<Elt>& betas, uint32_t k) {
    const uint32_t n = static_cast<uint32_t>(alphas.size());
    const TowerPtr& t = alphas[0].tower();
    ExtMatrix ga = moore_matrix(alphas, k);
    ExtMatrix gb = moore_matrix(betas, n - k);
    for (uint32_t j = 0; j < k; ++j) {
        for (uint32_t h = 0; h < n - k; ++h) {
            Elt s = t->zero();
            for (uint32_t i = 0; i < n; ++i) s = s + ga.at(j, i) * gb.at(h, i);
            if (!s.is_zero()) return false;
        }
    }
    return true;
}

GabidulinCode dual_code(const GabidulinCode& c) {
    return GabidulinCode(c.tower(), c.n() - c.k(), dual_basis(c.alphas(), c.k()));
}

LinearCode dual_code_linear(const LinearCode& c) {
    if (c.k() >= c.n()) throw InvalidArgError("dual_code_linear: dual of a full-dimension code is trivial");
    ExtMatrix h = c.generator().right_nullspace();
    return LinearCode(c.tower(), std::move(h));
}

ExtMatrix column_span_image(const ExtMatrix& g, const FqSubspace& v) {
    if (v.ambient_dim() != g.cols())
        throw InvalidArgError("column_span_image: ambient dimension mismatch");
    ExtMatrix ga = g.mul_fq(v.basis().transpose());
    return ga.transpose().row_space_rref();
}

uint32_t stacked_block_rank(const ExtMatrix& g, const std::vector<FqSubspace>& vs) {
    if (vs.empty()) throw InvalidArgError("stacked_block_rank: empty subspace list");
    const uint32_t l = static_cast<uint32_t>(vs.size());
    if (l == 1) return 0;
    const uint32_t k = g.rows();
    std::vector<ExtMatrix> blocks;
    uint32_t total_cols = 0;
    for (const auto& v : vs) {
        if (v.ambient_dim() != g.cols())
            throw InvalidArgError("stacked_block_rank: ambient dimension mismatch");
        blocks.push_back(g.mul_fq(v.basis().transpose()));
        total_cols += v.dim();
    }
    ExtMatrix big(g.tower(), (l - 1) * k, total_cols);
    std::vector<uint32_t> col_offset(l, 0);
    for (uint32_t i = 1; i < l; ++i) col_offset[i] = col_offset[i - 1] + vs[i - 1].dim();
    for (uint32_t b = 0; b + 1 < l; ++b) {
        const uint32_t row0 = b * k;
        for (uint32_t i = 0; i < k; ++i) {
            for (uint32_t j = 0; j < vs[0].dim(); ++j) big.set(row0 + i, j, blocks[0].at(i, j));
            for (uint32_t j = 0; j < vs[b + 1].dim(); ++j) {
                big.set(row0 + i, col_offset[b + 1] + j, blocks[b + 1].at(i, j));
            }
        }
    }
    return big.rank();
}

std::vector<Elt> sample_independent_alphas(const TowerPtr& t, uint32_t n, Rng& rng) {
    if (n == 0 || n > t->m()) throw InvalidArgError("sample_independent_alphas: need 1 <= n <= m");
    const uint64_t field_size = t->element_count();
    uint64_t span_size = 1;
    for (uint32_t i = 1; i < n; ++i) span_size *= t->q();
    check_guard(span_size, "sample_independent_alphas span materialization");

    std::vector<Elt> picked;
    std::vector<uint64_t> span_indices{0};  // indices of the span of the picks
    for (uint32_t i = 0; i < n; ++i) {
        std::vector<uint64_t> sorted = span_indices;
        std::sort(sorted.begin(), sorted.end());
        // Uniform over the complement by unranking against the sorted span.
        uint64_t u = rng.below(field_size - sorted.size());
        for (uint64_t s : sorted) {
            if (s <= u) ++u;
            else break;
        }
        Elt alpha = t->from_index(u);
        if (i + 1 < n) {
            // Extend the span index set by all shifts of the existing span
            // through the q-1 nonzero multiples of alpha.
            std::vector<uint64_t> grown = span_indices;
            for (uint32_t c = 1; c < t->q(); ++c) {
                const Elt ca = t->scale_base(alpha, c);
                for (uint64_t s : span_indices) {
                    grown.push_back(t->to_index(t->add(t->from_index(s), ca)));
                }
            }
            span_indices = std::move(grown);
        }
        picked.push_back(std::move(alpha));
    }
    return picked;
}

GabidulinCode random_gabidulin(const TowerPtr& t, uint32_t n, uint32_t k, Rng& rng) {
    return GabidulinCode(t, k, sample_independent_alphas(t, n, rng));
}

LinearCode random_linear_code(const TowerPtr& t, uint32_t n, uint32_t k, Rng& rng) {
    const uint64_t field_size = t->element_count();
    for (;;) {
        ExtMatrix g(t, k, n);
        for (uint32_t i = 0; i < k; ++i)
            for (uint32_t j = 0; j < n; ++j) g.set(i, j, t->from_index(rng.below(field_size)));
        if (g.rank() == k) return LinearCode(t, std::move(g));
    }
}

}  // namespace rml
