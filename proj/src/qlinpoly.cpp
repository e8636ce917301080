#include "rml/qlinpoly.hpp"

#include <algorithm>

#include "rml/errors.hpp"

namespace rml {

QLinPoly QLinPoly::identity(const TowerPtr& t) { return from_coeffs(t, {t->one()}); }

QLinPoly QLinPoly::from_coeffs(TowerPtr t, std::vector<Elt> coeffs) {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    QLinPoly f(std::move(t), std::move(coeffs));
#ifndef NDEBUG
    // Debug-build spot check of additivity on one fixed pair, small towers
    // only.
    if (!f.is_zero() && f.tw_->m() <= 8) {
        const Elt a = f.tw_->gen();
        const Elt b = f.tw_->one();
        if (f.eval(a + b) != f.eval(a) + f.eval(b))
            throw InternalError("QLinPoly: evaluation is not additive");
    }
#endif
    return f;
}

std::optional<size_t> QLinPoly::q_degree() const {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
}

Elt QLinPoly::coeff(size_t i) const { return i < c_.size() ? c_[i] : tw_->zero(); }

Elt QLinPoly::eval(const Elt& a) const {
    Elt acc = tw_->zero();
    Elt power = a;  // a^{q^i}
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i > 0) power = power.frob();
        if (!c_[i].is_zero()) acc = acc + c_[i] * power;
    }
    return acc;
}

QLinPoly QLinPoly::operator+(const QLinPoly& rhs) const {
    std::vector<Elt> out(std::max(c_.size(), rhs.c_.size()), tw_->zero());
    for (size_t i = 0; i < c_.size(); ++i) out[i] = c_[i];
    for (size_t i = 0; i < rhs.c_.size(); ++i) out[i] = out[i] + rhs.c_[i];
    return from_coeffs(tw_, std::move(out));
}

QLinPoly QLinPoly::operator-(const QLinPoly& rhs) const {
    std::vector<Elt> out(std::max(c_.size(), rhs.c_.size()), tw_->zero());
    for (size_t i = 0; i < c_.size(); ++i) out[i] = c_[i];
    for (size_t i = 0; i < rhs.c_.size(); ++i) out[i] = out[i] - rhs.c_[i];
    return from_coeffs(tw_, std::move(out));
}

QLinPoly QLinPoly::scale(const Elt& c) const {
    std::vector<Elt> out;
    out.reserve(c_.size());
    for (const Elt& x : c_) out.push_back(x * c);
    return from_coeffs(tw_, std::move(out));
}

QLinPoly QLinPoly::frob_shift(size_t t) const {
    if (is_zero()) return *this;
    std::vector<Elt> out(c_.size() + t, tw_->zero());
    for (size_t i = 0; i < c_.size(); ++i) out[i + t] = c_[i].frob(t);
    return from_coeffs(tw_, std::move(out));
}

QLinPoly compose(const QLinPoly& g, const QLinPoly& f) {
    const TowerPtr& t = g.tower() ? g.tower() : f.tower();
    if (g.is_zero() || f.is_zero()) return QLinPoly::zero(t);
    const auto& gc = g.coeffs();
    const auto& fc = f.coeffs();
    std::vector<Elt> out(gc.size() + fc.size() - 1, t->zero());
    for (size_t i = 0; i < gc.size(); ++i) {
        if (gc[i].is_zero()) continue;
        for (size_t j = 0; j < fc.size(); ++j) {
            if (fc[j].is_zero()) continue;
            out[i + j] = out[i + j] + gc[i] * fc[j].frob(i);
        }
    }
    return QLinPoly::from_coeffs(t, std::move(out));
}

Embedding Embedding::power_basis(const TowerPtr& t, uint32_t n) {
    if (n > t->m()) throw InvalidArgError("Embedding: power basis needs n <= m");
    std::vector<Elt> images;
    Elt x = t->one();
    const Elt g = t->gen();
    for (uint32_t j = 0; j < n; ++j) {
        images.push_back(x);
        x = x * g;
    }
    return Embedding{t, std::move(images)};
}

Elt Embedding::apply(const FqVec& v) const {
    if (v.size() != images.size()) throw InvalidArgError("Embedding: vector length mismatch");
    Elt acc = tower->zero();
    for (size_t j = 0; j < v.size(); ++j) {
        if (v[j]) acc = acc + tower->scale_base(images[j], v[j]);
    }
    return acc;
}

std::vector<Elt> Embedding::apply_basis(const FqSubspace& v) const {
    std::vector<Elt> out;
    out.reserve(v.dim());
    for (uint32_t i = 0; i < v.dim(); ++i) out.push_back(apply(v.basis().row(i)));
    return out;
}

bool Embedding::independent() const {
    // Rank of the F_q coordinate expansion.
    const uint32_t m = tower->m();
    FqMatrix coords(tower->base_field(), static_cast<uint32_t>(images.size()), m);
    for (uint32_t i = 0; i < images.size(); ++i) {
        for (uint32_t j = 0; j < m; ++j) coords.set(i, j, images[i].coords()[j]);
    }
    return coords.rank() == images.size();
}

ExtMatrix moore_matrix(const std::vector<Elt>& alphas, uint32_t rows) {
    if (alphas.empty()) throw InvalidArgError("moore_matrix: empty evaluation point list");
    const TowerPtr& t = alphas[0].tower();
    ExtMatrix out(t, rows, static_cast<uint32_t>(alphas.size()));
    std::vector<Elt> cur = alphas;
    for (uint32_t i = 0; i < rows; ++i) {
        for (uint32_t j = 0; j < alphas.size(); ++j) {
            if (i > 0) cur[j] = cur[j].frob();
            out.set(i, j, cur[j]);
        }
    }
    return out;
}

bool moore_det_nonzero(const std::vector<Elt>& alphas) {
    if (alphas.empty()) return true;
    return moore_matrix(alphas, static_cast<uint32_t>(alphas.size())).det_nonzero();
}

QLinPoly annihilator(const FqSubspace& v, const Embedding& embed) {
    const TowerPtr& t = embed.tower;
    const uint32_t d = v.dim();
    if (d == 0) return QLinPoly::identity(t);
    const std::vector<Elt> alphas = embed.apply_basis(v);
    // Independence of the embedded basis, checked on the F_q coordinates.
    {
        FqMatrix coords(t->base_field(), d, t->m());
        for (uint32_t i = 0; i < d; ++i)
            for (uint32_t j = 0; j < t->m(); ++j) coords.set(i, j, alphas[i].coords()[j]);
        if (coords.rank() != d)
            throw MathError("annihilator: embedded basis is F_q-dependent");
    }
    // Cofactor expansion of the (d+1) x (d+1) Moore-with-X matrix along the
    // X row: coefficient of X^{q^j} is (-1)^{d+j} det of the d x d matrix of
    // basis powers with exponent q^j removed.
    ExtMatrix powers = moore_matrix(alphas, d + 1).transpose();  // d rows, d+1 exponent cols
    std::vector<Elt> coeffs;
    coeffs.reserve(d + 1);
    for (uint32_t j = 0; j <= d; ++j) {
        ExtMatrix minor(t, d, d);
        for (uint32_t i = 0; i < d; ++i) {
            uint32_t out_col = 0;
            for (uint32_t col = 0; col <= d; ++col) {
                if (col == j) continue;
                minor.set(i, out_col++, powers.at(i, col));
            }
        }
        Elt c = minor.det();
        if ((d + j) % 2 == 1) c = -c;
        coeffs.push_back(std::move(c));
    }
    // Monic normalization; the leading coefficient is the Moore determinant
    // of the basis, nonzero by independence.
    const Elt lead_inv = coeffs[d].inv();
    for (Elt& c : coeffs) c = c * lead_inv;
    return QLinPoly::from_coeffs(t, std::move(coeffs));
}

QLinPoly power_compose_annihilator(const FqSubspace& v, const Embedding& embed, size_t t) {
    return annihilator(v, embed).frob_shift(t);
}

FqSubspace kernel_of(const QLinPoly& f, const FqSubspace& domain, const Embedding& embed) {
    const TowerPtr& t = embed.tower;
    const uint32_t d = domain.dim();
    const uint32_t m = t->m();
    // Images of the domain basis under f(embed(.)), expanded to F_q
    // coordinates; kernel coefficients come from the nullspace.
    FqMatrix sys(t->base_field(), m, d);
    for (uint32_t i = 0; i < d; ++i) {
        const Elt y = f.eval(embed.apply(domain.basis().row(i)));
        for (uint32_t j = 0; j < m; ++j) sys.set(j, i, y.coords()[j]);
    }
    FqMatrix null = sys.right_nullspace();
    std::vector<FqVec> vecs;
    const auto& F = *t->base_field();
    for (uint32_t r = 0; r < null.rows(); ++r) {
        FqVec v(domain.ambient_dim(), 0);
        for (uint32_t i = 0; i < d; ++i) {
            const uint32_t c = null.at(r, i);
            if (c == 0) continue;
            for (uint32_t j = 0; j < domain.ambient_dim(); ++j) {
                v[j] = F.add(v[j], F.mul(c, domain.basis().at(i, j)));
            }
        }
        vecs.push_back(std::move(v));
    }
    return FqSubspace::span_of(t->base_field(), domain.ambient_dim(), vecs);
}

}  // namespace rml
