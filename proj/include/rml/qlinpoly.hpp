#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rml/ext_matrix.hpp"
#include "rml/ffield.hpp"
#include "rml/fqspace.hpp"

namespace rml {

// A q-linearized polynomial sum_i c_i X^{q^i} over F_{q^m}. Coefficients are
// little-endian by q-degree with a nonzero trailing coefficient; the zero
// polynomial has an empty coefficient vector and no q-degree.
class QLinPoly {
   public:
    static QLinPoly zero(TowerPtr t) { return QLinPoly(std::move(t), {}); }
    static QLinPoly identity(const TowerPtr& t);  // X
    static QLinPoly from_coeffs(TowerPtr t, std::vector<Elt> coeffs);

    const TowerPtr& tower() const { return tw_; }
    bool is_zero() const { return c_.empty(); }
    std::optional<size_t> q_degree() const;
    const std::vector<Elt>& coeffs() const { return c_; }
    Elt coeff(size_t i) const;  // zero beyond the stored length

    Elt eval(const Elt& a) const;
    QLinPoly operator+(const QLinPoly& rhs) const;
    QLinPoly operator-(const QLinPoly& rhs) const;
    QLinPoly scale(const Elt& c) const;
    // compose(X^{q^t}, f): coefficients raised to q^t, indices shifted by t.
    QLinPoly frob_shift(size_t t) const;

    bool operator==(const QLinPoly& rhs) const { return c_ == rhs.c_; }
    bool operator!=(const QLinPoly& rhs) const { return !(*this == rhs); }

   private:
    QLinPoly(TowerPtr t, std::vector<Elt> c) : tw_(std::move(t)), c_(std::move(c)) {}
    TowerPtr tw_;
    std::vector<Elt> c_;
};

// g(f(X)) with the twisted coefficient rule h_k = sum_{i+j=k} g_i * f_j^{q^i}.
QLinPoly compose(const QLinPoly& g, const QLinPoly& f);

// F_q-linear embedding of F_q^n into F_{q^m} sending e_j to images[j].
struct Embedding {
    TowerPtr tower;
    std::vector<Elt> images;

    static Embedding power_basis(const TowerPtr& t, uint32_t n);
    Elt apply(const FqVec& v) const;
    std::vector<Elt> apply_basis(const FqSubspace& v) const;
    bool independent() const;
};

// Matrix with entry (i, j) = alphas[j]^{q^i} for i in [0, rows).
ExtMatrix moore_matrix(const std::vector<Elt>& alphas, uint32_t rows);
// Nonzero exactly when the alphas are F_q-linearly independent.
bool moore_det_nonzero(const std::vector<Elt>& alphas);

// The monic q-linearized polynomial of q-degree dim V whose zero set is the
// embedded image of V, built from Moore determinants rather than by
// expanding the q^{dim V}-fold root product.
QLinPoly annihilator(const FqSubspace& v, const Embedding& embed);
// annihilator(V)^{q^t}: coefficients to the q^t, indices shifted by t.
QLinPoly power_compose_annihilator(const FqSubspace& v, const Embedding& embed, size_t t);
// {u in domain : f(embed(u)) = 0}, solved as an F_q-linear system over the
// coefficient expansion (no enumeration).
FqSubspace kernel_of(const QLinPoly& f, const FqSubspace& domain, const Embedding& embed);

}  // namespace rml
