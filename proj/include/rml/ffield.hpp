#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "rml/fq.hpp"

namespace rml {

class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

// An element of F_{q^m}: length-m vector of F_q coordinates (field element
// indices), little-endian in the power basis of the extension modulus. The
// all-zero vector is 0 and (1, 0, ..., 0) is 1, so equality is
// coordinate-wise.
class Elt {
   public:
    Elt() = default;  // detached; any arithmetic on it throws

    const std::vector<uint32_t>& coords() const { return c_; }
    const TowerPtr& tower() const { return tw_; }
    bool is_zero() const;

    Elt operator+(const Elt& rhs) const;
    Elt operator-(const Elt& rhs) const;
    Elt operator-() const;
    Elt operator*(const Elt& rhs) const;
    Elt inv() const;
    // a^{q^j}
    Elt frob(uint64_t j = 1) const;

    bool operator==(const Elt& rhs) const;
    bool operator!=(const Elt& rhs) const { return !(*this == rhs); }

   private:
    friend class FieldTower;
    Elt(TowerPtr tw, std::vector<uint32_t> c) : tw_(std::move(tw)), c_(std::move(c)) {}

    TowerPtr tw_;
    std::vector<uint32_t> c_;
};

// The tower F_p c F_q c F_{q^m}. Immutable after construction; all element
// operations are pure, so towers can be shared freely across threads.
class FieldTower : public std::enable_shared_from_this<FieldTower> {
   public:
    // Canonical moduli: first irreducible polynomials in the documented
    // counting order. The seed only drives a randomized construction-time
    // self-check of the arithmetic.
    static TowerPtr create(uint32_t p, uint32_t e, uint32_t m, uint64_t seed = 0);
    // Explicit moduli for cross-checking against external tables.
    static TowerPtr create_with_moduli(uint32_t p, uint32_t e, uint32_t m, FqPoly base_modulus,
                                       FqPoly ext_modulus);

    uint32_t p() const { return base_->p(); }
    uint32_t e() const { return base_->e(); }
    uint32_t m() const { return m_; }
    uint32_t q() const { return base_->q(); }
    const FqFieldPtr& base_field() const { return base_; }
    // Over F_q (element indices), monic of degree m.
    const FqPoly& ext_modulus() const { return ext_modulus_; }

    Elt zero() const;
    Elt one() const;
    Elt gen() const;  // the residue class of X, a power-basis generator
    Elt element(std::vector<uint32_t> coords) const;
    Elt embed_base(uint32_t fq_index) const;
    bool in_base_field(const Elt& a) const;

    // q^m, guarded below 2^64; element <-> index in the canonical coefficient
    // counting order (index 0 is the zero element).
    uint64_t element_count() const;
    Elt from_index(uint64_t idx) const;
    uint64_t to_index(const Elt& a) const;

    Elt add(const Elt& a, const Elt& b) const;
    Elt sub(const Elt& a, const Elt& b) const;
    Elt neg(const Elt& a) const;
    Elt mul(const Elt& a, const Elt& b) const;
    Elt inv(const Elt& a) const;
    // Scaling by an F_q element is coordinate-wise; used heavily by the
    // G*A style products.
    Elt scale_base(const Elt& a, uint32_t fq_index) const;
    Elt frobenius(const Elt& a, uint64_t j = 1) const;

    bool compatible(const FieldTower& other) const;

   private:
    FieldTower(FqFieldPtr base, uint32_t m, FqPoly ext_modulus);
    void self_test(uint64_t seed) const;

    FqFieldPtr base_;
    uint32_t m_;
    FqPoly ext_modulus_;
    std::vector<std::vector<uint32_t>> frob_rows_;  // (X^i)^q mod ext_modulus
};

// Free-function forms used throughout the checkers.
TowerPtr tower_create(uint32_t p, uint32_t e, uint32_t m, uint64_t seed = 0);
inline Elt inv(const Elt& a) { return a.inv(); }
inline Elt frobenius_q(const Elt& a, uint64_t j) { return a.frob(j); }
// Materializes all q^m elements in canonical order; guarded.
std::vector<Elt> enumerate_elements(const TowerPtr& t);

}  // namespace rml
