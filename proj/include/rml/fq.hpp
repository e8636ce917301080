#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace rml {

// Polynomial over some F_q, little-endian coefficients given as field element
// indices, no trailing zeros in normalized form.
using FqPoly = std::vector<uint32_t>;

class FqField;
using FqFieldPtr = std::shared_ptr<const FqField>;

// The field F_q = F_p[y]/(base_modulus), q = p^e. Elements are indices in
// [0, q): the base-p digits of the index are the F_p coordinates of the
// element in the power basis of y, little-endian. Arithmetic is table-driven;
// construction is guarded at q <= 1024.
class FqField {
   public:
    // Canonical field: base_modulus is the first monic irreducible of degree
    // e over F_p, where "first" counts the non-leading coefficient vector as
    // a little-endian base-p integer.
    static FqFieldPtr make(uint32_t p, uint32_t e);
    // Explicit modulus hook for cross-checking against external tables.
    static FqFieldPtr make(uint32_t p, uint32_t e, FqPoly base_modulus);

    uint32_t p() const { return p_; }
    uint32_t e() const { return e_; }
    uint32_t q() const { return q_; }
    const FqPoly& modulus() const { return modulus_; }

    uint32_t add(uint32_t a, uint32_t b) const { return add_[a * q_ + b]; }
    uint32_t sub(uint32_t a, uint32_t b) const { return add_[a * q_ + neg_[b]]; }
    uint32_t neg(uint32_t a) const { return neg_[a]; }
    uint32_t mul(uint32_t a, uint32_t b) const { return mul_[a * q_ + b]; }
    uint32_t inv(uint32_t a) const;
    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }
    uint32_t pow(uint32_t a, uint64_t n) const;

    // Index <-> little-endian F_p residue digits (length e).
    uint32_t from_residues(const std::vector<uint32_t>& r) const;
    std::vector<uint32_t> residues(uint32_t a) const;

    bool same_field(const FqField& other) const {
        return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
    }

   private:
    FqField(uint32_t p, uint32_t e, FqPoly modulus);

    uint32_t p_, e_, q_;
    FqPoly modulus_;  // over F_p, monic, degree e
    std::vector<uint32_t> add_, mul_, neg_, inv_;
};

// Polynomial arithmetic over an FqField, used for modulus selection and for
// the extension-field arithmetic backbone.
namespace fqpoly {

FqPoly trim(FqPoly f);
int degree(const FqPoly& f);  // -1 for the zero polynomial
bool is_zero(const FqPoly& f);
FqPoly add(const FqField& F, const FqPoly& a, const FqPoly& b);
FqPoly sub(const FqField& F, const FqPoly& a, const FqPoly& b);
FqPoly mul(const FqField& F, const FqPoly& a, const FqPoly& b);
FqPoly scale(const FqField& F, const FqPoly& a, uint32_t c);
// Remainder of a modulo monic f.
FqPoly mod(const FqField& F, FqPoly a, const FqPoly& f);
FqPoly mulmod(const FqField& F, const FqPoly& a, const FqPoly& b, const FqPoly& f);
FqPoly powmod(const FqField& F, FqPoly base, uint64_t n, const FqPoly& f);
FqPoly gcd(const FqField& F, FqPoly a, FqPoly b);
std::pair<FqPoly, FqPoly> divmod(const FqField& F, FqPoly a, const FqPoly& b);
// On success g is a nonzero constant c with u*a = c (mod f); returns (u, c).
std::pair<FqPoly, uint32_t> invmod(const FqField& F, const FqPoly& a, const FqPoly& f);

// Rabin irreducibility test for monic f.
bool irreducible(const FqField& F, const FqPoly& f);
// First monic irreducible of the given degree in the canonical counting
// order of the non-leading coefficient vector.
FqPoly first_irreducible(const FqField& F, uint32_t degree);

}  // namespace fqpoly

bool is_prime_u32(uint32_t n);

}  // namespace rml
