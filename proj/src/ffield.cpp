#include "rml/ffield.hpp"

#include <algorithm>

#include "rml/errors.hpp"
#include "rml/rng.hpp"

namespace rml {

bool Elt::is_zero() const {
    for (uint32_t x : c_)
        if (x) return false;
    return true;
}

namespace {
const FieldTower& require_tower(const Elt& a) {
    if (!a.tower()) throw InvalidArgError("Elt: operation on detached element");
    return *a.tower();
}
}  // namespace

Elt Elt::operator+(const Elt& rhs) const { return require_tower(*this).add(*this, rhs); }
Elt Elt::operator-(const Elt& rhs) const { return require_tower(*this).sub(*this, rhs); }
Elt Elt::operator-() const { return require_tower(*this).neg(*this); }
Elt Elt::operator*(const Elt& rhs) const { return require_tower(*this).mul(*this, rhs); }
Elt Elt::inv() const { return require_tower(*this).inv(*this); }
Elt Elt::frob(uint64_t j) const { return require_tower(*this).frobenius(*this, j); }

bool Elt::operator==(const Elt& rhs) const {
    if (!tw_ && !rhs.tw_) return true;
    if (!tw_ || !rhs.tw_) return false;
    if (tw_.get() != rhs.tw_.get() && !tw_->compatible(*rhs.tw_)) return false;
    return c_ == rhs.c_;
}

TowerPtr FieldTower::create(uint32_t p, uint32_t e, uint32_t m, uint64_t seed) {
    if (m == 0) throw InvalidArgError("FieldTower: m must be positive");
    FqFieldPtr base = FqField::make(p, e);
    FqPoly ext = (m == 1) ? FqPoly{0, 1} : fqpoly::first_irreducible(*base, m);
    TowerPtr t(new FieldTower(std::move(base), m, std::move(ext)));
    t->self_test(seed);
    return t;
}

TowerPtr FieldTower::create_with_moduli(uint32_t p, uint32_t e, uint32_t m, FqPoly base_modulus,
                                        FqPoly ext_modulus) {
    if (m == 0) throw InvalidArgError("FieldTower: m must be positive");
    FqFieldPtr base = FqField::make(p, e, std::move(base_modulus));
    if (ext_modulus.size() != m + 1 || ext_modulus.back() != 1)
        throw InvalidArgError("FieldTower: ext_modulus must be monic of degree m");
    for (uint32_t c : ext_modulus)
        if (c >= base->q()) throw InvalidArgError("FieldTower: ext_modulus coefficient out of range");
    if (m > 1 && !fqpoly::irreducible(*base, ext_modulus))
        throw InvalidArgError("FieldTower: ext_modulus is reducible over F_q");
    TowerPtr t(new FieldTower(std::move(base), m, std::move(ext_modulus)));
    t->self_test(0);
    return t;
}

TowerPtr tower_create(uint32_t p, uint32_t e, uint32_t m, uint64_t seed) {
    return FieldTower::create(p, e, m, seed);
}

FieldTower::FieldTower(FqFieldPtr base, uint32_t m, FqPoly ext_modulus)
    : base_(std::move(base)), m_(m), ext_modulus_(std::move(ext_modulus)) {
    // Frobenius as an F_q-linear map: precompute (X^i)^q mod f for i < m.
    const FqPoly xq = fqpoly::powmod(*base_, FqPoly{0, 1}, base_->q(), ext_modulus_);
    frob_rows_.resize(m_);
    FqPoly row{1};
    for (uint32_t i = 0; i < m_; ++i) {
        std::vector<uint32_t> padded(m_, 0);
        for (size_t j = 0; j < row.size(); ++j) padded[j] = row[j];
        frob_rows_[i] = std::move(padded);
        if (i + 1 < m_) row = fqpoly::mulmod(*base_, row, xq, ext_modulus_);
    }
}

void FieldTower::self_test(uint64_t seed) const {
    // A couple of seeded smoke checks of the arithmetic tables; full property
    // coverage lives in the test suite.
    Rng rng(Rng::derive(seed, 0x746f776572));
    auto random_elt = [&] {
        std::vector<uint32_t> c(m_);
        for (auto& x : c) x = static_cast<uint32_t>(rng.below(q()));
        return Elt(shared_from_this(), std::move(c));
    };
    for (int iter = 0; iter < 4; ++iter) {
        Elt a = random_elt(), b = random_elt(), c = random_elt();
        if ((a * b) * c != a * (b * c)) throw InternalError("FieldTower: associativity self-test failed");
        if (a * (b + c) != a * b + a * c)
            throw InternalError("FieldTower: distributivity self-test failed");
        if ((a + b).frob() != a.frob() + b.frob())
            throw InternalError("FieldTower: Frobenius additivity self-test failed");
    }
}

Elt FieldTower::zero() const { return Elt(shared_from_this(), std::vector<uint32_t>(m_, 0)); }

Elt FieldTower::one() const { return embed_base(1); }

Elt FieldTower::gen() const {
    std::vector<uint32_t> c(m_, 0);
    if (m_ == 1) {
        // F_{q^1}: X reduces to the negated constant term of the modulus.
        c[0] = base_->neg(ext_modulus_[0]);
    } else {
        c[1] = 1;
    }
    return Elt(shared_from_this(), std::move(c));
}

Elt FieldTower::element(std::vector<uint32_t> coords) const {
    if (coords.size() != m_) throw InvalidArgError("FieldTower: coordinate vector has wrong length");
    for (uint32_t x : coords)
        if (x >= q()) throw InvalidArgError("FieldTower: coordinate out of range");
    return Elt(shared_from_this(), std::move(coords));
}

Elt FieldTower::embed_base(uint32_t fq_index) const {
    if (fq_index >= q()) throw InvalidArgError("FieldTower: F_q index out of range");
    std::vector<uint32_t> c(m_, 0);
    c[0] = fq_index;
    return Elt(shared_from_this(), std::move(c));
}

bool FieldTower::in_base_field(const Elt& a) const {
    for (size_t i = 1; i < a.coords().size(); ++i)
        if (a.coords()[i]) return false;
    return true;
}

uint64_t FieldTower::element_count() const {
    uint64_t n = 1;
    for (uint32_t i = 0; i < m_; ++i) {
        if (n > UINT64_MAX / q()) throw GuardError("FieldTower: q^m does not fit in 64 bits");
        n *= q();
    }
    return n;
}

Elt FieldTower::from_index(uint64_t idx) const {
    std::vector<uint32_t> c(m_);
    for (uint32_t i = 0; i < m_; ++i) {
        c[i] = static_cast<uint32_t>(idx % q());
        idx /= q();
    }
    if (idx) throw InvalidArgError("FieldTower: element index out of range");
    return Elt(shared_from_this(), std::move(c));
}

uint64_t FieldTower::to_index(const Elt& a) const {
    uint64_t idx = 0;
    for (size_t i = a.coords().size(); i-- > 0;) idx = idx * q() + a.coords()[i];
    return idx;
}

bool FieldTower::compatible(const FieldTower& other) const {
    return m_ == other.m_ && ext_modulus_ == other.ext_modulus_ && base_->same_field(*other.base_);
}

namespace {
void require_same(const FieldTower& t, const Elt& a, const Elt& b) {
    if (!a.tower() || !b.tower()) throw InvalidArgError("Elt: operation on detached element");
    const bool a_ok = a.tower().get() == &t || t.compatible(*a.tower());
    const bool b_ok = b.tower().get() == &t || t.compatible(*b.tower());
    if (!a_ok || !b_ok) throw InvalidArgError("FieldTower: tower mismatch");
}
}  // namespace

Elt FieldTower::add(const Elt& a, const Elt& b) const {
    require_same(*this, a, b);
    std::vector<uint32_t> c(m_);
    for (uint32_t i = 0; i < m_; ++i) c[i] = base_->add(a.coords()[i], b.coords()[i]);
    return Elt(shared_from_this(), std::move(c));
}

Elt FieldTower::sub(const Elt& a, const Elt& b) const {
    require_same(*this, a, b);
    std::vector<uint32_t> c(m_);
    for (uint32_t i = 0; i < m_; ++i) c[i] = base_->sub(a.coords()[i], b.coords()[i]);
    return Elt(shared_from_this(), std::move(c));
}

Elt FieldTower::neg(const Elt& a) const {
    std::vector<uint32_t> c(m_);
    for (uint32_t i = 0; i < m_; ++i) c[i] = base_->neg(a.coords()[i]);
    return Elt(shared_from_this(), std::move(c));
}

Elt FieldTower::mul(const Elt& a, const Elt& b) const {
    require_same(*this, a, b);
    // Schoolbook product then reduction modulo the (monic) extension modulus.
    std::vector<uint32_t> prod(2 * m_ - 1, 0);
    for (uint32_t i = 0; i < m_; ++i) {
        const uint32_t ai = a.coords()[i];
        if (ai == 0) continue;
        for (uint32_t j = 0; j < m_; ++j) {
            prod[i + j] = base_->add(prod[i + j], base_->mul(ai, b.coords()[j]));
        }
    }
    for (size_t d = prod.size(); d-- > m_;) {
        const uint32_t lead = prod[d];
        if (lead == 0) continue;
        prod[d] = 0;
        const size_t shift = d - m_;
        for (uint32_t i = 0; i < m_; ++i) {
            prod[shift + i] = base_->sub(prod[shift + i], base_->mul(lead, ext_modulus_[i]));
        }
    }
    prod.resize(m_);
    return Elt(shared_from_this(), std::move(prod));
}

Elt FieldTower::inv(const Elt& a) const {
    if (a.is_zero()) throw MathError("FieldTower: division by zero");
    FqPoly ap = fqpoly::trim(a.coords());
    auto [u, c] = fqpoly::invmod(*base_, ap, ext_modulus_);
    FqPoly r = fqpoly::scale(*base_, u, base_->inv(c));
    std::vector<uint32_t> out(m_, 0);
    for (size_t i = 0; i < r.size(); ++i) out[i] = r[i];
    return Elt(shared_from_this(), std::move(out));
}

Elt FieldTower::scale_base(const Elt& a, uint32_t fq_index) const {
    std::vector<uint32_t> c(m_);
    for (uint32_t i = 0; i < m_; ++i) c[i] = base_->mul(a.coords()[i], fq_index);
    return Elt(shared_from_this(), std::move(c));
}

Elt FieldTower::frobenius(const Elt& a, uint64_t j) const {
    // a^{q^m} = a for every a in F_{q^m}.
    j %= m_;
    std::vector<uint32_t> cur = a.coords();
    for (uint64_t step = 0; step < j; ++step) {
        std::vector<uint32_t> next(m_, 0);
        for (uint32_t i = 0; i < m_; ++i) {
            const uint32_t ci = cur[i];
            if (ci == 0) continue;
            const auto& row = frob_rows_[i];
            for (uint32_t t = 0; t < m_; ++t) {
                next[t] = base_->add(next[t], base_->mul(ci, row[t]));
            }
        }
        cur = std::move(next);
    }
    return Elt(shared_from_this(), std::move(cur));
}

std::vector<Elt> enumerate_elements(const TowerPtr& t) {
    const uint64_t n = t->element_count();
    check_guard(n, "enumerate_elements");
    std::vector<Elt> out;
    out.reserve(n);
    for (uint64_t i = 0; i < n; ++i) out.push_back(t->from_index(i));
    return out;
}

}  // namespace rml
