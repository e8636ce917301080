#include "rml/fq.hpp"

#include <algorithm>

#include "rml/errors.hpp"

namespace rml {

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

namespace {

// Arithmetic in F_p on residues, used to bootstrap the F_q tables.
struct PrimeOps {
    uint32_t p;
    uint32_t add(uint32_t a, uint32_t b) const { return (a + b) % p; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>((uint64_t{a} * b) % p);
    }
};

using PPoly = std::vector<uint32_t>;  // over F_p, little-endian residues

PPoly ptrim(PPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

PPoly pmul(const PrimeOps& P, const PPoly& a, const PPoly& b) {
    if (a.empty() || b.empty()) return {};
    PPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            c[i + j] = P.add(c[i + j], P.mul(a[i], b[j]));
        }
    }
    return ptrim(std::move(c));
}

// Remainder modulo monic f.
PPoly pmod(const PrimeOps& P, PPoly a, const PPoly& f) {
    const size_t d = f.size() - 1;
    while (a.size() > d) {
        const uint32_t lead = a.back();
        const size_t shift = a.size() - 1 - d;
        if (lead != 0) {
            for (size_t i = 0; i < d; ++i) {
                a[shift + i] = P.add(a[shift + i], P.neg(P.mul(lead, f[i])));
            }
        }
        a.pop_back();
    }
    return a;
}

}  // namespace

FqFieldPtr FqField::make(uint32_t p, uint32_t e) {
    if (!is_prime_u32(p)) throw InvalidArgError("FqField: p = " + std::to_string(p) + " is not prime");
    if (e == 0) throw InvalidArgError("FqField: e must be positive");
    FqPoly modulus;
    if (e == 1) {
        modulus = {0, 1};  // y
    } else {
        auto Fp = FqField::make(p, 1);
        modulus = fqpoly::first_irreducible(*Fp, e);
    }
    return FqFieldPtr(new FqField(p, e, std::move(modulus)));
}

FqFieldPtr FqField::make(uint32_t p, uint32_t e, FqPoly base_modulus) {
    if (!is_prime_u32(p)) throw InvalidArgError("FqField: p = " + std::to_string(p) + " is not prime");
    if (e == 0) throw InvalidArgError("FqField: e must be positive");
    if (base_modulus.size() != e + 1 || base_modulus.back() != 1)
        throw InvalidArgError("FqField: modulus must be monic of degree e");
    for (uint32_t c : base_modulus)
        if (c >= p) throw InvalidArgError("FqField: modulus coefficient out of range");
    if (e > 1) {
        auto Fp = FqField::make(p, 1);
        if (!fqpoly::irreducible(*Fp, base_modulus))
            throw InvalidArgError("FqField: modulus is reducible");
    }
    return FqFieldPtr(new FqField(p, e, std::move(base_modulus)));
}

FqField::FqField(uint32_t p, uint32_t e, FqPoly modulus)
    : p_(p), e_(e), modulus_(std::move(modulus)) {
    uint64_t q = 1;
    for (uint32_t i = 0; i < e; ++i) q *= p;
    if (q > 1024) throw GuardError("FqField: q = " + std::to_string(q) + " exceeds table guard 1024");
    q_ = static_cast<uint32_t>(q);

    PrimeOps P{p_};
    // Index <-> polynomial over F_p.
    auto to_poly = [&](uint32_t idx) {
        PPoly f;
        while (idx) {
            f.push_back(idx % p_);
            idx /= p_;
        }
        return f;
    };
    auto to_index = [&](const PPoly& f) {
        uint32_t idx = 0;
        for (size_t i = f.size(); i-- > 0;) idx = idx * p_ + f[i];
        return idx;
    };

    add_.resize(uint64_t{q_} * q_);
    mul_.resize(uint64_t{q_} * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);
    for (uint32_t a = 0; a < q_; ++a) {
        const PPoly fa = to_poly(a);
        PPoly na(fa.size());
        for (size_t i = 0; i < fa.size(); ++i) na[i] = P.neg(fa[i]);
        neg_[a] = to_index(ptrim(na));
        for (uint32_t b = 0; b < q_; ++b) {
            const PPoly fb = to_poly(b);
            PPoly s(std::max(fa.size(), fb.size()), 0);
            for (size_t i = 0; i < fa.size(); ++i) s[i] = fa[i];
            for (size_t i = 0; i < fb.size(); ++i) s[i] = P.add(s[i], fb[i]);
            add_[uint64_t{a} * q_ + b] = to_index(ptrim(s));
            mul_[uint64_t{a} * q_ + b] = to_index(pmod(P, pmul(P, fa, fb), modulus_));
        }
    }
    for (uint32_t a = 1; a < q_; ++a) {
        for (uint32_t b = 1; b < q_; ++b) {
            if (mul_[uint64_t{a} * q_ + b] == 1) {
                inv_[a] = b;
                break;
            }
        }
        if (inv_[a] == 0) throw InternalError("FqField: element without inverse; modulus reducible?");
    }
}

uint32_t FqField::inv(uint32_t a) const {
    if (a == 0) throw MathError("FqField: division by zero");
    return inv_[a];
}

uint32_t FqField::pow(uint32_t a, uint64_t n) const {
    uint32_t r = 1;
    while (n) {
        if (n & 1) r = mul(r, a);
        a = mul(a, a);
        n >>= 1;
    }
    return r;
}

uint32_t FqField::from_residues(const std::vector<uint32_t>& r) const {
    if (r.size() != e_) throw InvalidArgError("FqField: residue vector has wrong length");
    uint32_t idx = 0;
    for (size_t i = r.size(); i-- > 0;) {
        if (r[i] >= p_) throw InvalidArgError("FqField: residue out of range");
        idx = idx * p_ + r[i];
    }
    return idx;
}

std::vector<uint32_t> FqField::residues(uint32_t a) const {
    std::vector<uint32_t> r(e_);
    for (uint32_t i = 0; i < e_; ++i) {
        r[i] = a % p_;
        a /= p_;
    }
    return r;
}

namespace fqpoly {

FqPoly trim(FqPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

int degree(const FqPoly& f) { return static_cast<int>(f.size()) - 1; }

bool is_zero(const FqPoly& f) { return f.empty(); }

FqPoly add(const FqField& F, const FqPoly& a, const FqPoly& b) {
    FqPoly c(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] = F.add(c[i], b[i]);
    return trim(std::move(c));
}

FqPoly sub(const FqField& F, const FqPoly& a, const FqPoly& b) {
    FqPoly c(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) c[i] = F.sub(c[i], b[i]);
    return trim(std::move(c));
}

FqPoly mul(const FqField& F, const FqPoly& a, const FqPoly& b) {
    if (a.empty() || b.empty()) return {};
    FqPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
        }
    }
    return trim(std::move(c));
}

FqPoly scale(const FqField& F, const FqPoly& a, uint32_t c) {
    if (c == 0) return {};
    FqPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
    return trim(std::move(r));
}

FqPoly mod(const FqField& F, FqPoly a, const FqPoly& f) {
    if (f.empty() || f.back() != 1) throw InvalidArgError("fqpoly::mod: modulus must be monic");
    const size_t d = f.size() - 1;
    while (a.size() > d) {
        const uint32_t lead = a.back();
        const size_t shift = a.size() - 1 - d;
        if (lead != 0) {
            for (size_t i = 0; i < d; ++i) {
                a[shift + i] = F.sub(a[shift + i], F.mul(lead, f[i]));
            }
        }
        a.pop_back();
    }
    return trim(std::move(a));
}

FqPoly mulmod(const FqField& F, const FqPoly& a, const FqPoly& b, const FqPoly& f) {
    return mod(F, mul(F, a, b), f);
}

FqPoly powmod(const FqField& F, FqPoly base, uint64_t n, const FqPoly& f) {
    FqPoly r{1};
    base = mod(F, std::move(base), f);
    while (n) {
        if (n & 1) r = mulmod(F, r, base, f);
        base = mulmod(F, base, base, f);
        n >>= 1;
    }
    return r;
}

FqPoly gcd(const FqField& F, FqPoly a, FqPoly b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        // Make b monic so that mod() applies.
        FqPoly bm = scale(F, b, F.inv(b.back()));
        FqPoly r = mod(F, a, bm);
        a = std::move(bm);
        b = std::move(r);
    }
    if (!a.empty()) a = scale(F, a, F.inv(a.back()));
    return a;
}

std::pair<FqPoly, FqPoly> divmod(const FqField& F, FqPoly a, const FqPoly& b) {
    if (b.empty()) throw MathError("fqpoly::divmod: division by zero polynomial");
    if (a.size() < b.size()) return {{}, trim(std::move(a))};
    const uint32_t lead_inv = F.inv(b.back());
    FqPoly q(a.size() - b.size() + 1, 0);
    for (size_t shift = q.size(); shift-- > 0;) {
        const uint32_t c = F.mul(a[shift + b.size() - 1], lead_inv);
        if (c == 0) continue;
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) {
            a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
        }
    }
    a.resize(b.size() - 1);
    return {trim(std::move(q)), trim(std::move(a))};
}

std::pair<FqPoly, uint32_t> invmod(const FqField& F, const FqPoly& a, const FqPoly& f) {
    // Extended Euclid with (r0, u0) = (f, 0), (r1, u1) = (a, 1); invariant
    // u_i * a = r_i (mod f).
    FqPoly r0 = f, r1 = mod(F, a, f);
    FqPoly u0 = {}, u1 = {1};
    if (r1.empty()) throw MathError("fqpoly::invmod: inversion of zero");
    while (degree(r1) > 0) {
        auto [q, r2] = divmod(F, r0, r1);
        FqPoly u2 = sub(F, u0, mul(F, q, u1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        u0 = std::move(u1);
        u1 = std::move(u2);
        if (r1.empty()) throw MathError("fqpoly::invmod: element not invertible modulo f");
    }
    // r1 is a nonzero constant c with u1*a = c (mod f).
    return {mod(F, u1, f), r1[0]};
}

bool irreducible(const FqField& F, const FqPoly& f) {
    if (f.empty() || f.back() != 1) throw InvalidArgError("fqpoly::irreducible: f must be monic");
    const uint32_t n = static_cast<uint32_t>(f.size() - 1);
    if (n == 0) return false;
    if (n == 1) return true;
    // Rabin: X^{q^n} == X mod f, and gcd(X^{q^{n/r}} - X, f) = 1 for every
    // prime r dividing n. Frobenius iterates h_{j+1} = h_j^q mod f.
    std::vector<uint32_t> prime_divisors;
    uint32_t nn = n;
    for (uint32_t d = 2; d * d <= nn; ++d) {
        if (nn % d == 0) {
            prime_divisors.push_back(d);
            while (nn % d == 0) nn /= d;
        }
    }
    if (nn > 1) prime_divisors.push_back(nn);

    const FqPoly X = {0, 1};
    std::vector<FqPoly> frob(n + 1);
    frob[0] = X;
    for (uint32_t j = 1; j <= n; ++j) {
        frob[j] = powmod(F, frob[j - 1], F.q(), f);
    }
    if (sub(F, frob[n], X) != FqPoly{}) return false;
    for (uint32_t r : prime_divisors) {
        FqPoly g = gcd(F, sub(F, frob[n / r], X), f);
        if (degree(g) != 0) return false;
    }
    return true;
}

FqPoly first_irreducible(const FqField& F, uint32_t deg) {
    if (deg == 0) throw InvalidArgError("first_irreducible: degree must be positive");
    // Count the non-leading coefficient vector as a little-endian base-q
    // integer from 0 upward; the first irreducible wins. Deterministic, so
    // experiments reproduce without shipping polynomial tables.
    std::vector<uint32_t> digits(deg, 0);
    for (;;) {
        FqPoly f(deg + 1, 0);
        for (uint32_t i = 0; i < deg; ++i) f[i] = digits[i];
        f[deg] = 1;
        if (irreducible(F, f)) return f;
        // Odometer increment.
        uint32_t pos = 0;
        while (pos < deg) {
            if (++digits[pos] < F.q()) break;
            digits[pos] = 0;
            ++pos;
        }
        if (pos == deg) throw InternalError("first_irreducible: exhausted all candidates");
    }
}

}  // namespace fqpoly

}  // namespace rml
