#include "rml/patterns.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "rml/errors.hpp"

namespace rml {

KernelPattern::KernelPattern(uint32_t k, std::vector<PatternEntry> entries) : k_(k) {
    if (k_ == 0) throw InvalidArgError("KernelPattern: k must be positive");
    if (entries.empty()) throw InvalidArgError("KernelPattern: ambient dimension unknown without entries");
    n_ = entries[0].subspace.ambient_dim();
    // Canonical form: drop zero subspaces (they join the implicit zero
    // slots), merge duplicates, sort by the canonical subspace key.
    std::map<FqSubspace, uint32_t> merged;
    for (auto& e : entries) {
        if (e.subspace.ambient_dim() != n_)
            throw InvalidArgError("KernelPattern: mixed ambient dimensions");
        if (e.multiplicity == 0) throw InvalidArgError("KernelPattern: zero multiplicity");
        if (e.subspace.is_zero()) continue;
        merged[e.subspace] += e.multiplicity;
    }
    uint64_t total = 0;
    for (auto& [s, d] : merged) {
        entries_.push_back(PatternEntry{s, d});
        total += d;
    }
    if (total > k_) throw InvalidArgError("KernelPattern: multiplicities exceed k");
}

uint32_t KernelPattern::zero_slots() const {
    uint32_t used = 0;
    for (const auto& e : entries_) used += e.multiplicity;
    return k_ - used;
}

const FqSubspace* KernelPattern::slot(uint32_t i) const {
    for (const auto& e : entries_) {
        if (i < e.multiplicity) return &e.subspace;
        i -= e.multiplicity;
    }
    return nullptr;  // one of the implicit zero slots
}

bool KernelPattern::operator==(const KernelPattern& rhs) const {
    if (k_ != rhs.k_ || n_ != rhs.n_ || entries_.size() != rhs.entries_.size()) return false;
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (!(entries_[i].subspace == rhs.entries_[i].subspace) ||
            entries_[i].multiplicity != rhs.entries_[i].multiplicity)
            return false;
    }
    return true;
}

bool is_gkp(const KernelPattern& p) {
    const auto& entries = p.entries();
    const uint32_t l = p.order();
    // Subsets containing any zero slot hold automatically (0 <= k - |Omega|
    // whenever |Omega| <= k), so only nonzero entries matter.
    for (uint32_t mask = 1; mask < (1u << l); ++mask) {
        std::optional<FqSubspace> inter;
        uint32_t weight = 0;
        for (uint32_t i = 0; i < l; ++i) {
            if (!(mask & (1u << i))) continue;
            weight += entries[i].multiplicity;
            inter = inter ? intersect(*inter, entries[i].subspace) : entries[i].subspace;
        }
        if (inter->dim() + weight > p.k()) return false;
    }
    return true;
}

namespace {

// Checks dim(intersection over Omega) <= k - sum of weights over Omega for
// every nonempty Omega.
bool weighted_family_ok(const std::vector<FqSubspace>& v, const std::vector<uint32_t>& weight,
                        uint32_t k) {
    const uint32_t l = static_cast<uint32_t>(v.size());
    for (uint32_t mask = 1; mask < (1u << l); ++mask) {
        std::optional<FqSubspace> inter;
        uint64_t w = 0;
        for (uint32_t i = 0; i < l; ++i) {
            if (!(mask & (1u << i))) continue;
            w += weight[i];
            inter = inter ? intersect(*inter, v[i]) : v[i];
        }
        if (inter->dim() + w > k) return false;
    }
    return true;
}

// Greedy padding of entry i up to target dimension, preserving the weighted
// constraint family; candidate vectors in canonical ambient order. The
// existence theorems guarantee a feasible candidate at every step, so
// exhausting candidates signals a bug.
void pad_family(std::vector<FqSubspace>& v, const std::vector<uint32_t>& weight, uint32_t k,
                const std::vector<uint32_t>& target_dim) {
    const auto& F = v[0].field();
    const uint32_t n = v[0].ambient_dim();
    uint64_t ambient_count = 1;
    for (uint32_t i = 0; i < n; ++i) ambient_count *= F->q();
    check_guard(ambient_count, "hall padding candidate scan");
    for (size_t i = 0; i < v.size(); ++i) {
        while (v[i].dim() < target_dim[i]) {
            bool advanced = false;
            for (uint64_t idx = 1; idx < ambient_count; ++idx) {
                FqVec cand = vec_from_index(idx, n, F->q());
                if (v[i].contains(cand)) continue;
                std::vector<FqVec> gens;
                for (uint32_t r = 0; r < v[i].dim(); ++r) gens.push_back(v[i].basis().row(r));
                gens.push_back(cand);
                FqSubspace grown = FqSubspace::span_of(F, n, gens);
                std::vector<FqSubspace> trial = v;
                trial[i] = grown;
                if (weighted_family_ok(trial, weight, k)) {
                    v[i] = std::move(grown);
                    advanced = true;
                    break;
                }
            }
            if (!advanced)
                throw InternalError("hall padding: no feasible candidate, contradicting the theorem");
        }
    }
}

}  // namespace

std::vector<FqSubspace> hall_pad_dual(const std::vector<FqSubspace>& v) {
    const uint32_t k = static_cast<uint32_t>(v.size());
    if (k == 0) return {};
    std::vector<uint32_t> weight(k, 1);
    if (!weighted_family_ok(v, weight, k))
        throw InvalidArgError("hall_pad_dual: intersection hypothesis violated");
    std::vector<FqSubspace> out = v;
    pad_family(out, weight, k, std::vector<uint32_t>(k, k - 1));
    for (size_t i = 0; i < out.size(); ++i) {
        if (out[i].dim() != k - 1 || !out[i].contains(v[i]))
            throw InternalError("hall_pad_dual: postcondition failed");
    }
    if (!weighted_family_ok(out, weight, k)) throw InternalError("hall_pad_dual: postcondition failed");
    return out;
}

std::vector<FqSubspace> hall_pad_multiplicity(const std::vector<FqSubspace>& v,
                                              const std::vector<uint32_t>& delta, uint32_t k) {
    if (v.size() != delta.size()) throw InvalidArgError("hall_pad_multiplicity: length mismatch");
    if (v.empty()) return {};
    if (!weighted_family_ok(v, delta, k))
        throw InvalidArgError("hall_pad_multiplicity: weighted hypothesis violated");
    std::vector<uint32_t> target(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        if (delta[i] > k) throw InvalidArgError("hall_pad_multiplicity: delta exceeds k");
        target[i] = k - delta[i];
    }
    std::vector<FqSubspace> out = v;
    pad_family(out, delta, k, target);
    for (size_t i = 0; i < out.size(); ++i) {
        if (out[i].dim() != target[i] || !out[i].contains(v[i]))
            throw InternalError("hall_pad_multiplicity: postcondition failed");
    }
    if (!weighted_family_ok(out, delta, k))
        throw InternalError("hall_pad_multiplicity: postcondition failed");
    return out;
}

namespace {

// Streams set partitions of [l] through restricted growth strings.
struct RgsIter {
    uint32_t l;
    std::vector<uint32_t> a;
    bool first = true;
    explicit RgsIter(uint32_t l) : l(l), a(l, 0) {}
    bool next(std::vector<std::vector<uint32_t>>& blocks) {
        if (l == 0) return false;
        if (!first) {
            // Find the rightmost position that can be incremented.
            uint32_t i = l;
            for (;;) {
                if (i-- == 1) return false;  // a[0] is pinned to 0
                uint32_t maxprev = 0;
                for (uint32_t j = 0; j < i; ++j) maxprev = std::max(maxprev, a[j]);
                if (a[i] <= maxprev) {
                    ++a[i];
                    for (uint32_t j = i + 1; j < l; ++j) a[j] = 0;
                    break;
                }
            }
        }
        first = false;
        uint32_t s = 0;
        for (uint32_t x : a) s = std::max(s, x + 1);
        blocks.assign(s, {});
        for (uint32_t i = 0; i < l; ++i) blocks[a[i]].push_back(i);
        return true;
    }
};

}  // namespace

OrderEllVerdict order_ell_characterize(const std::vector<FqSubspace>& v, uint32_t k, uint32_t d) {
    const uint32_t l = static_cast<uint32_t>(v.size());
    if (l == 0) throw InvalidArgError("order_ell_characterize: empty family");
    if (l > 8) throw GuardError("order_ell_characterize: partition guard l <= 8 exceeded");
    if (d > k) throw InvalidArgError("order_ell_characterize: d > k");
    for (const auto& s : v) {
        if (s.dim() > k) throw InvalidArgError("order_ell_characterize: subspace dimension exceeds k");
    }
    // Intersection dims of all nonempty index subsets, shared by both the
    // partition checks and the composition search.
    std::vector<std::optional<FqSubspace>> inter(1u << l);
    std::vector<uint32_t> idim(1u << l, 0);
    for (uint32_t mask = 1; mask < (1u << l); ++mask) {
        const uint32_t low = mask & (mask - 1);
        const uint32_t bit = static_cast<uint32_t>(__builtin_ctz(mask));
        inter[mask] = low ? intersect(*inter[low], v[bit]) : v[bit];
        idim[mask] = inter[mask]->dim();
    }

    OrderEllVerdict verdict;
    RgsIter it(l);
    std::vector<std::vector<uint32_t>> blocks;
    while (it.next(blocks)) {
        uint64_t total = 0;
        for (const auto& b : blocks) {
            uint32_t mask = 0;
            for (uint32_t i : b) mask |= 1u << i;
            total += idim[mask];
        }
        if (total > uint64_t{blocks.size() - 1} * k + d) {
            verdict.ok = false;
            verdict.violating_partition = blocks;
            return verdict;
        }
    }

    // The partition inequalities hold; search compositions of k - d into l
    // nonneg parts, smallest lexicographic first, for the multiplicity form.
    const uint32_t budget = k - d;
    std::vector<uint32_t> delta(l, 0);
    auto weighted_ok = [&]() {
        for (uint32_t mask = 1; mask < (1u << l); ++mask) {
            uint64_t w = 0;
            for (uint32_t i = 0; i < l; ++i)
                if (mask & (1u << i)) w += delta[i];
            if (idim[mask] + w > k) return false;
        }
        return true;
    };
    // Odometer over all vectors with entries in [0, budget] summing to budget.
    std::function<bool(uint32_t, uint32_t)> search = [&](uint32_t pos, uint32_t left) -> bool {
        if (pos + 1 == l) {
            delta[pos] = left;
            return weighted_ok();
        }
        for (uint32_t x = 0; x <= left; ++x) {
            delta[pos] = x;
            if (search(pos + 1, left - x)) return true;
        }
        return false;
    };
    if (!search(0, budget))
        throw InternalError("order_ell_characterize: composition search failed despite partitions");
    verdict.ok = true;
    verdict.deltas = delta;
    return verdict;
}

bool AttainmentCertificate::verify() const {
    if (m.rows() != pattern.k() || m.cols() != pattern.k()) return false;
    if (!m.det_nonzero()) return false;
    for (uint32_t slot = 0; slot < pattern.k(); ++slot) {
        const FqSubspace* v = pattern.slot(slot);
        if (v == nullptr) continue;  // zero slot: no constraint
        // Row m_slot times G*A must vanish for A the canonical basis of V.
        ExtMatrix ga = generator.mul_fq(v->basis().transpose());
        for (uint32_t j = 0; j < ga.cols(); ++j) {
            Elt s = m.tower()->zero();
            for (uint32_t t = 0; t < pattern.k(); ++t) s = s + m.at(slot, t) * ga.at(t, j);
            if (!s.is_zero()) return false;
        }
    }
    return true;
}

std::optional<AttainmentCertificate> attain(const ExtMatrix& g, const KernelPattern& p) {
    if (!is_gkp(p)) throw InvalidArgError("attain: pattern is not a generic kernel pattern");
    if (g.rows() != p.k()) throw InvalidArgError("attain: generator row count != pattern k");
    if (g.cols() != p.ambient_dim()) throw InvalidArgError("attain: ambient dimension mismatch");
    const TowerPtr& t = g.tower();
    const uint32_t k = p.k();

    std::vector<FqSubspace> v;
    std::vector<uint32_t> delta;
    for (const auto& e : p.entries()) {
        v.push_back(e.subspace);
        delta.push_back(e.multiplicity);
    }
    const uint32_t d = p.zero_slots();

    // Pad entries to dimension k - delta_i, then take left null spaces of
    // G*A'_i; each should contribute exactly delta_i rows and together they
    // must assemble into a direct sum of dimension k - d.
    std::vector<FqSubspace> padded;
    if (!v.empty()) padded = hall_pad_multiplicity(v, delta, k);
    std::vector<std::vector<Elt>> rows;
    for (size_t i = 0; i < padded.size(); ++i) {
        ExtMatrix ga = g.mul_fq(padded[i].basis().transpose());
        ExtMatrix null = ga.left_nullspace();
        if (null.rows() != delta[i]) return std::nullopt;
        for (uint32_t r = 0; r < null.rows(); ++r) rows.push_back(null.row(r));
    }
    if (!rows.empty()) {
        ExtMatrix stacked = ExtMatrix::from_rows(t, k, rows);
        if (stacked.rank() != k - d) return std::nullopt;
    }
    // Extend to a basis of F^k by greedy pivoting over standard basis
    // vectors in index order.
    std::vector<std::vector<Elt>> full = rows;
    for (uint32_t j = 0; j < k && full.size() < k; ++j) {
        std::vector<Elt> e(k, t->zero());
        e[j] = t->one();
        std::vector<std::vector<Elt>> trial = full;
        trial.push_back(e);
        if (ExtMatrix::from_rows(t, k, trial).rank() == trial.size()) full.push_back(std::move(e));
    }
    if (full.size() != k) throw InternalError("attain: basis extension failed");
    AttainmentCertificate cert{ExtMatrix::from_rows(t, k, full), p, g};
    if (!cert.verify()) throw InternalError("attain: certificate failed verification");
    return cert;
}

std::vector<KernelPattern> enumerate_gkp_patterns(const FqFieldPtr& f, uint32_t n, uint32_t k,
                                                  uint32_t ell) {
    if (k == 0) throw InvalidArgError("enumerate_gkp_patterns: k must be positive");
    // Distinct nonzero subspaces of dimension <= k-1, canonical order.
    std::vector<FqSubspace> pool;
    for (uint32_t dd = 1; dd <= std::min(k - 1, n); ++dd) {
        auto part = enumerate_subspaces(f, n, dd);
        pool.insert(pool.end(), part.begin(), part.end());
    }
    std::sort(pool.begin(), pool.end());
    const uint32_t max_order = std::min(ell, k);

    std::vector<KernelPattern> out;
    // The all-zero pattern has order 0 and is always generic.
    out.emplace_back(k, std::vector<PatternEntry>{PatternEntry{FqSubspace::zero(f, n), 1}});

    std::vector<uint32_t> chosen;
    std::function<void(uint32_t)> choose = [&](uint32_t start) {
        if (!chosen.empty()) {
            // All positive multiplicity assignments summing to <= k.
            std::vector<uint32_t> mult(chosen.size(), 1);
            for (;;) {
                uint64_t total = 0;
                for (uint32_t x : mult) total += x;
                if (total <= k) {
                    std::vector<PatternEntry> entries;
                    for (size_t i = 0; i < chosen.size(); ++i)
                        entries.push_back(PatternEntry{pool[chosen[i]], mult[i]});
                    KernelPattern p(k, std::move(entries));
                    if (is_gkp(p)) out.push_back(std::move(p));
                }
                // Odometer with entries in [1, k].
                size_t pos = 0;
                for (;;) {
                    if (pos == mult.size()) break;
                    if (++mult[pos] <= k) break;
                    mult[pos] = 1;
                    ++pos;
                }
                if (pos == mult.size()) break;
            }
        }
        if (chosen.size() == max_order) return;
        for (uint32_t i = start; i < pool.size(); ++i) {
            chosen.push_back(i);
            choose(i + 1);
            chosen.pop_back();
        }
    };
    // Upper bound on the candidate count: subspace choices times
    // multiplicity assignments.
    uint64_t bound = 1;
    for (uint32_t i = 0; i < max_order; ++i) {
        bound *= (pool.size() + 1) * uint64_t{k};
        if (bound > (uint64_t{1} << 40)) break;
    }
    check_guard(bound, "enumerate_gkp_patterns");
    choose(0);
    return out;
}

MsTuple::MsTuple(uint32_t k, std::vector<MsPart> parts, Embedding embed)
    : k_(k), parts_(std::move(parts)), embed_(std::move(embed)) {
    if (parts_.empty()) throw InvalidArgError("MsTuple: at least one part required");
    uint64_t total = 0;
    for (const auto& p : parts_) {
        if (p.r == 0) throw InvalidArgError("MsTuple: part multiplicity must be positive");
        if (p.subspace.dim() + p.r > k_)
            throw InvalidArgError("MsTuple: dim V_i + r_i exceeds k");
        if (p.subspace.ambient_dim() != embed_.images.size())
            throw InvalidArgError("MsTuple: subspace ambient dimension != embedding arity");
        total += p.r;
    }
    if (total != k_) throw InvalidArgError("MsTuple: part multiplicities must sum to k");
    if (!embed_.independent()) throw MathError("MsTuple: embedding images are F_q-dependent");
}

ExtMatrix ms_matrix(const MsTuple& s) {
    const TowerPtr& t = s.embedding().tower;
    const uint32_t k = s.k();
    ExtMatrix out(t, k, k);
    uint32_t row = 0;
    for (const auto& part : s.parts()) {
        const uint32_t tshift = k - part.subspace.dim() - part.r;
        const QLinPoly f = power_compose_annihilator(part.subspace, s.embedding(), tshift);
        for (uint32_t j = 0; j < part.r; ++j) {
            const QLinPoly fj = f.frob_shift(j);
            for (uint32_t col = 0; col < k; ++col) out.set(row, col, fj.coeff(col));
            ++row;
        }
    }
    return out;
}

bool ms_condition(const MsTuple& s) {
    const auto& parts = s.parts();
    const uint32_t l = static_cast<uint32_t>(parts.size());
    for (uint32_t mask = 1; mask < (1u << l); ++mask) {
        std::optional<FqSubspace> inter;
        uint64_t rsum = 0;
        uint32_t maxterm = 0;
        for (uint32_t i = 0; i < l; ++i) {
            if (!(mask & (1u << i))) continue;
            rsum += parts[i].r;
            maxterm = std::max(maxterm, parts[i].subspace.dim() + parts[i].r);
            inter = inter ? intersect(*inter, parts[i].subspace) : parts[i].subspace;
        }
        if (inter->dim() + rsum > maxterm) return false;
    }
    return true;
}

MsCheck ms_theorem_check(const MsTuple& s) {
    MsCheck check;
    check.condition = ms_condition(s);
    check.det_zero = !ms_matrix(s).det_nonzero();
    return check;
}

std::optional<std::vector<QLinPoly>> ms_null_witness(const MsTuple& s) {
    const TowerPtr& t = s.embedding().tower;
    ExtMatrix m = ms_matrix(s);
    ExtMatrix null = m.left_nullspace();
    if (null.rows() == 0) return std::nullopt;
    // Split a null row into per-part coefficient blocks.
    std::vector<QLinPoly> gs;
    uint32_t offset = 0;
    for (const auto& part : s.parts()) {
        std::vector<Elt> coeffs;
        for (uint32_t j = 0; j < part.r; ++j) coeffs.push_back(null.at(0, offset + j));
        gs.push_back(QLinPoly::from_coeffs(t, std::move(coeffs)));
        offset += part.r;
    }
    // Exact verification by composition.
    QLinPoly acc = QLinPoly::zero(t);
    uint32_t idx = 0;
    for (const auto& part : s.parts()) {
        const uint32_t tshift = s.k() - part.subspace.dim() - part.r;
        const QLinPoly f = power_compose_annihilator(part.subspace, s.embedding(), tshift);
        acc = acc + compose(gs[idx], f);
        ++idx;
    }
    if (!acc.is_zero()) throw InternalError("ms_null_witness: composition does not vanish");
    return gs;
}

}  // namespace rml
