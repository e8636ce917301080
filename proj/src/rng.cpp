#include "rml/rng.hpp"

#include "rml/errors.hpp"

namespace rml {

uint64_t Rng::below(uint64_t bound) {
    if (bound == 0) throw InvalidArgError("Rng::below: bound must be positive");
    // Rejection sampling over the largest multiple of bound.
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t v;
    do {
        v = next();
    } while (v >= limit);
    return v % bound;
}

uint64_t Rng::derive(uint64_t seed, uint64_t stream) {
    // splitmix64 finalizer over the combined state.
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace rml
