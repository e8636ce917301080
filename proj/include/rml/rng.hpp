#pragma once

#include <cstdint>
#include <random>

namespace rml {

// Deterministic RNG for experiments. mt19937_64 output is fully specified by
// the standard; bounded draws use rejection sampling rather than
// std::uniform_int_distribution (whose mapping is implementation-defined), so
// identical seeds give identical streams on every platform.
class Rng {
   public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next() { return engine_(); }

    // Uniform in [0, bound). bound must be positive.
    uint64_t below(uint64_t bound);

    // Stream splitter: per-trial seeds derived as hash(seed, stream).
    static uint64_t derive(uint64_t seed, uint64_t stream);

   private:
    std::mt19937_64 engine_;
};

}  // namespace rml
