#include "rml/errors.hpp"

#include <atomic>

namespace rml {

namespace {
std::atomic<uint64_t> g_guard_limit{uint64_t{1} << 22};
}

uint64_t guard_limit() { return g_guard_limit.load(); }

void set_guard_limit(uint64_t limit) { g_guard_limit.store(limit); }

void check_guard(uint64_t count, const std::string& what) {
    if (count > guard_limit()) {
        throw GuardError(what + ": " + std::to_string(count) + " exceeds guard limit " +
                         std::to_string(guard_limit()));
    }
}

}  // namespace rml
