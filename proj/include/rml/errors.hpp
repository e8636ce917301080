#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rml {

// Failure families. The CLI maps these onto process exit codes:
// InvalidArgError -> 2, GuardError -> 3, theorem violations are reported
// through verdicts (exit 1), InternalError signals a bug in this library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class InvalidArgError : public Error {
   public:
    using Error::Error;
};

class GuardError : public Error {
   public:
    using Error::Error;
};

class MathError : public Error {
   public:
    using Error::Error;
};

class InternalError : public Error {
   public:
    using Error::Error;
};

// Global cap on brute-force enumeration sizes (element scans, subspace
// counts, codeword scans). Raised via set_guard_limit or the CLI env var
// RML_GUARD_OVERRIDE.
uint64_t guard_limit();
void set_guard_limit(uint64_t limit);

// Throws GuardError if count exceeds the current limit.
void check_guard(uint64_t count, const std::string& what);

}  // namespace rml
