#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hq {

// Base class for all toolkit failures a caller may want to catch.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a subgroup closure would exceed its element cap.
struct CapExceeded : Error {
    int64_t cap;
    int64_t reached;
    CapExceeded(int64_t cap_, int64_t reached_)
        : Error("closure cap exceeded: reached " + std::to_string(reached_) +
                " elements with queue still open (cap " + std::to_string(cap_) + ")"),
          cap(cap_), reached(reached_) {}
};

// Thrown when computed data contradicts a structural fact the pipeline
// relies on (an eigenvalue outside F_{q^6}, a fixed-point pattern matching
// no known class, ...). Always a bug or a misused construction, never a
// recoverable user error, so it carries a diagnostic dump in what().
struct InternalInconsistency : Error {
    explicit InternalInconsistency(const std::string& what)
        : Error("internal consistency failure: " + what) {}
};

}  // namespace hq
