#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace elink {

enum class Boundary { open, periodic };

std::string to_string(Boundary b);

// Invalid input or broken precondition; the CLI maps this to exit code 1.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical or physical failure at runtime; the CLI maps this to exit code 2.
struct PhysicsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateGroundState : PhysicsError {
    using PhysicsError::PhysicsError;
};

struct EigensolveFailure : PhysicsError {
    using PhysicsError::PhysicsError;
};

// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
// concurrency). Work items are claimed through a shared counter, so callers
// must write results to disjoint, pre-allocated slots; the output is then
// independent of the schedule.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

} // namespace elink
