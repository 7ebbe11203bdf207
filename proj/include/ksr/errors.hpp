#ifndef KSR_ERRORS_HPP
#define KSR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ksr {

// Invalid caller input: malformed distributions, bad file contents,
// out-of-range indices, violated preconditions the caller controls.
struct InvalidInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A declared operation precondition does not hold (non-homogeneous measure,
// non-real-rooted polynomial, isotropy violation, ...).
struct PreconditionError : InvalidInputError {
    using InvalidInputError::InvalidInputError;
};

// Conditioning produced an empty support.
struct EmptyConditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An explicit enumeration would exceed the configured budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Vector system / graph does not contain a basis (spanning tree).
struct NoBasisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Matrix rank-deficient where an inverse is required.
struct RankDeficientError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Max-entropy dual diverged: target on (or outside) the polytope boundary.
struct BoundaryInfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A quantity that should exist by theory could not be certified numerically.
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal cross-check between two independently computed values failed.
struct InternalConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

// Barrier evaluation requested at a root of the polynomial.
struct AtRootError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Effective resistance across disconnected components.
struct InfiniteResistanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ksr

#endif
