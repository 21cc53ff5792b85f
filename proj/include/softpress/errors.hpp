#pragma once

#include <stdexcept>
#include <string>

namespace softpress {

/// Enumeration search budget exhausted before the coloring set was covered.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Operation requires a strongly connected digraph / irreducible operator.
struct Reducible : std::runtime_error {
    explicit Reducible(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative eigensolver hit max_iter. Carries the best estimate reached.
struct NoConvergence : std::runtime_error {
    NoConvergence(const std::string& what, double best, long iterations)
        : std::runtime_error(what), best_estimate(best), iterations(iterations) {}
    double best_estimate;
    long iterations;
};

struct NotSymmetric : std::runtime_error {
    explicit NotSymmetric(const std::string& what) : std::runtime_error(what) {}
};

struct StateSpaceTooLarge : std::runtime_error {
    explicit StateSpaceTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct TooLarge : std::runtime_error {
    explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct BadParity : std::invalid_argument {
    explicit BadParity(const std::string& what) : std::invalid_argument(what) {}
};

struct NegativeEntropy : std::runtime_error {
    explicit NegativeEntropy(const std::string& what, double value)
        : std::runtime_error(what), value(value) {}
    double value;
};

struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

struct Unsupported : std::invalid_argument {
    explicit Unsupported(const std::string& what) : std::invalid_argument(what) {}
};

struct EmptySamples : std::invalid_argument {
    explicit EmptySamples(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace softpress
