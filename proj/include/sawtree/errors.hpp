#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sawtree {

// Invalid parameters or malformed input. CLI maps this to exit code 3.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A node/step budget ran out. Carries how far the computation got so partial
// results can still be reported. CLI maps this to exit code 2.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::int64_t partial)
        : std::runtime_error(what), partial_(partial) {}
    // Deepest fully completed level (or analogous progress marker).
    std::int64_t partial() const { return partial_; }

private:
    std::int64_t partial_;
};

// Interval refinement hit the end of its truncation schedule while still too
// wide. Carries the widest interval seen. CLI maps this to exit code 2.
class RefinementExhausted : public std::runtime_error {
public:
    RefinementExhausted(const std::string& what, double widest)
        : std::runtime_error(what), widest_(widest) {}
    double widest() const { return widest_; }

private:
    double widest_;
};

}  // namespace sawtree
