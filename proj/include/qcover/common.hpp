#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qcover {

// Search/enumeration node budget. Operations that walk combinatorial spaces
// take one of these and throw BudgetExceeded instead of running away.
struct SearchBudget {
    std::uint64_t max_nodes = 50'000'000;
};

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Raised when requested parameters put the construction outside the regime
// where it is defined (e.g. selection probability >= 1, or t < 2).
class InfeasibleRegime : public std::runtime_error {
public:
    explicit InfeasibleRegime(const std::string& what) : std::runtime_error(what) {}
};

// Compensated summation; accumulation stays order-independent enough that
// per-task partial sums merged in index order reproduce bit-identical totals.
class KahanSum {
public:
    void add(double x) {
        double y = x - carry_;
        double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

}  // namespace qcover
