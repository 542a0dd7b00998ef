#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ripscover/field.hpp"
#include "ripscover/sparse.hpp"

namespace ripscover {

/// min c^T x  s.t.  A x = b,  x_j >= 0 unless free[j].
struct LpProblem {
    std::size_t variables = 0;
    std::vector<Rational> c;
    std::vector<SparseVec<Rational>> rows;  // sparse rows of A over variable indices
    std::vector<Rational> b;
    std::vector<bool> free;  // empty means all nonnegative

    /// Optional starting basis, one column per row (structural, not free). Used
    /// when it is feasible; otherwise phase one runs from the artificial basis.
    std::vector<std::size_t> initial_basis;
};

enum class LpMode {
    Exact,  // rational tableau, Bland's rule
    Float,  // double tableau, Dantzig's rule with a Bland fallback, gap certificate
    Auto,   // Exact for small instances, otherwise Float with an Exact retry when affordable
};

struct LpResult {
    std::vector<double> x;
    double objective = 0.0;
    /// Present in exact mode.
    std::optional<std::vector<Rational>> x_exact;
    std::optional<Rational> objective_exact;
    std::vector<double> dual;  // y with A^T y <= c on nonnegative columns
    double duality_gap = 0.0;
    std::size_t iterations = 0;
    bool exact = false;
};

struct LpOptions {
    LpMode mode = LpMode::Auto;
    /// Tableau entries (rows x columns) below which Auto solves exactly.
    std::size_t exact_limit = 40'000;
    /// Tableau entries below which a failed float certificate is retried exactly.
    std::size_t exact_retry_limit = 400'000;
    double gap_tolerance = 1e-9;
};

/// Throws NumericalFailure when no certified optimum is found, InvalidArgument
/// when the problem is infeasible or unbounded.
LpResult lp_solve(const LpProblem& problem, const LpOptions& options = {});

}  // namespace ripscover
