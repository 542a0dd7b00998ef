#pragma once

#include <cstddef>
#include <vector>

#include "ripscover/homology.hpp"
#include "ripscover/lp.hpp"

namespace ripscover {

/// Data of the optimal homologous (relative) cycle problem for a chain x:
/// rows are the p-simplices, columns the (p+1)-simplices; the first t fence
/// columns are frozen and the first s fence rows carry free slack.
struct L1Problem {
    std::size_t m = 0;                      // p-simplices
    std::size_t n = 0;                      // (p+1)-simplices
    std::size_t t = 0;                      // frozen fence columns
    std::size_t s = 0;                      // free fence rows
    std::vector<std::size_t> row_simplices;  // fence rows first, then the rest, filtration order
    std::vector<std::size_t> col_simplices;  // fence columns first
    std::vector<Rational> x;                 // input chain in row order
};

L1Problem l1_problem(const Chain& x, bool relative);

struct L1Options {
    LpOptions lp;
    /// Charge the fence slack coordinates a_i in the objective. The optimum does
    /// not depend on it: a free a_i can always zero its coordinate.
    bool charge_fence_slack = true;
};

struct L1Result {
    Chain chain;
    Rational norm;
    Rational input_norm;
    bool exact_lp = false;
    double duality_gap = 0.0;
    std::size_t lp_rows = 0;
    std::size_t lp_columns = 0;
    std::size_t iterations = 0;
};

/// Problem (1): min ||z + B y||_1. Throws NotACycle.
L1Result l1_optimal_cycle(const Chain& z, const L1Options& options = {});

/// Problem (2) on the complex of z with its fence subcomplex. Throws NotARelativeCycle.
L1Result l1_optimal_relative_cycle(const Chain& z, const L1Options& options = {});

/// Exact check that a - b lies in the span of the (p+1)-boundaries of the
/// complex, plus the fence p-simplices in relative mode.
bool differs_by_boundary(const Chain& a, const Chain& b, bool relative);

struct CoverageSet {
    std::vector<int> active;  // vertex indices, sorted
    double r_c = 0.0;
};

/// Vertices of the simplices carrying nonzero coefficients. Throws ZeroChain.
CoverageSet coverage_of_chain(const Chain& z, double r_c = 0.0);

struct MinimalCoverage {
    L1Result optimum;
    CoverageSet coverage;
};

/// Problem (3): the relative optimum for a transported coverage cycle, on the
/// complex the chain lives in (no homology recomputation).
MinimalCoverage minimal_coverage_cycle(const Chain& fz, double r_c, const L1Options& options = {});

/// Closest fraction with denominator at most max_den.
Rational nearest_fraction(double v, long max_den);

}  // namespace ripscover
