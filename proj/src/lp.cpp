#include "ripscover/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include "ripscover/error.hpp"
#include "ripscover/scenario.hpp"

namespace ripscover {

namespace {

template <class T>
struct Arith;

template <>
struct Arith<double> {
    static constexpr double kTol = 1e-9;
    static constexpr double kClean = 1e-11;
    static bool negative(double v) { return v < -kTol; }
    static bool positive(double v) { return v > kTol; }
    static bool nonzero(double v) { return v != 0.0; }
    static double clean(double v) { return std::abs(v) < kClean ? 0.0 : v; }
    static double from(const Rational& r) { return r.get_d(); }
    static double to_double(double v) { return v; }
    static bool pivotable(double v) { return v > kPivot; }
    static double relaxed(double v) { return v + kTol; }
    static double magnitude(double v) { return std::abs(v); }
    static constexpr double kPivot = 1e-8;
    static bool infeasible(double v) { return v < -1e-7; }
};

template <>
struct Arith<Rational> {
    static bool negative(const Rational& v) { return sgn(v) < 0; }
    static bool positive(const Rational& v) { return sgn(v) > 0; }
    static bool nonzero(const Rational& v) { return sgn(v) != 0; }
    static const Rational& clean(const Rational& v) { return v; }
    static Rational from(const Rational& r) { return r; }
    static double to_double(const Rational& v) { return v.get_d(); }
    static bool pivotable(const Rational& v) { return sgn(v) > 0; }
    static bool infeasible(const Rational& v) { return sgn(v) < 0; }
    static const Rational& relaxed(const Rational& v) { return v; }
    static Rational magnitude(const Rational& v) { return abs(v); }
};

constexpr double kRhsShift = 1e-7;

enum class Outcome { Optimal, Unbounded };

// Dense tableau over structural columns [0, ns) and artificial columns [ns, ns + m).
template <class T>
class Tableau {
public:
    using A = Arith<T>;

    Tableau(std::size_t m, std::size_t ns) : m_(m), ns_(ns), n_(ns + m), t_(m * (n_ + 1), T(0)), d_(n_ + 1, T(0)) {
        basis_.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            at(i, ns + i) = T(1);
            basis_[i] = ns + i;
        }
    }

    T& at(std::size_t i, std::size_t j) { return t_[i * (n_ + 1) + j]; }
    const T& at(std::size_t i, std::size_t j) const { return t_[i * (n_ + 1) + j]; }
    T& rhs(std::size_t i) { return at(i, n_); }
    const T& rhs(std::size_t i) const { return at(i, n_); }
    std::size_t rows() const { return m_; }
    std::size_t structural() const { return ns_; }
    std::size_t basic(std::size_t i) const { return basis_[i]; }
    std::size_t iterations() const { return iterations_; }

    /// Snapshot of the loaded data, used to refactor the tableau.
    void keep_original() { original_ = t_; }

    void pivot(std::size_t r, std::size_t q) {
        eliminate_on(r, q);
        basis_[r] = q;
        ++iterations_;
    }

    /// Column costs over structural and artificial columns; reduced costs follow.
    void set_costs(std::vector<T> c) {
        cost_ = std::move(c);
        price();
    }

    Outcome run(std::size_t cap) {
        std::size_t degenerate = 0;
        std::size_t since_refactor = 0;
        for (;;) {
            if (iterations_ > cap) throw NumericalFailure("simplex iteration limit reached");
            if constexpr (!std::is_same_v<T, Rational>) {
                if (since_refactor >= kRefactorEvery) {
                    refactor();
                    since_refactor = 0;
                }
            }
            std::size_t q = entering(degenerate > kDegenerateStreak);
            if (q == n_) {
                if constexpr (!std::is_same_v<T, Rational>) {
                    if (since_refactor > 0) {
                        refactor();
                        since_refactor = 0;
                        continue;
                    }
                }
                return Outcome::Optimal;
            }
            const std::size_t r = leaving(q);
            if (r == m_) {
                if constexpr (!std::is_same_v<T, Rational>) {
                    if (since_refactor > 0) {
                        refactor();
                        since_refactor = 0;
                        continue;
                    }
                }
                return Outcome::Unbounded;
            }
            if (!A::positive(rhs(r)))
                ++degenerate;
            else
                degenerate = 0;
            pivot(r, q);
            ++since_refactor;
        }
    }

    /// Replaces the right-hand side of the original data and refactors; the
    /// basis may become primal infeasible.
    void reset_rhs(const std::vector<T>& b) {
        for (std::size_t i = 0; i < m_; ++i) original_[i * (n_ + 1) + n_] = b[i];
        refactor(false);
    }

    /// Dual simplex from a dual feasible basis. Returns false if the rows
    /// prove primal infeasibility.
    bool dual_run(std::size_t cap) {
        for (;;) {
            if (iterations_ > cap) throw NumericalFailure("dual simplex iteration limit reached");
            std::size_t r = m_;
            for (std::size_t i = 0; i < m_; ++i)
                if (A::negative(rhs(i)) && (r == m_ || rhs(i) < rhs(r))) r = i;
            if (r == m_) return true;
            std::size_t q = n_;
            T best = T(0);
            for (std::size_t j = 0; j < ns_; ++j) {
                const T& a = at(r, j);
                if (!A::pivotable(T(-a))) continue;
                const T ratio = T(A::relaxed(d_[j]) / T(-a));
                if (q == n_ || ratio < best) {
                    best = ratio;
                    q = j;
                }
            }
            if (q == n_) return false;
            pivot(r, q);
        }
    }

    T objective() const { return -d_[n_]; }
    const std::vector<T>& reduced() const { return d_; }

private:
    static constexpr std::size_t kRefactorEvery = 500;
    static constexpr std::size_t kDegenerateStreak = 50;

    void eliminate_on(std::size_t r, std::size_t q) {
        const T inv = T(1) / at(r, q);
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j <= n_; ++j) {
            T& v = at(r, j);
            if (!A::nonzero(v)) continue;
            v = A::clean(T(v * inv));
            if (A::nonzero(v)) nz.push_back(j);
        }
        at(r, q) = T(1);
        auto eliminate = [&](T* row) {
            const T f = row[q];
            if (!A::nonzero(f)) return;
            const T* pr = &at(r, 0);
            for (std::size_t j : nz) row[j] = A::clean(T(row[j] - f * pr[j]));
            row[q] = T(0);
        };
        for (std::size_t i = 0; i < m_; ++i)
            if (i != r) eliminate(&at(i, 0));
        eliminate(d_.data());
    }

    void price() {
        std::fill(d_.begin(), d_.end(), T(0));
        for (std::size_t j = 0; j < n_; ++j) d_[j] = cost_[j];
        for (std::size_t i = 0; i < m_; ++i) {
            const T& cb = cost_[basis_[i]];
            if (!A::nonzero(cb)) continue;
            for (std::size_t j = 0; j <= n_; ++j)
                if (A::nonzero(at(i, j))) d_[j] = A::clean(T(d_[j] - cb * at(i, j)));
        }
        for (std::size_t i = 0; i < m_; ++i) d_[basis_[i]] = T(0);
    }

    // Dantzig's rule; Bland's rule while a degenerate streak lasts.
    std::size_t entering(bool bland) const {
        std::size_t q = n_;
        T best = T(0);
        for (std::size_t j = 0; j < ns_; ++j) {
            if (!A::negative(d_[j])) continue;
            if (bland) return j;
            if (q == n_ || d_[j] < best) {
                best = d_[j];
                q = j;
            }
        }
        return q;
    }

    // Minimum ratio; among near ties the largest pivot, then the smallest basic index.
    std::size_t leaving(std::size_t q) const {
        std::size_t r = m_;
        T best_ratio = T(0);
        for (std::size_t i = 0; i < m_; ++i) {
            const T& a = at(i, q);
            if (!A::pivotable(a)) continue;
            const T ratio = A::relaxed(rhs(i)) / a;
            if (r == m_ || ratio < best_ratio) {
                r = i;
                best_ratio = ratio;
            }
        }
        if (r == m_) return r;
        std::size_t pick = m_;
        for (std::size_t i = 0; i < m_; ++i) {
            const T& a = at(i, q);
            if (!A::pivotable(a)) continue;
            if (rhs(i) / a > best_ratio) continue;
            if (pick == m_ || a > at(pick, q) || (a == at(pick, q) && basis_[i] < basis_[pick])) pick = i;
        }
        return pick;
    }

    // Recomputes B^{-1} [A | I | b] from the original data with partial pivoting.
    void refactor(bool require_feasible = true) {
        const std::vector<std::size_t> cols = basis_;
        t_ = original_;
        std::vector<bool> assigned(m_, false);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const std::size_t q = cols[k];
            std::size_t r = m_;
            for (std::size_t i = 0; i < m_; ++i) {
                if (assigned[i]) continue;
                if (r == m_ || A::magnitude(at(i, q)) > A::magnitude(at(r, q))) r = i;
            }
            if (r == m_ || !A::nonzero(at(r, q))) throw NumericalFailure("basis became singular");
            eliminate_on(r, q);
            assigned[r] = true;
            basis_[r] = q;
        }
        for (std::size_t i = 0; i < m_; ++i) {
            if (A::infeasible(rhs(i))) {
                if (require_feasible) throw NumericalFailure("basis lost primal feasibility");
            } else if (!A::positive(rhs(i))) {
                rhs(i) = T(0);
            }
        }
        price();
    }

    std::size_t m_;
    std::size_t ns_;
    std::size_t n_;
    std::vector<T> t_;
    std::vector<T> d_;
    std::vector<T> cost_;
    std::vector<T> original_;
    std::vector<std::size_t> basis_;
    std::size_t iterations_ = 0;
};

struct Solution {
    std::vector<double> x;
    std::vector<Rational> x_exact;
    std::vector<double> dual;
    std::size_t iterations = 0;
};

template <class T>
Solution solve_with(const LpProblem& pr) {
    using A = Arith<T>;
    const std::size_t m = pr.rows.size();
    const std::size_t n = pr.variables;
    std::vector<bool> is_free = pr.free;
    if (is_free.empty()) is_free.assign(n, false);

    // split free variables into positive and negative parts
    std::vector<std::size_t> col_pos(n);
    std::vector<std::size_t> col_neg(n, static_cast<std::size_t>(-1));
    std::size_t ns = 0;
    for (std::size_t j = 0; j < n; ++j) {
        col_pos[j] = ns++;
        if (is_free[j]) col_neg[j] = ns++;
    }
    std::vector<T> cost(ns + m, T(0));
    for (std::size_t j = 0; j < n; ++j) {
        cost[col_pos[j]] = A::from(pr.c[j]);
        if (is_free[j]) cost[col_neg[j]] = T(-A::from(pr.c[j]));
    }

    std::vector<int> flip(m, 1);
    auto load = [&](Tableau<T>& tab) {
        for (std::size_t i = 0; i < m; ++i) {
            flip[i] = sgn(pr.b[i]) < 0 ? -1 : 1;
            const T s = T(flip[i]);
            for (const auto& [j, v] : pr.rows[i]) {
                tab.at(i, col_pos[j]) += s * A::from(v);
                if (is_free[j]) tab.at(i, col_neg[j]) -= s * A::from(v);
            }
            tab.rhs(i) = s * A::from(pr.b[i]);
        }
    };

    const std::size_t cap = 50 * (m + ns) + 1000;
    Tableau<T> tab(m, ns);
    load(tab);
    // small positive rhs shifts break the degeneracy of the float path
    std::vector<T> true_rhs(m);
    for (std::size_t i = 0; i < m; ++i) true_rhs[i] = tab.rhs(i);
    auto perturb = [&](Tableau<T>& t) {
        if constexpr (!std::is_same_v<T, Rational>) {
            UniformStream u(0x1f2e3d);
            for (std::size_t i = 0; i < m; ++i) t.rhs(i) += kRhsShift * (1.0 + u.next()) * (1.0 + std::abs(t.rhs(i)));
        }
    };
    perturb(tab);
    tab.keep_original();
    bool warm = false;
    if (!pr.initial_basis.empty() && pr.initial_basis.size() == m) {
        warm = true;
        for (std::size_t i = 0; i < m && warm; ++i) {
            const std::size_t j = pr.initial_basis[i];
            if (j >= n || is_free[j] || !A::nonzero(tab.at(i, col_pos[j]))) {
                warm = false;
                break;
            }
            tab.pivot(i, col_pos[j]);
        }
        for (std::size_t i = 0; i < m && warm; ++i)
            if (A::negative(tab.rhs(i))) warm = false;
        if (!warm) {
            tab = Tableau<T>(m, ns);
            load(tab);
            perturb(tab);
            tab.keep_original();
        }
    }
    if (!warm) {
        // phase one: minimize the sum of artificials
        std::vector<T> artificial(ns + m, T(0));
        for (std::size_t i = 0; i < m; ++i) artificial[ns + i] = T(1);
        tab.set_costs(std::move(artificial));
        if (tab.run(cap) == Outcome::Unbounded) throw NumericalFailure("phase one reported unbounded");
        if constexpr (!std::is_same_v<T, Rational>) {
            // the shifted rhs can leave a degenerate feasible set; judge with the true one
            if (A::positive(tab.objective())) {
                tab.reset_rhs(true_rhs);
                if (!tab.dual_run(cap)) throw InvalidArgument("linear program is infeasible");
            }
        }
        if (A::positive(tab.objective())) throw InvalidArgument("linear program is infeasible");
        for (std::size_t i = 0; i < m; ++i) {
            if (tab.basic(i) < ns) continue;
            for (std::size_t j = 0; j < ns; ++j)
                if (A::positive(tab.at(i, j)) || A::negative(tab.at(i, j))) {
                    tab.pivot(i, j);
                    break;
                }
        }
    }
    tab.set_costs(cost);
    if (tab.run(cap) == Outcome::Unbounded) {
        if constexpr (std::is_same_v<T, Rational>) throw InvalidArgument("linear program is unbounded");
        throw NumericalFailure("floating-point simplex reported an unbounded direction");
    }
    if constexpr (!std::is_same_v<T, Rational>) {
        tab.reset_rhs(true_rhs);
        if (!tab.dual_run(cap)) throw NumericalFailure("dual cleanup found no feasible basis");
    }

    std::vector<T> xs(ns, T(0));
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basic(i) < ns) xs[tab.basic(i)] = tab.rhs(i);
    Solution out;
    out.iterations = tab.iterations();
    out.x.resize(n);
    if constexpr (std::is_same_v<T, Rational>) out.x_exact.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        T v = xs[col_pos[j]];
        if (is_free[j]) v -= xs[col_neg[j]];
        out.x[j] = A::to_double(v);
        if constexpr (std::is_same_v<T, Rational>) out.x_exact[j] = v;
    }
    out.dual.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.dual[i] = -A::to_double(tab.reduced()[ns + i]) * flip[i];
    return out;
}

struct Certificate {
    bool ok = false;
    double gap = 0.0;
    double objective = 0.0;
};

// Primal residual, dual feasibility and duality gap in long double.
Certificate certify(const LpProblem& pr, const Solution& s, double tol) {
    Certificate c;
    const std::size_t n = pr.variables;
    std::vector<long double> ay(n, 0.0L);
    long double scale = 1.0L;
    for (std::size_t i = 0; i < pr.rows.size(); ++i) {
        long double r = -static_cast<long double>(pr.b[i].get_d());
        scale = std::max(scale, std::abs(static_cast<long double>(pr.b[i].get_d())));
        for (const auto& [j, v] : pr.rows[i]) {
            r += static_cast<long double>(v.get_d()) * s.x[j];
            ay[j] += static_cast<long double>(v.get_d()) * s.dual[i];
        }
        if (std::abs(r) > tol * scale * 10) return c;
    }
    long double obj = 0.0L;
    long double dual_obj = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
        const bool fr = !pr.free.empty() && pr.free[j];
        if (!fr && s.x[j] < -tol) return c;
        const long double red = static_cast<long double>(pr.c[j].get_d()) - ay[j];
        if (fr ? std::abs(red) > tol * 10 : red < -tol * 10) return c;
        obj += static_cast<long double>(pr.c[j].get_d()) * s.x[j];
    }
    for (std::size_t i = 0; i < pr.rows.size(); ++i) dual_obj += static_cast<long double>(pr.b[i].get_d()) * s.dual[i];
    c.gap = static_cast<double>(std::abs(obj - dual_obj));
    c.objective = static_cast<double>(obj);
    c.ok = c.gap <= tol * (1.0L + std::abs(obj));
    return c;
}

LpResult finish_exact(const LpProblem& pr, Solution s) {
    LpResult r;
    r.exact = true;
    r.iterations = s.iterations;
    Rational obj = 0;
    for (std::size_t j = 0; j < pr.variables; ++j) obj += pr.c[j] * s.x_exact[j];
    r.objective_exact = obj;
    r.objective = obj.get_d();
    r.x = std::move(s.x);
    r.x_exact = std::move(s.x_exact);
    r.dual = std::move(s.dual);
    r.duality_gap = 0.0;
    return r;
}

}  // namespace

LpResult lp_solve(const LpProblem& pr, const LpOptions& opt) {
    if (pr.c.size() != pr.variables) throw LengthMismatch(pr.variables, pr.c.size());
    if (pr.b.size() != pr.rows.size()) throw LengthMismatch(pr.rows.size(), pr.b.size());
    if (!pr.free.empty() && pr.free.size() != pr.variables) throw LengthMismatch(pr.variables, pr.free.size());
    for (const auto& row : pr.rows)
        for (const auto& e : row)
            if (e.first >= pr.variables) throw InvalidArgument("constraint references an unknown variable");

    std::size_t split = pr.variables;
    for (std::size_t j = 0; j < pr.variables; ++j)
        if (!pr.free.empty() && pr.free[j]) ++split;
    const std::size_t entries = pr.rows.size() * (split + pr.rows.size());

    if (opt.mode == LpMode::Exact || (opt.mode == LpMode::Auto && entries <= opt.exact_limit))
        return finish_exact(pr, solve_with<Rational>(pr));

    const bool retry = opt.mode == LpMode::Auto && entries <= opt.exact_retry_limit;
    Solution s;
    try {
        s = solve_with<double>(pr);
    } catch (const NumericalFailure&) {
        if (retry) return finish_exact(pr, solve_with<Rational>(pr));
        throw;
    }
    Certificate cert = certify(pr, s, opt.gap_tolerance);
    if (!cert.ok) {
        if (opt.mode == LpMode::Auto && entries <= opt.exact_retry_limit)
            return finish_exact(pr, solve_with<Rational>(pr));
        throw NumericalFailure("floating-point optimum failed its duality certificate (gap " +
                               std::to_string(cert.gap) + ")");
    }
    LpResult r;
    r.iterations = s.iterations;
    r.x = std::move(s.x);
    r.dual = std::move(s.dual);
    r.objective = cert.objective;
    r.duality_gap = cert.gap;
    return r;
}

}  // namespace ripscover
