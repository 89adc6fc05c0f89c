#ifndef COPE_LP_HPP
#define COPE_LP_HPP

#include <cstddef>
#include <vector>

#include "cope/matrix.hpp"

namespace cope {

/// Standard-form program: minimize c^T x subject to A x >= b, x >= 0.
template <class S>
struct LinearProgram {
    Matrix<S> constraints;
    std::vector<S> rhs;
    std::vector<S> objective;

    std::size_t num_rows() const { return constraints.rows(); }
    std::size_t num_vars() const { return constraints.cols(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// When optimal: primal feasible, dual feasible (y >= 0, A^T y <= c) and the
/// two objective values agree exactly in exact mode. Infeasible solutions
/// carry a Farkas vector y >= 0 with A^T y <= 0, b^T y > 0; unbounded ones a
/// ray d >= 0 with A d >= 0, c^T d < 0.
template <class S>
struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<S> primal;
    S primal_value = S(0);
    std::vector<S> dual;
    S dual_value = S(0);
    std::vector<S> certificate;
};

namespace lp_detail {

// bit budget per tableau entry before the solver aborts
inline std::size_t& growth_guard_bits() {
    static std::size_t bits = 65536;
    return bits;
}

} // namespace lp_detail

inline void set_lp_growth_guard_bits(std::size_t bits) { lp_detail::growth_guard_bits() = bits; }
inline std::size_t lp_growth_guard_bits() { return lp_detail::growth_guard_bits(); }

/// Two-phase dense tableau simplex with Bland's rule over the field.
template <class S>
LpSolution<S> solve(const LinearProgram<S>& lp) {
    const std::size_t m = lp.num_rows();
    const std::size_t n = lp.num_vars();
    if (lp.rhs.size() != m || lp.objective.size() != n)
        throw ValidationError(ValidationError::Kind::DimensionMismatch, "lp dimensions inconsistent");

    LpSolution<S> out;
    if (m == 0) {
        for (std::size_t j = 0; j < n; ++j) {
            if (lp.objective[j].sign() < 0) {
                out.status = LpStatus::Unbounded;
                out.certificate.assign(n, S(0));
                out.certificate[j] = S(1);
                return out;
            }
        }
        out.status = LpStatus::Optimal;
        out.primal.assign(n, S(0));
        out.dual.clear();
        return out;
    }

    // equality form: sign_i * (A_i x - s_i) = sign_i * b_i with artificials
    // column layout: [structural n | surplus m | artificial m | rhs]
    const std::size_t surplus0 = n;
    const std::size_t art0 = n + m;
    const std::size_t ncols = n + 2 * m;
    std::vector<std::vector<S>> t(m, std::vector<S>(ncols + 1, S(0)));
    std::vector<int> rowsign(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        rowsign[i] = lp.rhs[i].sign() < 0 ? -1 : 1;
        S sg(rowsign[i]);
        for (std::size_t j = 0; j < n; ++j) t[i][j] = sg * lp.constraints(i, j);
        t[i][surplus0 + i] = sg * S(-1);
        t[i][art0 + i] = S(1);
        t[i][ncols] = sg * lp.rhs[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = art0 + i;

    // reduced-cost rows, pivoted along with the tableau
    std::vector<S> r1(ncols + 1, S(0)); // phase 1: minimize sum of artificials
    std::vector<S> r2(ncols + 1, S(0)); // phase 2: the real objective
    for (std::size_t j = 0; j < ncols; ++j) {
        S colsum(0);
        for (std::size_t i = 0; i < m; ++i) colsum += t[i][j];
        r1[j] = (j >= art0 ? S(1) : S(0)) - colsum;
    }
    {
        S rhssum(0);
        for (std::size_t i = 0; i < m; ++i) rhssum += t[i][ncols];
        r1[ncols] = -rhssum;
    }
    for (std::size_t j = 0; j < n; ++j) r2[j] = lp.objective[j];

    auto guard = [&]() {
        if constexpr (is_exact_v<S>) {
            const std::size_t limit = lp_detail::growth_guard_bits();
            for (const auto& row : t)
                for (const S& v : row)
                    if (v.bit_size() > limit)
                        throw ResourceError("simplex tableau entry exceeded " + std::to_string(limit) +
                                            " bits");
        }
    };

    auto pivot = [&](std::size_t prow, std::size_t pcol) {
        S p = t[prow][pcol];
        for (std::size_t j = 0; j <= ncols; ++j) t[prow][j] = t[prow][j] / p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == prow || t[i][pcol].sign() == 0) continue;
            S f = t[i][pcol];
            for (std::size_t j = 0; j <= ncols; ++j) t[i][j] = t[i][j] - f * t[prow][j];
        }
        for (auto* row : {&r1, &r2}) {
            if ((*row)[pcol].sign() == 0) continue;
            S f = (*row)[pcol];
            for (std::size_t j = 0; j <= ncols; ++j) (*row)[j] = (*row)[j] - f * t[prow][j];
        }
        basis[prow] = pcol;
        guard();
    };

    // Bland: entering = lowest eligible index; leaving = min ratio, ties by
    // lowest basis variable index
    auto iterate = [&](std::vector<S>& robj, std::size_t max_col) -> bool {
        for (;;) {
            std::size_t enter = ncols;
            for (std::size_t j = 0; j < max_col; ++j) {
                if (robj[j].sign() < 0) { enter = j; break; }
            }
            if (enter == ncols) return true; // optimal for this objective
            std::size_t leave = m;
            for (std::size_t i = 0; i < m; ++i) {
                if (t[i][enter].sign() <= 0) continue;
                if (leave == m) { leave = i; continue; }
                S diff = t[i][ncols] * t[leave][enter] - t[leave][ncols] * t[i][enter];
                int c = diff.sign();
                if (c < 0 || (c == 0 && basis[i] < basis[leave])) leave = i;
            }
            if (leave == m) return false; // unbounded direction for this objective
            pivot(leave, enter);
        }
    };

    iterate(r1, ncols); // phase-1 objective is bounded below by zero
    if (r1[ncols].sign() != 0) {
        // infeasible; Farkas from the phase-1 duals
        out.status = LpStatus::Infeasible;
        out.certificate.assign(m, S(0));
        for (std::size_t i = 0; i < m; ++i) {
            S yhat = S(1) - r1[art0 + i];
            out.certificate[i] = S(rowsign[i]) * yhat;
        }
        return out;
    }

    // drive basic artificials out where a nonartificial pivot exists
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < art0) continue;
        for (std::size_t j = 0; j < art0; ++j) {
            if (t[i][j].sign() != 0) { pivot(i, j); break; }
        }
    }

    if (!iterate(r2, art0)) {
        out.status = LpStatus::Unbounded;
        // ray in x-space: entering column with no positive tableau entries
        std::size_t enter = ncols;
        for (std::size_t j = 0; j < art0; ++j)
            if (r2[j].sign() < 0) { enter = j; break; }
        out.certificate.assign(n, S(0));
        if (enter < n) out.certificate[enter] = S(1);
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) out.certificate[basis[i]] = -t[i][enter];
        return out;
    }

    out.status = LpStatus::Optimal;
    out.primal.assign(n, S(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) out.primal[basis[i]] = t[i][ncols];
    out.primal_value = S(0);
    for (std::size_t j = 0; j < n; ++j) out.primal_value += lp.objective[j] * out.primal[j];
    out.dual.assign(m, S(0));
    for (std::size_t i = 0; i < m; ++i) {
        S yhat = -r2[art0 + i];
        out.dual[i] = S(rowsign[i]) * yhat;
    }
    out.dual_value = S(0);
    for (std::size_t i = 0; i < m; ++i) out.dual_value += lp.rhs[i] * out.dual[i];
    return out;
}

/// Checks A^T y <= c and y >= 0 exactly; returns feasibility and b^T y.
template <class S>
std::pair<bool, S> verify_certificate(const LinearProgram<S>& lp, const std::vector<S>& candidate_dual) {
    const std::size_t m = lp.num_rows();
    const std::size_t n = lp.num_vars();
    if (candidate_dual.size() != m)
        throw ValidationError(ValidationError::Kind::DimensionMismatch, "dual vector length");
    bool feasible = true;
    for (std::size_t i = 0; i < m && feasible; ++i)
        if (candidate_dual[i].sign() < 0) feasible = false;
    for (std::size_t j = 0; j < n && feasible; ++j) {
        S acc(0);
        for (std::size_t i = 0; i < m; ++i) acc += lp.constraints(i, j) * candidate_dual[i];
        if ((acc - lp.objective[j]).sign() > 0) feasible = false;
    }
    S value(0);
    for (std::size_t i = 0; i < m; ++i) value += lp.rhs[i] * candidate_dual[i];
    return {feasible, value};
}

/// Minimize c^T x subject to A x >= b with x free in sign, via the split
/// x = p - q. Used by the geometry layer where variables are coordinates.
template <class S>
LpSolution<S> solve_free(const Matrix<S>& a, const std::vector<S>& b, const std::vector<S>& c) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    LinearProgram<S> lp;
    lp.constraints = Matrix<S>(m, 2 * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            lp.constraints(i, j) = a(i, j);
            lp.constraints(i, n + j) = -a(i, j);
        }
    lp.rhs = b;
    lp.objective.assign(2 * n, S(0));
    for (std::size_t j = 0; j < n; ++j) {
        lp.objective[j] = c[j];
        lp.objective[n + j] = -c[j];
    }
    LpSolution<S> split = solve(lp);
    LpSolution<S> out;
    out.status = split.status;
    out.primal_value = split.primal_value;
    out.dual = split.dual;
    out.dual_value = split.dual_value;
    if (split.status == LpStatus::Optimal) {
        out.primal.assign(n, S(0));
        for (std::size_t j = 0; j < n; ++j) out.primal[j] = split.primal[j] - split.primal[n + j];
    } else if (split.status == LpStatus::Unbounded) {
        out.certificate.assign(n, S(0));
        for (std::size_t j = 0; j < n && j + n < split.certificate.size(); ++j)
            out.certificate[j] = split.certificate[j] - split.certificate[n + j];
    } else {
        out.certificate = split.certificate;
    }
    return out;
}

} // namespace cope

#endif
