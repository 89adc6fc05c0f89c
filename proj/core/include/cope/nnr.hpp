#ifndef COPE_NNR_HPP
#define COPE_NNR_HPP

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cope/cope_matrix.hpp"
#include "cope/digest.hpp"
#include "cope/polytope.hpp"

namespace cope {

enum class NnrAnswer { Yes, No, Unknown };
enum class NnrStrategy { Exact, Heuristic, Auto };

struct HeuristicOptions {
    std::size_t restarts = 64;
    std::size_t iterations = 5000;
    double tolerance = 1e-8;
    std::uint64_t seed = 0; // mixed with the matrix digest
};

/// Answer to "is the NNR of the matrix at most / equal to k". Yes carries a
/// verified witness pair; No is produced only by the exact rank-3 geometry;
/// the heuristic never answers No.
template <class S>
struct NnrVerdict {
    NnrAnswer answer = NnrAnswer::Unknown;
    std::size_t value = 0; // exact path: the minimal inner dimension
    Matrix<S> witness_r;
    Matrix<S> witness_e;
    bool float_witness = false;
    std::size_t restarts_used = 0;
    double best_residual = 0.0;
    std::string reason;
};

template <class S>
S scalar_from_double(double v) {
    if constexpr (is_exact_v<S>) {
        Rational q;
        mpq_set_d(q.get_mpq_t(), v); // exact dyadic value of the double
        return S(q);
    } else {
        return S(v);
    }
}

namespace nnr_detail {

template <class S>
struct CleanedMatrix {
    Matrix<S> normalized;        // zero rows/cols dropped, columns scaled to sum 1
    std::vector<std::size_t> rows, cols; // surviving original indices
    std::vector<S> col_sums;             // original sums of surviving columns
    bool uniform_scale = true;
};

template <class S>
CleanedMatrix<S> clean_and_normalize(const Matrix<S>& c) {
    CleanedMatrix<S> out;
    for (std::size_t i = 0; i < c.rows(); ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < c.cols(); ++j)
            if (c(i, j).sign() != 0) { zero = false; break; }
        if (!zero) out.rows.push_back(i);
    }
    for (std::size_t j = 0; j < c.cols(); ++j) {
        bool zero = true;
        for (std::size_t i = 0; i < c.rows(); ++i)
            if (c(i, j).sign() != 0) { zero = false; break; }
        if (!zero) out.cols.push_back(j);
    }
    if (out.rows.empty() || out.cols.empty())
        throw DomainError("matrix has no nonzero entries");
    out.normalized = Matrix<S>(out.rows.size(), out.cols.size());
    for (std::size_t j = 0; j < out.cols.size(); ++j) {
        S sum(0);
        for (std::size_t i = 0; i < out.rows.size(); ++i) sum += c(out.rows[i], out.cols[j]);
        out.col_sums.push_back(sum);
        for (std::size_t i = 0; i < out.rows.size(); ++i)
            out.normalized(i, j) = c(out.rows[i], out.cols[j]) / sum;
    }
    for (std::size_t j = 1; j < out.col_sums.size(); ++j)
        if ((out.col_sums[j] - out.col_sums[0]).sign() != 0) out.uniform_scale = false;
    return out;
}

} // namespace nnr_detail

struct NnrBounds {
    std::size_t lower = 0;
    std::optional<std::size_t> upper;
    bool exact = false; // lower == upper established by an exact path
};

template <class S>
NnrVerdict<S> nnr_exact_rank3(const Matrix<S>& c, std::size_t k);

/// lower = rank; rank <= 2 matrices have NNR equal to their rank, rank-3
/// matrices go through the exact plane geometry, everything else gets the
/// trivial upper bound from the identity factorizations.
template <class S>
NnrBounds nnr_bounds(const Matrix<S>& c) {
    if (!c.nonnegative()) throw DomainError("nonnegative rank of a matrix with negative entries");
    NnrBounds out;
    auto cleaned = nnr_detail::clean_and_normalize(c);
    std::size_t r = rank(c);
    out.lower = r;
    if (r <= 2) {
        out.upper = r;
        out.exact = true;
        return out;
    }
    if (r == 3) {
        auto v = nnr_exact_rank3(c, 3);
        out.lower = v.value;
        out.upper = v.value;
        out.exact = true;
        return out;
    }
    out.upper = std::min(cleaned.rows.size(), cleaned.cols.size());
    return out;
}

/// Exact geometric decision for rank-3 matrices: the minimal nested polygon
/// between the inner and outer plane bodies of a rank factorization gives the
/// NNR; answers yes iff that minimum is at most k, with witness factors.
template <class S>
NnrVerdict<S> nnr_exact_rank3(const Matrix<S>& c, std::size_t k) {
    if (!c.nonnegative()) throw DomainError("matrix has negative entries");
    if (rank(c) != 3) throw DomainError("exact path requires rank 3");
    auto cleaned = nnr_detail::clean_and_normalize(c);
    const Matrix<S>& m = cleaned.normalized;

    CopeMatrix<S> cope = validate_cope(m, {m.rows()}, CopeForm::A);
    RankFactorization<S> f = rank_factorize(cope);
    HPolytope<S> outer_h = outer_from_effects(f.left, 1);
    auto en = enumerate_vertices(outer_h);
    if (!en.bounded) throw DomainError("outer polytope unbounded for a column-normalized matrix");

    AffineChart<S> chart = make_span_chart(en.polytope.vertices);
    if (chart.local_dim() != 2) throw DomainError("outer polytope is not two-dimensional");
    auto to2d = [&](const Matrix<S>& pts) {
        std::vector<std::vector<S>> loc;
        for (std::size_t j = 0; j < pts.cols(); ++j) loc.push_back(chart.to_local(pts.col(j)));
        VPolytope<S> v;
        v.dim = 2;
        v.vertices = Matrix<S>::from_columns(loc);
        return v;
    };
    VPolytope<S> outer2d = to2d(en.polytope.vertices);
    VPolytope<S> inner2d = to2d(f.right);

    NestedPolygonResult<S> nested = min_nested_polygon_2d(inner2d, outer2d);
    NnrVerdict<S> out;
    out.value = nested.k;
    if (nested.k > k) {
        out.answer = NnrAnswer::No;
        out.reason = "minimal nested polygon has " + std::to_string(nested.k) + " vertices";
        return out;
    }

    // witness factors from the polygon: R = A * G, E from per-column conic
    // feasibility (membership is convex automatically in the normalized frame)
    Matrix<S> g(3, nested.k);
    for (std::size_t j = 0; j < nested.k; ++j) {
        auto amb = chart.to_ambient(nested.polygon.vertex(j));
        for (std::size_t i = 0; i < 3; ++i) g(i, j) = amb[i];
    }
    Matrix<S> rfac = f.left * g;
    if (!rfac.nonnegative()) throw DomainError("witness polygon escaped the outer polytope");
    Matrix<S> efac(nested.k, m.cols());
    for (std::size_t col = 0; col < m.cols(); ++col) {
        LinearProgram<S> lp;
        lp.constraints = Matrix<S>(6, nested.k);
        lp.rhs.assign(6, S(0));
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < nested.k; ++j) {
                lp.constraints(2 * i, j) = g(i, j);
                lp.constraints(2 * i + 1, j) = -g(i, j);
            }
            lp.rhs[2 * i] = f.right(i, col);
            lp.rhs[2 * i + 1] = -f.right(i, col);
        }
        lp.objective.assign(nested.k, S(0));
        auto sol = solve(lp);
        if (sol.status != LpStatus::Optimal)
            throw DomainError("inner vertex is not a convex combination of the witness polygon");
        for (std::size_t j = 0; j < nested.k; ++j) efac(j, col) = sol.primal[j];
    }
    if (!(rfac * efac).entrywise_equal(m)) throw DomainError("witness factors do not multiply back");

    // undo the normalization; a uniform column scale moves into the left
    // factor so valid COPE inputs keep a model-shaped witness
    Matrix<S> full_r(c.rows(), nested.k);
    Matrix<S> full_e(nested.k, c.cols());
    for (std::size_t i = 0; i < cleaned.rows.size(); ++i)
        for (std::size_t j = 0; j < nested.k; ++j) full_r(cleaned.rows[i], j) = rfac(i, j);
    for (std::size_t j = 0; j < cleaned.cols.size(); ++j)
        for (std::size_t t = 0; t < nested.k; ++t) {
            if (cleaned.uniform_scale)
                full_e(t, cleaned.cols[j]) = efac(t, j);
            else
                full_e(t, cleaned.cols[j]) = efac(t, j) * cleaned.col_sums[j];
        }
    if (cleaned.uniform_scale) {
        for (std::size_t i = 0; i < c.rows(); ++i)
            for (std::size_t j = 0; j < nested.k; ++j) full_r(i, j) = full_r(i, j) * cleaned.col_sums[0];
    }
    if (!(full_r * full_e).entrywise_equal(c))
        throw DomainError("denormalized witness does not reproduce the input");

    // pad a smaller witness to inner dimension k with dead states
    if (nested.k < k) {
        Matrix<S> pr(c.rows(), k);
        Matrix<S> pe(k, c.cols());
        for (std::size_t i = 0; i < c.rows(); ++i) {
            for (std::size_t j = 0; j < nested.k; ++j) pr(i, j) = full_r(i, j);
            for (std::size_t j = nested.k; j < k; ++j) pr(i, j) = full_r(i, 0);
        }
        for (std::size_t t = 0; t < nested.k; ++t)
            for (std::size_t j = 0; j < c.cols(); ++j) pe(t, j) = full_e(t, j);
        full_r = std::move(pr);
        full_e = std::move(pe);
    }

    out.answer = NnrAnswer::Yes;
    out.witness_r = std::move(full_r);
    out.witness_e = std::move(full_e);
    return out;
}

/// Multiplicative-update factorization attempts with seeded restarts; yes only
/// after the witness re-verifies by multiplication, otherwise unknown. Never
/// answers no.
template <class S>
NnrVerdict<S> nnr_heuristic_matrix(const Matrix<S>& c, std::size_t k, const HeuristicOptions& opt = {}) {
    if (!c.nonnegative()) throw DomainError("matrix has negative entries");
    NnrVerdict<S> out;
    const std::size_t m = c.rows(), n = c.cols();
    std::vector<double> v(m * n);
    double vnorm2 = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            v[i * n + j] = c(i, j).to_double();
            vnorm2 += v[i * n + j] * v[i * n + j];
        }
    const double vnorm = std::sqrt(vnorm2);
    if (vnorm == 0) throw DomainError("zero matrix");
    const double eps = 1e-12;

    std::uint64_t seed = fnv1a64(std::to_string(k), matrix_digest(c)) ^ opt.seed;
    double best = 1e300;
    std::vector<double> bw, bh;
    for (std::size_t restart = 0; restart < opt.restarts; ++restart) {
        std::mt19937_64 rng(seed + restart);
        std::uniform_real_distribution<double> uni(0.1, 1.0);
        std::vector<double> w(m * k), h(k * n);
        for (auto& x : w) x = uni(rng);
        for (auto& x : h) x = uni(rng);
        // boundary solutions need entries to reach exact zero, which the
        // multiplicative rule preserves but approaches slowly; alternate
        // aggressive and gentle snap thresholds across restarts
        const double snap_rel = (restart % 2 == 0) ? 1e-3 : 1e-9;
        std::vector<double> wtv(k * n), wtwh(k * n), wh(m * n);
        for (std::size_t it = 0; it < opt.iterations; ++it) {
            // H <- H .* (W^T V) ./ (W^T W H)
            for (std::size_t t = 0; t < k; ++t)
                for (std::size_t j = 0; j < n; ++j) {
                    double acc = 0;
                    for (std::size_t i = 0; i < m; ++i) acc += w[i * k + t] * v[i * n + j];
                    wtv[t * n + j] = acc;
                }
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    double acc = 0;
                    for (std::size_t t = 0; t < k; ++t) acc += w[i * k + t] * h[t * n + j];
                    wh[i * n + j] = acc;
                }
            for (std::size_t t = 0; t < k; ++t)
                for (std::size_t j = 0; j < n; ++j) {
                    double acc = 0;
                    for (std::size_t i = 0; i < m; ++i) acc += w[i * k + t] * wh[i * n + j];
                    wtwh[t * n + j] = acc;
                    h[t * n + j] *= wtv[t * n + j] / (wtwh[t * n + j] + eps);
                }
            // W <- W .* (V H^T) ./ (W H H^T)
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    double acc = 0;
                    for (std::size_t t = 0; t < k; ++t) acc += w[i * k + t] * h[t * n + j];
                    wh[i * n + j] = acc;
                }
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t t = 0; t < k; ++t) {
                    double a1 = 0, a2 = 0;
                    for (std::size_t j = 0; j < n; ++j) {
                        a1 += v[i * n + j] * h[t * n + j];
                        a2 += wh[i * n + j] * h[t * n + j];
                    }
                    w[i * k + t] *= a1 / (a2 + eps);
                }
            if ((it & 63) == 63) {
                double wmax = 0, hmax = 0;
                for (double x : w) wmax = std::max(wmax, x);
                for (double x : h) hmax = std::max(hmax, x);
                for (auto& x : w)
                    if (x < wmax * snap_rel) x = 0.0;
                for (auto& x : h)
                    if (x < hmax * snap_rel) x = 0.0;
                double err2 = 0;
                for (std::size_t i = 0; i < m; ++i)
                    for (std::size_t j = 0; j < n; ++j) {
                        double acc = 0;
                        for (std::size_t t = 0; t < k; ++t) acc += w[i * k + t] * h[t * n + j];
                        double d = v[i * n + j] - acc;
                        err2 += d * d;
                    }
                if (std::sqrt(err2) / vnorm < opt.tolerance * 0.1) break;
            }
        }
        // independent residual of this restart
        double err2 = 0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double acc = 0;
                for (std::size_t t = 0; t < k; ++t) acc += w[i * k + t] * h[t * n + j];
                double d = v[i * n + j] - acc;
                err2 += d * d;
            }
        double rel = std::sqrt(err2) / vnorm;
        out.restarts_used = restart + 1;
        if (rel < best) {
            best = rel;
            bw = w;
            bh = h;
        }
        if (best <= opt.tolerance) break;
    }
    out.best_residual = best;
    if (best <= opt.tolerance) {
        out.answer = NnrAnswer::Yes;
        out.value = k;
        out.float_witness = true;
        out.witness_r = Matrix<S>(m, k);
        out.witness_e = Matrix<S>(k, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t t = 0; t < k; ++t) out.witness_r(i, t) = scalar_from_double<S>(bw[i * k + t]);
        for (std::size_t t = 0; t < k; ++t)
            for (std::size_t j = 0; j < n; ++j) out.witness_e(t, j) = scalar_from_double<S>(bh[t * n + j]);
    } else {
        out.answer = NnrAnswer::Unknown;
        out.reason = "no factorization found within the residual tolerance";
    }
    return out;
}

// ---------------------------------------------------------------------------
// stability checker

/// Size-first lexicographic order on sorted index multisets: smaller sets come
/// first; equal sizes compare by the first strict difference with a
/// dominated prefix.
inline bool lexicographic_before(const std::vector<std::size_t>& s, const std::vector<std::size_t>& t) {
    if (s.size() != t.size()) return s.size() < t.size();
    for (std::size_t i = 0; i < s.size(); ++i) {
        bool prefix_ok = true;
        for (std::size_t j = 0; j < i; ++j)
            if (s[j] > t[j]) { prefix_ok = false; break; }
        if (prefix_ok && s[i] < t[i]) return true;
        if (s[i] != t[i]) return false;
    }
    return false;
}

struct StabilityViolation {
    enum class Kind { Column, Row } kind = Kind::Column;
    std::size_t index = 0;
    std::vector<std::size_t> expected_support;
    std::vector<std::size_t> actual_support;
};

template <class S>
struct StabilityResult {
    bool stable = true;
    std::optional<StabilityViolation> first_violation;
};

namespace nnr_detail {

/// First admissible subset of the generator columns for the target, in
/// size-first lexicographic order; conic membership decided by LP.
template <class S>
std::vector<std::size_t> first_admissible_subset(const Matrix<S>& generators,
                                                 const std::vector<S>& target) {
    const std::size_t kk = generators.cols();
    bool target_zero = true;
    for (const auto& x : target)
        if (x.sign() != 0) { target_zero = false; break; }
    if (target_zero) return {};

    std::vector<std::size_t> combo;
    for (std::size_t size = 1; size <= kk; ++size) {
        combo.assign(size, 0);
        std::function<std::optional<std::vector<std::size_t>>(std::size_t, std::size_t)> rec =
            [&](std::size_t pos, std::size_t start) -> std::optional<std::vector<std::size_t>> {
            if (pos == size) {
                LinearProgram<S> lp;
                lp.constraints = Matrix<S>(2 * target.size(), size);
                lp.rhs.assign(2 * target.size(), S(0));
                for (std::size_t i = 0; i < target.size(); ++i) {
                    for (std::size_t j = 0; j < size; ++j) {
                        lp.constraints(2 * i, j) = generators(i, combo[j]);
                        lp.constraints(2 * i + 1, j) = -generators(i, combo[j]);
                    }
                    lp.rhs[2 * i] = target[i];
                    lp.rhs[2 * i + 1] = -target[i];
                }
                lp.objective.assign(size, S(0));
                if (solve(lp).status == LpStatus::Optimal)
                    return std::optional<std::vector<std::size_t>>(combo);
                return std::nullopt;
            }
            for (std::size_t c = start; c + (size - pos - 1) < kk; ++c) {
                combo[pos] = c;
                auto hit = rec(pos + 1, c + 1);
                if (hit) return hit;
            }
            return std::nullopt;
        };
        auto hit = rec(0, 0);
        if (hit) return *hit;
    }
    throw DomainError("target is outside the conic hull of all generators");
}

template <class S>
std::vector<std::size_t> support_of(const std::vector<S>& v) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i].sign() != 0) s.push_back(i);
    return s;
}

} // namespace nnr_detail

/// Checks the stable-factorization property: every column support of E is the
/// lexicographically first admissible subset of R's columns for the matching
/// column of C, and symmetrically for rows.
template <class S>
StabilityResult<S> is_stable_nmf(const Matrix<S>& r_factor, const Matrix<S>& e_factor,
                                 const Matrix<S>& c) {
    if (!(r_factor * e_factor).entrywise_equal(c))
        throw DomainError("factors do not multiply to the matrix");
    if (r_factor.cols() > 12)
        throw ResourceError("stability enumeration capped at 12 inner columns");
    StabilityResult<S> out;
    for (std::size_t col = 0; col < c.cols(); ++col) {
        auto actual = nnr_detail::support_of(e_factor.col(col));
        auto expected = nnr_detail::first_admissible_subset(r_factor, c.col(col));
        if (actual != expected) {
            out.stable = false;
            out.first_violation =
                StabilityViolation{StabilityViolation::Kind::Column, col, expected, actual};
            return out;
        }
    }
    Matrix<S> et = e_factor.transpose();
    Matrix<S> rt = r_factor.transpose();
    Matrix<S> ct = c.transpose();
    for (std::size_t row = 0; row < c.rows(); ++row) {
        auto actual = nnr_detail::support_of(rt.col(row));
        auto expected = nnr_detail::first_admissible_subset(et, ct.col(row));
        if (actual != expected) {
            out.stable = false;
            out.first_violation = StabilityViolation{StabilityViolation::Kind::Row, row, expected, actual};
            return out;
        }
    }
    return out;
}

} // namespace cope

#endif
