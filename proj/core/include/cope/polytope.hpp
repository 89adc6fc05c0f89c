#ifndef COPE_POLYTOPE_HPP
#define COPE_POLYTOPE_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "cope/lp.hpp"
#include "cope/matrix.hpp"

namespace cope {

inline constexpr std::size_t kMaxEnumerationDim = 6;
inline constexpr std::size_t kMaxEnumerationFacets = 24;

/// Vertex-representation polytope; one vertex per column, convexly
/// independent after construction through make_vpolytope.
template <class S>
struct VPolytope {
    std::size_t dim = 0;
    Matrix<S> vertices;

    std::size_t count() const { return vertices.cols(); }
    std::vector<S> vertex(std::size_t i) const { return vertices.col(i); }
};

/// Inequality-representation polyhedron {x : A x >= b, Eq x = eq_rhs}.
template <class S>
struct HPolytope {
    std::size_t dim = 0;
    Matrix<S> a;
    std::vector<S> b;
    Matrix<S> eq;
    std::vector<S> eq_rhs;

    std::size_t facets() const { return a.rows(); }
};

/// A VPolytope whose vertices are affinely independent.
template <class S>
struct SimplexBody {
    VPolytope<S> body;
};

namespace poly_detail {

template <class S>
Matrix<S> difference_matrix(const Matrix<S>& pts) {
    if (pts.cols() <= 1) return Matrix<S>(pts.rows(), 0);
    Matrix<S> d(pts.rows(), pts.cols() - 1);
    for (std::size_t j = 1; j < pts.cols(); ++j)
        for (std::size_t i = 0; i < pts.rows(); ++i) d(i, j - 1) = pts(i, j) - pts(i, 0);
    return d;
}

template <class S>
bool same_point(const std::vector<S>& x, const std::vector<S>& y) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if ((x[i] - y[i]).sign() != 0) return false;
    return true;
}

} // namespace poly_detail

/// Feasibility of x = sum_i lambda_i v_i, lambda >= 0, sum lambda = 1.
template <class S>
bool in_convex_hull(const std::vector<S>& x, const Matrix<S>& points) {
    const std::size_t d = points.rows();
    const std::size_t nv = points.cols();
    if (x.size() != d)
        throw ValidationError(ValidationError::Kind::DimensionMismatch, "point dimension mismatch");
    LinearProgram<S> lp;
    lp.constraints = Matrix<S>(2 * (d + 1), nv);
    lp.rhs.assign(2 * (d + 1), S(0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < nv; ++j) {
            lp.constraints(2 * i, j) = points(i, j);
            lp.constraints(2 * i + 1, j) = -points(i, j);
        }
        lp.rhs[2 * i] = x[i];
        lp.rhs[2 * i + 1] = -x[i];
    }
    for (std::size_t j = 0; j < nv; ++j) {
        lp.constraints(2 * d, j) = S(1);
        lp.constraints(2 * d + 1, j) = S(-1);
    }
    lp.rhs[2 * d] = S(1);
    lp.rhs[2 * d + 1] = S(-1);
    lp.objective.assign(nv, S(0));
    return solve(lp).status == LpStatus::Optimal;
}

template <class S>
bool contains(const VPolytope<S>& p, const std::vector<S>& x) {
    return in_convex_hull(x, p.vertices);
}

template <class S>
bool contains(const HPolytope<S>& h, const std::vector<S>& x) {
    if (x.size() != h.dim)
        throw ValidationError(ValidationError::Kind::DimensionMismatch, "point dimension mismatch");
    for (std::size_t i = 0; i < h.a.rows(); ++i) {
        S acc = -h.b[i];
        for (std::size_t j = 0; j < h.dim; ++j) acc += h.a(i, j) * x[j];
        if (acc.sign() < 0) return false;
    }
    for (std::size_t i = 0; i < h.eq.rows(); ++i) {
        S acc = -h.eq_rhs[i];
        for (std::size_t j = 0; j < h.dim; ++j) acc += h.eq(i, j) * x[j];
        if (acc.sign() != 0) return false;
    }
    return true;
}

/// Builds a VPolytope from points: drops duplicates, then any point lying in
/// the convex hull of the others. Order of survivors follows the input.
template <class S>
VPolytope<S> make_vpolytope(const Matrix<S>& points) {
    if (points.empty())
        throw ValidationError(ValidationError::Kind::DimensionMismatch, "no points");
    std::vector<std::vector<S>> kept;
    for (std::size_t j = 0; j < points.cols(); ++j) {
        auto p = points.col(j);
        bool dup = false;
        for (const auto& q : kept)
            if (poly_detail::same_point(p, q)) { dup = true; break; }
        if (!dup) kept.push_back(std::move(p));
    }
    // redundancy: a point interior to the hull of the rest is never extreme
    std::vector<bool> extreme(kept.size(), true);
    if (kept.size() > 1) {
        for (std::size_t j = 0; j < kept.size(); ++j) {
            std::vector<std::vector<S>> others;
            for (std::size_t t = 0; t < kept.size(); ++t)
                if (t != j) others.push_back(kept[t]);
            if (in_convex_hull(kept[j], Matrix<S>::from_columns(others))) extreme[j] = false;
        }
    }
    std::vector<std::vector<S>> verts;
    for (std::size_t j = 0; j < kept.size(); ++j)
        if (extreme[j]) verts.push_back(kept[j]);
    VPolytope<S> out;
    out.dim = points.rows();
    out.vertices = Matrix<S>::from_columns(verts);
    return out;
}

/// Outer polytope of a GPT factor: {x | A x >= 0, 1^T A x = l}.
template <class S>
HPolytope<S> outer_from_effects(const Matrix<S>& a, std::size_t l) {
    if (rank(a) != a.cols())
        throw ValidationError(ValidationError::Kind::RankDeficient, "effect matrix lacks full column rank");
    HPolytope<S> h;
    h.dim = a.cols();
    h.a = a;
    h.b.assign(a.rows(), S(0));
    h.eq = Matrix<S>(1, a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        S sum(0);
        for (std::size_t i = 0; i < a.rows(); ++i) sum += a(i, j);
        h.eq(0, j) = sum;
    }
    h.eq_rhs.assign(1, S(static_cast<long>(l)));
    return h;
}

/// Inner polytope: convex hull of the columns of the state factor.
template <class S>
VPolytope<S> inner_from_states(const Matrix<S>& b) {
    return make_vpolytope(b);
}

template <class S>
struct VertexEnumeration {
    bool bounded = true;
    VPolytope<S> polytope;
};

/// All vertices by brute force over facet subsets of size equal to the affine
/// dimension, solving each square system exactly. Unboundedness is detected
/// first by maximizing each coordinate direction.
template <class S>
VertexEnumeration<S> enumerate_vertices(const HPolytope<S>& h) {
    if (h.dim > kMaxEnumerationDim)
        throw ResourceError("vertex enumeration limited to dimension " +
                            std::to_string(kMaxEnumerationDim));
    if (h.facets() > kMaxEnumerationFacets)
        throw ResourceError("vertex enumeration limited to " + std::to_string(kMaxEnumerationFacets) +
                            " facets");
    VertexEnumeration<S> out;

    // feasibility + boundedness probes along each +/- coordinate direction
    Matrix<S> cons(h.a.rows() + 2 * h.eq.rows(), h.dim);
    std::vector<S> rhs(cons.rows(), S(0));
    for (std::size_t i = 0; i < h.a.rows(); ++i) {
        for (std::size_t j = 0; j < h.dim; ++j) cons(i, j) = h.a(i, j);
        rhs[i] = h.b[i];
    }
    for (std::size_t e = 0; e < h.eq.rows(); ++e) {
        for (std::size_t j = 0; j < h.dim; ++j) {
            cons(h.a.rows() + 2 * e, j) = h.eq(e, j);
            cons(h.a.rows() + 2 * e + 1, j) = -h.eq(e, j);
        }
        rhs[h.a.rows() + 2 * e] = h.eq_rhs[e];
        rhs[h.a.rows() + 2 * e + 1] = -h.eq_rhs[e];
    }
    for (std::size_t j = 0; j < h.dim; ++j) {
        for (int sgn : {1, -1}) {
            std::vector<S> c(h.dim, S(0));
            c[j] = S(-sgn); // maximize sgn * x_j
            auto sol = solve_free(cons, rhs, c);
            if (sol.status == LpStatus::Infeasible) {
                out.bounded = true;
                out.polytope.dim = h.dim;
                out.polytope.vertices = Matrix<S>(h.dim, 0);
                return out;
            }
            if (sol.status == LpStatus::Unbounded) {
                out.bounded = false;
                out.polytope.dim = h.dim;
                return out;
            }
        }
    }

    // independent equality rows
    Matrix<S> eqaug(h.eq.rows(), h.dim + 1);
    for (std::size_t e = 0; e < h.eq.rows(); ++e) {
        for (std::size_t j = 0; j < h.dim; ++j) eqaug(e, j) = h.eq(e, j);
        eqaug(e, h.dim) = h.eq_rhs[e];
    }
    std::vector<std::vector<S>> eqrows;
    std::vector<S> eqr;
    if (h.eq.rows() > 0) {
        auto rr = rref(eqaug);
        for (std::size_t t = 0; t < rr.pivot_cols.size(); ++t) {
            if (rr.pivot_cols[t] == h.dim)
                throw ValidationError(ValidationError::Kind::DimensionMismatch,
                                      "inconsistent equality constraints");
            auto row = eqaug.row(t);
            eqr.push_back(row.back());
            row.pop_back();
            eqrows.push_back(std::move(row));
        }
    }
    const std::size_t need = h.dim - eqrows.size();

    std::vector<std::vector<S>> found;
    std::vector<std::size_t> combo(need);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
        if (pos == need) {
            Matrix<S> sys(h.dim, h.dim);
            std::vector<S> srhs(h.dim, S(0));
            for (std::size_t t = 0; t < need; ++t) {
                for (std::size_t j = 0; j < h.dim; ++j) sys(t, j) = h.a(combo[t], j);
                srhs[t] = h.b[combo[t]];
            }
            for (std::size_t e = 0; e < eqrows.size(); ++e) {
                for (std::size_t j = 0; j < h.dim; ++j) sys(need + e, j) = eqrows[e][j];
                srhs[need + e] = eqr[e];
            }
            auto x = solve_square(sys, srhs);
            if (!x) return;
            if (!contains(h, *x)) return;
            for (const auto& w : found)
                if (poly_detail::same_point(*x, w)) return;
            found.push_back(*x);
            return;
        }
        for (std::size_t i = start; i + (need - pos - 1) < h.a.rows(); ++i) {
            combo[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    if (need == 0) {
        // unique point from the equalities
        Matrix<S> sys(h.dim, h.dim);
        std::vector<S> srhs(h.dim, S(0));
        for (std::size_t e = 0; e < eqrows.size(); ++e) {
            for (std::size_t j = 0; j < h.dim; ++j) sys(e, j) = eqrows[e][j];
            srhs[e] = eqr[e];
        }
        auto x = solve_square(sys, srhs);
        if (x && contains(h, *x)) found.push_back(*x);
    } else {
        rec(0, 0);
    }
    out.bounded = true;
    out.polytope.dim = h.dim;
    out.polytope.vertices =
        found.empty() ? Matrix<S>(h.dim, 0) : Matrix<S>::from_columns(found);
    return out;
}

/// True when the origin lies strictly inside conv(columns of points).
template <class S>
bool origin_strictly_interior(const Matrix<S>& points) {
    const std::size_t d = points.rows();
    const std::size_t nv = points.cols();
    // max t s.t. P lambda = 0, 1 lambda = 1, lambda_i >= t, t >= 0
    LinearProgram<S> lp;
    lp.constraints = Matrix<S>(2 * (d + 1) + nv, nv + 1);
    lp.rhs.assign(lp.constraints.rows(), S(0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < nv; ++j) {
            lp.constraints(2 * i, j) = points(i, j);
            lp.constraints(2 * i + 1, j) = -points(i, j);
        }
    for (std::size_t j = 0; j < nv; ++j) {
        lp.constraints(2 * d, j) = S(1);
        lp.constraints(2 * d + 1, j) = S(-1);
    }
    lp.rhs[2 * d] = S(1);
    lp.rhs[2 * d + 1] = S(-1);
    for (std::size_t j = 0; j < nv; ++j) {
        lp.constraints(2 * (d + 1) + j, j) = S(1);
        lp.constraints(2 * (d + 1) + j, nv) = S(-1);
    }
    lp.objective.assign(nv + 1, S(0));
    lp.objective[nv] = S(-1);
    auto sol = solve(lp);
    return sol.status == LpStatus::Optimal && (-sol.primal_value).sign() > 0;
}

/// Polar dual {y : <y, x> <= 1 for all x in p}; requires the origin strictly
/// inside p.
template <class S>
HPolytope<S> polar_dual(const VPolytope<S>& p) {
    if (!origin_strictly_interior(p.vertices))
        throw DomainError("polar dual requires the origin strictly inside the polytope");
    HPolytope<S> h;
    h.dim = p.dim;
    h.a = Matrix<S>(p.count(), p.dim);
    h.b.assign(p.count(), S(-1));
    for (std::size_t i = 0; i < p.count(); ++i)
        for (std::size_t j = 0; j < p.dim; ++j) h.a(i, j) = -p.vertices(j, i);
    return h;
}

template <class S>
VPolytope<S> polar_dual(const HPolytope<S>& h) {
    if (h.eq.rows() != 0)
        throw DomainError("polar dual requires a full-dimensional H-polytope");
    Matrix<S> pts(h.dim, h.facets());
    for (std::size_t i = 0; i < h.facets(); ++i) {
        if (h.b[i].sign() >= 0)
            throw DomainError("polar dual requires the origin strictly inside the polytope");
        for (std::size_t j = 0; j < h.dim; ++j) pts(j, i) = h.a(i, j) / h.b[i];
    }
    return make_vpolytope(pts);
}

template <class S>
std::vector<S> barycenter(const VPolytope<S>& p) {
    if (p.count() == 0) throw DomainError("barycenter of empty polytope");
    std::vector<S> c(p.dim, S(0));
    for (std::size_t j = 0; j < p.count(); ++j)
        for (std::size_t i = 0; i < p.dim; ++i) c[i] += p.vertices(i, j);
    S nv(static_cast<long>(p.count()));
    for (auto& x : c) x = x / nv;
    return c;
}

/// Affine chart x = origin + basis * y with orthogonal (unnormalized) basis
/// columns, so local coordinates come from diagonal Gram solves.
template <class S>
struct AffineChart {
    std::vector<S> origin;
    std::vector<std::vector<S>> basis; // ambient vectors

    std::size_t local_dim() const { return basis.size(); }

    std::vector<S> to_local(const std::vector<S>& x) const {
        std::vector<S> y(basis.size(), S(0));
        std::vector<S> v(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) v[i] = x[i] - origin[i];
        for (std::size_t t = 0; t < basis.size(); ++t) y[t] = dot(v, basis[t]) / dot(basis[t], basis[t]);
        return y;
    }
    std::vector<S> to_ambient(const std::vector<S>& y) const {
        std::vector<S> x = origin;
        for (std::size_t t = 0; t < basis.size(); ++t)
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[t] * basis[t][i];
        return x;
    }
    /// Orthogonal projection of an ambient point onto the chart's affine span.
    std::vector<S> project(const std::vector<S>& x) const { return to_ambient(to_local(x)); }
    bool spans(const std::vector<S>& x) const {
        return poly_detail::same_point(project(x), x);
    }
};

/// Chart of the affine span of the given points (origin = first column).
template <class S>
AffineChart<S> make_span_chart(const Matrix<S>& points) {
    AffineChart<S> chart;
    chart.origin = points.col(0);
    Matrix<S> d = poly_detail::difference_matrix(points);
    auto [cols_basis, kernel] = orthogonal_bases(d.transpose());
    (void)kernel;
    chart.basis = std::move(cols_basis);
    return chart;
}

namespace poly_detail {

/// Deterministic near-regular simplex directions in dimension s with
/// denominators bounded by 2^16; positively spanning by construction check.
std::vector<std::vector<Rational>> rational_simplex_directions(std::size_t s);

template <class S>
std::vector<std::vector<S>> simplex_directions(std::size_t s) {
    auto rats = rational_simplex_directions(s);
    std::vector<std::vector<S>> out;
    for (const auto& v : rats) {
        std::vector<S> d;
        d.reserve(v.size());
        for (const auto& q : v)
            d.push_back(S::from_fraction(static_cast<long>(q.get_num().get_si()),
                                         static_cast<long>(q.get_den().get_si())));
        out.push_back(std::move(d));
    }
    return out;
}

/// Largest admitted step along dir from center (binary search on membership,
/// bracket narrowed to 2^-32 of its initial width, result rounded down to a
/// power of two so it is exactly representable).
template <class S, class Member>
S binary_search_step(const std::vector<S>& center, const std::vector<S>& dir, Member inside) {
    auto probe = [&](const S& f) {
        std::vector<S> x(center.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = center[i] + f * dir[i];
        return inside(x);
    };
    S hi(1);
    int expand = 0;
    while (probe(hi)) {
        hi = hi * S(2);
        if (++expand > 128) throw DomainError("direction escapes every bound; body unbounded?");
    }
    S lo = hi / S(2);
    int shrink = 0;
    while (!probe(lo)) {
        hi = lo;
        lo = lo / S(2);
        if (++shrink > 512) throw DomainError("center is not interior along a search direction");
    }
    for (int it = 0; it < 32; ++it) {
        S mid = (lo + hi) / S(2);
        if (probe(mid))
            lo = mid;
        else
            hi = mid;
    }
    return round_pow2(lo, RoundDir::Down);
}

template <class S, class Member>
SimplexBody<S> inscribed_simplex_impl(const AffineChart<S>& chart, const std::vector<S>& center,
                                      Member inside_ambient) {
    const std::size_t s = chart.local_dim();
    std::vector<std::vector<S>> verts;
    if (s == 0) {
        verts.push_back(center);
    } else {
        auto dirs = simplex_directions<S>(s);
        for (const auto& dloc : dirs) {
            std::vector<S> damb(center.size(), S(0));
            for (std::size_t t = 0; t < s; ++t)
                for (std::size_t i = 0; i < damb.size(); ++i) damb[i] += dloc[t] * chart.basis[t][i];
            S f = binary_search_step(center, damb, inside_ambient);
            std::vector<S> v(center.size());
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = center[i] + f * damb[i];
            verts.push_back(std::move(v));
        }
    }
    SimplexBody<S> out;
    out.body.dim = center.size();
    out.body.vertices = Matrix<S>::from_columns(verts);
    if (rank(difference_matrix(out.body.vertices)) != s)
        throw DomainError("inscribed simplex degenerated; center too close to the boundary");
    return out;
}

} // namespace poly_detail

/// Simplex with affine-dim(p)+1 vertices of the form center + f_i * dir_i,
/// contained in p and containing the center (directions positively span).
template <class S>
SimplexBody<S> inscribed_simplex(const VPolytope<S>& p, const std::vector<S>& center) {
    if (!contains(p, center)) throw DomainError("center is not inside the polytope");
    auto chart = make_span_chart(p.vertices);
    if (!chart.spans(center)) throw DomainError("center lies outside the affine span of the polytope");
    return poly_detail::inscribed_simplex_impl(
        chart, center, [&](const std::vector<S>& x) { return contains(p, x); });
}

/// Simplex containing p: the polar dual of an inscribed simplex of the polar
/// dual of p, computed in the chart of p's affine span.
template <class S>
SimplexBody<S> circumscribed_simplex(const VPolytope<S>& p) {
    auto chart = make_span_chart(p.vertices);
    const std::size_t s = chart.local_dim();
    if (s == 0) {
        SimplexBody<S> out;
        out.body = p;
        return out;
    }
    // local centered copy of p
    std::vector<std::vector<S>> loc;
    for (std::size_t j = 0; j < p.count(); ++j) loc.push_back(chart.to_local(p.vertex(j)));
    std::vector<S> centroid(s, S(0));
    for (const auto& y : loc)
        for (std::size_t t = 0; t < s; ++t) centroid[t] += y[t];
    for (auto& v : centroid) v = v / S(static_cast<long>(loc.size()));
    Matrix<S> centered(s, loc.size());
    for (std::size_t j = 0; j < loc.size(); ++j)
        for (std::size_t t = 0; t < s; ++t) centered(t, j) = loc[j][t] - centroid[t];

    // polar body {z : <v, z> <= 1 for all centered vertices v}; membership by
    // direct inequality evaluation
    auto polar_member = [&](const std::vector<S>& z) {
        for (std::size_t j = 0; j < centered.cols(); ++j) {
            S acc(0);
            for (std::size_t t = 0; t < s; ++t) acc += centered(t, j) * z[t];
            if ((acc - S(1)).sign() > 0) return false;
        }
        return true;
    };
    AffineChart<S> idchart;
    idchart.origin.assign(s, S(0));
    for (std::size_t t = 0; t < s; ++t) {
        std::vector<S> e(s, S(0));
        e[t] = S(1);
        idchart.basis.push_back(std::move(e));
    }
    std::vector<S> zero(s, S(0));
    SimplexBody<S> inner_polar = poly_detail::inscribed_simplex_impl(idchart, zero, polar_member);

    // dual of the inscribed simplex: {y : <w_j, y> <= 1}; its vertices solve the
    // s-subsets of rows
    const Matrix<S>& w = inner_polar.body.vertices; // s x (s+1)
    std::vector<std::vector<S>> verts;
    for (std::size_t drop = 0; drop < w.cols(); ++drop) {
        Matrix<S> sys(s, s);
        std::vector<S> rhs(s, S(1));
        std::size_t rr = 0;
        for (std::size_t j = 0; j < w.cols(); ++j) {
            if (j == drop) continue;
            for (std::size_t t = 0; t < s; ++t) sys(rr, t) = w(t, j);
            ++rr;
        }
        auto y = solve_square(sys, rhs);
        if (!y) throw DomainError("degenerate polar simplex");
        std::vector<S> amb(chart.origin.size());
        for (std::size_t t = 0; t < s; ++t) (*y)[t] += centroid[t];
        amb = chart.to_ambient(*y);
        verts.push_back(std::move(amb));
    }
    SimplexBody<S> out;
    out.body.dim = p.dim;
    out.body.vertices = Matrix<S>::from_columns(verts);
    // every vertex of p must satisfy the dual inequalities
    for (std::size_t j = 0; j < p.count(); ++j) {
        auto y = chart.to_local(p.vertex(j));
        for (std::size_t col = 0; col < w.cols(); ++col) {
            S acc(0);
            for (std::size_t t = 0; t < s; ++t) acc += w(t, col) * (y[t] - centroid[t]);
            if ((acc - S(1)).sign() > 0)
                throw DomainError("circumscribed simplex failed to contain the polytope");
        }
    }
    return out;
}

/// Squared distance from x to the affine hull of the given points.
template <class S>
S squared_distance_to_affine(const std::vector<S>& x, const Matrix<S>& pts) {
    std::vector<S> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = x[i] - pts(i, 0);
    Matrix<S> d = poly_detail::difference_matrix(pts);
    S vv = dot(v, v);
    if (d.cols() == 0) return vv;
    Matrix<S> g = d.transpose() * d;
    std::vector<S> rhs(d.cols(), S(0));
    for (std::size_t t = 0; t < d.cols(); ++t) {
        for (std::size_t i = 0; i < v.size(); ++i) rhs[t] += d(i, t) * v[i];
    }
    auto coef = solve_square(g, rhs);
    if (!coef) throw DomainError("degenerate affine hull in distance computation");
    S proj(0);
    for (std::size_t t = 0; t < d.cols(); ++t) proj += (*coef)[t] * rhs[t];
    return vv - proj;
}

/// d1^2 = min over facets of s1 of the squared distance from center;
/// d2^2 = max squared distance between vertices of s2. Exact in the field.
template <class S>
std::pair<S, S> distances(const SimplexBody<S>& s1, const SimplexBody<S>& s2,
                          const std::vector<S>& center) {
    const Matrix<S>& v1 = s1.body.vertices;
    if (v1.cols() < 2) throw DomainError("inscribed simplex has no facets");
    std::optional<S> d1;
    for (std::size_t drop = 0; drop < v1.cols(); ++drop) {
        std::vector<std::vector<S>> facet;
        for (std::size_t j = 0; j < v1.cols(); ++j)
            if (j != drop) facet.push_back(v1.col(j));
        S dist = squared_distance_to_affine(center, Matrix<S>::from_columns(facet));
        if (!d1 || dist < *d1) d1 = dist;
    }
    const Matrix<S>& v2 = s2.body.vertices;
    std::optional<S> d2;
    for (std::size_t i = 0; i < v2.cols(); ++i)
        for (std::size_t j = i + 1; j < v2.cols(); ++j) {
            S acc(0);
            for (std::size_t t = 0; t < v2.rows(); ++t) {
                S diff = v2(t, i) - v2(t, j);
                acc += diff * diff;
            }
            if (!d2 || acc > *d2) d2 = acc;
        }
    if (!d2) throw DomainError("containing simplex has fewer than two vertices");
    return {*d1, *d2};
}

/// Orthogonal projection of every vertex of p onto the affine span of
/// span_points, preserving vertex order (no redundancy removal).
template <class S>
VPolytope<S> project_affine(const VPolytope<S>& p, const Matrix<S>& span_points) {
    if (span_points.cols() == 0)
        throw ValidationError(ValidationError::Kind::DimensionMismatch, "empty span point set");
    auto chart = make_span_chart(span_points);
    std::vector<std::vector<S>> projected;
    for (std::size_t j = 0; j < p.count(); ++j) projected.push_back(chart.project(p.vertex(j)));
    VPolytope<S> out;
    out.dim = p.dim;
    out.vertices = Matrix<S>::from_columns(projected);
    return out;
}

// ---------------------------------------------------------------------------
// minimal nested polygon in the plane

namespace poly_detail {

template <class S>
S cross2(const std::vector<S>& o, const std::vector<S>& a, const std::vector<S>& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Vertices sorted counterclockwise around the barycenter, exact comparator.
template <class S>
std::vector<std::vector<S>> ccw_vertices(const VPolytope<S>& p) {
    std::vector<std::vector<S>> v;
    for (std::size_t j = 0; j < p.count(); ++j) v.push_back(p.vertex(j));
    auto c = barycenter(p);
    auto half = [&](const std::vector<S>& q) {
        int sy = (q[1] - c[1]).sign();
        if (sy != 0) return sy > 0 ? 0 : 1;
        return (q[0] - c[0]).sign() > 0 ? 0 : 1;
    };
    std::sort(v.begin(), v.end(), [&](const std::vector<S>& x, const std::vector<S>& y) {
        int hx = half(x), hy = half(y);
        if (hx != hy) return hx < hy;
        return cross2(c, x, y).sign() > 0;
    });
    return v;
}

template <class S>
bool point_in_ccw_polygon(const std::vector<std::vector<S>>& poly, const std::vector<S>& x) {
    const std::size_t m = poly.size();
    for (std::size_t i = 0; i < m; ++i)
        if (cross2(poly[i], poly[(i + 1) % m], x).sign() < 0) return false;
    return true;
}

/// Farthest boundary exit of the ray x + t*dir, t > 0, on a ccw polygon.
template <class S>
std::optional<std::vector<S>> ray_exit(const std::vector<std::vector<S>>& poly, const std::vector<S>& x,
                                       const std::vector<S>& dir) {
    const std::size_t m = poly.size();
    std::optional<std::vector<S>> best;
    std::optional<S> best_t;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % m];
        std::vector<S> e{q[0] - p[0], q[1] - p[1]};
        S den = dir[0] * e[1] - dir[1] * e[0];
        if (den.sign() == 0) {
            // collinear edge: consider its endpoints as exits
            std::vector<S> x_ahead{x[0] + dir[0], x[1] + dir[1]};
            if (cross2(x, x_ahead, p).sign() == 0) {
                for (const auto& end : {p, q}) {
                    S t = dir[0].sign() != 0 ? (end[0] - x[0]) / dir[0] : (end[1] - x[1]) / dir[1];
                    if (t.sign() > 0 && (!best_t || t > *best_t)) {
                        best_t = t;
                        best = end;
                    }
                }
            }
            continue;
        }
        std::vector<S> w{p[0] - x[0], p[1] - x[1]};
        S t = (w[0] * e[1] - w[1] * e[0]) / den;
        S u = (w[0] * dir[1] - w[1] * dir[0]) / den;
        if (t.sign() > 0 && u.sign() >= 0 && (u - S(1)).sign() <= 0) {
            if (!best_t || t > *best_t) {
                best_t = t;
                best = std::vector<S>{x[0] + t * dir[0], x[1] + t * dir[1]};
            }
        }
    }
    return best;
}

/// The maximal tangent direction from x: towards the inner vertex v with all
/// inner points on the left of x->v, picking the farthest collinear support.
template <class S>
std::optional<std::vector<S>> tangent_target(const std::vector<std::vector<S>>& inner,
                                             const std::vector<S>& x) {
    std::optional<std::vector<S>> best;
    for (const auto& v : inner) {
        if (same_point(v, x)) continue;
        bool support = true;
        for (const auto& w : inner) {
            if (cross2(x, v, w).sign() < 0) { support = false; break; }
        }
        if (!support) continue;
        if (!best) {
            best = v;
            continue;
        }
        // collinear supports: farther point advances more
        S db = (v[0] - x[0]) * (v[0] - x[0]) + (v[1] - x[1]) * (v[1] - x[1]);
        S dc = ((*best)[0] - x[0]) * ((*best)[0] - x[0]) + ((*best)[1] - x[1]) * ((*best)[1] - x[1]);
        if (db > dc) best = v;
    }
    return best;
}

template <class S>
std::optional<std::vector<std::vector<S>>> greedy_polygon(const std::vector<std::vector<S>>& inner,
                                                          const std::vector<std::vector<S>>& outer,
                                                          const std::vector<S>& start,
                                                          std::size_t cap) {
    std::vector<std::vector<S>> pts{start};
    for (std::size_t step = 0; step < cap; ++step) {
        const auto& x = pts.back();
        if (pts.size() >= 3) {
            bool closes = true;
            for (const auto& w : inner)
                if (cross2(x, pts.front(), w).sign() < 0) { closes = false; break; }
            if (closes) return pts;
        }
        auto v = tangent_target(inner, x);
        if (!v) return std::nullopt;
        std::vector<S> dir{(*v)[0] - x[0], (*v)[1] - x[1]};
        auto nxt = ray_exit(outer, x, dir);
        if (!nxt || same_point(*nxt, x)) return std::nullopt;
        pts.push_back(*nxt);
    }
    return std::nullopt;
}

} // namespace poly_detail

template <class S>
struct NestedPolygonResult {
    std::size_t k = 0;
    VPolytope<S> polygon;
};

/// Minimum vertex count of a convex polygon nested between inner and outer
/// (2-D coordinates), with a witness. Greedy chord advance around the annulus
/// from every flush-chord start and every outer vertex.
template <class S>
NestedPolygonResult<S> min_nested_polygon_2d(const VPolytope<S>& inner_p, const VPolytope<S>& outer_p) {
    using poly_detail::cross2;
    if (inner_p.dim != 2 || outer_p.dim != 2)
        throw ValidationError(ValidationError::Kind::DimensionMismatch, "expected 2-D coordinates");
    auto outer = poly_detail::ccw_vertices(make_vpolytope(outer_p.vertices));
    auto inner = poly_detail::ccw_vertices(make_vpolytope(inner_p.vertices));
    for (const auto& w : inner)
        if (!poly_detail::point_in_ccw_polygon(outer, w))
            throw DomainError("inner polygon is not contained in the outer polygon");

    NestedPolygonResult<S> out;
    if (inner.size() <= 2) {
        // degenerate inner bodies nest inside themselves
        out.k = inner.size();
        out.polygon.dim = 2;
        out.polygon.vertices = Matrix<S>::from_columns(inner);
        return out;
    }

    std::vector<std::vector<S>> starts;
    const std::size_t ni = inner.size();
    for (std::size_t i = 0; i < ni; ++i) {
        const auto& u = inner[i];
        const auto& w = inner[(i + 1) % ni];
        std::vector<S> back_dir{u[0] - w[0], u[1] - w[1]};
        auto s = poly_detail::ray_exit(outer, w, back_dir);
        if (s) starts.push_back(*s);
    }
    for (const auto& v : outer) starts.push_back(v);

    const std::size_t cap = inner.size() + outer.size() + 3;
    std::optional<std::vector<std::vector<S>>> best;
    for (const auto& s0 : starts) {
        auto poly = poly_detail::greedy_polygon(inner, outer, s0, cap);
        if (poly && (!best || poly->size() < best->size())) best = poly;
    }
    if (!best) throw DomainError("no nested polygon found; inputs degenerate");
    out.k = best->size();
    out.polygon.dim = 2;
    out.polygon.vertices = Matrix<S>::from_columns(*best);
    return out;
}

} // namespace cope

#endif
