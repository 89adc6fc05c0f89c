#ifndef COPE_ENMF_HPP
#define COPE_ENMF_HPP

#include <optional>
#include <string>
#include <vector>

#include "cope/cope_matrix.hpp"
#include "cope/nnr.hpp"
#include "cope/polytope.hpp"

namespace cope {

template <class S>
S pow2_scalar(long e) {
    S out(1);
    S two(2), half = S(1) / S(2);
    for (long i = 0; i < e; ++i) out *= two;
    for (long i = 0; i > e; --i) out *= half;
    return out;
}

/// Exponent z of a scalar that is exactly a power of two.
template <class S>
long pow2_exponent(S p) {
    long z = 0;
    S one(1), two(2);
    while ((p - one).sign() > 0) {
        p = p / two;
        ++z;
    }
    while ((p - one).sign() < 0) {
        p = p * two;
        --z;
    }
    if ((p - one).sign() != 0) throw DomainError("value is not a power of two");
    return z;
}

/// Power-of-two lower bound for sqrt(x): 2^floor(z/2) with 2^z <= x < 2^{z+1}.
/// Keeps the pipeline closed in the field by never taking square roots.
template <class S>
S pow2_sqrt_lower(const S& x) {
    long z = pow2_exponent(round_pow2(x, RoundDir::Down));
    long e = z >= 0 ? z / 2 : -((-z + 1) / 2);
    return pow2_scalar<S>(e);
}

/// Power-of-two upper bound for sqrt(x): 2^ceil(z/2) with 2^{z-1} < x <= 2^z.
template <class S>
S pow2_sqrt_upper(const S& x) {
    long z = pow2_exponent(round_pow2(x, RoundDir::Up));
    long e = z >= 0 ? (z + 1) / 2 : -((-z) / 2);
    return pow2_scalar<S>(e);
}

/// The shear program deciding whether a rank-preserving nonnegative map from
/// the vertex polytope of g onto the columns of b exists. g holds vertices as
/// columns (r x k, full row rank), b is r x n. Slack variables S bound the
/// negative deviations of the sheared seed map; D splits into D+ and D-.
template <class S>
struct ShearProblem {
    Matrix<S> g;
    Matrix<S> b;
    Matrix<S> e_bar;                          // k x n, g * e_bar = b
    std::vector<std::vector<S>> row_basis;    // orthogonal basis of rowspace(g), vectors in R^k
    std::vector<std::vector<S>> kernel_basis; // orthogonal basis of ker(g), vectors in R^k
    LinearProgram<S> lp;
    std::size_t k = 0, r = 0, n = 0;

    std::size_t var_s(std::size_t p, std::size_t s) const { return p * n + s; }
    std::size_t var_dplus(std::size_t i, std::size_t j) const { return k * n + i * r + j; }
    std::size_t var_dminus(std::size_t i, std::size_t j) const {
        return k * n + (k - r) * r + i * r + j;
    }
};

template <class S>
ShearProblem<S> build_shear_lp(const Matrix<S>& g, const Matrix<S>& b) {
    ShearProblem<S> sp;
    sp.g = g;
    sp.b = b;
    sp.r = g.rows();
    sp.k = g.cols();
    sp.n = b.cols();
    if (b.rows() != sp.r)
        throw ValidationError(ValidationError::Kind::DimensionMismatch, "factor row counts differ");
    if (rank(g) != sp.r)
        throw ValidationError(ValidationError::Kind::RankDeficient,
                              "vertex factor must have full row rank");
    Matrix<S> gdag = pseudoinverse_full_col_rank(g.transpose()).transpose(); // k x r
    sp.e_bar = gdag * b;
    if (!(g * sp.e_bar).entrywise_equal(b))
        throw DomainError("columns of b are outside the span of the vertex factor");
    auto bases = orthogonal_bases(g);
    sp.row_basis = std::move(bases.first);
    sp.kernel_basis = std::move(bases.second);

    const std::size_t k = sp.k, r = sp.r, n = sp.n;
    const std::size_t kr = k - r;
    const std::size_t nvars = k * n + 2 * kr * r;
    // w(j, s) = <a_j, e_bar column s>
    Matrix<S> w(r, n);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t s = 0; s < n; ++s) {
            S acc(0);
            for (std::size_t t = 0; t < k; ++t) acc += sp.row_basis[j][t] * sp.e_bar(t, s);
            w(j, s) = acc;
        }

    LinearProgram<S>& lp = sp.lp;
    lp.constraints = Matrix<S>(k * n, nvars);
    lp.rhs.assign(k * n, S(0));
    lp.objective.assign(nvars, S(0));
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t s = 0; s < n; ++s) {
            std::size_t t = sp.var_s(p, s);
            lp.constraints(t, t) = S(1);
            lp.objective[t] = S(1);
            lp.rhs[t] = -sp.e_bar(p, s);
            for (std::size_t i = 0; i < kr; ++i)
                for (std::size_t j = 0; j < r; ++j) {
                    S coeff = w(j, s) * sp.kernel_basis[i][p];
                    lp.constraints(t, sp.var_dplus(i, j)) = -coeff;
                    lp.constraints(t, sp.var_dminus(i, j)) = coeff;
                }
        }
    return sp;
}

enum class EnmfVerdict { Exists, NotExists, Unknown };

/// Certificate for the existence question. Exists carries an exact model,
/// NotExists a verified positive dual value, Unknown the reason the decision
/// could not be made.
template <class S>
struct EnmfCertificate {
    EnmfVerdict verdict = EnmfVerdict::Unknown;
    std::size_t inner_dim = 0;
    Matrix<S> r_factor;
    Matrix<S> e_factor;
    std::vector<S> dual; // row-major k x n multipliers of the shear program
    S dual_value = S(0);
    std::string lp_digest; // reference to the program the dual certifies
    std::string reason;
    bool float_verified_only = false;
};

/// Decides whether a nonnegative E with g E = b and rank E = rank b exists.
/// Exists returns E (re-verified); NotExists returns the dual certificate
/// with its positive value.
template <class S>
EnmfCertificate<S> decide_nonneg_map(const ShearProblem<S>& sp) {
    LpSolution<S> sol = solve(sp.lp);
    if (sol.status != LpStatus::Optimal)
        throw DomainError("shear program must be feasible and bounded");
    EnmfCertificate<S> cert;
    cert.inner_dim = sp.k;
    if (sol.primal_value.sign() == 0) {
        const std::size_t kr = sp.k - sp.r;
        Matrix<S> e = sp.e_bar;
        for (std::size_t i = 0; i < kr; ++i)
            for (std::size_t j = 0; j < sp.r; ++j) {
                // the constraint rows encode the shear with D- minus D+
                S d = sol.primal[sp.var_dminus(i, j)] - sol.primal[sp.var_dplus(i, j)];
                if (d.sign() == 0) continue;
                std::vector<S> w(sp.n, S(0));
                for (std::size_t s = 0; s < sp.n; ++s)
                    for (std::size_t t = 0; t < sp.k; ++t)
                        w[s] += sp.row_basis[j][t] * sp.e_bar(t, s);
                for (std::size_t p = 0; p < sp.k; ++p) {
                    if (sp.kernel_basis[i][p].sign() == 0) continue;
                    S f = d * sp.kernel_basis[i][p];
                    for (std::size_t s = 0; s < sp.n; ++s) e(p, s) += f * w[s];
                }
            }
        if (!(sp.g * e).entrywise_equal(sp.b))
            throw DomainError("reconstructed map does not reproduce b");
        if (!e.nonnegative()) throw DomainError("reconstructed map has negative entries");
        if (rank(e) != rank(sp.b)) throw DomainError("reconstructed map changed rank");
        cert.verdict = EnmfVerdict::Exists;
        cert.e_factor = std::move(e);
        return cert;
    }
    auto [feasible, value] = verify_certificate(sp.lp, sol.dual);
    if (!feasible || value.sign() <= 0 || (value - sol.primal_value).sign() != 0)
        throw DomainError("dual certificate failed verification");
    cert.verdict = EnmfVerdict::NotExists;
    cert.dual = sol.dual;
    cert.dual_value = value;
    cert.lp_digest = digest_hex(fnv1a64(std::to_string(sp.k) + ":" + std::to_string(sp.n),
                                        matrix_digest(sp.lp.constraints)));
    return cert;
}

template <class S>
EnmfCertificate<S> decide_nonneg_map(const Matrix<S>& g, const Matrix<S>& b) {
    ShearProblem<S> sp = build_shear_lp(g, b);
    return decide_nonneg_map(sp);
}

template <class S>
struct ModelVerdict {
    bool pass = false;
    std::string failed_check;
    std::size_t rank_c = 0, rank_r = 0, rank_e = 0;
};

/// Checks R*E = C, nonnegativity, column-stochastic E and column sums l of R;
/// with require_noncontextual, also the equal-ranks criterion.
template <class S>
ModelVerdict<S> verify_model(const CopeMatrix<S>& c, const Matrix<S>& r_factor,
                             const Matrix<S>& e_factor, bool require_noncontextual) {
    ModelVerdict<S> v;
    if (r_factor.rows() != c.rows()) {
        v.failed_check = "left factor has " + std::to_string(r_factor.rows()) + " rows, matrix has " +
                         std::to_string(c.rows());
        return v;
    }
    if (e_factor.cols() != c.cols()) {
        v.failed_check = "right factor has " + std::to_string(e_factor.cols()) +
                         " columns, matrix has " + std::to_string(c.cols());
        return v;
    }
    if (r_factor.cols() != e_factor.rows()) {
        v.failed_check = "inner dimensions differ: left factor " + std::to_string(r_factor.cols()) +
                         ", right factor " + std::to_string(e_factor.rows());
        return v;
    }
    v.rank_c = rank(c.data);
    v.rank_r = rank(r_factor);
    v.rank_e = rank(e_factor);
    if (!(r_factor * e_factor).entrywise_equal(c.data)) {
        v.failed_check = "product does not equal the matrix";
        return v;
    }
    if (!r_factor.nonnegative()) {
        v.failed_check = "left factor has negative entries";
        return v;
    }
    if (!e_factor.nonnegative()) {
        v.failed_check = "right factor has negative entries";
        return v;
    }
    for (std::size_t j = 0; j < e_factor.cols(); ++j) {
        S sum(0);
        for (std::size_t i = 0; i < e_factor.rows(); ++i) sum += e_factor(i, j);
        if ((sum - S(1)).sign() != 0) {
            v.failed_check = "right factor is not column-stochastic";
            return v;
        }
    }
    S l(static_cast<long>(c.measurements()));
    for (std::size_t j = 0; j < r_factor.cols(); ++j) {
        S sum(0);
        for (std::size_t i = 0; i < r_factor.rows(); ++i) sum += r_factor(i, j);
        if ((sum - l).sign() != 0) {
            v.failed_check = "left factor columns do not sum to the measurement count";
            return v;
        }
    }
    if (require_noncontextual && (v.rank_r != v.rank_c || v.rank_e != v.rank_c)) {
        v.failed_check = "rank separation: ranks (" + std::to_string(v.rank_r) + "," +
                         std::to_string(v.rank_e) + ") differ from rank " + std::to_string(v.rank_c);
        return v;
    }
    v.pass = true;
    return v;
}

/// Geometry of a rank factorization: the outer polytope with enumerated
/// vertices and the inner polytope, shared by the fixed-rank check and the
/// rank-3 exact paths.
template <class S>
struct FactorGeometry {
    RankFactorization<S> factors;
    HPolytope<S> outer_h;
    VPolytope<S> outer;
    VPolytope<S> inner;
    std::vector<S> unit;
};

template <class S>
FactorGeometry<S> factor_geometry(const CopeMatrix<S>& c) {
    FactorGeometry<S> geo;
    geo.factors = rank_factorize(c);
    geo.outer_h = outer_from_effects(geo.factors.left, c.measurements());
    auto en = enumerate_vertices(geo.outer_h);
    if (!en.bounded) throw DomainError("outer polytope is unbounded; the input is not a valid COPE");
    geo.outer = en.polytope;
    geo.inner = inner_from_states(geo.factors.right);
    geo.unit = unit_effect(geo.factors.left, c.measurements());
    return geo;
}

inline constexpr std::size_t kMaxOuterVerticesForMapDecision = 16;

/// Fixed-rank detection with the outer polytope itself as the nested body:
/// a noncontextual model of some size exists iff the map onto the inner
/// vertices exists; Exists carries the witness model of size = #vertices.
template <class S>
EnmfCertificate<S> enmf_exists_fixed_rank(const CopeMatrix<S>& c) {
    FactorGeometry<S> geo = factor_geometry(c);
    if (geo.outer.count() > kMaxOuterVerticesForMapDecision)
        throw ResourceError("outer polytope has " + std::to_string(geo.outer.count()) +
                            " vertices; the exact map decision is capped at " +
                            std::to_string(kMaxOuterVerticesForMapDecision));
    EnmfCertificate<S> cert = decide_nonneg_map(geo.outer.vertices, geo.factors.right);
    cert.inner_dim = geo.outer.count();
    if (cert.verdict == EnmfVerdict::Exists) {
        cert.r_factor = geo.factors.left * geo.outer.vertices;
        auto v = verify_model(c, cert.r_factor, cert.e_factor, true);
        if (!v.pass) throw DomainError("fixed-rank model failed verification: " + v.failed_check);
    }
    return cert;
}

/// Trivial embedding: zero columns to the left of A, zero rows on top of B.
template <class S>
std::pair<Matrix<S>, Matrix<S>> embed_cone(const Matrix<S>& a, const Matrix<S>& b, std::size_t k) {
    const std::size_t r = a.cols();
    if (k < r) throw DomainError("embedding dimension below the rank");
    Matrix<S> abar(a.rows(), k);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < r; ++j) abar(i, k - r + j) = a(i, j);
    Matrix<S> bbar(k, b.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) bbar(k - r + i, j) = b(i, j);
    return {std::move(abar), std::move(bbar)};
}

/// Bounding rows: -h^i/2 + u/2 for the first k-r added directions, then
/// +h^i/2 + u/2; each pair forms one extra dichotomic measurement.
template <class S>
Matrix<S> bound_outer(const Matrix<S>& a_bar, std::size_t k, std::size_t r, std::size_t l) {
    const std::size_t kr = k - r;
    std::vector<S> u(k, S(0));
    S lf(static_cast<long>(l));
    for (std::size_t j = 0; j < k; ++j) {
        S sum(0);
        for (std::size_t i = 0; i < a_bar.rows(); ++i) sum += a_bar(i, j);
        u[j] = sum / lf;
    }
    Matrix<S> out(a_bar.rows() + 2 * kr, k);
    for (std::size_t i = 0; i < a_bar.rows(); ++i)
        for (std::size_t j = 0; j < k; ++j) out(i, j) = a_bar(i, j);
    // each pair of rows forms one dichotomic measurement block
    S half = S(1) / S(2);
    for (std::size_t i = 0; i < kr; ++i) {
        const std::size_t lo = a_bar.rows() + 2 * i;
        for (std::size_t j = 0; j < k; ++j) {
            out(lo, j) = u[j] * half;
            out(lo + 1, j) = u[j] * half;
        }
        out(lo, i) -= half;
        out(lo + 1, i) += half;
    }
    return out;
}

/// The bounded outer polytope of the extended effect matrix.
template <class S>
HPolytope<S> bounded_outer_polytope(const Matrix<S>& a_bar_b, std::size_t l_extended) {
    return outer_from_effects(a_bar_b, l_extended);
}

/// Iteratively extends the embedded inner polytope to full dimension: at step
/// i the new vertex is barycenter + height * h^i, with the height a safe
/// power-of-two lower bound of d1/d2 from the inscribed and circumscribed
/// simplexes. Returns the extended vertex matrix and the heights.
template <class S>
std::pair<Matrix<S>, std::vector<S>> extend_inner(const Matrix<S>& b_bar, const HPolytope<S>& a_h,
                                                  std::size_t k, std::size_t r) {
    const std::size_t kr = k - r;
    std::vector<std::vector<S>> columns;
    for (std::size_t j = 0; j < b_bar.cols(); ++j) columns.push_back(b_bar.col(j));
    std::vector<S> heights;
    for (std::size_t i = 0; i < kr; ++i) {
        VPolytope<S> body = make_vpolytope(Matrix<S>::from_columns(columns));
        std::vector<S> c = barycenter(body);
        if (!contains(a_h, c)) throw DomainError("inner polytope escaped the bounded outer polytope");
        SimplexBody<S> s1 = inscribed_simplex(body, c);

        // intersection of the affine span of the current body with the outer
        Matrix<S> diffs = poly_detail::difference_matrix(body.vertices);
        auto complement = orthogonal_bases(diffs.transpose()).second;
        HPolytope<S> cut = a_h;
        const std::size_t base = cut.eq.rows();
        Matrix<S> eq(base + complement.size(), cut.dim);
        std::vector<S> eqr(base + complement.size(), S(0));
        for (std::size_t e = 0; e < base; ++e) {
            for (std::size_t j = 0; j < cut.dim; ++j) eq(e, j) = cut.eq(e, j);
            eqr[e] = cut.eq_rhs[e];
        }
        auto origin = body.vertex(0);
        for (std::size_t e = 0; e < complement.size(); ++e) {
            for (std::size_t j = 0; j < cut.dim; ++j) eq(base + e, j) = complement[e][j];
            eqr[base + e] = dot(complement[e], origin);
        }
        cut.eq = std::move(eq);
        cut.eq_rhs = std::move(eqr);
        auto en = enumerate_vertices(cut);
        if (!en.bounded || en.polytope.count() == 0)
            throw DomainError("outer slice is unbounded or empty");
        SimplexBody<S> s2 = circumscribed_simplex(en.polytope);

        auto [d1sq, d2sq] = distances(s1, s2, c);
        if (d1sq.sign() <= 0 || d2sq.sign() <= 0)
            throw DomainError("degenerate distances in the inner extension");
        S height = pow2_sqrt_lower(d1sq) / pow2_sqrt_upper(d2sq);
        std::vector<S> v = c;
        v[i] += height;
        if (!contains(a_h, v))
            throw DomainError("extension vertex escaped the bounded outer polytope");
        columns.push_back(std::move(v));
        heights.push_back(height);
    }
    return {Matrix<S>::from_columns(columns), std::move(heights)};
}

template <class S>
struct ReductionOutput {
    CopeMatrix<S> c_bar;
    Matrix<S> a_bar_b;
    Matrix<S> b_bar_b;
    std::vector<S> heights;
    std::size_t k = 0, r = 0, l = 0;
};

/// The rank-k nonnegative matrix whose NNR equals k exactly when the input
/// admits an equirank factorization of inner dimension k. The input appears
/// as the top-left submatrix.
template <class S>
ReductionOutput<S> reduce_to_nnr(const CopeMatrix<S>& c, std::size_t k) {
    RankFactorization<S> f = rank_factorize(c);
    const std::size_t r = f.inner_dim;
    if (k < r || k > r * r)
        throw DomainError("inner dimension " + std::to_string(k) + " outside [r, r^2] = [" +
                          std::to_string(r) + "," + std::to_string(r * r) + "]");
    const std::size_t l = c.measurements();
    auto [a_bar, b_bar] = embed_cone(f.left, f.right, k);
    ReductionOutput<S> out;
    out.k = k;
    out.r = r;
    out.l = l;
    out.a_bar_b = bound_outer(a_bar, k, r, l);
    const std::size_t l_ext = l + (k - r);
    HPolytope<S> outer = bounded_outer_polytope(out.a_bar_b, l_ext);
    auto [b_bar_b, heights] = extend_inner(b_bar, outer, k, r);
    out.b_bar_b = std::move(b_bar_b);
    out.heights = std::move(heights);

    Matrix<S> cbar = out.a_bar_b * out.b_bar_b;
    if (!cbar.nonnegative()) throw DomainError("reduction produced a negative entry");
    if (rank(cbar) != k) throw DomainError("reduction matrix rank differs from k");
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j)
            if ((cbar(i, j) - c.data(i, j)).sign() != 0)
                throw DomainError("input is not the top-left submatrix of the reduction");
    std::vector<std::size_t> blocks = c.block_heights;
    for (std::size_t i = 0; i < k - r; ++i) blocks.push_back(2);
    out.c_bar = validate_cope(cbar, blocks, CopeForm::A);
    return out;
}

// ---------------------------------------------------------------------------
// the full search loop

enum class EnnrStepMethod {
    RankShortCircuit,
    ExactPolygon,
    CappedOuterRefutation,
    OuterVertexModel,
    HeuristicOnReduction,
};

template <class S>
struct EnnrStep {
    std::size_t k = 0;
    EnnrStepMethod method = EnnrStepMethod::HeuristicOnReduction;
    EnmfCertificate<S> certificate;
};

enum class EnnrStatus {
    Exact,        // accepted k with definitive rejections below
    UpperBound,   // accepted k but some smaller k remained undecided
    NoModel,      // no noncontextual model of any size
    Undecided,    // scan exhausted without an accepting k
};

template <class S>
struct EnnrResult {
    EnnrStatus status = EnnrStatus::Undecided;
    std::optional<std::size_t> value;
    std::vector<EnnrStep<S>> transcript;
    EnmfCertificate<S> global; // fixed-rank existence certificate
};

struct EnnrOptions {
    NnrStrategy oracle = NnrStrategy::Auto;
    std::size_t max_k = 0; // 0: default r^2
    HeuristicOptions heuristic;
};

namespace enmf_detail {

/// Capped outer polygons: for each vertex of a five-vertex outer polygon, the
/// hexagon obtained by cutting that corner at the two edge midpoints. Any
/// nested quadrilateral lies inside one of them, so rejection of the
/// rank-preserving map for all five refutes inner dimension four.
template <class S>
std::vector<Matrix<S>> capped_outer_polygons(const std::vector<std::vector<S>>& ccw_ambient) {
    const std::size_t n = ccw_ambient.size();
    std::vector<Matrix<S>> out;
    S half = S(1) / S(2);
    for (std::size_t cut = 0; cut < n; ++cut) {
        std::vector<std::vector<S>> pts;
        for (std::size_t t = 1; t < n; ++t) {
            std::size_t idx = (cut + t) % n;
            pts.push_back(ccw_ambient[idx]);
        }
        // midpoints of the two edges meeting at the cut vertex
        const auto& prev = ccw_ambient[(cut + n - 1) % n];
        const auto& next = ccw_ambient[(cut + 1) % n];
        const auto& v = ccw_ambient[cut];
        std::vector<S> m1(v.size()), m2(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            m1[i] = (prev[i] + v[i]) * half;
            m2[i] = (v[i] + next[i]) * half;
        }
        pts.push_back(std::move(m1));
        pts.push_back(std::move(m2));
        out.push_back(Matrix<S>::from_columns(pts));
    }
    return out;
}

/// CCW order of the outer polytope's vertices using the plane chart.
template <class S>
std::vector<std::vector<S>> plane_ccw_vertices(const FactorGeometry<S>& geo) {
    AffineChart<S> chart = make_span_chart(geo.outer.vertices);
    if (chart.local_dim() != 2) throw DomainError("outer polytope is not two-dimensional");
    std::vector<std::vector<S>> locals;
    for (std::size_t j = 0; j < geo.outer.count(); ++j)
        locals.push_back(chart.to_local(geo.outer.vertex(j)));
    VPolytope<S> flat;
    flat.dim = 2;
    flat.vertices = Matrix<S>::from_columns(locals);
    auto ordered = poly_detail::ccw_vertices(flat);
    std::vector<std::vector<S>> ambient;
    for (const auto& y : ordered) ambient.push_back(chart.to_ambient(y));
    return ambient;
}

} // namespace enmf_detail

/// Algorithm loop: scan k upward from the rank, decide NNR(C_bar) = k per
/// step. Exact strategies are used whenever available (rank-3 polygon
/// geometry, capped-outer refutation at k = 4 under a five-vertex outer
/// polygon, and the outer-vertex model at k = #vertices); the heuristic can
/// accept with a float witness but never rejects.
template <class S>
EnnrResult<S> ennr(const CopeMatrix<S>& c, const EnnrOptions& options = {}) {
    EnnrResult<S> out;
    const std::size_t r = rank(c.data);

    if (r == 1) {
        // all columns coincide for a rank-1 COPE
        Matrix<S> rfac(c.rows(), 1);
        for (std::size_t i = 0; i < c.rows(); ++i) rfac(i, 0) = c.data(i, 0);
        Matrix<S> efac(1, c.cols());
        for (std::size_t j = 0; j < c.cols(); ++j) efac(0, j) = S(1);
        auto v = verify_model(c, rfac, efac, true);
        if (!v.pass) throw DomainError("rank-1 short circuit failed: " + v.failed_check);
        EnnrStep<S> step;
        step.k = 1;
        step.method = EnnrStepMethod::RankShortCircuit;
        step.certificate.verdict = EnmfVerdict::Exists;
        step.certificate.inner_dim = 1;
        step.certificate.r_factor = rfac;
        step.certificate.e_factor = efac;
        out.transcript.push_back(step);
        out.status = EnnrStatus::Exact;
        out.value = 1;
        out.global = step.certificate;
        return out;
    }

    FactorGeometry<S> geo = factor_geometry(c);
    out.global = enmf_exists_fixed_rank(c);
    if (out.global.verdict == EnmfVerdict::NotExists) {
        out.status = EnnrStatus::NoModel;
        return out;
    }
    const std::size_t vcount = geo.outer.count();
    const std::size_t max_k = options.max_k ? options.max_k : r * r;

    // rank-3 inputs admit the exact polygon oracle
    std::optional<NnrVerdict<S>> polygon;
    if (r == 3 && options.oracle != NnrStrategy::Heuristic)
        polygon = nnr_exact_rank3(c.data, r);

    bool all_definite_below = true;
    for (std::size_t k = r; k <= max_k; ++k) {
        EnnrStep<S> step;
        step.k = k;
        step.certificate.inner_dim = k;

        if (k == r && polygon) {
            step.method = EnnrStepMethod::ExactPolygon;
            if (polygon->answer == NnrAnswer::Yes && polygon->value == r) {
                // any factorization at the rank is automatically equirank
                auto v = verify_model(c, polygon->witness_r, polygon->witness_e, true);
                if (!v.pass) throw DomainError("polygon witness failed verification: " + v.failed_check);
                step.certificate.verdict = EnmfVerdict::Exists;
                step.certificate.r_factor = polygon->witness_r;
                step.certificate.e_factor = polygon->witness_e;
            } else {
                step.certificate.verdict = EnmfVerdict::NotExists;
                step.certificate.reason =
                    "minimal nested polygon has " + std::to_string(polygon->value) + " vertices";
            }
        } else if (k == 4 && r == 3 && vcount == 5 && options.oracle != NnrStrategy::Heuristic) {
            // no quadrilateral avoids all five corner caps; rejecting the map
            // for every capped polygon refutes inner dimension four
            step.method = EnnrStepMethod::CappedOuterRefutation;
            auto ccw = enmf_detail::plane_ccw_vertices(geo);
            auto caps = enmf_detail::capped_outer_polygons(ccw);
            bool all_rejected = true;
            EnmfCertificate<S> first;
            bool have_first = false;
            for (const auto& cap : caps) {
                auto cert = decide_nonneg_map(cap, geo.factors.right);
                if (cert.verdict != EnmfVerdict::NotExists) {
                    all_rejected = false;
                    break;
                }
                if (!have_first) {
                    first = cert;
                    have_first = true;
                }
            }
            if (all_rejected) {
                step.certificate = first;
                step.certificate.inner_dim = k;
                step.certificate.verdict = EnmfVerdict::NotExists;
                step.certificate.reason = "all capped outer polygons reject the map";
            } else {
                step.certificate.verdict = EnmfVerdict::Unknown;
                step.certificate.reason = "capped-outer refutation inconclusive";
            }
        } else if (k == vcount) {
            step.method = EnnrStepMethod::OuterVertexModel;
            step.certificate = out.global;
            step.certificate.inner_dim = k;
        } else if (options.oracle != NnrStrategy::Exact) {
            step.method = EnnrStepMethod::HeuristicOnReduction;
            ReductionOutput<S> red = reduce_to_nnr(c, k);
            auto verdict = nnr_heuristic_matrix(red.c_bar.data, k, options.heuristic);
            if (verdict.answer == NnrAnswer::Yes) {
                step.certificate.verdict = EnmfVerdict::Exists;
                step.certificate.float_verified_only = true;
                step.certificate.reason = "heuristic factorization of the reduction";
            } else {
                step.certificate.verdict = EnmfVerdict::Unknown;
                step.certificate.reason = "heuristic found no factorization (not a proof of absence)";
            }
        } else {
            step.certificate.verdict = EnmfVerdict::Unknown;
            step.certificate.reason = "no exact decision available at this dimension";
        }

        out.transcript.push_back(step);
        if (step.certificate.verdict == EnmfVerdict::Exists) {
            out.value = k;
            out.status = all_definite_below ? EnnrStatus::Exact : EnnrStatus::UpperBound;
            return out;
        }
        if (step.certificate.verdict == EnmfVerdict::Unknown) all_definite_below = false;
    }
    out.status = EnnrStatus::Undecided;
    return out;
}

} // namespace cope

#endif
