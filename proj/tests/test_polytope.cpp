#include <doctest.h>

#include <random>

#include "cope/cope_matrix.hpp"
#include "cope/fixtures.hpp"
#include "cope/polytope.hpp"

using namespace cope;
using Q = QuadraticScalar;

namespace {

Matrix<Q> cols(const std::vector<std::vector<long>>& pts) {
    std::vector<std::vector<Q>> c;
    for (const auto& p : pts) {
        std::vector<Q> v;
        for (long x : p) v.push_back(Q(x));
        c.push_back(v);
    }
    return Matrix<Q>::from_columns(c);
}

std::vector<Q> qvec(const std::vector<long>& p) {
    std::vector<Q> v;
    for (long x : p) v.push_back(Q(x));
    return v;
}

bool vertex_sets_equal(const VPolytope<Q>& a, const VPolytope<Q>& b) {
    if (a.count() != b.count()) return false;
    for (std::size_t i = 0; i < a.count(); ++i) {
        bool hit = false;
        for (std::size_t j = 0; j < b.count(); ++j)
            if (poly_detail::same_point(a.vertex(i), b.vertex(j))) hit = true;
        if (!hit) return false;
    }
    return true;
}

} // namespace

TEST_CASE("outer polytope construction") {
    auto h = outer_from_effects(Matrix<Q>::identity(3), 1);
    auto en = enumerate_vertices(h);
    REQUIRE(en.bounded);
    CHECK(en.polytope.count() == 3); // the standard 2-simplex
    for (std::size_t j = 0; j < 3; ++j) {
        Q sum(0);
        for (std::size_t i = 0; i < 3; ++i) sum += en.polytope.vertices(i, j);
        CHECK(sum == Q(1));
    }

    Matrix<Q> defi(3, 2);
    defi(0, 0) = Q(1);
    defi(1, 1) = Q(1);
    defi(2, 0) = Q(1);
    defi(2, 1) = Q(1); // fine, full col rank
    CHECK_NOTHROW(outer_from_effects(defi, 1));
    Matrix<Q> rankdef(3, 2);
    rankdef(0, 0) = Q(1);
    rankdef(0, 1) = Q(2);
    CHECK_THROWS_AS(outer_from_effects(rankdef, 1), ValidationError);
}

TEST_CASE("pentagon outer polytope is the scaled inner pentagon") {
    auto pent = fixtures::pentagon();
    auto f = rank_factorize(pent);
    auto en = enumerate_vertices(outer_from_effects(f.left, 1));
    REQUIRE(en.bounded);
    REQUIRE(en.polytope.count() == 5);
    auto inner = inner_from_states(f.right);
    REQUIRE(inner.count() == 5);
    auto c_out = barycenter(en.polytope);
    auto c_in = barycenter(inner);
    REQUIRE(poly_detail::same_point(c_out, c_in));
    // every outer vertex is the phi-scaling of some inner vertex about the center
    Q phi = Q(Rational(1, 2)) + Q(Rational(1, 2)) * Q::sqrt_of(5);
    for (std::size_t j = 0; j < 5; ++j) {
        auto w = en.polytope.vertex(j);
        bool matched = false;
        for (std::size_t i = 0; i < 5 && !matched; ++i) {
            auto v = inner.vertex(i);
            bool same = true;
            for (std::size_t t = 0; t < 3; ++t)
                if ((c_in[t] + phi * (v[t] - c_in[t]) - w[t]).sign() != 0) same = false;
            matched = same;
        }
        CHECK(matched);
    }
}

TEST_CASE("box world outer polytope is a square") {
    auto f = rank_factorize(fixtures::box_world());
    auto en = enumerate_vertices(outer_from_effects(f.left, 2));
    REQUIRE(en.bounded);
    CHECK(en.polytope.count() == 4);
}

TEST_CASE("inner polytope removes redundant points") {
    CHECK(inner_from_states(cols({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).count() == 3);
    // three collinear points collapse to the segment ends
    auto seg = inner_from_states(cols({{0, 0}, {1, 1}, {2, 2}}));
    CHECK(seg.count() == 2);
    CHECK(contains(seg, qvec({1, 1})));
}

TEST_CASE("unbounded polyhedra are detected") {
    HPolytope<Q> half;
    half.dim = 2;
    half.a = Matrix<Q>(1, 2);
    half.a(0, 0) = Q(1);
    half.b = {Q(0)};
    auto en = enumerate_vertices(half);
    CHECK_FALSE(en.bounded);

    HPolytope<Q> big;
    big.dim = 7;
    CHECK_THROWS_AS(enumerate_vertices(big), ResourceError);
}

TEST_CASE("containment tests on both representations") {
    auto simplex = make_vpolytope(cols({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    CHECK(contains(simplex, barycenter(simplex)));
    CHECK_FALSE(contains(simplex, qvec({2, 0, 0})));

    auto h = outer_from_effects(Matrix<Q>::identity(3), 1);
    CHECK(contains(h, qvec({1, 0, 0})));
    CHECK_FALSE(contains(h, qvec({2, 0, 0})));
}

TEST_CASE("polar dual worked values and involution") {
    auto square = make_vpolytope(cols({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}));
    auto dual = polar_dual(square); // the cross-polytope, as inequalities
    auto cross = enumerate_vertices(dual);
    REQUIRE(cross.bounded);
    CHECK(vertex_sets_equal(cross.polytope, make_vpolytope(cols({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}))));
    CHECK(vertex_sets_equal(polar_dual(dual), square)); // dual of dual is the original

    std::mt19937 rng(53);
    std::uniform_int_distribution<long> c(1, 5);
    for (int it = 0; it < 20; ++it) {
        // centered crosspolytope-like random polygons
        auto p = make_vpolytope(cols({{c(rng), 0}, {0, c(rng)}, {-c(rng), 0}, {0, -c(rng)}}));
        auto back = polar_dual(polar_dual(p));
        CHECK(vertex_sets_equal(back, p));
    }

    auto off = make_vpolytope(cols({{1, 0}, {2, 0}, {1, 1}, {2, 1}}));
    CHECK_THROWS_AS(polar_dual(off), DomainError); // origin outside
}

TEST_CASE("barycenter worked values") {
    auto simplex = make_vpolytope(cols({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    auto c = barycenter(simplex);
    for (const auto& x : c) CHECK(x == Q(Rational(1, 3)));
    auto point = make_vpolytope(cols({{2, 5}}));
    CHECK(poly_detail::same_point(barycenter(point), qvec({2, 5})));
}

TEST_CASE("inscribed simplex stays inside and surrounds the center") {
    auto square = make_vpolytope(cols({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}));
    std::vector<Q> zero = qvec({0, 0});
    auto s = inscribed_simplex(square, zero);
    CHECK(s.body.count() == 3);
    for (std::size_t j = 0; j < s.body.count(); ++j) CHECK(contains(square, s.body.vertex(j)));
    CHECK(contains(s.body, zero));

    auto tri = make_vpolytope(cols({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    auto c = barycenter(tri);
    auto s2 = inscribed_simplex(tri, c);
    for (std::size_t j = 0; j < s2.body.count(); ++j) CHECK(contains(tri, s2.body.vertex(j)));
    CHECK(contains(s2.body, c));

    auto seg = make_vpolytope(cols({{0, 0}, {2, 0}}));
    auto s3 = inscribed_simplex(seg, qvec({1, 0}));
    CHECK(s3.body.count() == 2);
    for (std::size_t j = 0; j < 2; ++j) CHECK(contains(seg, s3.body.vertex(j)));

    CHECK_THROWS_AS(inscribed_simplex(square, qvec({1, 1})), DomainError); // boundary center
}

TEST_CASE("circumscribed simplex contains the body") {
    auto tri = make_vpolytope(cols({{1, 0}, {0, 1}, {0, 0}}));
    auto s = circumscribed_simplex(tri);
    for (std::size_t j = 0; j < tri.count(); ++j) CHECK(contains(s.body, tri.vertex(j)));

    auto square = make_vpolytope(cols({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}));
    auto s2 = circumscribed_simplex(square);
    CHECK(s2.body.count() == 3);
    for (std::size_t j = 0; j < 4; ++j) CHECK(contains(s2.body, square.vertex(j)));
}

TEST_CASE("distances are exact squared quantities") {
    // segment of length 2 as the containing body
    SimplexBody<Q> seg;
    seg.body = make_vpolytope(cols({{0, 0}, {2, 0}}));
    SimplexBody<Q> tri;
    tri.body = make_vpolytope(cols({{0, 0}, {1, 0}, {0, 1}}));
    std::vector<Q> inside{Q(Rational(1, 4)), Q(Rational(1, 4))};
    auto [d1sq, d2sq] = distances(tri, seg, inside);
    CHECK(d2sq == Q(4));
    // legs at squared distance 1/16 each, hypotenuse at 1/8
    CHECK(d1sq == Q(Rational(1, 16)));

    // unit 2-simplex, barycenter to an edge: squared distance 1/6
    SimplexBody<Q> unit;
    unit.body = make_vpolytope(cols({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    auto c = barycenter(unit.body);
    auto [d1u, d2u] = distances(unit, unit, c);
    CHECK(d1u == Q(Rational(1, 6)));
    CHECK(d2u == Q(2));

    // regular side-1 triangle over Q(sqrt(3)): max vertex distance squared = 1
    using Q3 = QuadraticScalar;
    Matrix<Q3> t(2, 3);
    t(0, 0) = Q3(0);
    t(1, 0) = Q3(0);
    t(0, 1) = Q3(1);
    t(1, 1) = Q3(0);
    t(0, 2) = Q3(Rational(1, 2));
    t(1, 2) = Q3(Rational(1, 2)) * Q3::sqrt_of(3);
    SimplexBody<Q3> reg;
    reg.body = make_vpolytope(t);
    auto [dr1, dr2] = distances(reg, reg, barycenter(reg.body));
    CHECK(dr2 == Q3(1));
    CHECK(dr1 == Q3(Rational(1, 12)));
}

TEST_CASE("projection onto an affine span") {
    auto tri = make_vpolytope(cols({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    auto self = project_affine(tri, tri.vertices);
    CHECK(self.vertices.entrywise_equal(tri.vertices));

    // point already in the span projects to itself
    Matrix<Q> one_point(3, 1);
    one_point(0, 0) = Q(Rational(1, 3));
    one_point(1, 0) = Q(Rational(1, 3));
    one_point(2, 0) = Q(Rational(1, 3));
    VPolytope<Q> p{3, one_point};
    auto proj = project_affine(p, tri.vertices);
    CHECK(proj.vertices.entrywise_equal(one_point));
}

TEST_CASE("projected simplex scales the embedded pentagon by the golden ratio") {
    auto inst = fixtures::pentagon_in_simplex();
    VPolytope<Q> u{5, inst.simplex};
    auto proj = project_affine(u, inst.pentagon);
    VPolytope<Q> pent{5, inst.pentagon};
    auto c = barycenter(make_vpolytope(inst.pentagon));
    Q tau = fixtures::projection_ratio();
    // each projected vertex pairs with exactly one pentagon vertex:
    // (pentagon vertex - center) = tau * (projected vertex - center)
    std::vector<bool> used(5, false);
    for (std::size_t j = 0; j < 5; ++j) {
        auto pv = proj.vertex(j);
        bool found = false;
        for (std::size_t i = 0; i < 5 && !found; ++i) {
            if (used[i]) continue;
            bool same = true;
            for (std::size_t t = 0; t < 5; ++t) {
                Q lhs = inst.pentagon(t, i) - c[t];
                Q rhs = tau * (pv[t] - c[t]);
                if ((lhs - rhs).sign() != 0) same = false;
            }
            if (same) {
                used[i] = true;
                found = true;
            }
        }
        CHECK(found);
    }
}

TEST_CASE("vertex enumeration round trip on random polytopes") {
    std::mt19937 rng(59);
    std::uniform_int_distribution<long> c(-4, 4);
    std::uniform_int_distribution<long> pos(1, 4);
    int done = 0;
    while (done < 12) {
        // random centered polygons with the origin strictly inside
        std::vector<std::vector<Q>> pts;
        for (int i = 0; i < 6; ++i) pts.push_back({Q(c(rng)), Q(c(rng))});
        VPolytope<Q> p;
        try {
            p = make_vpolytope(Matrix<Q>::from_columns(pts));
            if (p.count() < 3) continue;
            if (!origin_strictly_interior(p.vertices)) continue;
        } catch (const Error&) {
            continue;
        }
        CHECK(vertex_sets_equal(polar_dual(polar_dual(p)), p)); // involution
        auto dual_v = enumerate_vertices(polar_dual(p));        // dual body as vertices
        REQUIRE(dual_v.bounded);
        auto en = enumerate_vertices(polar_dual(dual_v.polytope)); // back to p's inequalities
        REQUIRE(en.bounded);
        CHECK(vertex_sets_equal(en.polytope, p));
        ++done;
    }
    // a 3-D instance: random scaled cross-polytope
    for (int it = 0; it < 3; ++it) {
        auto p = make_vpolytope(cols({{pos(rng), 0, 0},
                                      {0, pos(rng), 0},
                                      {0, 0, pos(rng)},
                                      {-pos(rng), 0, 0},
                                      {0, -pos(rng), 0},
                                      {0, 0, -pos(rng)}}));
        auto dual_v = enumerate_vertices(polar_dual(p));
        REQUIRE(dual_v.bounded);
        auto en = enumerate_vertices(polar_dual(dual_v.polytope));
        REQUIRE(en.bounded);
        CHECK(vertex_sets_equal(en.polytope, p));
    }
    // explicit H-form round trip: unit square
    HPolytope<Q> sq;
    sq.dim = 2;
    sq.a = Matrix<Q>(4, 2);
    sq.a(0, 0) = Q(1);
    sq.a(1, 0) = Q(-1);
    sq.a(2, 1) = Q(1);
    sq.a(3, 1) = Q(-1);
    sq.b = {Q(-1), Q(-1), Q(-1), Q(-1)};
    auto en = enumerate_vertices(sq);
    REQUIRE(en.bounded);
    CHECK(en.polytope.count() == 4);
}

TEST_CASE("minimal nested polygon worked instances") {
    // identical pentagons nest only as themselves
    auto f = rank_factorize(fixtures::pentagon());
    auto chart = make_span_chart(enumerate_vertices(outer_from_effects(f.left, 1)).polytope.vertices);
    auto flatten = [&](const Matrix<Q>& pts) {
        std::vector<std::vector<Q>> loc;
        for (std::size_t j = 0; j < pts.cols(); ++j) loc.push_back(chart.to_local(pts.col(j)));
        VPolytope<Q> v;
        v.dim = 2;
        v.vertices = Matrix<Q>::from_columns(loc);
        return v;
    };
    auto outer2d = flatten(enumerate_vertices(outer_from_effects(f.left, 1)).polytope.vertices);
    auto inner2d = flatten(f.right);

    auto self_nested = min_nested_polygon_2d(outer2d, outer2d);
    CHECK(self_nested.k == 5);

    auto gap = min_nested_polygon_2d(inner2d, outer2d);
    CHECK(gap.k == 4);
    // witness is sandwiched between the two bodies
    auto wit = gap.polygon;
    for (std::size_t j = 0; j < inner2d.count(); ++j) CHECK(contains(wit, inner2d.vertex(j)));
    for (std::size_t j = 0; j < wit.count(); ++j) CHECK(contains(outer2d, wit.vertex(j)));

    CHECK_THROWS_AS(min_nested_polygon_2d(outer2d, inner2d), DomainError); // not contained

    // square in square: the square itself
    auto sq = make_vpolytope(cols({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}));
    auto sq_nested = min_nested_polygon_2d(sq, sq);
    CHECK(sq_nested.k == 4);
}

TEST_CASE("factorization polytopes are sandwiched") {
    // columns of the state factor lie in the outer polytope, and every outer
    // vertex keeps all effect values inside [0, 1]
    std::mt19937 rng(97);
    std::uniform_int_distribution<long> num(0, 5);
    int done = 0;
    while (done < 25) {
        const std::size_t l = 1 + done % 2, bh = 2 + done % 2, n = 3 + done % 2;
        Matrix<Q> data(l * bh, n);
        for (std::size_t blk = 0; blk < l; ++blk)
            for (std::size_t j = 0; j < n; ++j) {
                std::vector<long> vals(bh);
                long sum = 0;
                for (auto& v : vals) sum += (v = num(rng));
                if (sum == 0) {
                    vals[0] = 1;
                    sum = 1;
                }
                for (std::size_t i = 0; i < bh; ++i)
                    data(blk * bh + i, j) = Q::from_fraction(vals[i], sum);
            }
        CopeMatrix<Q> c;
        try {
            c = validate_cope(data, std::vector<std::size_t>(l, bh));
        } catch (const ValidationError&) {
            continue;
        }
        auto f = rank_factorize(c);
        auto h = outer_from_effects(f.left, l);
        for (std::size_t j = 0; j < f.right.cols(); ++j) CHECK(contains(h, f.right.col(j)));
        auto en = enumerate_vertices(h);
        REQUIRE(en.bounded);
        for (std::size_t j = 0; j < en.polytope.count(); ++j) {
            auto x = en.polytope.vertex(j);
            for (std::size_t row = 0; row < f.left.rows(); ++row) {
                Q val(0);
                for (std::size_t t = 0; t < f.left.cols(); ++t) val += f.left(row, t) * x[t];
                CHECK(val.sign() >= 0);
                CHECK((val - Q(1)).sign() <= 0);
            }
        }
        ++done;
    }
}

TEST_CASE("nested polygon minimum agrees with randomized boundary search") {
    // independent oracle: greedy walks started from many random boundary points
    auto f = rank_factorize(fixtures::pentagon());
    auto chart = make_span_chart(enumerate_vertices(outer_from_effects(f.left, 1)).polytope.vertices);
    auto flatten = [&](const Matrix<Q>& pts) {
        std::vector<std::vector<Q>> loc;
        for (std::size_t j = 0; j < pts.cols(); ++j) loc.push_back(chart.to_local(pts.col(j)));
        VPolytope<Q> v;
        v.dim = 2;
        v.vertices = Matrix<Q>::from_columns(loc);
        return v;
    };
    auto outer_all = enumerate_vertices(outer_from_effects(f.left, 1)).polytope;
    auto outer2d = flatten(outer_all.vertices);
    auto inner2d = flatten(f.right);
    auto best = min_nested_polygon_2d(inner2d, outer2d);

    auto ordered = poly_detail::ccw_vertices(outer2d);
    std::mt19937 rng(61);
    std::uniform_int_distribution<long> pick(0, 4);
    std::uniform_int_distribution<long> wnum(0, 16);
    std::size_t oracle_best = 99;
    for (int it = 0; it < 200; ++it) {
        std::size_t e = static_cast<std::size_t>(pick(rng));
        Q w = Q::from_fraction(wnum(rng), 16);
        const auto& p = ordered[e];
        const auto& q = ordered[(e + 1) % ordered.size()];
        std::vector<Q> start{p[0] + w * (q[0] - p[0]), p[1] + w * (q[1] - p[1])};
        std::vector<std::vector<Q>> inner_pts;
        for (std::size_t j = 0; j < inner2d.count(); ++j) inner_pts.push_back(inner2d.vertex(j));
        auto poly = poly_detail::greedy_polygon(inner_pts, ordered, start, 12);
        if (poly) oracle_best = std::min(oracle_best, poly->size());
    }
    CHECK(oracle_best == best.k);
}
