#include <doctest.h>

#include <random>

#include "cope/lp.hpp"

using namespace cope;
using Q = QuadraticScalar;

namespace {

template <class S>
LinearProgram<S> make_lp(const std::vector<std::vector<long>>& a, const std::vector<long>& b,
                         const std::vector<long>& c) {
    LinearProgram<S> lp;
    lp.constraints = Matrix<S>(a.size(), c.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j) lp.constraints(i, j) = S(a[i][j]);
    for (long v : b) lp.rhs.push_back(S(v));
    for (long v : c) lp.objective.push_back(S(v));
    return lp;
}

} // namespace

TEST_CASE("one-variable worked programs") {
    // min x s.t. x >= 1
    auto lp = make_lp<Q>({{1}}, {1}, {1});
    auto sol = solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.primal_value == Q(1));
    CHECK(sol.dual_value == Q(1));

    // x >= 1 and -x >= 0 cannot both hold
    auto bad = make_lp<Q>({{1}, {-1}}, {1, 0}, {1});
    auto infeas = solve(bad);
    REQUIRE(infeas.status == LpStatus::Infeasible);
    REQUIRE(infeas.certificate.size() == 2);
    // Farkas: y >= 0, A^T y <= 0, b^T y > 0
    for (const auto& y : infeas.certificate) CHECK(y.sign() >= 0);
    Q aty = infeas.certificate[0] - infeas.certificate[1];
    CHECK(aty.sign() <= 0);
    CHECK((infeas.certificate[0] * Q(1)).sign() > 0);

    // min -x s.t. x >= 0 is unbounded
    auto unb = make_lp<Q>({{1}}, {0}, {-1});
    auto ray = solve(unb);
    REQUIRE(ray.status == LpStatus::Unbounded);
    REQUIRE(ray.certificate.size() == 1);
    CHECK(ray.certificate[0].sign() > 0);
}

TEST_CASE("Bland's rule terminates on the classic cycling program") {
    // Beale's example, converted to >= form: min -3/4 x1 +150 x2 -1/50 x3 +6 x4
    // s.t. 1/4 x1 -60 x2 -1/25 x3 +9 x4 <= 0 ; 1/2 x1 -90 x2 -1/50 x3 +3 x4 <= 0 ; x3 <= 1
    LinearProgram<Q> lp;
    lp.constraints = Matrix<Q>(3, 4);
    auto set_row = [&](std::size_t i, Rational a, Rational b, Rational c, Rational d) {
        lp.constraints(i, 0) = Q(a);
        lp.constraints(i, 1) = Q(b);
        lp.constraints(i, 2) = Q(c);
        lp.constraints(i, 3) = Q(d);
    };
    set_row(0, Rational(-1, 4), Rational(60), Rational(1, 25), Rational(-9));
    set_row(1, Rational(-1, 2), Rational(90), Rational(1, 50), Rational(-3));
    set_row(2, Rational(0), Rational(0), Rational(-1), Rational(0));
    lp.rhs = {Q(0), Q(0), Q(-1)};
    lp.objective = {Q(Rational(-3, 4)), Q(150), Q(Rational(-1, 50)), Q(6)};
    auto sol = solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.primal_value == Q(Rational(-1, 20)));
    CHECK(sol.dual_value == sol.primal_value);
}

TEST_CASE("strong duality on random feasible bounded programs") {
    std::mt19937 rng(43);
    std::uniform_int_distribution<long> coef(-4, 4);
    std::uniform_int_distribution<long> pos(0, 3);
    for (int it = 0; it < 60; ++it) {
        const std::size_t m = 2 + it % 3, n = 2 + (it / 3) % 3;
        LinearProgram<Q> lp;
        lp.constraints = Matrix<Q>(m, n);
        std::vector<Q> xhat(n);
        for (auto& x : xhat) x = Q(pos(rng));
        for (std::size_t i = 0; i < m; ++i) {
            Q row_at_xhat(0);
            for (std::size_t j = 0; j < n; ++j) {
                lp.constraints(i, j) = Q(coef(rng));
                row_at_xhat += lp.constraints(i, j) * xhat[j];
            }
            lp.rhs.push_back(row_at_xhat - Q(pos(rng))); // xhat stays feasible
        }
        for (std::size_t j = 0; j < n; ++j) lp.objective.push_back(Q(pos(rng))); // bounded below by 0
        auto sol = solve(lp);
        REQUIRE(sol.status == LpStatus::Optimal);
        CHECK(sol.primal_value == sol.dual_value);
        auto [feas, val] = verify_certificate(lp, sol.dual);
        CHECK(feas);
        CHECK(val == sol.primal_value);
        // primal feasibility of the returned point
        for (std::size_t i = 0; i < m; ++i) {
            Q acc = -lp.rhs[i];
            for (std::size_t j = 0; j < n; ++j) acc += lp.constraints(i, j) * sol.primal[j];
            CHECK(acc.sign() >= 0);
        }
    }
}

TEST_CASE("weak duality bounds through verify_certificate") {
    auto lp = make_lp<Q>({{1, 1}, {1, -1}}, {2, 0}, {3, 1});
    auto sol = solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    std::mt19937 rng(47);
    std::uniform_int_distribution<long> num(0, 3);
    for (int it = 0; it < 40; ++it) {
        std::vector<Q> y = {Q::from_fraction(num(rng), 3), Q::from_fraction(num(rng), 3)};
        auto [feas, val] = verify_certificate(lp, y);
        if (feas) CHECK((val - sol.primal_value).sign() <= 0);
    }
    // zero vector is always feasible for c >= 0 and bounds by 0
    auto [zf, zv] = verify_certificate(lp, {Q(0), Q(0)});
    CHECK(zf);
    CHECK(zv == Q(0));
    // pushing a multiplier above a tight objective column breaks feasibility
    auto [bf, bv] = verify_certificate(lp, {Q(4), Q(0)});
    CHECK_FALSE(bf);
    (void)bv;
}

TEST_CASE("growth guard aborts runaway exact pivots") {
    std::size_t saved = lp_growth_guard_bits();
    set_lp_growth_guard_bits(16);
    // entries with ~40-bit numerators exceed a 16-bit budget immediately
    LinearProgram<Q> lp;
    lp.constraints = Matrix<Q>(1, 1);
    lp.constraints(0, 0) = Q(Rational(Integer(1) << 40, 3));
    lp.rhs = {Q(1)};
    lp.objective = {Q(1)};
    CHECK_THROWS_AS(solve(lp), ResourceError);
    set_lp_growth_guard_bits(saved);
}

TEST_CASE("float backend solves the same programs") {
    FloatScalar::set_tolerance(1e-9);
    auto lp = make_lp<FloatScalar>({{1, 1}, {1, -1}}, {2, 0}, {3, 1});
    auto sol = solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.primal_value.to_double() == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(sol.dual_value.to_double() == doctest::Approx(4.0).epsilon(1e-9));
}
