#include <doctest.h>

#include <random>

#include "cope/fixtures.hpp"
#include "cope/matrix.hpp"

using namespace cope;
using Q = QuadraticScalar;

namespace {

// independent oracle: plain Gauss elimination over rationals with exact pivots
std::size_t rank_oracle(std::vector<std::vector<Rational>> rows) {
    std::size_t r = 0;
    const std::size_t m = rows.size();
    const std::size_t n = rows.empty() ? 0 : rows[0].size();
    for (std::size_t col = 0; col < n && r < m; ++col) {
        std::size_t piv = m;
        for (std::size_t i = r; i < m; ++i)
            if (rows[i][col] != 0) { piv = i; break; }
        if (piv == m) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = r + 1; i < m; ++i) {
            if (rows[i][col] == 0) continue;
            Rational f = rows[i][col] / rows[r][col];
            for (std::size_t j = col; j < n; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

Matrix<Q> random_rational_matrix(std::mt19937& rng, std::size_t m, std::size_t n) {
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 4);
    Matrix<Q> out(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = Q::from_fraction(num(rng), den(rng));
    return out;
}

} // namespace

TEST_CASE("rank on the worked matrices") {
    CHECK(rank(fixtures::box_world().data) == 3);
    CHECK(rank(Matrix<Q>::identity(4)) == 4);
    CHECK(rank(fixtures::pentagon().data) == 3);

    // cross-check the rational case against the independent oracle
    std::vector<std::vector<Rational>> box = {
        {1, 1, 0, 0}, {0, 0, 1, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}};
    CHECK(rank_oracle(box) == 3);
}

TEST_CASE("rank agrees with the oracle on random rational matrices") {
    std::mt19937 rng(23);
    for (int it = 0; it < 60; ++it) {
        std::size_t m = 2 + it % 4, n = 2 + (it / 4) % 4;
        Matrix<Q> a = random_rational_matrix(rng, m, n);
        std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(n));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) rows[i][j] = a(i, j).rat();
        CHECK(rank(a) == rank_oracle(rows));
    }
}

TEST_CASE("product rank bound and bounds-checked access") {
    std::mt19937 rng(29);
    for (int it = 0; it < 30; ++it) {
        Matrix<Q> a = random_rational_matrix(rng, 4, 3);
        Matrix<Q> b = random_rational_matrix(rng, 3, 4);
        CHECK(rank(a * b) <= std::min(rank(a), rank(b)));
    }
    Matrix<Q> m(2, 2);
    CHECK_THROWS_AS(m(2, 0), ValidationError);
}

TEST_CASE("pseudoinverse on worked values") {
    Matrix<Q> id = Matrix<Q>::identity(3);
    CHECK(pseudoinverse_full_col_rank(id) == id);

    Matrix<Q> col(2, 1);
    col(0, 0) = Q(1);
    col(1, 0) = Q(1);
    Matrix<Q> dag = pseudoinverse_full_col_rank(col);
    CHECK(dag(0, 0) == Q(Rational(1, 2)));
    CHECK(dag(0, 1) == Q(Rational(1, 2)));

    Matrix<Q> dep(2, 2);
    dep(0, 0) = Q(1);
    dep(0, 1) = Q(2);
    dep(1, 0) = Q(2);
    dep(1, 1) = Q(4);
    CHECK_THROWS_AS(pseudoinverse_full_col_rank(dep), ValidationError);
}

TEST_CASE("pseudoinverse left-inverts random full-column-rank matrices") {
    std::mt19937 rng(31);
    int done = 0;
    while (done < 25) {
        Matrix<Q> g = random_rational_matrix(rng, 5, 3);
        if (rank(g) != 3) continue;
        CHECK((pseudoinverse_full_col_rank(g) * g) == Matrix<Q>::identity(3));
        ++done;
    }
}

TEST_CASE("orthogonal bases split the ambient space") {
    Matrix<Q> id = Matrix<Q>::identity(3);
    auto [rows3, kernel3] = orthogonal_bases(id);
    CHECK(rows3.size() == 3);
    CHECK(kernel3.empty());

    Matrix<Q> one_row(1, 2);
    one_row(0, 0) = Q(1);
    one_row(0, 1) = Q(1);
    auto [rb, kb] = orthogonal_bases(one_row);
    REQUIRE(rb.size() == 1);
    REQUIRE(kb.size() == 1);
    CHECK(dot(rb[0], kb[0]) == Q(0));
    CHECK(kb[0][0] == -kb[0][1]);

    std::mt19937 rng(37);
    for (int it = 0; it < 20; ++it) {
        Matrix<Q> g = random_rational_matrix(rng, 3, 5);
        auto [rbasis, kbasis] = orthogonal_bases(g);
        CHECK(rbasis.size() + kbasis.size() == 5);
        for (const auto& u : rbasis)
            for (const auto& v : kbasis) CHECK(dot(u, v) == Q(0));
        for (std::size_t i = 0; i < rbasis.size(); ++i)
            for (std::size_t j = i + 1; j < rbasis.size(); ++j) CHECK(dot(rbasis[i], rbasis[j]) == Q(0));
        std::vector<std::vector<Q>> all = rbasis;
        all.insert(all.end(), kbasis.begin(), kbasis.end());
        CHECK(rank(Matrix<Q>::from_rows(all)) == 5);
    }
}

TEST_CASE("orthogonal bases of the capped-pentagon factor span the right subspaces") {
    auto inst = fixtures::capped_pentagon_instance();
    auto [rbasis, kbasis] = orthogonal_bases(inst.g);
    REQUIRE(rbasis.size() == 3);
    REQUIRE(kbasis.size() == 3);
    // row basis spans exactly the row space: stacking it on the rows changes nothing
    std::vector<std::vector<Q>> stacked;
    for (std::size_t i = 0; i < inst.g.rows(); ++i) stacked.push_back(inst.g.row(i));
    for (const auto& v : rbasis) stacked.push_back(v);
    CHECK(rank(Matrix<Q>::from_rows(stacked)) == 3);
    // kernel vectors are annihilated by the factor
    for (const auto& v : kbasis) {
        for (std::size_t i = 0; i < inst.g.rows(); ++i) CHECK(dot(inst.g.row(i), v) == Q(0));
    }
}

TEST_CASE("rank separation reports") {
    auto box = fixtures::box_world();
    auto sep = check_rank_separation(box.data, Matrix<Q>::identity(4));
    CHECK_FALSE(sep.equal_ranks);
    CHECK(sep.rank_r == 3);
    CHECK(sep.rank_e == 4);

    auto eq = check_rank_separation(Matrix<Q>::identity(3), Matrix<Q>::identity(3));
    CHECK(eq.equal_ranks);

    auto size5 = fixtures::pentagon_model_size5();
    auto nc = check_rank_separation(size5.r_factor, size5.e_factor);
    CHECK(nc.equal_ranks);
    CHECK(nc.rank_r == 3);
}
