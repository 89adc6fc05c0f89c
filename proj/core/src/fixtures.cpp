#include "cope/fixtures.hpp"

namespace cope::fixtures {

namespace {

Q q(long num, long den = 1) { return Q::from_fraction(num, den); }

// a + b*sqrt(5), both rational
Q qs(long an, long ad, long bn, long bd) {
    return Q(Rational(an, ad), Rational(bn, bd), 5);
}

Matrix<Q> circulant_rows(const std::vector<std::vector<Q>>& rows) { return Matrix<Q>::from_rows(rows); }

} // namespace

CopeMatrix<Q> identity_cope(std::size_t n) {
    return validate_cope(Matrix<Q>::identity(n), {n}, CopeForm::A);
}

CopeMatrix<Q> box_world() {
    Matrix<Q> m = Matrix<Q>::from_rows({
        {q(1), q(1), q(0), q(0)},
        {q(0), q(0), q(1), q(1)},
        {q(1), q(0), q(1), q(0)},
        {q(0), q(1), q(0), q(1)},
    });
    return validate_cope(m, {2, 2}, CopeForm::A);
}

CopeMatrix<Q> pentagon() {
    // entries (2(sqrt5-1))/10, (8-2 sqrt5)/10, (3-sqrt5)/10 in a circulant layout
    Q A = qs(-2, 10, 2, 10);
    Q B = qs(8, 10, -2, 10);
    Q C = qs(3, 10, -1, 10);
    Matrix<Q> m = circulant_rows({
        {A, B, A, C, C},
        {B, A, C, C, A},
        {A, C, C, A, B},
        {C, C, A, B, A},
        {C, A, B, A, C},
    });
    return validate_cope(m, {5}, CopeForm::A);
}

ModelPair pentagon_model_size5() {
    Q x = qs(5, 10, -1, 10); // (5 - sqrt5)/10
    Q y = qs(0, 1, 2, 10);   // 2 sqrt5 / 10
    Q z = q(0);
    ModelPair mp;
    mp.r_factor = circulant_rows({
        {x, y, x, z, z},
        {z, x, y, x, z},
        {z, z, x, y, x},
        {x, z, z, x, y},
        {y, x, z, z, x},
    });
    mp.e_factor = circulant_rows({
        {z, x, y, x, z},
        {x, y, x, z, z},
        {y, x, z, z, x},
        {x, z, z, x, y},
        {z, z, x, y, x},
    });
    return mp;
}

ModelPair pentagon_model_size4() {
    Q z = q(0);
    Q inv5 = qs(0, 1, 1, 5);       // 1/sqrt5 = sqrt5/5
    Q one_m = qs(1, 1, -1, 5);     // 1 - 1/sqrt5
    Q a5 = qs(5, 10, -1, 10);      // (5 - sqrt5)/10
    Q b5 = qs(-5, 10, 3, 10);      // (3 sqrt5 - 5)/10
    ModelPair mp;
    mp.r_factor = Matrix<Q>::from_rows({
        {z, one_m, z, a5},
        {inv5, inv5, z, z},
        {one_m, z, a5, z},
        {z, z, one_m, b5},
        {z, z, b5, one_m},
    });
    // entries of the 4x5 right factor, written over denominator 20
    Q e11 = qs(-10, 20, 8, 20);  // 8 sqrt5 - 10, /20
    Q e12 = qs(5, 20, -1, 20);   // 5 - sqrt5
    Q e14 = qs(-10, 20, 6, 20);  // 2(3 sqrt5 - 5)
    Q e15 = qs(15, 20, -3, 20);  // 3(5 - sqrt5)
    Q e33 = qs(10, 20, -2, 20);  // 2(5 - sqrt5)
    Q e34 = qs(20, 20, -4, 20);  // 20(1 - 1/sqrt5) = 20 - 4 sqrt5
    Q e35 = qs(0, 20, 4, 20);    // 4 sqrt5
    Q e31 = qs(20, 20, -8, 20);  // 20(1 - 2/sqrt5) = 20 - 8 sqrt5
    mp.e_factor = Matrix<Q>::from_rows({
        {e11, e12, z, e14, e15},
        {e11, e15, e14, z, e12},
        {e31, z, e33, e34, e35},
        {e31, e35, e34, e33, z},
    });
    return mp;
}

Matrix<Q> pentagon_rebit_product() {
    // Left factor columns: t-multiples in column 0, field values elsewhere;
    // right factor rows: t-multiples in row 0. t^2 = 5 - 2 sqrt5.
    Q z = q(0);
    Matrix<Q> at(5, 1);
    at(0, 0) = q(1, 5);
    at(1, 0) = z;
    at(2, 0) = q(-1, 5);
    at(3, 0) = qs(1, 10, -1, 10);  // -(sqrt5-1)/10
    at(4, 0) = qs(-1, 10, 1, 10);  // (sqrt5-1)/10
    Matrix<Q> aq = Matrix<Q>::from_rows({
        {qs(-2, 5, 1, 5), q(1, 5)},  // 1/sqrt5 - 2/5
        {qs(3, 5, -1, 5), q(1, 5)},  // 3/5 - 1/sqrt5
        {qs(-2, 5, 1, 5), q(1, 5)},
        {qs(1, 10, -1, 10), q(1, 5)}, // (1 - sqrt5)/10
        {qs(1, 10, -1, 10), q(1, 5)},
    });
    Matrix<Q> bt(1, 5);
    bt(0, 0) = z;
    bt(0, 1) = qs(3, 4, 1, 4);   // t (3+sqrt5)/4 = sqrt((5+sqrt5)/8) * 4/... bt holds the t-coefficients
    bt(0, 2) = qs(1, 4, 1, 4);   // t (1+sqrt5)/4
    bt(0, 3) = qs(-1, 4, -1, 4);
    bt(0, 4) = qs(-3, 4, -1, 4);
    Matrix<Q> bq = Matrix<Q>::from_rows({
        {q(1), qs(-1, 4, 1, 4), qs(-1, 4, -1, 4), qs(-1, 4, -1, 4), qs(-1, 4, 1, 4)},
        {q(1), q(1), q(1), q(1), q(1)},
    });
    Q tsq = qs(5, 1, -2, 1); // 5 - 2 sqrt5
    Matrix<Q> prod = at * bt; // outer product of the t-parts
    Matrix<Q> out(5, 5);
    Matrix<Q> rational_part = aq * bq;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) out(i, j) = prod(i, j) * tsq + rational_part(i, j);
    return out;
}

namespace {

// outer pentagon in the rational rotation frame: v0=(1,0), v1=(0,1),
// v_{i+1} = tau v_i - v_{i-1} with tau = (sqrt5-1)/2
std::vector<std::vector<Q>> rational_pentagon() {
    Q tau = qs(-1, 2, 1, 2);
    std::vector<std::vector<Q>> v;
    v.push_back({q(1), q(0)});
    v.push_back({q(0), q(1)});
    for (int i = 2; i < 5; ++i)
        v.push_back({tau * v[i - 1][0] - v[i - 2][0], tau * v[i - 1][1] - v[i - 2][1]});
    return v;
}

std::vector<Q> with_height(const std::vector<Q>& xy) {
    return {xy[0], xy[1], qs(5, 10, -1, 10)}; // height (5 - sqrt5)/10
}

} // namespace

NestedPairInstance capped_pentagon_instance() {
    auto v = rational_pentagon();
    Q half = q(1, 2);
    auto mid = [&](const std::vector<Q>& a, const std::vector<Q>& b) {
        return std::vector<Q>{(a[0] + b[0]) * half, (a[1] + b[1]) * half};
    };
    NestedPairInstance inst;
    std::vector<std::vector<Q>> gcols = {
        with_height(v[0]),          with_height(mid(v[0], v[1])), with_height(mid(v[1], v[2])),
        with_height(v[2]),          with_height(v[3]),            with_height(v[4]),
    };
    inst.g = Matrix<Q>::from_columns(gcols);
    Q tau = qs(-1, 2, 1, 2);
    std::vector<std::vector<Q>> bcols;
    for (const auto& p : v) bcols.push_back(with_height({tau * p[0], tau * p[1]}));
    inst.b = Matrix<Q>::from_columns(bcols);
    return inst;
}

Matrix<Q> capped_pentagon_map_reference() {
    // 5 x 6 layout transposed into the 6 x 5 map
    std::vector<std::vector<Q>> rows = {
        {qs(-1389, 7676, 1896, 7676), qs(11425, 38380, -7, 38380), qs(11805, 38380, -3427, 38380),
         qs(-1237, 7676, 528, 7676), qs(5400, 38380, -2443, 38380), qs(22880, 38380, -6243, 38380)},
        {qs(42, 76, -11, 76), qs(45, 380, 33, 380), qs(45, 380, 33, 380), qs(42, 76, -11, 76),
         qs(-65, 380, 22, 380), qs(-65, 380, 22, 380)},
        {qs(-1237, 7676, 528, 7676), qs(11805, 38380, -3427, 38380), qs(11425, 38380, -7, 38380),
         qs(-1389, 7676, 1896, 7676), qs(22880, 38380, -6243, 38380), qs(5400, 38380, -2443, 38380)},
        {qs(-31, 7676, -24, 7676), qs(-1845, 38380, 243, 38380), qs(6895, 38380, -1657, 38380),
         qs(3465, 7676, -784, 7676), qs(-1040, 38380, 8047, 38380), qs(17200, 38380, -2593, 38380)},
        {qs(3465, 7676, -784, 7676), qs(6895, 38380, -1657, 38380), qs(-1845, 38380, 243, 38380),
         qs(-31, 7676, -24, 7676), qs(17200, 38380, -2593, 38380), qs(-1040, 38380, 8047, 38380)},
    };
    return Matrix<Q>::from_rows(rows).transpose();
}

Matrix<Q> capped_pentagon_dual_reference() {
    Q z = q(0);
    Q a = qs(5, 1, -2, 1);   // 5 - 2 sqrt5
    Q b = qs(-1, 2, 1, 2);   // (sqrt5 - 1)/2
    Q c = qs(3, 1, -1, 1);   // 3 - sqrt5
    Q d = qs(3, 4, -1, 4);   // (3 - sqrt5)/4
    Q one = q(1);
    std::vector<std::vector<Q>> rows = {
        {z, z, z, a, b, z},
        {z, z, z, z, one, one},
        {a, z, z, z, z, b},
        {c, one, d, z, z, z},
        {z, d, one, c, z, z},
    };
    return Matrix<Q>::from_rows(rows).transpose();
}

Q capped_pentagon_gap_value() { return qs(7, 2, -3, 2); }

ProjectionInstance pentagon_in_simplex() {
    ProjectionInstance inst;
    Q scale = qs(-1, 5, 1, 5); // (sqrt5 - 1)/5
    inst.simplex = Matrix<Q>(5, 5);
    for (std::size_t i = 0; i < 5; ++i) inst.simplex(i, i) = scale;
    // pentagon vertex entries: 0, (3 sqrt5 - 5)/25 and (5 - sqrt5)/25 in a
    // circulant pattern
    Q z = q(0);
    Q small = qs(-5, 25, 3, 25);
    Q big = qs(5, 25, -1, 25);
    auto g = [&](std::size_t k) {
        switch (k % 5) {
            case 1: case 3: return small;
            case 2: return big;
            default: return z;
        }
    };
    inst.pentagon = Matrix<Q>(5, 5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) inst.pentagon(j, i) = g(i + j + 2);
    return inst;
}

Q projection_ratio() { return qs(-1, 2, 1, 2); }

} // namespace cope::fixtures
