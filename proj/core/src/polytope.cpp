#include "cope/polytope.hpp"

#include <cmath>
#include <map>

namespace cope {
namespace poly_detail {

namespace {

// near-regular simplex directions in doubles: images of e_i - 1/(s+1) under a
// Helmert basis of the sum-zero subspace, normalized
std::vector<std::vector<double>> double_directions(std::size_t s) {
    std::vector<std::vector<double>> w; // basis of sum-zero subspace of R^{s+1}
    for (std::size_t j = 1; j <= s; ++j) {
        std::vector<double> v(s + 1, 0.0);
        for (std::size_t t = 0; t < j; ++t) v[t] = 1.0;
        v[j] = -static_cast<double>(j);
        double norm = std::sqrt(static_cast<double>(j) * (j + 1));
        for (auto& x : v) x /= norm;
        w.push_back(std::move(v));
    }
    std::vector<std::vector<double>> dirs;
    for (std::size_t i = 0; i <= s; ++i) {
        std::vector<double> u(s + 1, -1.0 / static_cast<double>(s + 1));
        u[i] += 1.0;
        std::vector<double> d(s, 0.0);
        for (std::size_t j = 0; j < s; ++j)
            for (std::size_t t = 0; t <= s; ++t) d[j] += w[j][t] * u[t];
        double norm = 0;
        for (double x : d) norm += x * x;
        norm = std::sqrt(norm);
        for (auto& x : d) x /= norm;
        dirs.push_back(std::move(d));
    }
    return dirs;
}

} // namespace

std::vector<std::vector<Rational>> rational_simplex_directions(std::size_t s) {
    if (s == 0) return {};
    static std::map<std::size_t, std::vector<std::vector<Rational>>> cache;
    auto it = cache.find(s);
    if (it != cache.end()) return it->second;

    std::vector<std::vector<Rational>> dirs;
    if (s == 1) {
        dirs = {{Rational(1)}, {Rational(-1)}};
    } else {
        const long den = 1 << 16;
        for (const auto& d : double_directions(s)) {
            std::vector<Rational> r;
            for (double x : d) {
                Rational q(std::lround(x * den), den);
                q.canonicalize();
                r.push_back(q);
            }
            dirs.push_back(std::move(r));
        }
    }

    // the s+1 directions must positively span: 0 strictly inside their hull
    Matrix<QuadraticScalar> pts(s, dirs.size());
    for (std::size_t j = 0; j < dirs.size(); ++j)
        for (std::size_t i = 0; i < s; ++i) pts(i, j) = QuadraticScalar(dirs[j][i]);
    if (!origin_strictly_interior(pts))
        throw DomainError("simplex direction set failed the positive spanning check");

    cache[s] = dirs;
    return dirs;
}

} // namespace poly_detail
} // namespace cope
