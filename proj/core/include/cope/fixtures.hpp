#ifndef COPE_FIXTURES_HPP
#define COPE_FIXTURES_HPP

#include "cope/cope_matrix.hpp"
#include "cope/scalar.hpp"

namespace cope::fixtures {

using Q = QuadraticScalar;

/// n x n identity experiment, one measurement.
CopeMatrix<Q> identity_cope(std::size_t n);

/// The 4x4 two-measurement box-world experiment.
CopeMatrix<Q> box_world();

/// The 5x5 rank-3 circulant pentagon experiment over Q(sqrt(5)).
CopeMatrix<Q> pentagon();

struct ModelPair {
    Matrix<Q> r_factor;
    Matrix<Q> e_factor;
};

/// Noncontextual model of the pentagon with five ontic states.
ModelPair pentagon_model_size5();

/// Ontological model of the pentagon with four ontic states (rank-separated).
ModelPair pentagon_model_size4();

/// Exact product of the real rebit factor pair (5x3 times 3x5). The factors
/// live in a degree-four extension; their product stays in Q(sqrt(5)) and is
/// assembled here from the split through t = sqrt(5 - 2 sqrt(5)).
Matrix<Q> pentagon_rebit_product();

struct NestedPairInstance {
    Matrix<Q> g; // 3 x 6 vertices of the capped outer pentagon, homogeneous
    Matrix<Q> b; // 3 x 5 vertices of the inner pentagon, homogeneous
};

/// The capped-pentagon nested pair: outer pentagon with one corner cut at the
/// edge midpoints, inner pentagon scaled by (sqrt(5)-1)/2. Coordinates use
/// the rational rotation frame of Q(sqrt(5)).
NestedPairInstance capped_pentagon_instance();

/// Reference nonnegative-map seed: the pseudoinverse image of the inner
/// vertices under the capped outer polygon.
Matrix<Q> capped_pentagon_map_reference(); // 6 x 5

/// Reference dual multipliers proving no rank-preserving map exists.
Matrix<Q> capped_pentagon_dual_reference(); // 6 x 5

/// The optimum of the shear program for the capped pentagon: (7 - 3 sqrt 5)/2.
Q capped_pentagon_gap_value();

struct ProjectionInstance {
    Matrix<Q> simplex;  // 5 x 5 simplex vertices (columns)
    Matrix<Q> pentagon; // 5 x 5 embedded pentagon vertices (columns)
};

/// Regular simplex with the pentagon inscribed in its normalization plane;
/// projecting the simplex onto the pentagon's affine span scales it by
/// exactly 2/(sqrt(5)-1) relative to the pentagon.
ProjectionInstance pentagon_in_simplex();

Q projection_ratio(); // (sqrt(5)-1)/2

/// Converts an exact fixture to the requested backend.
template <class S>
Matrix<S> convert_matrix(const Matrix<Q>& m) {
    if constexpr (std::is_same_v<S, Q>) {
        return m;
    } else {
        Matrix<S> out(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = S(m(i, j).to_double());
        return out;
    }
}

template <class S>
CopeMatrix<S> convert_cope(const CopeMatrix<Q>& c) {
    if constexpr (std::is_same_v<S, Q>) {
        return c;
    } else {
        return CopeMatrix<S>{convert_matrix<S>(c.data), c.block_heights, c.form};
    }
}

} // namespace cope::fixtures

#endif
