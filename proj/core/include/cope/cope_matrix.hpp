#ifndef COPE_COPE_MATRIX_HPP
#define COPE_COPE_MATRIX_HPP

#include <numeric>
#include <vector>

#include "cope/matrix.hpp"

namespace cope {

enum class CopeForm { A, B };

/// Conditional outcome probability matrix with measurement block structure.
/// A-form: one column-stochastic block per measurement. B-form: the whole
/// matrix is column-stochastic (a single block).
template <class S>
struct CopeMatrix {
    Matrix<S> data;
    std::vector<std::size_t> block_heights;
    CopeForm form = CopeForm::A;

    std::size_t measurements() const { return block_heights.size(); }
    std::size_t rows() const { return data.rows(); }
    std::size_t cols() const { return data.cols(); }
};

/// Validates block structure, nonnegativity, per-block column stochasticity
/// and the no-zero-row / no-zero-column requirements. Throws ValidationError
/// naming the offending block, row or column.
template <class S>
CopeMatrix<S> validate_cope(const Matrix<S>& data, const std::vector<std::size_t>& block_heights,
                            CopeForm form = CopeForm::A) {
    if (data.empty())
        throw ValidationError(ValidationError::Kind::DimensionMismatch, "empty matrix");
    std::size_t total = std::accumulate(block_heights.begin(), block_heights.end(), std::size_t(0));
    if (block_heights.empty() || total != data.rows())
        throw ValidationError(ValidationError::Kind::BlockMismatch,
                              "block heights sum to " + std::to_string(total) + ", expected " +
                                  std::to_string(data.rows()));
    if (form == CopeForm::B && block_heights.size() != 1)
        throw ValidationError(ValidationError::Kind::BlockMismatch, "B-form requires a single block");

    for (std::size_t i = 0; i < data.rows(); ++i)
        for (std::size_t j = 0; j < data.cols(); ++j)
            if (data(i, j).sign() < 0)
                throw ValidationError(ValidationError::Kind::NegativeEntry,
                                      "negative entry at (" + std::to_string(i) + "," + std::to_string(j) + ")",
                                      ValidationError::npos, i, j);

    std::size_t row0 = 0;
    for (std::size_t blk = 0; blk < block_heights.size(); ++blk) {
        for (std::size_t j = 0; j < data.cols(); ++j) {
            S sum(0);
            for (std::size_t i = 0; i < block_heights[blk]; ++i) sum += data(row0 + i, j);
            if ((sum - S(1)).sign() != 0)
                throw ValidationError(ValidationError::Kind::NonStochasticColumn,
                                      "block " + std::to_string(blk) + ", column " + std::to_string(j) +
                                          " sums to " + sum.str(),
                                      blk, ValidationError::npos, j);
        }
        row0 += block_heights[blk];
    }

    for (std::size_t i = 0; i < data.rows(); ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < data.cols(); ++j)
            if (data(i, j).sign() != 0) { zero = false; break; }
        if (zero)
            throw ValidationError(ValidationError::Kind::ZeroRow, "row " + std::to_string(i) + " is zero",
                                  ValidationError::npos, i);
    }
    for (std::size_t j = 0; j < data.cols(); ++j) {
        bool zero = true;
        for (std::size_t i = 0; i < data.rows(); ++i)
            if (data(i, j).sign() != 0) { zero = false; break; }
        if (zero)
            throw ValidationError(ValidationError::Kind::ZeroColumn,
                                  "column " + std::to_string(j) + " is zero", ValidationError::npos,
                                  ValidationError::npos, j);
    }

    return CopeMatrix<S>{data, block_heights, form};
}

/// Rescales an A-form matrix by 1/l into the globally column-stochastic
/// B-form with a single block.
template <class S>
CopeMatrix<S> to_b_form(const CopeMatrix<S>& c) {
    if (c.form == CopeForm::B) return c;
    S l(static_cast<long>(c.measurements()));
    Matrix<S> out(c.rows(), c.cols());
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) out(i, j) = c.data(i, j) / l;
    return CopeMatrix<S>{out, {c.rows()}, CopeForm::B};
}

template <class S>
struct RankFactorization {
    Matrix<S> left;   // m x r, columns sum to l
    Matrix<S> right;  // r x n, column-stochastic
    std::size_t inner_dim;
};

/// Exact rank factorization C = left * right with inner dimension rank(C).
/// left is the first maximal independent column set of C in left-to-right
/// order; right comes from the reduced echelon coefficients, rescaled by a
/// positive diagonal so its columns sum to one.
template <class S>
RankFactorization<S> rank_factorize(const CopeMatrix<S>& c) {
    Matrix<S> work = c.data;
    auto rr = rref(work);
    const std::size_t r = rr.pivot_cols.size();
    Matrix<S> left(c.rows(), r);
    for (std::size_t t = 0; t < r; ++t)
        for (std::size_t i = 0; i < c.rows(); ++i) left(i, t) = c.data(i, rr.pivot_cols[t]);
    Matrix<S> right(r, c.cols());
    for (std::size_t t = 0; t < r; ++t)
        for (std::size_t j = 0; j < c.cols(); ++j) right(t, j) = work(t, j);

    // diagonal rescale so right is column-stochastic; for a valid A-form COPE
    // the left column sums already equal l, making this the identity
    S l(static_cast<long>(c.form == CopeForm::A ? c.measurements() : 1));
    for (std::size_t t = 0; t < r; ++t) {
        S colsum(0);
        for (std::size_t i = 0; i < c.rows(); ++i) colsum += left(i, t);
        S scale = colsum / l;
        if (scale.sign() == 0)
            throw ValidationError(ValidationError::Kind::ZeroColumn,
                                  "factor column " + std::to_string(t) + " has zero sum");
        for (std::size_t i = 0; i < c.rows(); ++i) left(i, t) = left(i, t) / scale;
        for (std::size_t j = 0; j < c.cols(); ++j) right(t, j) = right(t, j) * scale;
    }
    return RankFactorization<S>{std::move(left), std::move(right), r};
}

/// The unit effect u with 1^T A = l u^T; rows of each measurement block of A
/// sum to u.
template <class S>
std::vector<S> unit_effect(const Matrix<S>& left, std::size_t l) {
    std::vector<S> u(left.cols(), S(0));
    S lf(static_cast<long>(l));
    for (std::size_t j = 0; j < left.cols(); ++j) {
        S sum(0);
        for (std::size_t i = 0; i < left.rows(); ++i) sum += left(i, j);
        u[j] = sum / lf;
    }
    return u;
}

} // namespace cope

#endif
