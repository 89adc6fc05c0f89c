#ifndef COPE_MATRIX_HPP
#define COPE_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cope/errors.hpp"
#include "cope/scalar.hpp"

namespace cope {

template <class S>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, S(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<S>>& rows) {
        if (rows.empty()) return Matrix();
        Matrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw ValidationError(ValidationError::Kind::DimensionMismatch, "ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    static Matrix from_columns(const std::vector<std::vector<S>>& cols) {
        if (cols.empty()) return Matrix();
        Matrix m(cols.front().size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != m.rows_)
                throw ValidationError(ValidationError::Kind::DimensionMismatch, "ragged columns");
            for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    S& operator()(std::size_t i, std::size_t j) {
        check(i, j);
        return e_[i * cols_ + j];
    }
    const S& operator()(std::size_t i, std::size_t j) const {
        check(i, j);
        return e_[i * cols_ + j];
    }

    std::vector<S> row(std::size_t i) const {
        check(i, 0);
        return std::vector<S>(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
    }
    std::vector<S> col(std::size_t j) const {
        std::vector<S> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_)
            throw ValidationError(ValidationError::Kind::DimensionMismatch,
                                  "product of " + std::to_string(x.rows_) + "x" + std::to_string(x.cols_) +
                                      " and " + std::to_string(y.rows_) + "x" + std::to_string(y.cols_));
        Matrix out(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t t = 0; t < x.cols_; ++t) {
                const S& xit = x(i, t);
                if (xit.is_zero()) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) out(i, j) += xit * y(t, j);
            }
        return out;
    }
    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw ValidationError(ValidationError::Kind::DimensionMismatch, "sum shape mismatch");
        Matrix out(x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.e_.size(); ++i) out.e_[i] = x.e_[i] + y.e_[i];
        return out;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw ValidationError(ValidationError::Kind::DimensionMismatch, "difference shape mismatch");
        Matrix out(x.rows_, x.cols_);
        for (std::size_t i = 0; i < x.e_.size(); ++i) out.e_[i] = x.e_[i] - y.e_[i];
        return out;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
        for (std::size_t i = 0; i < x.e_.size(); ++i)
            if (!(x.e_[i] == y.e_[i])) return false;
        return true;
    }

    bool entrywise_equal(const Matrix& y) const {
        if (rows_ != y.rows_ || cols_ != y.cols_) return false;
        for (std::size_t i = 0; i < e_.size(); ++i)
            if ((e_[i] - y.e_[i]).sign() != 0) return false;
        return true;
    }
    bool nonnegative() const {
        for (const S& v : e_)
            if (v.sign() < 0) return false;
        return true;
    }

private:
    void check(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_)
            throw ValidationError(ValidationError::Kind::DimensionMismatch,
                                  "index (" + std::to_string(i) + "," + std::to_string(j) + ") out of " +
                                      std::to_string(rows_) + "x" + std::to_string(cols_));
    }

    std::size_t rows_, cols_;
    std::vector<S> e_;
};

template <class S>
S dot(const std::vector<S>& x, const std::vector<S>& y) {
    if (x.size() != y.size())
        throw ValidationError(ValidationError::Kind::DimensionMismatch, "dot length mismatch");
    S acc(0);
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}

namespace detail {

// pivot row choice: first nonzero below `row` in exact mode, largest
// magnitude in float mode for stability
template <class S>
std::optional<std::size_t> pick_pivot(const Matrix<S>& m, std::size_t row, std::size_t col) {
    if constexpr (is_exact_v<S>) {
        for (std::size_t i = row; i < m.rows(); ++i)
            if (m(i, col).sign() != 0) return i;
        return std::nullopt;
    } else {
        std::optional<std::size_t> best;
        for (std::size_t i = row; i < m.rows(); ++i) {
            if (m(i, col).sign() == 0) continue;
            if (!best || m(i, col).abs() > m(*best, col).abs()) best = i;
        }
        return best;
    }
}

template <class S>
void swap_rows(Matrix<S>& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

} // namespace detail

/// Exact rank via fraction-free (Bareiss-style) elimination; float mode uses
/// partial pivoting with the backend tolerance.
template <class S>
std::size_t rank(Matrix<S> m) {
    std::size_t r = 0;
    S prev(1);
    for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        auto piv = detail::pick_pivot(m, r, col);
        if (!piv) continue;
        detail::swap_rows(m, r, *piv);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            for (std::size_t j = col + 1; j < m.cols(); ++j)
                m(i, j) = (m(r, col) * m(i, j) - m(i, col) * m(r, j)) / prev;
            m(i, col) = S(0);
        }
        prev = m(r, col);
        ++r;
    }
    return r;
}

struct RrefResult {
    std::vector<std::size_t> pivot_cols;
};

/// In-place reduced row echelon form. Returns pivot column indices in order.
template <class S>
RrefResult rref(Matrix<S>& m) {
    RrefResult out;
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        auto piv = detail::pick_pivot(m, r, col);
        if (!piv) continue;
        detail::swap_rows(m, r, *piv);
        S p = m(r, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(r, j) = m(r, j) / p;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, col).sign() == 0) continue;
            S f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(r, j);
            m(i, col) = S(0);
        }
        out.pivot_cols.push_back(col);
        ++r;
    }
    return out;
}

/// Solves the square system A x = b exactly; nullopt when A is singular.
template <class S>
std::optional<std::vector<S>> solve_square(Matrix<S> a, std::vector<S> b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n)
        throw ValidationError(ValidationError::Kind::DimensionMismatch, "solve_square shape");
    for (std::size_t col = 0; col < n; ++col) {
        auto piv = detail::pick_pivot(a, col, col);
        if (!piv) return std::nullopt;
        detail::swap_rows(a, col, *piv);
        std::swap(b[col], b[*piv]);
        S p = a(col, col);
        for (std::size_t j = col; j < n; ++j) a(col, j) = a(col, j) / p;
        b[col] = b[col] / p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col).sign() == 0) continue;
            S f = a(i, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) = a(i, j) - f * a(col, j);
            b[i] = b[i] - f * b[col];
        }
    }
    return b;
}

/// Basis of the right kernel {x : M x = 0}, from the reduced echelon form.
template <class S>
std::vector<std::vector<S>> nullspace_basis(Matrix<S> m) {
    auto rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<S>> basis;
    for (std::size_t freec = 0; freec < m.cols(); ++freec) {
        if (is_pivot[freec]) continue;
        std::vector<S> v(m.cols(), S(0));
        v[freec] = S(1);
        for (std::size_t t = 0; t < rr.pivot_cols.size(); ++t) v[rr.pivot_cols[t]] = -m(t, freec);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// (G^T G)^{-1} G^T for full column rank G; G† G = identity.
template <class S>
Matrix<S> pseudoinverse_full_col_rank(const Matrix<S>& g) {
    Matrix<S> gt = g.transpose();
    Matrix<S> gram = gt * g;
    const std::size_t r = g.cols();
    // invert gram by solving against identity
    Matrix<S> inv(r, r);
    for (std::size_t j = 0; j < r; ++j) {
        std::vector<S> e(r, S(0));
        e[j] = S(1);
        auto x = solve_square(gram, e);
        if (!x) {
            // name the first dependent column for the error
            Matrix<S> copy = g;
            auto rr = rref(copy);
            std::size_t dep = 0;
            std::vector<bool> is_pivot(g.cols(), false);
            for (std::size_t c : rr.pivot_cols) is_pivot[c] = true;
            for (std::size_t c = 0; c < g.cols(); ++c)
                if (!is_pivot[c]) { dep = c; break; }
            throw ValidationError(ValidationError::Kind::RankDeficient,
                                  "matrix is rank-deficient; column " + std::to_string(dep) +
                                      " depends on earlier columns",
                                  ValidationError::npos, ValidationError::npos, dep);
        }
        for (std::size_t i = 0; i < r; ++i) inv(i, j) = (*x)[i];
    }
    return inv * gt;
}

struct OrthogonalBases {
    template <class S> using VecList = std::vector<std::vector<S>>;
};

/// Gram-Schmidt without normalization on the rows of g, plus an orthogonal
/// basis of the right kernel. Row span and kernel span decompose the ambient
/// space; cross inner products are zero.
template <class S>
std::pair<std::vector<std::vector<S>>, std::vector<std::vector<S>>> orthogonal_bases(const Matrix<S>& g) {
    auto gs = [](std::vector<std::vector<S>> vecs) {
        std::vector<std::vector<S>> basis;
        for (auto& v : vecs) {
            for (const auto& u : basis) {
                S f = dot(v, u) / dot(u, u);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] = v[i] - f * u[i];
            }
            bool zero = true;
            for (const auto& x : v)
                if (x.sign() != 0) { zero = false; break; }
            if (!zero) basis.push_back(std::move(v));
        }
        return basis;
    };
    std::vector<std::vector<S>> rows;
    for (std::size_t i = 0; i < g.rows(); ++i) rows.push_back(g.row(i));
    auto row_basis = gs(std::move(rows));
    auto kernel = gs(nullspace_basis(g));
    return {std::move(row_basis), std::move(kernel)};
}

struct RankSeparation {
    bool equal_ranks;
    std::size_t rank_r;
    std::size_t rank_e;
};

/// Reports the ranks of the two factors and whether they agree.
template <class S>
RankSeparation check_rank_separation(const Matrix<S>& r_factor, const Matrix<S>& e_factor) {
    if (r_factor.cols() != e_factor.rows())
        throw ValidationError(ValidationError::Kind::DimensionMismatch, "factor shapes incompatible");
    RankSeparation out;
    out.rank_r = rank(r_factor);
    out.rank_e = rank(e_factor);
    out.equal_ranks = out.rank_r == out.rank_e;
    return out;
}

} // namespace cope

#endif
