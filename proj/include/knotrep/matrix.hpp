#pragma once

#include <optional>
#include <vector>

#include "knotrep/bigcomplex.hpp"
#include "knotrep/laurent.hpp"
#include "knotrep/numberfield.hpp"

namespace knotrep {

// ---- scalar glue shared by the exact and numeric backends ----

inline bool scalar_is_zero(const Rational& x) { return x == 0; }
inline bool scalar_is_zero(const FieldElement& x) { return x.is_zero(); }
inline bool scalar_is_zero(const LaurentPolynomial& x) { return x.is_zero(); }
inline bool scalar_is_zero(const BigComplex& x) { return x == BigComplex(); }

template <class S> inline constexpr bool is_exact_scalar_v = true;
template <> inline constexpr bool is_exact_scalar_v<BigComplex> = false;

inline Rational exact_div(const Rational& a, const Rational& b) { return a / b; }
inline FieldElement exact_div(const FieldElement& a, const FieldElement& b) { return a / b; }
inline BigComplex exact_div(const BigComplex& a, const BigComplex& b) { return a / b; }
LaurentPolynomial exact_div(const LaurentPolynomial& a, const LaurentPolynomial& b);

template <class S>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, S fill = S(0))
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * static_cast<size_t>(cols), fill) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    S& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const S& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o);
        Matrix r = *this;
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = r.a_[i] + o.a_[i];
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        check_same_shape(o);
        Matrix r = *this;
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = r.a_[i] - o.a_[i];
        return r;
    }
    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw Error("dimension_mismatch", "matrix product shape mismatch");
        Matrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const S& aik = (*this)(i, k);
                if (scalar_is_zero(aik)) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) = r(i, j) + aik * o(k, j);
            }
        return r;
    }
    Matrix operator*(const S& c) const {
        Matrix r = *this;
        for (auto& x : r.a_) x = x * c;
        return r;
    }
    Matrix operator-() const {
        Matrix r = *this;
        for (auto& x : r.a_) x = -x;
        return r;
    }
    bool operator==(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (size_t i = 0; i < a_.size(); ++i)
            if (!scalar_is_zero(a_[i] - o.a_[i])) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    void set_block(int i0, int j0, const Matrix& b) {
        for (int i = 0; i < b.rows_; ++i)
            for (int j = 0; j < b.cols_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }
    Matrix block(int i0, int j0, int r, int c) const {
        Matrix b(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
        return b;
    }
    Matrix delete_column(int j0) const {
        Matrix b(rows_, cols_ - 1);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0, jj = 0; j < cols_; ++j)
                if (j != j0) b(i, jj++) = (*this)(i, j);
        return b;
    }

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }

    std::vector<S> column(int j) const {
        std::vector<S> v(static_cast<size_t>(rows_));
        for (int i = 0; i < rows_; ++i) v[static_cast<size_t>(i)] = (*this)(i, j);
        return v;
    }

    template <class T, class F>
    Matrix<T> map(F f) const {
        Matrix<T> r(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
        return r;
    }

    std::vector<S> mul_vec(const std::vector<S>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw Error("dimension_mismatch", "matrix*vector shape");
        std::vector<S> r(static_cast<size_t>(rows_), S(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[static_cast<size_t>(i)] = r[static_cast<size_t>(i)] + (*this)(i, j) * v[static_cast<size_t>(j)];
        return r;
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("dimension_mismatch", "matrix shape mismatch");
    }

    int rows_ = 0, cols_ = 0;
    std::vector<S> a_;
};

// fraction-free (Bareiss) elimination; exact zero tests
template <class S>
int rank_exact(Matrix<S> a) {
    static_assert(is_exact_scalar_v<S>, "rank_exact needs an exact scalar");
    int m = a.rows(), n = a.cols();
    int rank = 0;
    S prev = S(1);
    for (int k = 0; k < std::min(m, n); ++k) {
        int pi = -1, pj = -1;
        for (int i = k; i < m && pi < 0; ++i)
            for (int j = k; j < n; ++j)
                if (!scalar_is_zero(a(i, j))) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        a.swap_rows(k, pi);
        a.swap_cols(k, pj);
        for (int i = k + 1; i < m; ++i)
            for (int j = k + 1; j < n; ++j)
                a(i, j) = exact_div(a(k, k) * a(i, j) - a(i, k) * a(k, j), prev);
        prev = a(k, k);
        ++rank;
    }
    return rank;
}

// Bareiss determinant (square)
template <class S>
S det_bareiss(Matrix<S> a) {
    if (a.rows() != a.cols()) throw Error("dimension_mismatch", "determinant of non-square matrix");
    int n = a.rows();
    if (n == 0) return S(1);
    S prev = S(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        int pi = -1;
        for (int i = k; i < n; ++i)
            if (!scalar_is_zero(a(i, k))) {
                pi = i;
                break;
            }
        if (pi < 0) return S(0);
        if (pi != k) {
            a.swap_rows(k, pi);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a(i, j) = exact_div(a(k, k) * a(i, j) - a(i, k) * a(k, j), prev);
        prev = a(k, k);
    }
    S d = a(n - 1, n - 1);
    return sign < 0 ? -d : d;
}

template <class S>
struct RrefResult {
    Matrix<S> mat;
    std::vector<int> pivot_cols;
    int rank = 0;
};

// reduced row echelon form over a field scalar
template <class S>
RrefResult<S> rref(Matrix<S> a) {
    static_assert(is_exact_scalar_v<S>, "rref needs an exact scalar");
    RrefResult<S> out;
    int m = a.rows(), n = a.cols();
    int r = 0;
    for (int j = 0; j < n && r < m; ++j) {
        int pi = -1;
        for (int i = r; i < m; ++i)
            if (!scalar_is_zero(a(i, j))) {
                pi = i;
                break;
            }
        if (pi < 0) continue;
        a.swap_rows(r, pi);
        S inv = exact_div(S(1), a(r, j));
        for (int k = j; k < n; ++k) a(r, k) = a(r, k) * inv;
        for (int i = 0; i < m; ++i) {
            if (i == r || scalar_is_zero(a(i, j))) continue;
            S f = a(i, j);
            for (int k = j; k < n; ++k) a(i, k) = a(i, k) - f * a(r, k);
        }
        out.pivot_cols.push_back(j);
        ++r;
    }
    out.mat = std::move(a);
    out.rank = r;
    return out;
}

// kernel basis as matrix columns (free variables in ascending column order)
template <class S>
Matrix<S> nullspace_exact(const Matrix<S>& a) {
    auto rr = rref(a);
    int n = a.cols();
    std::vector<bool> is_pivot(static_cast<size_t>(n), false);
    for (int p : rr.pivot_cols) is_pivot[static_cast<size_t>(p)] = true;
    int k = n - rr.rank;
    Matrix<S> ker(n, k);
    int col = 0;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[static_cast<size_t>(f)]) continue;
        ker(f, col) = S(1);
        for (int i = 0; i < rr.rank; ++i) {
            int p = rr.pivot_cols[static_cast<size_t>(i)];
            ker(p, col) = -rr.mat(i, f);
        }
        ++col;
    }
    return ker;
}

// particular solution of A x = b with free variables set to 0; nullopt if inconsistent
template <class S>
std::optional<std::vector<S>> solve_exact(const Matrix<S>& a, const std::vector<S>& b) {
    int m = a.rows(), n = a.cols();
    Matrix<S> aug(m, n + 1);
    aug.set_block(0, 0, a);
    for (int i = 0; i < m; ++i) aug(i, n) = b[static_cast<size_t>(i)];
    auto rr = rref(std::move(aug));
    for (int p : rr.pivot_cols)
        if (p == n) return std::nullopt;
    std::vector<S> x(static_cast<size_t>(n), S(0));
    for (int i = 0; i < rr.rank; ++i) x[static_cast<size_t>(rr.pivot_cols[static_cast<size_t>(i)])] = rr.mat(i, n);
    return x;
}

template <class S>
std::optional<Matrix<S>> inverse_exact(const Matrix<S>& a) {
    if (a.rows() != a.cols()) throw Error("dimension_mismatch", "inverse of non-square matrix");
    int n = a.rows();
    Matrix<S> aug(n, 2 * n);
    aug.set_block(0, 0, a);
    aug.set_block(0, n, Matrix<S>::identity(n));
    auto rr = rref(std::move(aug));
    if (rr.rank < n || rr.pivot_cols[static_cast<size_t>(n - 1)] >= n) return std::nullopt;
    return rr.mat.block(0, n, n, n);
}

template <class S>
S trace(const Matrix<S>& a) {
    S t = S(0);
    for (int i = 0; i < std::min(a.rows(), a.cols()); ++i) t = t + a(i, i);
    return t;
}

// Incremental echelon basis over an exact field scalar. Rows are reduced
// against the basis as they arrive; insert() reports whether the row added a
// new pivot and returns the reduced, pivot-normalized row.
template <class S>
class RowBasis {
public:
    explicit RowBasis(int width) : width_(width) {}

    std::vector<S> reduce(std::vector<S> row) const {
        for (const auto& [pc, r] : rows_) {
            const S& c = row[static_cast<size_t>(pc)];
            if (scalar_is_zero(c)) continue;
            S f = c;
            for (int j = 0; j < width_; ++j)
                row[static_cast<size_t>(j)] = row[static_cast<size_t>(j)] - f * r[static_cast<size_t>(j)];
        }
        return row;
    }

    // returns the reduced row and whether it was independent
    std::pair<std::vector<S>, bool> insert(std::vector<S> row) {
        row = reduce(std::move(row));
        int pc = -1;
        for (int j = 0; j < width_; ++j)
            if (!scalar_is_zero(row[static_cast<size_t>(j)])) {
                pc = j;
                break;
            }
        if (pc < 0) return {std::move(row), false};
        S inv = exact_div(S(1), row[static_cast<size_t>(pc)]);
        for (int j = 0; j < width_; ++j) row[static_cast<size_t>(j)] = row[static_cast<size_t>(j)] * inv;
        rows_.emplace_back(pc, row);
        return {std::move(row), true};
    }

    int rank() const { return static_cast<int>(rows_.size()); }

private:
    int width_;
    std::vector<std::pair<int, std::vector<S>>> rows_;
};

} // namespace knotrep
