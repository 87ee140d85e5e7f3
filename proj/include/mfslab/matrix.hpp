#pragma once

#include "mfslab/rational.hpp"

#include <cassert>
#include <optional>
#include <vector>

namespace mfslab {

// Dense matrix over an exact field (Rational or GaussianRational) or, for the
// arithmetic-only subset of the interface, over a commutative ring such as a
// truncated series ring.
template <class K>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
    Mat(int rows, int cols, K fill)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, std::move(fill)) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = scalar_one(K{});
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    K& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const K& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    std::vector<K> row(int i) const {
        std::vector<K> r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }
    std::vector<K> col(int j) const {
        std::vector<K> c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    void set_row(int i, const std::vector<K>& r) {
        assert(static_cast<int>(r.size()) == cols_);
        for (int j = 0; j < cols_; ++j) (*this)(i, j) = r[j];
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
        Mat r(a.rows_, a.cols_);
        for (size_t t = 0; t < r.a_.size(); ++t) r.a_[t] = a.a_[t] + b.a_[t];
        return r;
    }

    friend Mat operator-(const Mat& a, const Mat& b) {
        assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
        Mat r(a.rows_, a.cols_);
        for (size_t t = 0; t < r.a_.size(); ++t) r.a_[t] = a.a_[t] - b.a_[t];
        return r;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        assert(a.cols_ == b.rows_);
        Mat r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                if (scalar_is_zero(a(i, k))) continue;
                for (int j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }

    std::vector<K> apply(const std::vector<K>& x) const {
        assert(static_cast<int>(x.size()) == cols_);
        std::vector<K> y(rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        for (const K& x : a_)
            if (!scalar_is_zero(x)) return false;
        return true;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = i + 1; j < cols_; ++j)
                if (!scalar_is_zero((*this)(i, j) - (*this)(j, i))) return false;
        return true;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    // Reduced row echelon form; pivot column indices appended to *pivots.
    Mat rref(std::vector<int>* pivots = nullptr) const {
        Mat m = *this;
        int prow = 0;
        for (int col = 0; col < cols_ && prow < rows_; ++col) {
            int sel = -1;
            for (int i = prow; i < rows_; ++i)
                if (!scalar_is_zero(m(i, col))) { sel = i; break; }
            if (sel < 0) continue;
            if (sel != prow)
                for (int j = 0; j < cols_; ++j) std::swap(m(sel, j), m(prow, j));
            K inv = scalar_one(K{}) / m(prow, col);
            for (int j = 0; j < cols_; ++j) m(prow, j) = m(prow, j) * inv;
            for (int i = 0; i < rows_; ++i) {
                if (i == prow || scalar_is_zero(m(i, col))) continue;
                K f = m(i, col);
                for (int j = 0; j < cols_; ++j) m(i, j) = m(i, j) - f * m(prow, j);
            }
            if (pivots) pivots->push_back(col);
            ++prow;
        }
        return m;
    }

    int rank() const {
        std::vector<int> p;
        rref(&p);
        return static_cast<int>(p.size());
    }

    K det() const {
        assert(rows_ == cols_);
        Mat m = *this;
        K d = scalar_one(K{});
        for (int col = 0; col < cols_; ++col) {
            int sel = -1;
            for (int i = col; i < rows_; ++i)
                if (!scalar_is_zero(m(i, col))) { sel = i; break; }
            if (sel < 0) return K{};
            if (sel != col) {
                for (int j = 0; j < cols_; ++j) std::swap(m(sel, j), m(col, j));
                d = K{} - d;
            }
            d = d * m(col, col);
            K inv = scalar_one(K{}) / m(col, col);
            for (int i = col + 1; i < rows_; ++i) {
                if (scalar_is_zero(m(i, col))) continue;
                K f = m(i, col) * inv;
                for (int j = col; j < cols_; ++j) m(i, j) = m(i, j) - f * m(col, j);
            }
        }
        return d;
    }

    // Columns form a canonical basis of the null space {x : A x = 0}.
    Mat kernel() const {
        std::vector<int> pivots;
        Mat r = rref(&pivots);
        std::vector<bool> is_pivot(cols_, false);
        for (int p : pivots) is_pivot[p] = true;
        std::vector<int> free_cols;
        for (int j = 0; j < cols_; ++j)
            if (!is_pivot[j]) free_cols.push_back(j);
        Mat ker(cols_, static_cast<int>(free_cols.size()));
        for (size_t f = 0; f < free_cols.size(); ++f) {
            int fc = free_cols[f];
            ker(fc, static_cast<int>(f)) = scalar_one(K{});
            for (size_t pi = 0; pi < pivots.size(); ++pi)
                ker(pivots[pi], static_cast<int>(f)) = K{} - r(static_cast<int>(pi), fc);
        }
        return ker;
    }

    std::optional<Mat> inverse() const {
        assert(rows_ == cols_);
        Mat aug(rows_, 2 * cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_ + i) = scalar_one(K{});
        }
        std::vector<int> pivots;
        Mat r = aug.rref(&pivots);
        if (static_cast<int>(pivots.size()) != rows_ || pivots.back() >= cols_) return std::nullopt;
        Mat inv(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) inv(i, j) = r(i, cols_ + j);
        return inv;
    }

    // One solution of A x = b, if consistent.
    std::optional<std::vector<K>> solve(const std::vector<K>& b) const {
        assert(static_cast<int>(b.size()) == rows_);
        Mat aug(rows_, cols_ + 1);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_) = b[i];
        }
        std::vector<int> pivots;
        Mat r = aug.rref(&pivots);
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
        std::vector<K> x(cols_);
        for (size_t pi = 0; pi < pivots.size(); ++pi) x[pivots[pi]] = r(static_cast<int>(pi), cols_);
        return x;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<K> a_;
};

using QMat = Mat<Rational>;
using GMat = Mat<GaussianRational>;

template <class K>
Mat<K> scale(const Mat<K>& m, const K& s) {
    Mat<K> r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j) * s;
    return r;
}

}  // namespace mfslab
