#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "ripscover/field.hpp"

namespace ripscover {

/// Sparse vector as (index, coefficient) pairs sorted by index, no zeros.
template <class F>
using SparseVec = std::vector<std::pair<std::size_t, F>>;

/// v <- v - c * w
template <class F>
void sub_scaled(SparseVec<F>& v, const F& c, const SparseVec<F>& w) {
    SparseVec<F> out;
    out.reserve(v.size() + w.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < v.size() || j < w.size()) {
        if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
            out.push_back(std::move(v[i++]));
        } else if (i == v.size() || w[j].first < v[i].first) {
            F t = -(c * w[j].second);
            out.emplace_back(w[j].first, std::move(t));
            ++j;
        } else {
            F t = v[i].second - c * w[j].second;
            if (!is_zero(t)) out.emplace_back(v[i].first, std::move(t));
            ++i;
            ++j;
        }
    }
    v = std::move(out);
}

/// Sorts by index, sums duplicates, drops zeros.
template <class F>
void normalize(SparseVec<F>& v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec<F> out;
    for (auto& [i, c] : v) {
        if (!out.empty() && out.back().first == i) {
            out.back().second += c;
        } else {
            if (!out.empty() && is_zero(out.back().second)) out.pop_back();
            out.emplace_back(i, c);
        }
    }
    if (!out.empty() && is_zero(out.back().second)) out.pop_back();
    v = std::move(out);
}

template <class F>
F lookup(const SparseVec<F>& v, std::size_t index) {
    auto it = std::lower_bound(v.begin(), v.end(), index, [](const auto& e, std::size_t k) { return e.first < k; });
    if (it != v.end() && it->first == index) return it->second;
    return F(0);
}

/// Dense matrix, row-major.
template <class F>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, F(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    F& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const F& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        Matrix out(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                if (is_zero(x(i, k))) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) out(i, j) += x(i, k) * y(k, j);
            }
        return out;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    std::size_t rank() const {
        Matrix m = *this;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t piv = r;
            while (piv < rows_ && is_zero(m(piv, c))) ++piv;
            if (piv == rows_) continue;
            for (std::size_t j = 0; j < cols_; ++j) std::swap(m(r, j), m(piv, j));
            for (std::size_t i = r + 1; i < rows_; ++i) {
                if (is_zero(m(i, c))) continue;
                F f = m(i, c) / m(r, c);
                for (std::size_t j = c; j < cols_; ++j) m(i, j) -= f * m(r, j);
            }
            ++r;
        }
        return r;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<F> a_;
};

}  // namespace ripscover
