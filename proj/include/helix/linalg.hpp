/// @file linalg.hpp
/// Dense exact-rational matrices and the elimination routines the quiver
/// and root-system modules are built on. Sizes stay small (tens of rows),
/// so plain Gaussian elimination over Rat is the whole story.

#pragma once

#include "helix/numeric.hpp"

#include <cassert>
#include <initializer_list>

namespace helix {

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    RatMatrix(std::initializer_list<std::initializer_list<Rat>> init)
    {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            assert(row.size() == cols_);
            for (const auto& x : row)
                data_.push_back(x);
        }
    }

    static RatMatrix identity(std::size_t n)
    {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool operator==(const RatMatrix& o) const = default;

    bool is_zero() const
    {
        for (const auto& x : data_)
            if (x != 0)
                return false;
        return true;
    }

    RatMatrix operator*(const RatMatrix& o) const
    {
        assert(cols_ == o.rows_);
        RatMatrix out(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rat& a = (*this)(i, k);
                if (a == 0)
                    continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    out(i, j) += a * o(k, j);
            }
        return out;
    }

    RatMatrix operator+(const RatMatrix& o) const
    {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        RatMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i)
            out.data_[i] = data_[i] + o.data_[i];
        return out;
    }

    RatMatrix operator-(const RatMatrix& o) const
    {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        RatMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i)
            out.data_[i] = data_[i] - o.data_[i];
        return out;
    }

    RatMatrix scaled(const Rat& c) const
    {
        RatMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i)
            out.data_[i] = data_[i] * c;
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

/// Row echelon reduction in place; returns pivot column indices.
inline std::vector<std::size_t> rref(RatMatrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && m(piv, col) == 0)
            ++piv;
        if (piv == m.rows())
            continue;
        if (piv != row)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(piv, j), m(row, j));
        Rat inv = Rat(1) / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j)
            m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0)
                continue;
            Rat f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(RatMatrix m) { return rref(m).size(); }

/// Basis of the right null space, one column vector per basis element.
inline std::vector<std::vector<Rat>> kernel_basis(RatMatrix m)
{
    const std::size_t n = m.cols();
    auto pivots = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots)
        is_pivot[p] = true;

    std::vector<std::vector<Rat>> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<Rat> v(n);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solves C v = 0 over the integers for a corank-1 integer matrix; returns
/// the primitive generator scaled to positive entries, or empty if the
/// kernel is not one-dimensional.
inline IntVec integer_kernel_primitive(const std::vector<IntVec>& c)
{
    const std::size_t n = c.size();
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = Rat(c[i][j]);
    auto basis = kernel_basis(std::move(m));
    if (basis.size() != 1)
        return {};
    Int lcm = 1;
    for (const auto& x : basis[0]) {
        Int d = boost::multiprecision::denominator(x);
        lcm = lcm / int_gcd(lcm, d) * d;
    }
    IntVec v(n);
    Int g = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Rat scaled = basis[0][i] * Rat(lcm);
        v[i] = boost::multiprecision::numerator(scaled);
        g = int_gcd(g, v[i]);
    }
    if (g != 0)
        for (auto& x : v)
            x /= g;
    bool neg = false, pos = false;
    for (const auto& x : v)
        (x < 0 ? neg : pos) = true;
    if (neg && !pos)
        for (auto& x : v)
            x = -x;
    for (const auto& x : v)
        if (x <= 0)
            return {};
    return v;
}

} // namespace helix
