#pragma once

#include <vector>

#include "mfcalc/rational.hpp"

namespace mfcalc {

/// Dense rational matrix, just enough for exact rank/kernel computations.
class RationalMatrix {
public:
    RationalMatrix() : rows_(0), cols_(0) {}
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int r, int c) { return data_[r * cols_ + c]; }
    const Rational& at(int r, int c) const { return data_[r * cols_ + c]; }

    /// Exact rank by fraction-free elimination: rows are cleared to integers
    /// and pivoting prefers short entries to limit growth.
    int rank() const {
        if (rows_ == 0 || cols_ == 0) return 0;
        std::vector<std::vector<Integer>> m(rows_);
        for (int i = 0; i < rows_; ++i) {
            m[i].resize(cols_);
            Integer lcm = 1;
            for (int j = 0; j < cols_; ++j) {
                const Rational& q = at(i, j);
                if (q != 0) lcm = boost::multiprecision::lcm(lcm, denominator(q));
            }
            for (int j = 0; j < cols_; ++j) {
                const Rational& q = at(i, j);
                m[i][j] = numerator(q) * (lcm / denominator(q));
            }
        }
        int rank = 0;
        int row = 0;
        for (int col = 0; col < cols_ && row < rows_; ++col) {
            int pivot = -1;
            for (int i = row; i < rows_; ++i) {
                if (m[i][col] == 0) continue;
                if (pivot < 0 || abs(m[i][col]) < abs(m[pivot][col])) pivot = i;
            }
            if (pivot < 0) continue;
            std::swap(m[row], m[pivot]);
            for (int i = row + 1; i < rows_; ++i) {
                if (m[i][col] == 0) continue;
                Integer g = boost::multiprecision::gcd(m[row][col], m[i][col]);
                Integer fr = m[i][col] / g;
                Integer fi = m[row][col] / g;
                for (int j = col; j < cols_; ++j) m[i][j] = fi * m[i][j] - fr * m[row][j];
            }
            ++row;
            ++rank;
        }
        return rank;
    }

    int kernel_dimension() const { return cols_ - rank(); }

private:
    int rows_, cols_;
    std::vector<Rational> data_;
};

} // namespace mfcalc
