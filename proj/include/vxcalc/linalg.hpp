#pragma once

// Dense rational matrices and exact kernel computation (fraction-free is not
// needed at desk scale; plain Gaussian elimination over Q is exact).

#include "vxcalc/scalar.hpp"

#include <vector>

namespace vxcalc {

class RationalMatrix {
public:
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
        std::vector<Scalar> out(rows_, Scalar(0));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (!at(r, c).is_zero() && !v[c].is_zero()) out[r] += at(r, c) * v[c];
        return out;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Scalar> data_;
};

struct Rref {
    RationalMatrix mat;
    std::vector<std::size_t> pivot_cols;  // ascending
};

inline Rref rref(RationalMatrix m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && m.at(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(row, c), m.at(piv, c));
        Scalar inv = Scalar(1) / m.at(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            Scalar f = m.at(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                m.at(r, c) -= f * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const RationalMatrix& m) { return rref(m).pivot_cols.size(); }

// Basis of the right kernel {v : Mv = 0}; one vector per free column,
// with a 1 in the free coordinate.
inline std::vector<std::vector<Scalar>> kernel_basis(const RationalMatrix& m) {
    Rref r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : r.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(m.cols(), Scalar(0));
        v[free] = Scalar(1);
        for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
            v[r.pivot_cols[i]] = -r.mat.at(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Deterministic decomposition b = A u + r where r vanishes on the pivot
// rows of A and free variables of u are set to zero. r = 0 iff b lies in
// the column span of A.
struct SolveResult {
    std::vector<Scalar> solution;  // u
    std::vector<Scalar> residual;  // b - A u
};

inline SolveResult solve_decompose(const RationalMatrix& a, const std::vector<Scalar>& b) {
    RationalMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    // Row-reduce, pivoting only on the A-columns.
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < aug.rows(); ++col) {
        std::size_t piv = row;
        while (piv < aug.rows() && aug.at(piv, col).is_zero()) ++piv;
        if (piv == aug.rows()) continue;
        if (piv != row)
            for (std::size_t c = 0; c < aug.cols(); ++c) std::swap(aug.at(row, c), aug.at(piv, c));
        Scalar inv = Scalar(1) / aug.at(row, col);
        for (std::size_t c = col; c < aug.cols(); ++c) aug.at(row, c) *= inv;
        for (std::size_t r = 0; r < aug.rows(); ++r) {
            if (r == row || aug.at(r, col).is_zero()) continue;
            Scalar f = aug.at(r, col);
            for (std::size_t c = col; c < aug.cols(); ++c) aug.at(r, c) -= f * aug.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    SolveResult res;
    res.solution.assign(a.cols(), Scalar(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) res.solution[pivots[i]] = aug.at(i, a.cols());
    std::vector<Scalar> au = a.apply(res.solution);
    res.residual.resize(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) res.residual[r] = b[r] - au[r];
    return res;
}

}  // namespace vxcalc
