#pragma once

#include <Eigen/Core>

#include <optional>
#include <vector>

#include "starpi/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<starpi::Rational> : GenericNumTraits<starpi::Rational> {
    typedef starpi::Rational Real;
    typedef starpi::Rational NonInteger;
    typedef starpi::Rational Nested;
    static inline Real epsilon() { return starpi::Rational(0); }
    static inline Real dummy_precision() { return starpi::Rational(0); }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 60,
        MulCost = 60,
    };
};

}  // namespace Eigen

namespace starpi {

using Mat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

// Reduced row echelon form by exact Gauss-Jordan elimination (first nonzero
// pivot per column; no scaling heuristics needed over Q). If pivots is given,
// it receives the pivot column of each nonzero row, in order.
template <typename Derived>
Mat rref(const Eigen::MatrixBase<Derived>& m, std::vector<Index>* pivots = nullptr) {
    Mat a = m;
    if (pivots) pivots->clear();
    Index rows = a.rows(), cols = a.cols();
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        Index piv = -1;
        for (Index i = r; i < rows; ++i) {
            if (!a(i, c).is_zero()) { piv = i; break; }
        }
        if (piv < 0) continue;
        if (piv != r) a.row(piv).swap(a.row(r));
        Rational inv = Rational(1) / a(r, c);
        for (Index j = c; j < cols; ++j) a(r, j) *= inv;
        for (Index i = 0; i < rows; ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            Rational f = a(i, c);
            for (Index j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return a;
}

template <typename Derived>
Index rank_of(const Eigen::MatrixBase<Derived>& m) {
    std::vector<Index> piv;
    rref(m, &piv);
    return static_cast<Index>(piv.size());
}

// Particular solution of m x = b (free variables set to 0), or nullopt when
// the system is inconsistent.
template <typename DerivedM, typename DerivedB>
std::optional<Vec> solve(const Eigen::MatrixBase<DerivedM>& m,
                         const Eigen::MatrixBase<DerivedB>& b) {
    if (m.rows() != b.rows()) throw Error("solve: dimension mismatch");
    Mat aug(m.rows(), m.cols() + 1);
    aug.leftCols(m.cols()) = m;
    aug.col(m.cols()) = b;
    std::vector<Index> piv;
    Mat r = rref(aug, &piv);
    for (Index p : piv) {
        if (p == m.cols()) return std::nullopt;
    }
    Vec x = Vec::Zero(m.cols());
    for (std::size_t i = 0; i < piv.size(); ++i) x(piv[i]) = r(static_cast<Index>(i), m.cols());
    return x;
}

// Basis of the null space {x : m x = 0}, returned as the rows of a matrix in
// a deterministic (free-column) normal form. Zero rows count: cols - rank.
template <typename Derived>
Mat kernel(const Eigen::MatrixBase<Derived>& m) {
    std::vector<Index> piv;
    Mat r = rref(m, &piv);
    Index cols = m.cols();
    std::vector<bool> is_piv(static_cast<std::size_t>(cols), false);
    for (Index p : piv) is_piv[static_cast<std::size_t>(p)] = true;
    std::vector<Index> free_cols;
    for (Index c = 0; c < cols; ++c) {
        if (!is_piv[static_cast<std::size_t>(c)]) free_cols.push_back(c);
    }
    Mat out = Mat::Zero(static_cast<Index>(free_cols.size()), cols);
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
        out(static_cast<Index>(f), free_cols[f]) = Rational(1);
        for (std::size_t i = 0; i < piv.size(); ++i) {
            out(static_cast<Index>(f), piv[i]) = -r(static_cast<Index>(i), free_cols[f]);
        }
    }
    return out;
}

// Trace of a square matrix; throws on non-square input.
template <typename Derived>
Rational operator_trace(const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() != m.cols()) throw Error("operator_trace: matrix not square");
    Rational t(0);
    for (Index i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

// Linear subspace of F^ambient with a canonical (RREF, full-row-rank) basis,
// making equality structural.
struct Subspace {
    Index ambient = 0;
    Mat basis;  // dim x ambient, RREF with no zero rows

    static Subspace from_rows(Index ambient, const Mat& rows);
    static Subspace zero(Index ambient) { return from_rows(ambient, Mat::Zero(0, ambient)); }

    Index dim() const { return basis.rows(); }
    bool contains(const Vec& v) const;
    bool operator==(const Subspace& o) const;
    bool operator!=(const Subspace& o) const { return !(*this == o); }
};

Subspace subspace_sum(const Subspace& u, const Subspace& v);
Subspace subspace_intersect(const Subspace& u, const Subspace& v);

}  // namespace starpi
