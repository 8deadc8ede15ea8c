#include "starpi/linalg.hpp"

namespace starpi {

Subspace Subspace::from_rows(Index ambient, const Mat& rows) {
    if (rows.cols() != ambient && rows.rows() > 0)
        throw Error("Subspace: row width does not match ambient dimension");
    Subspace s;
    s.ambient = ambient;
    if (rows.rows() == 0) {
        s.basis = Mat::Zero(0, ambient);
        return s;
    }
    std::vector<Index> piv;
    Mat r = rref(rows, &piv);
    s.basis = r.topRows(static_cast<Index>(piv.size()));
    return s;
}

bool Subspace::contains(const Vec& v) const {
    if (v.rows() != ambient) throw Error("Subspace::contains: dimension mismatch");
    // reduce v against the RREF basis
    Vec w = v;
    for (Index i = 0; i < basis.rows(); ++i) {
        Index lead = -1;
        for (Index c = 0; c < ambient; ++c) {
            if (!basis(i, c).is_zero()) { lead = c; break; }
        }
        if (lead < 0) continue;
        if (!w(lead).is_zero()) {
            Rational f = w(lead);
            for (Index c = 0; c < ambient; ++c) w(c) -= f * basis(i, c);
        }
    }
    for (Index c = 0; c < ambient; ++c) {
        if (!w(c).is_zero()) return false;
    }
    return true;
}

bool Subspace::operator==(const Subspace& o) const {
    if (ambient != o.ambient || dim() != o.dim()) return false;
    return basis == o.basis;
}

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
    if (u.ambient != v.ambient) throw Error("subspace_sum: ambient mismatch");
    Mat stacked(u.dim() + v.dim(), u.ambient);
    stacked.topRows(u.dim()) = u.basis;
    stacked.bottomRows(v.dim()) = v.basis;
    return Subspace::from_rows(u.ambient, stacked);
}

Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
    if (u.ambient != v.ambient) throw Error("subspace_intersect: ambient mismatch");
    // Zassenhaus: rref of [U U; V 0]; rows with zero left half carry an
    // intersection basis in their right half.
    Index n = u.ambient;
    Mat block = Mat::Zero(u.dim() + v.dim(), 2 * n);
    block.topLeftCorner(u.dim(), n) = u.basis;
    block.block(0, n, u.dim(), n) = u.basis;
    block.block(u.dim(), 0, v.dim(), n) = v.basis;
    Mat r = rref(block);
    std::vector<Index> inter_rows;
    for (Index i = 0; i < r.rows(); ++i) {
        bool left_zero = true, right_zero = true;
        for (Index c = 0; c < n && left_zero; ++c) {
            if (!r(i, c).is_zero()) left_zero = false;
        }
        if (!left_zero) continue;
        for (Index c = n; c < 2 * n && right_zero; ++c) {
            if (!r(i, c).is_zero()) right_zero = false;
        }
        if (!right_zero) inter_rows.push_back(i);
    }
    Mat rows(static_cast<Index>(inter_rows.size()), n);
    for (std::size_t k = 0; k < inter_rows.size(); ++k) {
        rows.row(static_cast<Index>(k)) = r.block(inter_rows[k], n, 1, n);
    }
    return Subspace::from_rows(n, rows);
}

}  // namespace starpi
