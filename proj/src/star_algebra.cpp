#include "starpi/star_algebra.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace starpi {

std::string kind_name(BlockKind k) {
    switch (k) {
        case BlockKind::Transpose: return "transpose";
        case BlockKind::Symplectic: return "symplectic";
        case BlockKind::Exchange: return "exchange";
    }
    return "?";
}

std::optional<BlockKind> kind_from_name(const std::string& s) {
    if (s == "transpose") return BlockKind::Transpose;
    if (s == "symplectic") return BlockKind::Symplectic;
    if (s == "exchange") return BlockKind::Exchange;
    return std::nullopt;
}

Index block_dim(const BlockSpec& spec) {
    if (spec.k < 1) throw Error("block: size must be positive");
    if (spec.kind == BlockKind::Symplectic && spec.k % 2 != 0)
        throw Error("block: symplectic size must be even");
    Index kk = static_cast<Index>(spec.k) * spec.k;
    return spec.kind == BlockKind::Exchange ? 2 * kk : kk;
}

Vec multiply(const StarAlgebra& A, const Vec& a, const Vec& b) {
    if (a.rows() != A.n || b.rows() != A.n) throw Error("multiply: dimension mismatch");
    Vec out = Vec::Zero(A.n);
    for (Index i = 0; i < A.n; ++i) {
        if (a(i).is_zero()) continue;
        for (Index j = 0; j < A.n; ++j) {
            if (b(j).is_zero()) continue;
            Rational c = a(i) * b(j);
            const Vec& m = A.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            for (Index r = 0; r < A.n; ++r) {
                if (!m(r).is_zero()) out(r) += c * m(r);
            }
        }
    }
    return out;
}

Vec involute(const StarAlgebra& A, const Vec& a) {
    if (a.rows() != A.n) throw Error("involute: dimension mismatch");
    return A.invol * a;
}

std::pair<Vec, Vec> split_pm(const StarAlgebra& A, const Vec& a) {
    Vec s = involute(A, a);
    Rational half(1, 2);
    Vec plus = (a + s) * half;
    Vec minus = (a - s) * half;
    return {plus, minus};
}

Vec basis_vec(const StarAlgebra& A, Index i) {
    Vec v = Vec::Zero(A.n);
    v(i) = Rational(1);
    return v;
}

Mat left_mult_matrix(const StarAlgebra& A, const Vec& a) {
    Mat out(A.n, A.n);
    for (Index j = 0; j < A.n; ++j) out.col(j) = multiply(A, a, basis_vec(A, j));
    return out;
}

// --- block tables -------------------------------------------------------------

namespace {

// Within-block unit layout: row-major (i,j), 1-based; exchange appends the
// second copy after the first k^2 columns.
Index unit_col(const BlockSpec& s, int i, int j, int copy = 0) {
    Index k = s.k;
    return (copy == 1 ? k * k : 0) + static_cast<Index>(i - 1) * k + (j - 1);
}

struct UnitPos {
    int i, j, copy;
};

UnitPos decode_unit(const BlockSpec& s, Index col) {
    Index kk = static_cast<Index>(s.k) * s.k;
    int copy = 0;
    if (s.kind == BlockKind::Exchange && col >= kk) {
        copy = 1;
        col -= kk;
    }
    return {static_cast<int>(col / s.k) + 1, static_cast<int>(col % s.k) + 1, copy};
}

// e_c1 * e_c2 inside one block: at most one unit with coefficient 1.
std::optional<Index> block_unit_product(const BlockSpec& s, Index c1, Index c2) {
    UnitPos a = decode_unit(s, c1), b = decode_unit(s, c2);
    if (s.kind != BlockKind::Exchange) {
        if (a.j == b.i) return unit_col(s, a.i, b.j);
        return std::nullopt;
    }
    if (a.copy != b.copy) return std::nullopt;
    if (a.copy == 0) {
        if (a.j == b.i) return unit_col(s, a.i, b.j, 0);
        return std::nullopt;
    }
    // opposite multiplication: (0,E_a)(0,E_b) = (0, E_b E_a)
    if (b.j == a.i) return unit_col(s, b.i, a.j, 1);
    return std::nullopt;
}

// sigma(e_c) as signed unit columns.
std::vector<std::pair<Index, Rational>> block_unit_sigma(const BlockSpec& s, Index c) {
    UnitPos u = decode_unit(s, c);
    switch (s.kind) {
        case BlockKind::Transpose:
            return {{unit_col(s, u.j, u.i), Rational(1)}};
        case BlockKind::Exchange:
            return {{unit_col(s, u.i, u.j, 1 - u.copy), Rational(1)}};
        case BlockKind::Symplectic: {
            int h = s.k / 2;
            bool itop = u.i <= h, jtop = u.j <= h;
            if (itop && jtop) return {{unit_col(s, h + u.j, h + u.i), Rational(1)}};
            if (itop && !jtop) return {{unit_col(s, u.j - h, h + u.i), Rational(-1)}};
            if (!itop && jtop) return {{unit_col(s, h + u.j, u.i - h), Rational(-1)}};
            return {{unit_col(s, u.j - h, u.i - h), Rational(1)}};
        }
    }
    return {};
}

std::string unit_name(const BlockSpec& s, Index col) {
    UnitPos u = decode_unit(s, col);
    std::string sep = s.k > 9 ? "_" : "";
    std::string e = "E" + std::to_string(u.i) + sep + std::to_string(u.j);
    if (s.kind != BlockKind::Exchange) return e;
    return u.copy == 0 ? e + "|0" : "0|" + e;
}

void fill_block(StarAlgebra& A, const BlockSpec& spec, Index offset, const std::string& prefix) {
    Index d = block_dim(spec);
    for (Index c = 0; c < d; ++c) {
        A.basis_names[static_cast<std::size_t>(offset + c)] = prefix + unit_name(spec, c);
        for (auto [img, coeff] : block_unit_sigma(spec, c)) {
            A.invol(offset + img, offset + c) = coeff;
        }
    }
    for (Index c1 = 0; c1 < d; ++c1) {
        for (Index c2 = 0; c2 < d; ++c2) {
            if (auto r = block_unit_product(spec, c1, c2)) {
                A.mult[static_cast<std::size_t>(offset + c1)][static_cast<std::size_t>(offset + c2)](offset + *r) =
                    Rational(1);
            }
        }
    }
}

Vec block_idempotent(const BlockSpec& spec, const Mat& units) {
    Vec e = Vec::Zero(units.rows());
    for (int i = 1; i <= spec.k; ++i) {
        e += units.col(unit_col(spec, i, i));
        if (spec.kind == BlockKind::Exchange) e += units.col(unit_col(spec, i, i, 1));
    }
    return e;
}

bool vec_is_zero(const Vec& v) {
    for (Index i = 0; i < v.rows(); ++i) {
        if (!v(i).is_zero()) return false;
    }
    return true;
}

bool rows_increase_rank(Mat& acc, const Vec& v) {
    Mat trial(acc.rows() + 1, v.rows());
    if (acc.rows() > 0) trial.topRows(acc.rows()) = acc;
    trial.row(acc.rows()) = v.transpose();
    if (rank_of(trial) > rank_of(acc)) {
        acc = rref(trial).topRows(rank_of(trial));
        return true;
    }
    return false;
}

}  // namespace

void finalize_wm(StarAlgebra& A) {
    if (!A.wm) throw Error("finalize_wm: no Wedderburn data");
    WedderburnData& wm = *A.wm;
    wm.d0.clear();
    wm.d1.clear();
    wm.u0.clear();
    wm.u1.clear();
    for (int l = 1; l <= wm.p(); ++l) {
        const BlockSpec& s = wm.blocks[static_cast<std::size_t>(l - 1)];
        const Mat& U = wm.units[static_cast<std::size_t>(l - 1)];
        auto E = [&](int i, int j, int copy = 0) -> Vec { return U.col(unit_col(s, i, j, copy)); };
        auto push = [&](std::vector<BasisElem>& dst, const Vec& v) {
            dst.push_back(BasisElem{v, l, 0, 0});
        };
        switch (s.kind) {
            case BlockKind::Transpose:
                for (int i = 1; i <= s.k; ++i) {
                    for (int j = i; j <= s.k; ++j) {
                        push(wm.d0, i == j ? E(i, i) : Vec(E(i, j) + E(j, i)));
                    }
                }
                for (int i = 1; i <= s.k; ++i) {
                    for (int j = i + 1; j <= s.k; ++j) {
                        push(wm.d1, Vec(E(i, j) - E(j, i)));
                    }
                }
                break;
            case BlockKind::Symplectic: {
                int h = s.k / 2;
                for (int i = 1; i <= h; ++i) {
                    for (int j = 1; j <= h; ++j) {
                        push(wm.d0, Vec(E(i, j) + E(h + j, h + i)));
                    }
                }
                for (int i = 1; i <= h; ++i) {
                    for (int j = i + 1; j <= h; ++j) {
                        push(wm.d0, Vec(E(i, h + j) - E(j, h + i)));
                        push(wm.d0, Vec(E(h + i, j) - E(h + j, i)));
                    }
                }
                for (int i = 1; i <= h; ++i) {
                    for (int j = 1; j <= h; ++j) {
                        push(wm.d1, Vec(E(i, j) - E(h + j, h + i)));
                    }
                }
                for (int i = 1; i <= h; ++i) {
                    for (int j = i; j <= h; ++j) {
                        push(wm.d1, i == j ? E(i, h + i) : Vec(E(i, h + j) + E(j, h + i)));
                        push(wm.d1, i == j ? E(h + i, i) : Vec(E(h + i, j) + E(h + j, i)));
                    }
                }
                break;
            }
            case BlockKind::Exchange:
                for (int i = 1; i <= s.k; ++i) {
                    for (int j = 1; j <= s.k; ++j) {
                        push(wm.d0, Vec(E(i, j, 0) + E(i, j, 1)));
                    }
                }
                for (int i = 1; i <= s.k; ++i) {
                    for (int j = 1; j <= s.k; ++j) {
                        push(wm.d1, Vec(E(i, j, 0) - E(i, j, 1)));
                    }
                }
                break;
        }
    }
    Rational half(1, 2);
    Mat acc0(0, A.n), acc1(0, A.n);
    for (Index m = 0; m < wm.radical.cols(); ++m) {
        Vec r = wm.radical.col(m);
        auto [l1, l2] = wm.peirce_labels[static_cast<std::size_t>(m)];
        int lo = std::min(l1, l2), hi = std::max(l1, l2);
        Vec rs = involute(A, r);
        Vec plus = (r + rs) * half;
        Vec minus = (r - rs) * half;
        if (!vec_is_zero(plus) && rows_increase_rank(acc0, plus)) {
            wm.u0.push_back(BasisElem{plus, 0, lo, hi});
        }
        if (!vec_is_zero(minus) && rows_increase_rank(acc1, minus)) {
            wm.u1.push_back(BasisElem{minus, 0, lo, hi});
        }
    }
    if (static_cast<Index>(wm.u0.size() + wm.u1.size()) != wm.radical.cols())
        throw Error("finalize_wm: radical symmetrization does not span");
}

// --- constructions -----------------------------------------------------------

StarAlgebra build_star_simple(const BlockSpec& spec) {
    Index n = block_dim(spec);
    StarAlgebra A;
    A.n = n;
    A.basis_names.resize(static_cast<std::size_t>(n));
    A.mult.assign(static_cast<std::size_t>(n),
                  std::vector<Vec>(static_cast<std::size_t>(n), Vec::Zero(n)));
    A.invol = Mat::Zero(n, n);
    fill_block(A, spec, 0, "");

    WedderburnData wm;
    wm.blocks = {spec};
    Mat U(n, n);
    for (Index c = 0; c < n; ++c) U.col(c) = basis_vec(A, c);
    wm.units = {U};
    wm.radical = Mat::Zero(n, 0);
    wm.idempotents = {block_idempotent(spec, U)};
    A.wm = wm;
    A.unit = wm.idempotents[0];
    finalize_wm(A);
    return A;
}

StarAlgebra assemble(const std::vector<BlockSpec>& blocks,
                     Index radical_dim,
                     const std::vector<MultTriple>& radical_mult,
                     const Mat& radical_invol,
                     const std::vector<std::pair<int, int>>& peirce_labels) {
    Index nB = 0;
    for (const BlockSpec& b : blocks) nB += block_dim(b);
    if (radical_dim < 0) throw Error("assemble: negative radical dimension");
    if (radical_invol.rows() != radical_dim || radical_invol.cols() != radical_dim)
        throw Error("assemble: radical involution must be q x q");
    if (static_cast<Index>(peirce_labels.size()) != radical_dim)
        throw Error("assemble: one Peirce label per radical basis element required");
    Index n = nB + radical_dim;
    int p = static_cast<int>(blocks.size());

    StarAlgebra A;
    A.n = n;
    A.basis_names.resize(static_cast<std::size_t>(n));
    A.mult.assign(static_cast<std::size_t>(n),
                  std::vector<Vec>(static_cast<std::size_t>(n), Vec::Zero(n)));
    A.invol = Mat::Zero(n, n);

    Index offset = 0;
    WedderburnData wm;
    wm.blocks = blocks;
    for (int l = 1; l <= p; ++l) {
        const BlockSpec& spec = blocks[static_cast<std::size_t>(l - 1)];
        std::string prefix = p >= 2 ? "C" + std::to_string(l) + ":" : "";
        fill_block(A, spec, offset, prefix);
        Index d = block_dim(spec);
        Mat U(n, d);
        for (Index c = 0; c < d; ++c) U.col(c) = basis_vec(A, offset + c);
        wm.units.push_back(U);
        wm.idempotents.push_back(block_idempotent(spec, U));
        offset += d;
    }
    for (Index m = 0; m < radical_dim; ++m) {
        A.basis_names[static_cast<std::size_t>(nB + m)] = "r" + std::to_string(m + 1);
    }
    for (const MultTriple& t : radical_mult) {
        if (t.i < 0 || t.i >= n || t.j < 0 || t.j >= n || t.k < 0 || t.k >= n)
            throw Error("assemble: structure constant index out of range");
        if (t.i < nB && t.j < nB)
            throw Error("assemble: radical_mult entries must involve a radical element");
        if (t.k < nB)
            throw Error("assemble: products involving the radical must land in the radical");
        A.mult[static_cast<std::size_t>(t.i)][static_cast<std::size_t>(t.j)](t.k) += t.c;
    }
    A.invol.block(nB, nB, radical_dim, radical_dim) = radical_invol;

    wm.radical = Mat::Zero(n, radical_dim);
    for (Index m = 0; m < radical_dim; ++m) wm.radical.col(m) = basis_vec(A, nB + m);
    for (auto [l1, l2] : peirce_labels) {
        if (l1 < 1 || l1 > p + 1 || l2 < 1 || l2 > p + 1)
            throw Error("assemble: Peirce label out of range");
    }
    wm.peirce_labels = peirce_labels;
    A.wm = wm;

    // two-sided unit, when the idempotents already provide one
    Vec u = Vec::Zero(n);
    for (const Vec& e : A.wm->idempotents) u += e;
    bool is_unit = true;
    for (Index i = 0; i < n && is_unit; ++i) {
        Vec e = basis_vec(A, i);
        if (multiply(A, u, e) != e || multiply(A, e, u) != e) is_unit = false;
    }
    if (is_unit && n > 0) A.unit = u;

    finalize_wm(A);
    validate(A);
    return A;
}

StarAlgebra direct_product(const StarAlgebra& A, const StarAlgebra& B) {
    StarAlgebra P;
    P.n = A.n + B.n;
    P.basis_names = A.basis_names;
    std::set<std::string> used(A.basis_names.begin(), A.basis_names.end());
    for (const std::string& s : B.basis_names) {
        std::string name = s;
        while (used.count(name)) name += "'";
        used.insert(name);
        P.basis_names.push_back(name);
    }
    P.mult.assign(static_cast<std::size_t>(P.n),
                  std::vector<Vec>(static_cast<std::size_t>(P.n), Vec::Zero(P.n)));
    for (Index i = 0; i < A.n; ++i) {
        for (Index j = 0; j < A.n; ++j) {
            P.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].head(A.n) =
                A.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    for (Index i = 0; i < B.n; ++i) {
        for (Index j = 0; j < B.n; ++j) {
            P.mult[static_cast<std::size_t>(A.n + i)][static_cast<std::size_t>(A.n + j)].tail(B.n) =
                B.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    P.invol = Mat::Zero(P.n, P.n);
    P.invol.topLeftCorner(A.n, A.n) = A.invol;
    P.invol.bottomRightCorner(B.n, B.n) = B.invol;
    if (A.unit && B.unit) {
        Vec u = Vec::Zero(P.n);
        u.head(A.n) = *A.unit;
        u.tail(B.n) = *B.unit;
        P.unit = u;
    }
    if (A.wm && B.wm) {
        WedderburnData wm;
        wm.blocks = A.wm->blocks;
        wm.blocks.insert(wm.blocks.end(), B.wm->blocks.begin(), B.wm->blocks.end());
        int pA = A.wm->p(), pB = B.wm->p();
        auto embed_top = [&](const Vec& v) {
            Vec w = Vec::Zero(P.n);
            w.head(A.n) = v;
            return w;
        };
        auto embed_bot = [&](const Vec& v) {
            Vec w = Vec::Zero(P.n);
            w.tail(B.n) = v;
            return w;
        };
        for (const Mat& U : A.wm->units) {
            Mat W = Mat::Zero(P.n, U.cols());
            W.topRows(A.n) = U;
            wm.units.push_back(W);
        }
        for (const Mat& U : B.wm->units) {
            Mat W = Mat::Zero(P.n, U.cols());
            W.bottomRows(B.n) = U;
            wm.units.push_back(W);
        }
        for (const Vec& e : A.wm->idempotents) wm.idempotents.push_back(embed_top(e));
        for (const Vec& e : B.wm->idempotents) wm.idempotents.push_back(embed_bot(e));
        wm.radical = Mat::Zero(P.n, A.wm->radical.cols() + B.wm->radical.cols());
        for (Index m = 0; m < A.wm->radical.cols(); ++m)
            wm.radical.col(m) = embed_top(A.wm->radical.col(m));
        for (Index m = 0; m < B.wm->radical.cols(); ++m)
            wm.radical.col(A.wm->radical.cols() + m) = embed_bot(B.wm->radical.col(m));
        int adj = pA + pB + 1;
        for (auto [l1, l2] : A.wm->peirce_labels) {
            wm.peirce_labels.emplace_back(l1 == pA + 1 ? adj : l1, l2 == pA + 1 ? adj : l2);
        }
        for (auto [l1, l2] : B.wm->peirce_labels) {
            wm.peirce_labels.emplace_back(l1 == pB + 1 ? adj : pA + l1,
                                          l2 == pB + 1 ? adj : pA + l2);
        }
        P.wm = wm;
        finalize_wm(P);
    }
    return P;
}

StarAlgebra ut_star_algebra(int n) {
    if (n < 1) throw Error("ut_star_algebra: size must be positive");
    int pairs = n / 2;
    bool odd = (n % 2) != 0;
    std::vector<BlockSpec> blocks;
    for (int l = 0; l < pairs; ++l) blocks.push_back(BlockSpec{BlockKind::Exchange, 1});
    if (odd) blocks.push_back(BlockSpec{BlockKind::Transpose, 1});

    auto blk = [&](int d) { return std::min(d, n + 1 - d); };
    auto diag_index = [&](int d) -> Index {
        if (d <= pairs) return 2 * (d - 1);
        if (n + 1 - d <= pairs) return 2 * (n - d) + 1;
        return 2 * pairs;
    };
    auto upper_offset = [&](int i, int j) -> Index {
        Index off = 0;
        for (int r = 1; r < i; ++r) off += n - r;
        return off + (j - i - 1);
    };
    Index nB = n;
    Index q = static_cast<Index>(n) * (n - 1) / 2;
    auto global_index = [&](int i, int j) -> Index {
        return i == j ? diag_index(i) : nB + upper_offset(i, j);
    };

    std::vector<MultTriple> triples;
    for (int i1 = 1; i1 <= n; ++i1) {
        for (int j1 = i1; j1 <= n; ++j1) {
            for (int j2 = j1; j2 <= n; ++j2) {
                if (i1 == j1 && j1 == j2) continue;
                triples.push_back(MultTriple{global_index(i1, j1), global_index(j1, j2),
                                             global_index(i1, j2), Rational(1)});
            }
        }
    }

    Mat rinv = Mat::Zero(q, q);
    std::vector<std::pair<int, int>> labels;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            rinv(upper_offset(n + 1 - j, n + 1 - i), upper_offset(i, j)) = Rational(1);
            labels.emplace_back(blk(i), blk(j));
        }
    }

    StarAlgebra A = assemble(blocks, q, triples, rinv, labels);
    for (int i = 1; i <= n; ++i) {
        for (int j = i; j <= n; ++j) {
            A.basis_names[static_cast<std::size_t>(global_index(i, j))] =
                "E" + std::to_string(i) + std::to_string(j);
        }
    }
    return A;
}

StarAlgebra adjoin_unit(const StarAlgebra& A) {
    StarAlgebra U;
    U.n = A.n + 1;
    U.basis_names = A.basis_names;
    U.basis_names.push_back("1");
    U.mult.assign(static_cast<std::size_t>(U.n),
                  std::vector<Vec>(static_cast<std::size_t>(U.n), Vec::Zero(U.n)));
    for (Index i = 0; i < A.n; ++i) {
        for (Index j = 0; j < A.n; ++j) {
            U.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].head(A.n) =
                A.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    for (Index i = 0; i < U.n; ++i) {
        U.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(A.n)] = basis_vec(U, i);
        U.mult[static_cast<std::size_t>(A.n)][static_cast<std::size_t>(i)] = basis_vec(U, i);
    }
    U.invol = Mat::Zero(U.n, U.n);
    U.invol.topLeftCorner(A.n, A.n) = A.invol;
    U.invol(A.n, A.n) = Rational(1);
    U.unit = basis_vec(U, A.n);

    if (A.wm) {
        WedderburnData wm;
        wm.blocks = A.wm->blocks;
        wm.blocks.push_back(BlockSpec{BlockKind::Transpose, 1});
        auto embed = [&](const Vec& v) {
            Vec w = Vec::Zero(U.n);
            w.head(A.n) = v;
            return w;
        };
        for (const Mat& M : A.wm->units) {
            Mat W = Mat::Zero(U.n, M.cols());
            W.topRows(A.n) = M;
            wm.units.push_back(W);
        }
        Vec newblock = *U.unit;
        for (const Vec& e : A.wm->idempotents) newblock -= embed(e);
        Mat W1 = Mat::Zero(U.n, 1);
        W1.col(0) = newblock;
        wm.units.push_back(W1);
        for (const Vec& e : A.wm->idempotents) wm.idempotents.push_back(embed(e));
        wm.idempotents.push_back(newblock);
        wm.radical = Mat::Zero(U.n, A.wm->radical.cols());
        for (Index m = 0; m < A.wm->radical.cols(); ++m)
            wm.radical.col(m) = embed(A.wm->radical.col(m));
        // the old adjoint index p+1 now names the new block, whose idempotent
        // is exactly 1 - sum(eps); labels carry over verbatim
        wm.peirce_labels = A.wm->peirce_labels;
        U.wm = wm;
        finalize_wm(U);
    }
    return U;
}

// --- structure ----------------------------------------------------------------

namespace {

Subspace product_span(const StarAlgebra& A, const Subspace& u, const Subspace& v) {
    Mat rows(u.dim() * v.dim(), A.n);
    Index r = 0;
    for (Index i = 0; i < u.dim(); ++i) {
        for (Index j = 0; j < v.dim(); ++j) {
            rows.row(r++) = multiply(A, u.basis.row(i).transpose(), v.basis.row(j).transpose()).transpose();
        }
    }
    return Subspace::from_rows(A.n, rows);
}

int nilpotency_of(const StarAlgebra& A, const Subspace& J) {
    Subspace cur = J;
    int s = 1;
    while (cur.dim() > 0) {
        cur = product_span(A, cur, J);
        ++s;
        if (s > A.n + 1) throw Error("nilpotency: subspace is not nilpotent");
    }
    return s;
}

}  // namespace

Subspace jacobson_radical(const StarAlgebra& A) {
    // Tvec[k] = Tr(L_{e_k}); Gram(b,i) = Tr(L_{e_i e_b})
    std::vector<Rational> tvec(static_cast<std::size_t>(A.n), Rational(0));
    for (Index k = 0; k < A.n; ++k) {
        Rational t(0);
        for (Index j = 0; j < A.n; ++j)
            t += A.mult[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)](j);
        tvec[static_cast<std::size_t>(k)] = t;
    }
    Mat G(A.n, A.n);
    for (Index b = 0; b < A.n; ++b) {
        for (Index i = 0; i < A.n; ++i) {
            const Vec& prod = A.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)];
            Rational g(0);
            for (Index k = 0; k < A.n; ++k) {
                if (!prod(k).is_zero()) g += prod(k) * tvec[static_cast<std::size_t>(k)];
            }
            G(b, i) = g;
        }
    }
    Subspace R = Subspace::from_rows(A.n, kernel(G));
    // verification: two-sided ideal, nilpotent
    for (Index r = 0; r < R.dim(); ++r) {
        Vec v = R.basis.row(r).transpose();
        for (Index i = 0; i < A.n; ++i) {
            Vec e = basis_vec(A, i);
            if (!R.contains(multiply(A, e, v)) || !R.contains(multiply(A, v, e)))
                throw Error("jacobson_radical: candidate is not an ideal");
        }
    }
    nilpotency_of(A, R);
    return R;
}

Subspace semisimple_subspace(const StarAlgebra& A) {
    if (!A.wm) throw Error("semisimple_subspace: no Wedderburn data");
    Index total = 0;
    for (const Mat& U : A.wm->units) total += U.cols();
    Mat rows(total, A.n);
    Index r = 0;
    for (const Mat& U : A.wm->units) {
        for (Index c = 0; c < U.cols(); ++c) rows.row(r++) = U.col(c).transpose();
    }
    return Subspace::from_rows(A.n, rows);
}

Subspace radical_subspace(const StarAlgebra& A) {
    if (!A.wm) throw Error("radical_subspace: no Wedderburn data");
    return Subspace::from_rows(A.n, A.wm->radical.transpose());
}

int nilpotency_class(const StarAlgebra& A) {
    Subspace J = A.wm ? radical_subspace(A) : jacobson_radical(A);
    return nilpotency_of(A, J);
}

std::pair<int, int> dims_star(const StarAlgebra& A) {
    if (!A.wm) throw Error("dims_star: no Wedderburn data");
    return {static_cast<int>(A.wm->d0.size()), static_cast<int>(A.wm->d1.size())};
}

ParStar par_star(const StarAlgebra& A) {
    auto [t1, t2] = dims_star(A);
    ParStar p;
    p.t1 = t1;
    p.t2 = t2;
    p.nd = nilpotency_class(A);
    p.dim_radical = A.wm->radical.cols();
    return p;
}

ParStar cpar_star(const StarAlgebra& A) { return par_star(A); }

Vec peirce_project(const StarAlgebra& A, int l1, int l2, const Vec& v) {
    if (!A.wm) throw Error("peirce: no Wedderburn data");
    int p = A.wm->p();
    if (l1 < 1 || l1 > p + 1 || l2 < 1 || l2 > p + 1) throw Error("peirce: label out of range");
    auto left = [&](int l, const Vec& w) {
        if (l <= p) return multiply(A, A.wm->idempotents[static_cast<std::size_t>(l - 1)], w);
        Vec out = w;
        for (const Vec& e : A.wm->idempotents) out -= multiply(A, e, w);
        return out;
    };
    auto right = [&](int l, const Vec& w) {
        if (l <= p) return multiply(A, w, A.wm->idempotents[static_cast<std::size_t>(l - 1)]);
        Vec out = w;
        for (const Vec& e : A.wm->idempotents) out -= multiply(A, w, e);
        return out;
    };
    return right(l2, left(l1, v));
}

Subspace peirce(const StarAlgebra& A, int l1, int l2) {
    if (!A.wm) throw Error("peirce: no Wedderburn data");
    Mat rows(A.wm->radical.cols(), A.n);
    for (Index m = 0; m < A.wm->radical.cols(); ++m) {
        rows.row(m) = peirce_project(A, l1, l2, A.wm->radical.col(m)).transpose();
    }
    return Subspace::from_rows(A.n, rows);
}

// --- validation ----------------------------------------------------------------

namespace {

bool vec_eq(const Vec& a, const Vec& b) {
    if (a.rows() != b.rows()) return false;
    for (Index i = 0; i < a.rows(); ++i) {
        if (a(i) != b(i)) return false;
    }
    return true;
}

bool is_identity_mat(const Mat& m) {
    if (m.rows() != m.cols()) return false;
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (m(i, j) != Rational(i == j ? 1 : 0)) return false;
        }
    }
    return true;
}

}  // namespace

void validate(const StarAlgebra& A) {
    if (static_cast<Index>(A.basis_names.size()) != A.n)
        throw Error("validate: basis name count mismatch");
    if (static_cast<Index>(A.mult.size()) != A.n) throw Error("validate: mult table rows");
    for (const auto& row : A.mult) {
        if (static_cast<Index>(row.size()) != A.n) throw Error("validate: mult table cols");
        for (const Vec& v : row) {
            if (v.rows() != A.n) throw Error("validate: mult vector length");
        }
    }
    if (A.invol.rows() != A.n || A.invol.cols() != A.n)
        throw Error("validate: involution shape");

    auto prod = [&](Index i, Index j) -> const Vec& {
        return A.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    };

    // associativity
    auto check_assoc = [&](Index i, Index j, Index k) {
        Vec left = multiply(A, prod(i, j), basis_vec(A, k));
        Vec right = multiply(A, basis_vec(A, i), prod(j, k));
        if (!vec_eq(left, right))
            throw Error("validate: associativity fails on basis triple (" + std::to_string(i) +
                        "," + std::to_string(j) + "," + std::to_string(k) + ")");
    };
    if (A.n <= 12) {
        for (Index i = 0; i < A.n; ++i)
            for (Index j = 0; j < A.n; ++j)
                for (Index k = 0; k < A.n; ++k) check_assoc(i, j, k);
    } else {
        std::mt19937 rng(0);
        std::uniform_int_distribution<Index> dist(0, A.n - 1);
        for (int t = 0; t < 1000; ++t) check_assoc(dist(rng), dist(rng), dist(rng));
    }

    if (!is_identity_mat(Mat(A.invol * A.invol)))
        throw Error("validate: involution is not of order two");
    for (Index i = 0; i < A.n; ++i) {
        for (Index j = 0; j < A.n; ++j) {
            Vec lhs = involute(A, prod(i, j));
            Vec rhs = multiply(A, A.invol.col(j), A.invol.col(i));
            if (!vec_eq(lhs, rhs))
                throw Error("validate: involution is not an anti-automorphism at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
    if (A.unit) {
        if (A.unit->rows() != A.n) throw Error("validate: unit length");
        for (Index i = 0; i < A.n; ++i) {
            Vec e = basis_vec(A, i);
            if (!vec_eq(multiply(A, *A.unit, e), e) || !vec_eq(multiply(A, e, *A.unit), e))
                throw Error("validate: stored unit is not a two-sided unit");
        }
    }

    if (!A.wm) return;
    const WedderburnData& wm = *A.wm;
    int p = wm.p();
    if (wm.units.size() != wm.blocks.size()) throw Error("validate: unit matrices per block");
    if (static_cast<int>(wm.idempotents.size()) != p) throw Error("validate: idempotent count");
    Index nB = 0;
    for (std::size_t l = 0; l < wm.blocks.size(); ++l) {
        Index d = block_dim(wm.blocks[l]);
        if (wm.units[l].rows() != A.n || wm.units[l].cols() != d)
            throw Error("validate: unit matrix shape for block " + std::to_string(l + 1));
        nB += d;
    }
    Index q = wm.radical.cols();
    if (wm.radical.rows() != A.n && q > 0) throw Error("validate: radical shape");
    if (static_cast<Index>(wm.peirce_labels.size()) != q)
        throw Error("validate: Peirce label count");
    if (nB + q != A.n) throw Error("validate: block and radical dimensions do not fill the algebra");

    // matrix-unit relations inside blocks, zero across blocks
    for (std::size_t l1 = 0; l1 < wm.blocks.size(); ++l1) {
        for (std::size_t l2 = 0; l2 < wm.blocks.size(); ++l2) {
            for (Index c1 = 0; c1 < wm.units[l1].cols(); ++c1) {
                for (Index c2 = 0; c2 < wm.units[l2].cols(); ++c2) {
                    Vec got = multiply(A, wm.units[l1].col(c1), wm.units[l2].col(c2));
                    Vec want = Vec::Zero(A.n);
                    if (l1 == l2) {
                        if (auto r = block_unit_product(wm.blocks[l1], c1, c2))
                            want = wm.units[l1].col(*r);
                    }
                    if (!vec_eq(got, want))
                        throw Error("validate: block unit products are wrong in block pair (" +
                                    std::to_string(l1 + 1) + "," + std::to_string(l2 + 1) + ")");
                }
            }
        }
    }
    // idempotents: definitional, symmetric, orthogonal
    for (int l = 1; l <= p; ++l) {
        Vec want = block_idempotent(wm.blocks[static_cast<std::size_t>(l - 1)],
                                    wm.units[static_cast<std::size_t>(l - 1)]);
        const Vec& e = wm.idempotents[static_cast<std::size_t>(l - 1)];
        if (!vec_eq(e, want)) throw Error("validate: idempotent of block " + std::to_string(l));
        if (!vec_eq(involute(A, e), e)) throw Error("validate: idempotent not symmetric");
        for (int m = 1; m <= p; ++m) {
            Vec prod_lm = multiply(A, e, wm.idempotents[static_cast<std::size_t>(m - 1)]);
            Vec want_lm = l == m ? e : Vec(Vec::Zero(A.n));
            if (!vec_eq(prod_lm, want_lm)) throw Error("validate: idempotents not orthogonal");
        }
    }
    // semisimple span is *-invariant; radical is a *-invariant nilpotent ideal
    Subspace B = semisimple_subspace(A);
    Subspace J = Subspace::from_rows(A.n, wm.radical.transpose());
    if (B.dim() != nB) throw Error("validate: block units are linearly dependent");
    if (J.dim() != q) throw Error("validate: radical columns are linearly dependent");
    if (subspace_intersect(B, J).dim() != 0)
        throw Error("validate: semisimple part meets the radical");
    for (std::size_t l = 0; l < wm.units.size(); ++l) {
        for (Index c = 0; c < wm.units[l].cols(); ++c) {
            if (!B.contains(involute(A, wm.units[l].col(c))))
                throw Error("validate: semisimple part is not *-invariant");
        }
    }
    for (Index m = 0; m < q; ++m) {
        Vec r = wm.radical.col(m);
        if (!J.contains(involute(A, r))) throw Error("validate: radical is not *-invariant");
        for (Index i = 0; i < A.n; ++i) {
            Vec e = basis_vec(A, i);
            if (!J.contains(multiply(A, e, r)) || !J.contains(multiply(A, r, e)))
                throw Error("validate: radical is not a two-sided ideal");
        }
    }
    nilpotency_of(A, J);  // throws if not nilpotent
    // Peirce labels
    for (Index m = 0; m < q; ++m) {
        auto [l1, l2] = wm.peirce_labels[static_cast<std::size_t>(m)];
        if (l1 < 1 || l1 > p + 1 || l2 < 1 || l2 > p + 1)
            throw Error("validate: Peirce label out of range");
        Vec r = wm.radical.col(m);
        if (!vec_eq(peirce_project(A, l1, l2, r), r))
            throw Error("validate: radical element " + std::to_string(m + 1) +
                        " is not in its labeled Peirce component");
    }
    // parity of the derived families
    for (const BasisElem& b : wm.d0) {
        if (!vec_eq(involute(A, b.v), b.v)) throw Error("validate: d0 element not symmetric");
    }
    for (const BasisElem& b : wm.d1) {
        if (!vec_eq(involute(A, b.v), Vec(-b.v))) throw Error("validate: d1 element not skew");
    }
    for (const BasisElem& b : wm.u0) {
        if (!vec_eq(involute(A, b.v), b.v)) throw Error("validate: u0 element not symmetric");
    }
    for (const BasisElem& b : wm.u1) {
        if (!vec_eq(involute(A, b.v), Vec(-b.v))) throw Error("validate: u1 element not skew");
    }
    if (static_cast<Index>(wm.d0.size() + wm.d1.size()) != nB)
        throw Error("validate: d-family sizes do not match the semisimple dimension");
    if (static_cast<Index>(wm.u0.size() + wm.u1.size()) != q)
        throw Error("validate: u-family sizes do not match the radical dimension");
    if (A.unit) {
        Vec sum = Vec::Zero(A.n);
        for (const Vec& e : wm.idempotents) sum += e;
        if (!vec_eq(*A.unit, sum))
            throw Error("validate: unit differs from the idempotent sum");
    }
}

// --- plain algebras -------------------------------------------------------------

Vec plain_multiply(const PlainAlgebra& C, const Vec& a, const Vec& b) {
    Vec out = Vec::Zero(C.n);
    for (Index i = 0; i < C.n; ++i) {
        if (a(i).is_zero()) continue;
        for (Index j = 0; j < C.n; ++j) {
            if (b(j).is_zero()) continue;
            Rational c = a(i) * b(j);
            const Vec& m = C.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            for (Index r = 0; r < C.n; ++r) {
                if (!m(r).is_zero()) out(r) += c * m(r);
            }
        }
    }
    return out;
}

PlainAlgebra full_matrix_algebra(int k) {
    if (k < 1) throw Error("full_matrix_algebra: size must be positive");
    PlainAlgebra C;
    C.n = static_cast<Index>(k) * k;
    std::string sep = k > 9 ? "_" : "";
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j)
            C.basis_names.push_back("E" + std::to_string(i) + sep + std::to_string(j));
    C.mult.assign(static_cast<std::size_t>(C.n),
                  std::vector<Vec>(static_cast<std::size_t>(C.n), Vec::Zero(C.n)));
    auto col = [&](int i, int j) { return static_cast<Index>(i - 1) * k + (j - 1); };
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j)
            for (int a = 1; a <= k; ++a)
                for (int b = 1; b <= k; ++b)
                    if (j == a)
                        C.mult[static_cast<std::size_t>(col(i, j))]
                              [static_cast<std::size_t>(col(a, b))](col(i, b)) = Rational(1);
    Vec u = Vec::Zero(C.n);
    for (int i = 1; i <= k; ++i) u(col(i, i)) = Rational(1);
    C.unit = u;
    PlainAlgebra::WM wm;
    wm.block_sizes = {k};
    Mat U = Mat::Zero(C.n, C.n);
    for (Index c = 0; c < C.n; ++c) U(c, c) = Rational(1);
    wm.units = {U};
    wm.radical = Mat::Zero(C.n, 0);
    C.wm = wm;
    return C;
}

PlainAlgebra ut_algebra(int n) {
    if (n < 1) throw Error("ut_algebra: size must be positive");
    PlainAlgebra C;
    std::vector<std::pair<int, int>> idx;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) idx.emplace_back(i, j);
    C.n = static_cast<Index>(idx.size());
    std::map<std::pair<int, int>, Index> pos;
    for (Index t = 0; t < C.n; ++t) {
        pos[idx[static_cast<std::size_t>(t)]] = t;
        auto [i, j] = idx[static_cast<std::size_t>(t)];
        C.basis_names.push_back("E" + std::to_string(i) + std::to_string(j));
    }
    C.mult.assign(static_cast<std::size_t>(C.n),
                  std::vector<Vec>(static_cast<std::size_t>(C.n), Vec::Zero(C.n)));
    for (Index a = 0; a < C.n; ++a) {
        for (Index b = 0; b < C.n; ++b) {
            auto [i1, j1] = idx[static_cast<std::size_t>(a)];
            auto [i2, j2] = idx[static_cast<std::size_t>(b)];
            if (j1 == i2)
                C.mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)](pos[{i1, j2}]) =
                    Rational(1);
        }
    }
    Vec u = Vec::Zero(C.n);
    for (int i = 1; i <= n; ++i) u(pos[{i, i}]) = Rational(1);
    C.unit = u;
    PlainAlgebra::WM wm;
    wm.block_sizes.assign(static_cast<std::size_t>(n), 1);
    for (int i = 1; i <= n; ++i) {
        Mat U1 = Mat::Zero(C.n, 1);
        U1(pos[{i, i}], 0) = Rational(1);
        wm.units.push_back(U1);
    }
    std::vector<std::pair<int, int>> labels;
    std::vector<Index> radcols;
    for (Index t = 0; t < C.n; ++t) {
        auto [i, j] = idx[static_cast<std::size_t>(t)];
        if (i != j) {
            radcols.push_back(t);
            labels.emplace_back(i, j);
        }
    }
    wm.radical = Mat::Zero(C.n, static_cast<Index>(radcols.size()));
    for (std::size_t m = 0; m < radcols.size(); ++m)
        wm.radical(radcols[m], static_cast<Index>(m)) = Rational(1);
    wm.peirce_labels = labels;
    C.wm = wm;
    return C;
}

}  // namespace starpi
