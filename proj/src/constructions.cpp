#include "starpi/constructions.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>

namespace starpi {

namespace {

bool vec_is_zero(const Vec& v) {
    for (Index i = 0; i < v.size(); ++i) {
        if (!v(i).is_zero()) return false;
    }
    return true;
}

// --- beta_witness -------------------------------------------------------------

struct PairVal {
    int i, j;  // leading matrix-unit pair, 1-based
    Vec v;     // the corresponding basis element
};

Vec unit_of(const Mat& U, int k, int i, int j, int copy = 0) {
    return U.col((copy ? static_cast<Index>(k) * k : 0) + static_cast<Index>(i - 1) * k +
                 (j - 1));
}

// Leading-pair traversals of the symmetric and skew basis families of one
// block, in the same order finalize_wm enumerates them.
void block_pairs(const BlockSpec& spec, const Mat& U, std::vector<PairVal>& I,
                 std::vector<PairVal>& J) {
    int k = spec.k;
    auto E = [&](int i, int j, int copy = 0) { return unit_of(U, k, i, j, copy); };
    switch (spec.kind) {
        case BlockKind::Transpose:
            for (int i = 1; i <= k; ++i) {
                for (int j = i; j <= k; ++j) {
                    I.push_back({i, j, i == j ? E(i, i) : Vec(E(i, j) + E(j, i))});
                }
            }
            for (int i = 1; i <= k; ++i) {
                for (int j = i + 1; j <= k; ++j) {
                    J.push_back({i, j, Vec(E(i, j) - E(j, i))});
                }
            }
            break;
        case BlockKind::Symplectic: {
            int h = k / 2;
            for (int i = 1; i <= h; ++i) {
                for (int j = 1; j <= h; ++j) {
                    I.push_back({i, j, Vec(E(i, j) + E(h + j, h + i))});
                }
            }
            for (int i = 1; i <= h; ++i) {
                for (int j = i + 1; j <= h; ++j) {
                    I.push_back({i, h + j, Vec(E(i, h + j) - E(j, h + i))});
                    I.push_back({h + i, j, Vec(E(h + i, j) - E(h + j, i))});
                }
            }
            for (int i = 1; i <= h; ++i) {
                for (int j = 1; j <= h; ++j) {
                    J.push_back({i, j, Vec(E(i, j) - E(h + j, h + i))});
                }
            }
            for (int i = 1; i <= h; ++i) {
                for (int j = i; j <= h; ++j) {
                    J.push_back({i, h + j, i == j ? E(i, h + i) : Vec(E(i, h + j) + E(j, h + i))});
                    J.push_back({h + i, j, i == j ? E(h + i, i) : Vec(E(h + i, j) + E(h + j, i))});
                }
            }
            break;
        }
        case BlockKind::Exchange:
            for (int i = 1; i <= k; ++i) {
                for (int j = 1; j <= k; ++j) {
                    I.push_back({i, j, Vec(E(i, j, 0) + E(i, j, 1))});
                }
            }
            for (int i = 1; i <= k; ++i) {
                for (int j = 1; j <= k; ++j) {
                    J.push_back({i, j, Vec(E(i, j, 0) - E(i, j, 1))});
                }
            }
            break;
    }
}

struct WitnessBuilder {
    const WedderburnData& wm;
    int next_sym = 1;
    int next_skew = 1;
    int next_gen = 1;
    // connector variables are shared: one variable per (block, index 4-tuple)
    std::map<std::array<int, 5>, int> connector_ids;
    std::map<std::array<int, 5>, int> prime_ids;
    Substitution subst;

    explicit WitnessBuilder(const StarAlgebra& a) : wm(*a.wm) {}

    // value of the connector x_{l,(ab,cd)} under the canonical substitution
    Vec connector_value(int l, int a, int b, int c, int d) const {
        const BlockSpec& spec = wm.blocks[static_cast<std::size_t>(l - 1)];
        const Mat& U = wm.units[static_cast<std::size_t>(l - 1)];
        if (spec.kind == BlockKind::Exchange)
            return unit_of(U, spec.k, a, b, 0) + unit_of(U, spec.k, c, d, 1);
        return unit_of(U, spec.k, a, b, 0);
    }

    Vec prime_value(int l, int a, int b, int c, int d) const {
        const BlockSpec& spec = wm.blocks[static_cast<std::size_t>(l - 1)];
        const Mat& U = wm.units[static_cast<std::size_t>(l - 1)];
        if (spec.kind == BlockKind::Exchange) {
            Rational sign = (spec.k % 2 == 0) ? Rational(1) : Rational(-1);
            return unit_of(U, spec.k, a, b, 0) + unit_of(U, spec.k, c, d, 1) * sign;
        }
        return unit_of(U, spec.k, a, b, 0);
    }

    Letter connector(int l, int a, int b, int c, int d) {
        std::array<int, 5> key{l, a, b, c, d};
        auto [it, fresh] = connector_ids.try_emplace(key, next_gen);
        if (fresh) {
            ++next_gen;
            subst.assign[gen_var(it->second)] = connector_value(l, a, b, c, d);
        }
        return gen_letter(it->second);
    }

    Letter prime(int l, int a, int b, int c, int d) {
        std::array<int, 5> key{l, a, b, c, d};
        auto [it, fresh] = prime_ids.try_emplace(key, next_gen);
        if (fresh) {
            ++next_gen;
            subst.assign[gen_var(it->second)] = prime_value(l, a, b, c, d);
        }
        return gen_letter(it->second);
    }
};

Vec diag_unit(const WedderburnData& wm, int l, int s) {
    const BlockSpec& spec = wm.blocks[static_cast<std::size_t>(l - 1)];
    const Mat& U = wm.units[static_cast<std::size_t>(l - 1)];
    if (spec.kind == BlockKind::Exchange)
        return unit_of(U, spec.k, s, s, 0) + unit_of(U, spec.k, s, s, 1);
    return unit_of(U, spec.k, s, s, 0);
}

}  // namespace

WitnessResult beta_witness(const StarAlgebra& A, int shat,
                           const std::optional<PathCertificate>& cert,
                           const EngineOptions& opts) {
    if (!A.wm) throw Error("beta_witness: the algebra has no Wedderburn data");
    if (shat < 1) throw Error("beta_witness: the set count must be positive");
    const WedderburnData& wm = *A.wm;
    int p = wm.p();
    if (p == 0) throw Error("beta_witness: the algebra has no *-simple blocks");

    std::vector<int> order(static_cast<std::size_t>(p));
    std::iota(order.begin(), order.end(), 1);
    std::vector<int> diag(static_cast<std::size_t>(p), 1);
    std::vector<Vec> radicals;
    if (cert) {
        std::vector<int> sorted = cert->order;
        std::sort(sorted.begin(), sorted.end());
        for (int l = 1; l <= p; ++l) {
            if (sorted[static_cast<std::size_t>(l - 1)] != l)
                throw Error("beta_witness: certificate order is not a permutation of the blocks");
        }
        if (static_cast<int>(cert->radicals.size()) != p - 1)
            throw Error("beta_witness: certificate needs one radical element per junction");
        if (static_cast<int>(cert->diag.size()) != p)
            throw Error("beta_witness: certificate needs one diagonal slot per block");
        for (int l = 1; l <= p; ++l) {
            int s = cert->diag[static_cast<std::size_t>(l - 1)];
            if (s < 1 || s > wm.blocks[static_cast<std::size_t>(l - 1)].k)
                throw Error("beta_witness: certificate diagonal slot out of range");
        }
        Subspace J = radical_subspace(A);
        for (const Vec& r : cert->radicals) {
            if (r.size() != A.n || !J.contains(r))
                throw Error("beta_witness: certificate radical element lies outside the radical");
        }
        order = cert->order;
        diag = cert->diag;
        radicals = cert->radicals;
    } else if (p >= 2) {
        throw Error("beta_witness: a path certificate is required for multi-block algebras");
    }

    // check the sandwiched path product before building anything large
    if (p >= 2) {
        Vec path = diag_unit(wm, order[0], diag[static_cast<std::size_t>(order[0] - 1)]);
        for (int q = 1; q < p; ++q) {
            path = multiply(A, path, radicals[static_cast<std::size_t>(q - 1)]);
            path = multiply(A, path,
                            diag_unit(wm, order[static_cast<std::size_t>(q)],
                                      diag[static_cast<std::size_t>(order[q] - 1)]));
        }
        if (vec_is_zero(path))
            throw Error("beta_witness: certificate product evaluates to zero");
    }

    auto [t1, t2] = dims_star(A);
    long long fact = 1;
    for (int i = 2; i <= t1; ++i) fact *= i;
    for (int i = 2; i <= t2; ++i) fact *= i;
    long long terms = 1;
    for (int m = 0; m < shat; ++m) {
        if (terms > opts.budget / std::max<long long>(fact, 1))
            throw Error("beta_witness: enumeration budget exceeded");
        terms *= fact;
    }

    WitnessBuilder b(A);
    std::vector<std::vector<VarRef>> Ym(static_cast<std::size_t>(shat));
    std::vector<std::vector<VarRef>> Zm(static_cast<std::size_t>(shat));

    Monomial word;
    for (int pos = 0; pos < p; ++pos) {
        int l = order[static_cast<std::size_t>(pos)];
        const BlockSpec& spec = wm.blocks[static_cast<std::size_t>(l - 1)];
        const Mat& U = wm.units[static_cast<std::size_t>(l - 1)];
        std::vector<PairVal> I, J;
        block_pairs(spec, U, I, J);
        if (I.empty()) throw Error("beta_witness: a block has no symmetric basis elements");

        std::vector<PairVal> chain = I;
        chain.insert(chain.end(), J.begin(), J.end());
        int s = diag[static_cast<std::size_t>(l - 1)];
        int t = chain.back().j;
        int tp = chain.back().i;

        // W_l = x_(st,t's) . prod_m ( x_(t1,1t') . w_{l,m} ) . x'_(ts,st')
        word.push_back(b.connector(l, s, t, tp, s));
        for (int m = 0; m < shat; ++m) {
            word.push_back(b.connector(l, t, 1, 1, tp));
            for (std::size_t c = 0; c < chain.size(); ++c) {
                bool sym = c < I.size();
                Letter letter = sym ? sym_letter(b.next_sym++) : skew_letter(b.next_skew++);
                VarRef v = var_of(letter);
                (sym ? Ym : Zm)[static_cast<std::size_t>(m)].push_back(v);
                b.subst.assign[v] = chain[c].v;
                word.push_back(letter);
                if (c + 1 < chain.size()) {
                    const PairVal& cur = chain[c];
                    const PairVal& nxt = chain[c + 1];
                    word.push_back(b.connector(l, cur.j, nxt.i, nxt.j, cur.i));
                }
            }
        }
        word.push_back(b.prime(l, t, s, s, tp));

        if (pos + 1 < p) {
            Letter tilde = gen_letter(b.next_gen++);
            int lnext = order[static_cast<std::size_t>(pos + 1)];
            Vec eps_l = wm.idempotents[static_cast<std::size_t>(l - 1)];
            Vec eps_n = wm.idempotents[static_cast<std::size_t>(lnext - 1)];
            Vec r = radicals[static_cast<std::size_t>(pos)];
            b.subst.assign[var_of(tilde)] = multiply(A, multiply(A, eps_l, r), eps_n);
            word.push_back(tilde);
        }
    }

    StarPoly f = StarPoly::from_monomial(word);
    for (int m = 0; m < shat; ++m) {
        f = alternate(f, Ym[static_cast<std::size_t>(m)], opts.alternator_cap);
        f = alternate(f, Zm[static_cast<std::size_t>(m)], opts.alternator_cap);
    }

    WitnessResult res{std::move(f), std::move(b.subst), Vec(), PolyType{}};
    res.type.tbar = {t1, t2};
    for (int m = 0; m < shat; ++m) {
        std::vector<VarRef> set = Ym[static_cast<std::size_t>(m)];
        set.insert(set.end(), Zm[static_cast<std::size_t>(m)].begin(),
                   Zm[static_cast<std::size_t>(m)].end());
        res.type.mu_sets.push_back(std::move(set));
    }
    res.value = evaluate(res.poly, res.subst, A);
    if (vec_is_zero(res.value))
        throw Error("beta_witness: the canonical substitution evaluates to zero");
    return res;
}

// --- exchange algebra -----------------------------------------------------------

StarAlgebra exchange_algebra(const PlainAlgebra& C) {
    Index nC = C.n;
    if (nC <= 0) throw Error("exchange_algebra: the input algebra is empty");
    for (const auto& row : C.mult) {
        if (static_cast<Index>(row.size()) != nC)
            throw Error("exchange_algebra: malformed multiplication table");
    }

    if (!C.wm) {
        StarAlgebra B;
        B.n = 2 * nC;
        B.basis_names.resize(static_cast<std::size_t>(B.n));
        for (Index i = 0; i < nC; ++i) {
            std::string base = C.basis_names.empty() ? "c" + std::to_string(i + 1)
                                                     : C.basis_names[static_cast<std::size_t>(i)];
            B.basis_names[static_cast<std::size_t>(i)] = base;
            B.basis_names[static_cast<std::size_t>(nC + i)] = base + "'";
        }
        B.mult.assign(static_cast<std::size_t>(B.n),
                      std::vector<Vec>(static_cast<std::size_t>(B.n), Vec::Zero(B.n)));
        for (Index i = 0; i < nC; ++i) {
            for (Index j = 0; j < nC; ++j) {
                const Vec& fw = C.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                const Vec& bw = C.mult[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
                B.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].head(nC) = fw;
                B.mult[static_cast<std::size_t>(nC + i)][static_cast<std::size_t>(nC + j)]
                    .tail(nC) = bw;
            }
        }
        B.invol = Mat::Zero(B.n, B.n);
        for (Index i = 0; i < nC; ++i) {
            B.invol(nC + i, i) = Rational(1);
            B.invol(i, nC + i) = Rational(1);
        }
        if (C.unit) {
            Vec u = Vec::Zero(B.n);
            u.head(nC) = *C.unit;
            u.tail(nC) = *C.unit;
            B.unit = u;
        }
        validate(B);
        return B;
    }

    const PlainAlgebra::WM& cwm = *C.wm;
    Index nBC = 0;
    for (int k : cwm.block_sizes) {
        if (k < 1) throw Error("exchange_algebra: invalid block size");
        nBC += static_cast<Index>(k) * k;
    }
    Index qC = cwm.radical.cols();
    if (nBC + qC != nC)
        throw Error("exchange_algebra: Wedderburn data does not span the algebra");

    // rebase C to (block units, radical) coordinates
    Mat P(nC, nC);
    Index col = 0;
    for (std::size_t l = 0; l < cwm.block_sizes.size(); ++l) {
        const Mat& U = cwm.units[l];
        Index d = static_cast<Index>(cwm.block_sizes[l]) * cwm.block_sizes[l];
        if (U.rows() != nC || U.cols() != d)
            throw Error("exchange_algebra: malformed block units");
        P.middleCols(col, d) = U;
        col += d;
    }
    if (qC > 0) P.middleCols(col, qC) = cwm.radical;
    Mat aug(nC, 2 * nC);
    aug.leftCols(nC) = P;
    aug.rightCols(nC) = Mat::Identity(nC, nC);
    std::vector<Index> piv;
    Mat red = rref(aug, &piv);
    if (static_cast<Index>(piv.size()) != nC || piv.back() >= nC)
        throw Error("exchange_algebra: Wedderburn basis is not invertible");
    Mat Pinv = red.rightCols(nC);

    auto cmult = [&](Index i, Index j) -> Vec {
        return Pinv * plain_multiply(C, P.col(i), P.col(j));
    };

    // the block units must multiply as matrix units and annihilate across blocks
    {
        std::vector<Index> uoff;
        std::vector<int> ublk;
        Index o = 0;
        for (std::size_t l = 0; l < cwm.block_sizes.size(); ++l) {
            uoff.push_back(o);
            for (int t = 0; t < cwm.block_sizes[l] * cwm.block_sizes[l]; ++t)
                ublk.push_back(static_cast<int>(l));
            o += static_cast<Index>(cwm.block_sizes[l]) * cwm.block_sizes[l];
        }
        for (Index i = 0; i < nBC; ++i) {
            for (Index j = 0; j < nBC; ++j) {
                Vec expect = Vec::Zero(nC);
                int li = ublk[static_cast<std::size_t>(i)];
                int lj = ublk[static_cast<std::size_t>(j)];
                if (li == lj) {
                    int k = cwm.block_sizes[static_cast<std::size_t>(li)];
                    Index ri = i - uoff[static_cast<std::size_t>(li)];
                    Index rj = j - uoff[static_cast<std::size_t>(lj)];
                    if (ri % k == rj / k)
                        expect(uoff[static_cast<std::size_t>(li)] + (ri / k) * k + rj % k) =
                            Rational(1);
                }
                if (!vec_is_zero(Vec(cmult(i, j) - expect)))
                    throw Error("exchange_algebra: block units do not multiply canonically");
            }
        }
    }

    std::vector<BlockSpec> blocks;
    blocks.reserve(cwm.block_sizes.size());
    std::vector<Index> boff;  // offset of each block in the exchange basis
    Index off = 0;
    for (int k : cwm.block_sizes) {
        blocks.push_back(BlockSpec{BlockKind::Exchange, k});
        boff.push_back(off);
        off += 2 * static_cast<Index>(k) * k;
    }
    Index nBB = off;
    Index qB = 2 * qC;

    // global index of the first/second copy of C-basis element m
    auto gcopy = [&](Index m, int copy) -> Index {
        if (m < nBC) {
            Index rem = m;
            for (std::size_t l = 0; l < cwm.block_sizes.size(); ++l) {
                Index d = static_cast<Index>(cwm.block_sizes[l]) * cwm.block_sizes[l];
                if (rem < d) return boff[l] + (copy ? d : 0) + rem;
                rem -= d;
            }
            throw Error("exchange_algebra: internal index error");
        }
        return nBB + (copy ? qC : 0) + (m - nBC);
    };

    std::vector<MultTriple> triples;
    for (Index i = 0; i < nC; ++i) {
        for (Index j = 0; j < nC; ++j) {
            if (i < nBC && j < nBC) continue;
            Vec fw = cmult(i, j);
            Vec bw = cmult(j, i);
            for (Index k = 0; k < nC; ++k) {
                if (!fw(k).is_zero())
                    triples.push_back({gcopy(i, 0), gcopy(j, 0), gcopy(k, 0), fw(k)});
                if (!bw(k).is_zero())
                    triples.push_back({gcopy(i, 1), gcopy(j, 1), gcopy(k, 1), bw(k)});
            }
        }
    }

    Mat rinv = Mat::Zero(qB, qB);
    for (Index m = 0; m < qC; ++m) {
        rinv(qC + m, m) = Rational(1);
        rinv(m, qC + m) = Rational(1);
    }
    if (static_cast<Index>(cwm.peirce_labels.size()) != qC)
        throw Error("exchange_algebra: one Peirce label per radical element required");
    std::vector<std::pair<int, int>> labels;
    labels.reserve(static_cast<std::size_t>(qB));
    for (auto [l1, l2] : cwm.peirce_labels) labels.emplace_back(l1, l2);
    for (auto [l1, l2] : cwm.peirce_labels) labels.emplace_back(l2, l1);

    return assemble(blocks, qB, triples, rinv, labels);
}

// --- plain identity test --------------------------------------------------------

namespace {

using STerm = std::pair<Index, Rational>;
using SVecP = std::vector<STerm>;

SVecP plain_sparse_mul(const PlainAlgebra& C, const SVecP& a, Index basis_j) {
    std::map<Index, Rational> acc;
    for (const auto& [i, c] : a) {
        const Vec& row = C.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(basis_j)];
        for (Index k = 0; k < row.size(); ++k) {
            if (!row(k).is_zero()) acc[k] += c * row(k);
        }
    }
    SVecP out;
    for (auto& [k, c] : acc) {
        if (!c.is_zero()) out.emplace_back(k, std::move(c));
    }
    return out;
}

}  // namespace

bool plain_is_identity(const StarPoly& p, const PlainAlgebra& C, const EngineOptions& opts) {
    if (C.n <= 0) throw Error("plain_is_identity: the algebra is empty");
    long long spent = 0;
    for (const StarPoly& comp : multilinearize(p)) {
        std::vector<VarRef> vars;
        for (const VarRef& v : variables(comp)) {
            if (v.ab != Alphabet::Gen)
                throw Error("plain_is_identity: only general variables act on a plain algebra");
            vars.push_back(v);
        }
        for (const auto& [m, c] : comp.terms()) {
            for (const Letter& l : m) {
                if (l.starred)
                    throw Error("plain_is_identity: starred letters need an involution");
            }
        }
        std::size_t d = vars.size();
        long long total = 1;
        for (std::size_t i = 0; i < d; ++i) {
            total *= static_cast<long long>(C.n);
            if (total > opts.budget) throw Error("enumeration budget exceeded");
        }
        if (spent + total > opts.budget) throw Error("enumeration budget exceeded");
        spent += total;

        std::map<VarRef, std::size_t> slot;
        for (std::size_t i = 0; i < d; ++i) slot[vars[i]] = i;
        std::vector<Index> tuple(d, 0);
        for (long long t = 0; t < total; ++t) {
            long long rem = t;
            for (std::size_t i = 0; i < d; ++i) {
                tuple[i] = static_cast<Index>(rem % C.n);
                rem /= C.n;
            }
            Vec acc = Vec::Zero(C.n);
            for (const auto& [m, c] : comp.terms()) {
                SVecP v{{tuple[slot[var_of(m[0])]], Rational(1)}};
                for (std::size_t li = 1; li < m.size(); ++li) {
                    v = plain_sparse_mul(C, v, tuple[slot[var_of(m[li])]]);
                    if (v.empty()) break;
                }
                for (const auto& [k, cv] : v) acc(k) += c * cv;
            }
            if (!vec_is_zero(acc)) return false;
        }
    }
    return true;
}

// --- truncated relatively free algebra -------------------------------------------

namespace {

// Words over the letters x_1..x_q, x_1'..x_q' (codes 0..2q-1) and the unit
// basis of Btilde (codes 2q..2q+nB-1), with no two adjacent unit letters.
struct WordAlgebra {
    int q = 0;
    int nB = 0;
    int s = 1;
    StarAlgebra Bu;  // canonical unit-basis model of Btilde (may be empty)

    std::vector<std::vector<int>> words;   // x-degree >= 1 words first, unit letters last
    std::map<std::vector<int>, int> index;
    Index nx = 0;  // number of x-words; words[nx..] are the single unit-letter words

    std::map<std::pair<int, int>, SVecP> prod_memo;

    bool is_x(int code) const { return code < 2 * q; }

    int xdeg(const std::vector<int>& w) const {
        int d = 0;
        for (int c : w) d += is_x(c) ? 1 : 0;
        return d;
    }

    // enumerate b? (x b?)^d words for x-degree d in 1..s-1, then unit letters
    void enumerate(long long cap) {
        std::vector<int> cur;
        for (int d = 1; d < s; ++d) grow(cur, d, true, cap);
        for (int b = 0; b < nB; ++b) push_word({2 * q + b}, cap);
    }

    void grow(std::vector<int>& cur, int left, bool gap_open, long long cap) {
        if (left == 0) {
            if (gap_open) {
                for (int b = 0; b < nB; ++b) {
                    cur.push_back(2 * q + b);
                    push_word(cur, cap);
                    cur.pop_back();
                }
            }
            if (!cur.empty()) push_word(cur, cap);
            return;
        }
        if (gap_open) {
            for (int b = 0; b < nB; ++b) {
                cur.push_back(2 * q + b);
                grow(cur, left, false, cap);
                cur.pop_back();
            }
        }
        for (int x = 0; x < 2 * q; ++x) {
            cur.push_back(x);
            grow(cur, left - 1, true, cap);
            cur.pop_back();
        }
    }

    void push_word(const std::vector<int>& w, long long cap) {
        if (static_cast<long long>(words.size()) >= cap)
            throw Error("truncated_relfree: enumeration budget exceeded");
        index.emplace(w, static_cast<int>(words.size()));
        words.push_back(w);
    }

    Index dim() const { return static_cast<Index>(words.size()); }

    Vec unit_elem(int b) const {
        Vec v = Vec::Zero(dim());
        v(nx + b) = Rational(1);
        return v;
    }

    const SVecP& word_prod(int w1, int w2) {
        auto key = std::make_pair(w1, w2);
        auto it = prod_memo.find(key);
        if (it != prod_memo.end()) return it->second;
        SVecP out;
        const std::vector<int>& a = words[static_cast<std::size_t>(w1)];
        const std::vector<int>& b = words[static_cast<std::size_t>(w2)];
        if (xdeg(a) + xdeg(b) < s) {
            if (!a.empty() && !b.empty() && !is_x(a.back()) && !is_x(b.front())) {
                const Vec& mid =
                    Bu.mult[static_cast<std::size_t>(a.back() - 2 * q)]
                           [static_cast<std::size_t>(b.front() - 2 * q)];
                for (Index k = 0; k < mid.size(); ++k) {
                    if (mid(k).is_zero()) continue;
                    std::vector<int> w(a.begin(), a.end() - 1);
                    w.push_back(2 * q + static_cast<int>(k));
                    w.insert(w.end(), b.begin() + 1, b.end());
                    out.emplace_back(index.at(w), mid(k));
                }
            } else {
                std::vector<int> w = a;
                w.insert(w.end(), b.begin(), b.end());
                out.emplace_back(index.at(w), Rational(1));
            }
        }
        return prod_memo.emplace(key, std::move(out)).first->second;
    }

    Vec mul(const Vec& a, const Vec& b) {
        Vec out = Vec::Zero(dim());
        for (Index i = 0; i < a.size(); ++i) {
            if (a(i).is_zero()) continue;
            for (Index j = 0; j < b.size(); ++j) {
                if (b(j).is_zero()) continue;
                Rational c = a(i) * b(j);
                for (const auto& [k, w] : word_prod(static_cast<int>(i), static_cast<int>(j)))
                    out(k) += c * w;
            }
        }
        return out;
    }

    // star of a basis word: reverse, toggle x letters, involute unit letters
    Vec star_word(int wi) const {
        const std::vector<int>& w = words[static_cast<std::size_t>(wi)];
        std::vector<std::pair<std::vector<int>, Rational>> acc{{{}, Rational(1)}};
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            int c = *it;
            if (is_x(c)) {
                for (auto& [word, coeff] : acc) word.push_back(c ^ 1);
            } else {
                const Vec& img = Bu.invol.col(c - 2 * q);
                std::vector<std::pair<std::vector<int>, Rational>> next;
                for (const auto& [word, coeff] : acc) {
                    for (Index k = 0; k < img.size(); ++k) {
                        if (img(k).is_zero()) continue;
                        std::vector<int> nw = word;
                        nw.push_back(2 * q + static_cast<int>(k));
                        next.emplace_back(std::move(nw), coeff * img(k));
                    }
                }
                acc = std::move(next);
            }
        }
        Vec out = Vec::Zero(dim());
        for (const auto& [word, coeff] : acc) out(index.at(word)) += coeff;
        return out;
    }

    Vec star(const Vec& v, const std::vector<Vec>& star_cols) const {
        Vec out = Vec::Zero(dim());
        for (Index i = 0; i < v.size(); ++i) {
            if (!v(i).is_zero()) out += v(i) * star_cols[static_cast<std::size_t>(i)];
        }
        return out;
    }
};

struct GaussBasis {
    std::vector<Vec> rows;
    std::vector<Index> pivots;

    void reduce(Vec& v) const {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!v(pivots[r]).is_zero()) v -= v(pivots[r]) * rows[r];
        }
    }

    bool add(Vec v) {
        reduce(v);
        Index piv = -1;
        for (Index i = 0; i < v.size(); ++i) {
            if (!v(i).is_zero()) { piv = i; break; }
        }
        if (piv < 0) return false;
        v /= v(piv);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!rows[r](piv).is_zero()) rows[r] -= rows[r](piv) * v;
        }
        rows.push_back(std::move(v));
        pivots.push_back(piv);
        return true;
    }
};

}  // namespace

StarAlgebra truncated_relfree(const StarAlgebra& Btilde, const std::vector<StarPoly>& gens,
                              int q, int s, const EngineOptions& opts) {
    if (q < 1) throw Error("truncated_relfree: at least one letter is required");
    if (s < 1) throw Error("truncated_relfree: the truncation class must be positive");

    WordAlgebra W;
    W.q = q;
    W.s = s;
    std::vector<BlockSpec> blocks;
    if (Btilde.n > 0) {
        validate(Btilde);
        if (!Btilde.wm)
            throw Error("truncated_relfree: the attached algebra has no Wedderburn data");
        if (Btilde.wm->radical.cols() != 0)
            throw Error("truncated_relfree: the attached algebra must be semisimple");
        blocks = Btilde.wm->blocks;
        W.Bu = assemble(blocks, 0, {}, Mat::Zero(0, 0), {});
        W.nB = static_cast<int>(W.Bu.n);
    }
    int p = static_cast<int>(blocks.size());

    long long word_cap = std::min<long long>(opts.budget, 4000);
    W.enumerate(word_cap);
    W.nx = W.dim() - W.nB;
    Index N = W.dim();

    std::vector<Vec> star_cols;
    star_cols.reserve(static_cast<std::size_t>(N));
    for (Index i = 0; i < N; ++i) star_cols.push_back(W.star_word(static_cast<int>(i)));

    // spanning set of the truncated verbal ideal: substitutions of the
    // multilinearized generators (and their star images) with word arguments,
    // closed under one-letter multiplications on both sides
    GaussBasis V;
    std::vector<Vec> work;
    auto submit = [&](Vec v) {
        if (V.add(std::move(v))) {
            work.push_back(V.rows.back());
        }
    };

    long long spent = 0;
    for (const StarPoly& g : gens) {
        for (const StarPoly& comp : multilinearize(g)) {
            for (const StarPoly& h : {comp, star_image(comp)}) {
                std::set<VarRef> vset = variables(h);
                std::vector<VarRef> vars(vset.begin(), vset.end());
                std::size_t d = vars.size();
                if (d == 0) continue;
                std::map<VarRef, std::size_t> slot;
                for (std::size_t i = 0; i < d; ++i) slot[vars[i]] = i;

                std::vector<Vec> args(d);
                auto run = [&](auto&& self, std::size_t pos, int deg) -> void {
                    if (pos == d) {
                        if (++spent > opts.budget)
                            throw Error("truncated_relfree: enumeration budget exceeded");
                        Vec acc = Vec::Zero(N);
                        for (const auto& [m, c] : h.terms()) {
                            Vec v;
                            bool first = true;
                            for (const Letter& l : m) {
                                const Vec& base = args[slot[var_of(l)]];
                                Vec factor = l.starred ? W.star(base, star_cols) : base;
                                v = first ? factor : W.mul(v, factor);
                                first = false;
                                if (vec_is_zero(v)) break;
                            }
                            if (!vec_is_zero(v)) acc += c * v;
                        }
                        if (!vec_is_zero(acc)) submit(std::move(acc));
                        return;
                    }
                    for (Index w = 0; w < N; ++w) {
                        int wd = W.xdeg(W.words[static_cast<std::size_t>(w)]);
                        if (deg + wd >= s) continue;
                        VarRef v = vars[pos];
                        Vec base = Vec::Zero(N);
                        base(w) = Rational(1);
                        if (v.ab == Alphabet::Sym) {
                            args[pos] = base + star_cols[static_cast<std::size_t>(w)];
                        } else if (v.ab == Alphabet::Skew) {
                            args[pos] = base - star_cols[static_cast<std::size_t>(w)];
                        } else {
                            args[pos] = base;
                        }
                        self(self, pos + 1, deg + wd);
                    }
                };
                run(run, 0, 0);
            }
        }
    }

    std::vector<Vec> letters;
    for (int c = 0; c < 2 * q + W.nB; ++c) {
        if (c < 2 * q && s < 2) continue;
        std::vector<int> w{c};
        Vec v = Vec::Zero(N);
        v(W.index.at(w)) = Rational(1);
        letters.push_back(std::move(v));
    }
    while (!work.empty()) {
        Vec v = std::move(work.back());
        work.pop_back();
        for (const Vec& l : letters) {
            submit(W.mul(l, v));
            submit(W.mul(v, l));
        }
    }

    for (Index piv : V.pivots) {
        if (piv >= W.nx)
            throw Error("truncated_relfree: generators do not vanish on the attached algebra");
    }

    std::vector<Index> residual;
    {
        std::vector<bool> is_piv(static_cast<std::size_t>(N), false);
        for (Index piv : V.pivots) is_piv[static_cast<std::size_t>(piv)] = true;
        for (Index i = 0; i < W.nx; ++i) {
            if (!is_piv[static_cast<std::size_t>(i)]) residual.push_back(i);
        }
    }
    Index qR = static_cast<Index>(residual.size());

    // Peirce rebase of the surviving x-words against the embedded idempotents
    std::vector<Vec> rad_cols;
    std::vector<std::pair<int, int>> rad_labels;
    if (p == 0) {
        for (Index w : residual) {
            Vec v = Vec::Zero(N);
            v(w) = Rational(1);
            rad_cols.push_back(std::move(v));
            rad_labels.emplace_back(1, 1);
        }
    } else {
        std::vector<Vec> eps;
        for (int l = 0; l < p; ++l) {
            const Vec& e = W.Bu.wm->idempotents[static_cast<std::size_t>(l)];
            Vec v = Vec::Zero(N);
            for (Index b = 0; b < W.Bu.n; ++b) v(W.nx + b) = e(b);
            eps.push_back(std::move(v));
        }
        auto left_part = [&](const Vec& v, int l) -> Vec {
            if (l < p) {
                Vec out = W.mul(eps[static_cast<std::size_t>(l)], v);
                V.reduce(out);
                return out;
            }
            Vec out = v;
            for (int j = 0; j < p; ++j) {
                Vec t = W.mul(eps[static_cast<std::size_t>(j)], v);
                V.reduce(t);
                out -= t;
            }
            return out;
        };
        auto right_part = [&](const Vec& v, int l) -> Vec {
            if (l < p) {
                Vec out = W.mul(v, eps[static_cast<std::size_t>(l)]);
                V.reduce(out);
                return out;
            }
            Vec out = v;
            for (int j = 0; j < p; ++j) {
                Vec t = W.mul(v, eps[static_cast<std::size_t>(j)]);
                V.reduce(t);
                out -= t;
            }
            return out;
        };
        for (int l1 = 0; l1 <= p; ++l1) {
            for (int l2 = 0; l2 <= p; ++l2) {
                GaussBasis stratum;
                for (Index w : residual) {
                    Vec v = Vec::Zero(N);
                    v(w) = Rational(1);
                    Vec c = right_part(left_part(v, l1), l2);
                    if (!vec_is_zero(c) && stratum.add(c)) {
                        rad_cols.push_back(stratum.rows.back());
                        rad_labels.emplace_back(l1 + 1, l2 + 1);
                    }
                }
            }
        }
        if (static_cast<Index>(rad_cols.size()) != qR)
            throw Error("truncated_relfree: Peirce components do not span the radical");
    }

    // coordinates: unit letters stay, the radical part is solved against the
    // rebased columns restricted to the residual word coordinates
    std::map<Index, Index> res_pos;
    for (Index i = 0; i < qR; ++i) res_pos[residual[static_cast<std::size_t>(i)]] = i;
    Mat R = Mat::Zero(qR, qR);
    for (Index c = 0; c < qR; ++c) {
        for (Index i = 0; i < qR; ++i)
            R(i, c) = rad_cols[static_cast<std::size_t>(c)](residual[static_cast<std::size_t>(i)]);
    }
    Mat raug(qR, 2 * qR);
    raug.leftCols(qR) = R;
    raug.rightCols(qR) = Mat::Identity(qR, qR);
    std::vector<Index> rpiv;
    Mat rred = rref(raug, &rpiv);
    if (static_cast<Index>(rpiv.size()) != qR || (qR > 0 && rpiv.back() >= qR))
        throw Error("truncated_relfree: radical rebase is not invertible");
    Mat Rinv = rred.rightCols(qR);

    Index nU = static_cast<Index>(W.nB);
    auto coords = [&](Vec v) -> Vec {
        V.reduce(v);
        Vec out = Vec::Zero(nU + qR);
        for (Index b = 0; b < nU; ++b) {
            out(b) = v(W.nx + b);
            v(W.nx + b) = Rational(0);
        }
        if (qR > 0) {
            Vec xpart(qR);
            for (Index i = 0; i < qR; ++i) {
                xpart(i) = v(residual[static_cast<std::size_t>(i)]);
                v(residual[static_cast<std::size_t>(i)]) = Rational(0);
            }
            out.tail(qR) = Rinv * xpart;
        }
        if (!vec_is_zero(v))
            throw Error("truncated_relfree: an element escapes the quotient basis");
        return out;
    };

    auto elem = [&](Index g) -> Vec {
        if (g < nU) {
            Vec tmp = Vec::Zero(N);
            tmp(W.nx + g) = Rational(1);
            return tmp;
        }
        return rad_cols[static_cast<std::size_t>(g - nU)];
    };

    std::vector<MultTriple> triples;
    for (Index i = 0; i < nU + qR; ++i) {
        for (Index j = 0; j < nU + qR; ++j) {
            if (i < nU && j < nU) continue;
            Vec c = coords(W.mul(elem(i), elem(j)));
            for (Index k = 0; k < c.size(); ++k) {
                if (!c(k).is_zero()) triples.push_back({i, j, k, c(k)});
            }
        }
    }

    Mat rad_invol = Mat::Zero(qR, qR);
    for (Index m = 0; m < qR; ++m) {
        Vec c = coords(W.star(rad_cols[static_cast<std::size_t>(m)], star_cols));
        for (Index b = 0; b < nU; ++b) {
            if (!c(b).is_zero())
                throw Error("truncated_relfree: the involution does not preserve the radical");
        }
        rad_invol.col(m) = c.tail(qR);
    }

    return assemble(blocks, qR, triples, rad_invol, rad_labels);
}

// --- index report ---------------------------------------------------------------

KemerReport kemer_report(const StarAlgebra& A, int shat_max,
                         const std::optional<PathCertificate>& cert,
                         const EngineOptions& opts) {
    if (!A.wm) throw Error("kemer_report: the algebra has no Wedderburn data");
    if (shat_max < 1) throw Error("kemer_report: the witness depth must be positive");

    KemerReport rep;
    rep.par = cpar_star(A);
    rep.beta_upper = {rep.par.t1, rep.par.t2};
    rep.gamma_lower = 1;
    rep.gamma_upper = rep.par.nd;
    rep.gamma_exact = rep.par.nd == 1;

    rep.overflow_confirmed =
        alternating_overflow_identity(A, rep.par.t1 + 1, rep.par.t2, opts) &&
        alternating_overflow_identity(A, rep.par.t1, rep.par.t2 + 1, opts);

    bool ok = true;
    try {
        for (int shat = 1; shat <= shat_max && ok; ++shat) {
            WitnessResult w = beta_witness(A, shat, cert, opts);
            if (!check_type(w.poly, w.type)) {
                ok = false;
                break;
            }
            rep.shat_checked = shat;
        }
    } catch (const Error&) {
        ok = false;
    }
    if (ok && rep.shat_checked == shat_max) {
        rep.witnessed = true;
        rep.beta_lower = rep.beta_upper;
    }

    rep.beta_exact = rep.witnessed && rep.overflow_confirmed && rep.beta_lower == rep.beta_upper;
    if (rep.beta_exact && rep.gamma_exact)
        rep.ind_star = std::make_pair(rep.beta_lower, rep.gamma_lower);
    return rep;
}

}  // namespace starpi
