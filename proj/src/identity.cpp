#include "starpi/identity.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <thread>
#include <utility>

#include "starpi/error.hpp"
#include "starpi/linalg.hpp"

namespace starpi {

namespace {

// Sparse coordinate vector, sorted by index.
using SVec = std::vector<std::pair<Index, Rational>>;

SVec to_sparse(const Vec& v) {
    SVec out;
    for (Index i = 0; i < v.size(); ++i)
        if (!v(i).is_zero()) out.emplace_back(i, v(i));
    return out;
}

bool vec_eq(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return false;
    for (Index i = 0; i < a.size(); ++i)
        if (a(i) != b(i)) return false;
    return true;
}

struct EvalCtx {
    Index n;
    std::vector<std::vector<SVec>> msp;  // sparse structure constants

    explicit EvalCtx(const StarAlgebra& A) : n(A.n) {
        msp.assign(static_cast<size_t>(n), std::vector<SVec>(static_cast<size_t>(n)));
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                msp[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    to_sparse(A.mult[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    }
};

// Per-thread accumulation buffers.
struct EvalScratch {
    std::vector<Rational> acc;
    std::vector<Index> touched;
    SVec cur, next;

    explicit EvalScratch(Index n) : acc(static_cast<size_t>(n), Rational(0)) {}
};

void sparse_mul(const EvalCtx& ctx, const SVec& a, const SVec& b, SVec& out,
                EvalScratch& s) {
    s.touched.clear();
    for (const auto& [i, ca] : a)
        for (const auto& [j, cb] : b) {
            const SVec& prod = ctx.msp[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (prod.empty()) continue;
            Rational cab = ca * cb;
            for (const auto& [k, c] : prod) {
                if (s.acc[static_cast<size_t>(k)].is_zero()) s.touched.push_back(k);
                s.acc[static_cast<size_t>(k)] += cab * c;
            }
        }
    std::sort(s.touched.begin(), s.touched.end());
    s.touched.erase(std::unique(s.touched.begin(), s.touched.end()), s.touched.end());
    out.clear();
    for (Index k : s.touched) {
        Rational& r = s.acc[static_cast<size_t>(k)];
        if (!r.is_zero()) out.emplace_back(k, r);
        r = Rational(0);
    }
}

// Polynomial compiled against a slot table so evaluation avoids map lookups.
struct CompiledPoly {
    struct Term {
        Rational c;
        std::vector<std::pair<int, bool>> word;  // (slot, starred)
    };
    std::vector<Term> terms;
    std::vector<VarRef> slots;
};

CompiledPoly compile_poly(const StarPoly& p) {
    CompiledPoly cp;
    std::map<VarRef, int> slot_of;
    for (const auto& [mono, c] : p.terms()) {
        CompiledPoly::Term t;
        t.c = c;
        t.word.reserve(mono.size());
        for (const Letter& l : mono) {
            VarRef v = var_of(l);
            auto [it, inserted] = slot_of.try_emplace(v, static_cast<int>(cp.slots.size()));
            if (inserted) cp.slots.push_back(v);
            t.word.emplace_back(it->second, l.starred);
        }
        cp.terms.push_back(std::move(t));
    }
    return cp;
}

// vals / star_vals are indexed by slot.
void eval_compiled(const EvalCtx& ctx, const CompiledPoly& cp,
                   const std::vector<const SVec*>& vals,
                   const std::vector<const SVec*>& star_vals, EvalScratch& s, Vec& out) {
    out = Vec::Zero(ctx.n);
    for (const auto& t : cp.terms) {
        auto pick = [&](size_t pos) -> const SVec* {
            const auto& [slot, starred] = t.word[pos];
            return starred ? star_vals[static_cast<size_t>(slot)]
                           : vals[static_cast<size_t>(slot)];
        };
        s.cur = *pick(0);
        for (size_t pos = 1; pos < t.word.size() && !s.cur.empty(); ++pos) {
            sparse_mul(ctx, s.cur, *pick(pos), s.next, s);
            std::swap(s.cur, s.next);
        }
        for (const auto& [k, c] : s.cur) out(k) += t.c * c;
    }
}

bool vec_is_zero(const Vec& v) {
    for (Index i = 0; i < v.size(); ++i)
        if (!v(i).is_zero()) return false;
    return true;
}

std::vector<Vec> eigenspace_basis(const StarAlgebra& A, int sign) {
    Mat m = A.invol;
    for (Index i = 0; i < A.n; ++i) m(i, i) -= Rational(sign);
    Mat k = kernel(m);
    std::vector<Vec> out;
    out.reserve(static_cast<size_t>(k.rows()));
    for (Index r = 0; r < k.rows(); ++r) out.push_back(k.row(r).transpose());
    return out;
}

// Enumeration domains for one compiled component.
struct Domains {
    std::vector<const std::vector<Vec>*> dense;
    std::vector<const std::vector<SVec>*> plain;
    std::vector<const std::vector<SVec>*> starred;
    std::vector<long long> sizes;
};

long long domain_total(const Domains& d, long long budget) {
    long long total = 1;
    for (long long sz : d.sizes) {
        if (sz == 0) return 0;
        if (total > budget / sz + 1) return budget + 1;
        total *= sz;
    }
    return total;
}

// Scans flat tuple indices [lo, hi); records the smallest falsifying index.
void scan_range(const EvalCtx& ctx, const CompiledPoly& cp, const Domains& dom,
                long long lo, long long hi, std::atomic<long long>& best) {
    size_t nslots = cp.slots.size();
    std::vector<long long> digits(nslots, 0);
    long long rem = lo;
    for (size_t i = nslots; i-- > 0;) {
        digits[i] = rem % dom.sizes[i];
        rem /= dom.sizes[i];
    }
    std::vector<const SVec*> vals(nslots), star_vals(nslots);
    EvalScratch scratch(ctx.n);
    Vec out;
    for (long long flat = lo; flat < hi; ++flat) {
        if (flat >= best.load(std::memory_order_relaxed)) return;
        for (size_t i = 0; i < nslots; ++i) {
            size_t d = static_cast<size_t>(digits[i]);
            vals[i] = &(*dom.plain[i])[d];
            star_vals[i] = dom.starred[i] ? &(*dom.starred[i])[d] : vals[i];
        }
        eval_compiled(ctx, cp, vals, star_vals, scratch, out);
        if (!vec_is_zero(out)) {
            long long prev = best.load(std::memory_order_relaxed);
            while (flat < prev &&
                   !best.compare_exchange_weak(prev, flat, std::memory_order_relaxed)) {
            }
            return;
        }
        for (size_t i = nslots; i-- > 0;) {
            if (++digits[i] < dom.sizes[i]) break;
            digits[i] = 0;
        }
    }
}

Substitution decode_tuple(const CompiledPoly& cp, const Domains& dom, long long flat) {
    Substitution s;
    size_t nslots = cp.slots.size();
    std::vector<long long> digits(nslots, 0);
    for (size_t i = nslots; i-- > 0;) {
        digits[i] = flat % dom.sizes[i];
        flat /= dom.sizes[i];
    }
    for (size_t i = 0; i < nslots; ++i)
        s.assign[cp.slots[i]] = (*dom.dense[i])[static_cast<size_t>(digits[i])];
    return s;
}

}  // namespace

std::vector<Vec> symmetric_basis(const StarAlgebra& A) { return eigenspace_basis(A, 1); }

std::vector<Vec> skew_basis(const StarAlgebra& A) { return eigenspace_basis(A, -1); }

Vec evaluate(const StarPoly& p, const Substitution& s, const StarAlgebra& A) {
    if (p.is_zero()) return Vec::Zero(A.n);
    EvalCtx ctx(A);
    CompiledPoly cp = compile_poly(p);
    size_t nslots = cp.slots.size();
    std::vector<SVec> plain_store(nslots), star_store(nslots);
    std::vector<const SVec*> vals(nslots), star_vals(nslots);
    for (size_t i = 0; i < nslots; ++i) {
        VarRef v = cp.slots[i];
        auto it = s.assign.find(v);
        if (it == s.assign.end()) throw Error("no value assigned to " + var_name(v));
        const Vec& val = it->second;
        if (val.size() != A.n) throw Error("value for " + var_name(v) + " has wrong dimension");
        Vec sigma = involute(A, val);
        if (v.ab == Alphabet::Sym && !vec_eq(sigma, val))
            throw Error("symmetric variable " + var_name(v) + " assigned a non-symmetric value");
        if (v.ab == Alphabet::Skew && !vec_eq(sigma, Vec(-val)))
            throw Error("skew variable " + var_name(v) + " assigned a non-skew value");
        plain_store[i] = to_sparse(val);
        star_store[i] = to_sparse(sigma);
        vals[i] = &plain_store[i];
        star_vals[i] = &star_store[i];
    }
    EvalScratch scratch(A.n);
    Vec out;
    eval_compiled(ctx, cp, vals, star_vals, scratch, out);
    return out;
}

IdentityResult is_identity(const StarPoly& p, const StarAlgebra& A, const EngineOptions& opts) {
    IdentityResult res;
    if (p.is_zero()) return res;

    EvalCtx ctx(A);
    std::vector<Vec> sym_b = symmetric_basis(A);
    std::vector<Vec> skew_b = skew_basis(A);
    std::vector<Vec> full_b;
    full_b.reserve(static_cast<size_t>(A.n));
    for (Index i = 0; i < A.n; ++i) full_b.push_back(basis_vec(A, i));

    auto sparsify = [](const std::vector<Vec>& vs) {
        std::vector<SVec> out;
        out.reserve(vs.size());
        for (const Vec& v : vs) out.push_back(to_sparse(v));
        return out;
    };
    std::vector<SVec> sym_s = sparsify(sym_b);
    std::vector<SVec> skew_s = sparsify(skew_b);
    std::vector<SVec> full_s = sparsify(full_b);
    std::vector<SVec> full_star_s;
    full_star_s.reserve(full_b.size());
    for (const Vec& v : full_b) full_star_s.push_back(to_sparse(involute(A, v)));

    long long spent = 0;
    for (const StarPoly& comp : multilinearize(p)) {
        CompiledPoly cp = compile_poly(comp);
        size_t nslots = cp.slots.size();
        Domains dom;
        dom.dense.resize(nslots);
        dom.plain.resize(nslots);
        dom.starred.resize(nslots, nullptr);
        dom.sizes.resize(nslots);
        for (size_t i = 0; i < nslots; ++i) {
            switch (cp.slots[i].ab) {
                case Alphabet::Sym:
                    dom.dense[i] = &sym_b;
                    dom.plain[i] = &sym_s;
                    break;
                case Alphabet::Skew:
                    dom.dense[i] = &skew_b;
                    dom.plain[i] = &skew_s;
                    break;
                case Alphabet::Gen:
                    dom.dense[i] = &full_b;
                    dom.plain[i] = &full_s;
                    dom.starred[i] = &full_star_s;
                    break;
            }
            dom.sizes[i] = static_cast<long long>(dom.plain[i]->size());
        }
        long long total = domain_total(dom, opts.budget - spent);
        if (spent + total > opts.budget) throw Error("enumeration budget exceeded");
        spent += total;
        if (total == 0) continue;

        std::atomic<long long> best{LLONG_MAX};
        int jobs = std::max(1, opts.jobs);
        if (jobs == 1 || total < 2048) {
            scan_range(ctx, cp, dom, 0, total, best);
        } else {
            jobs = static_cast<int>(std::min<long long>(jobs, total));
            long long chunk = (total + jobs - 1) / jobs;
            std::vector<std::thread> workers;
            workers.reserve(static_cast<size_t>(jobs));
            for (int w = 0; w < jobs; ++w) {
                long long lo = w * chunk;
                long long hi = std::min(total, lo + chunk);
                if (lo >= hi) break;
                workers.emplace_back([&, lo, hi] { scan_range(ctx, cp, dom, lo, hi, best); });
            }
            for (auto& t : workers) t.join();
        }
        long long found = best.load();
        if (found != LLONG_MAX) {
            res.identity = false;
            res.witness = decode_tuple(cp, dom, found);
            res.witness_poly = comp;
            return res;
        }
    }
    return res;
}

SubstitutionClass classify_substitution(const StarAlgebra& A, const Substitution& s) {
    if (!A.wm) throw Error("classification requires Wedderburn-Malcev data");
    const WedderburnData& wm = *A.wm;
    SubstitutionClass out;
    for (const auto& [var, val] : s.assign) {
        const std::vector<BasisElem>* prim;
        const std::vector<BasisElem>* rad;
        if (var.ab == Alphabet::Sym) {
            prim = &wm.d0;
            rad = &wm.u0;
        } else if (var.ab == Alphabet::Skew) {
            prim = &wm.d1;
            rad = &wm.u1;
        } else {
            throw Error("elementary substitutions use symmetric and skew variables only");
        }
        bool found = false;
        for (const BasisElem& e : *prim) {
            if (vec_eq(e.v, val)) {
                out.touched_blocks.insert(e.block);
                found = true;
                break;
            }
        }
        if (!found) {
            for (const BasisElem& e : *rad) {
                if (vec_eq(e.v, val)) {
                    out.radical_count += 1;
                    if (e.l1 <= wm.p()) out.touched_blocks.insert(e.l1);
                    if (e.l2 <= wm.p()) out.touched_blocks.insert(e.l2);
                    found = true;
                    break;
                }
            }
        }
        if (!found)
            throw Error("value for " + var_name(var) + " is not an elementary basis element");
    }
    ParStar par = par_star(A);
    out.thin = out.radical_count < par.nd - 1;
    out.complete = true;
    for (int l = 1; l <= wm.p(); ++l)
        if (!out.touched_blocks.count(l)) out.complete = false;
    return out;
}

bool is_exact(const StarPoly& p, const StarAlgebra& A, const EngineOptions& opts) {
    if (!A.wm) throw Error("exactness requires Wedderburn-Malcev data");
    if (p.is_zero()) return true;
    if (!is_multilinear(p)) throw Error("exactness is defined for multilinear polynomials");
    const WedderburnData& wm = *A.wm;
    int pcount = wm.p();
    int nd = par_star(A).nd;

    EvalCtx ctx(A);
    CompiledPoly cp = compile_poly(p);
    size_t nslots = cp.slots.size();

    struct Entry {
        SVec sv;
        bool radical;
        int b1, b2;  // touched blocks, 0 = none
    };
    auto family = [&](const std::vector<BasisElem>& prim, const std::vector<BasisElem>& rad) {
        std::vector<Entry> out;
        for (const BasisElem& e : prim) out.push_back({to_sparse(e.v), false, e.block, 0});
        for (const BasisElem& e : rad)
            out.push_back({to_sparse(e.v), true, e.l1 <= pcount ? e.l1 : 0,
                           e.l2 <= pcount ? e.l2 : 0});
        return out;
    };
    std::vector<Entry> sym_dom = family(wm.d0, wm.u0);
    std::vector<Entry> skew_dom = family(wm.d1, wm.u1);

    std::vector<const std::vector<Entry>*> doms(nslots);
    std::vector<long long> sizes(nslots);
    long long total = 1;
    for (size_t i = 0; i < nslots; ++i) {
        if (cp.slots[i].ab == Alphabet::Sym)
            doms[i] = &sym_dom;
        else if (cp.slots[i].ab == Alphabet::Skew)
            doms[i] = &skew_dom;
        else
            throw Error("exactness is defined for Y/Z polynomials");
        sizes[i] = static_cast<long long>(doms[i]->size());
        if (sizes[i] == 0) return true;
        if (total > opts.budget / sizes[i] + 1) throw Error("enumeration budget exceeded");
        total *= sizes[i];
    }
    if (total > opts.budget) throw Error("enumeration budget exceeded");

    std::vector<long long> digits(nslots, 0);
    std::vector<const SVec*> vals(nslots), star_vals(nslots);
    EvalScratch scratch(A.n);
    Vec out;
    std::vector<int> touch_count(static_cast<size_t>(pcount) + 1, 0);
    for (long long flat = 0; flat < total; ++flat) {
        int radical_count = 0;
        std::fill(touch_count.begin(), touch_count.end(), 0);
        for (size_t i = 0; i < nslots; ++i) {
            const Entry& e = (*doms[i])[static_cast<size_t>(digits[i])];
            if (e.radical) ++radical_count;
            if (e.b1 > 0) ++touch_count[static_cast<size_t>(e.b1)];
            if (e.b2 > 0) ++touch_count[static_cast<size_t>(e.b2)];
        }
        bool complete = true;
        for (int l = 1; l <= pcount; ++l)
            if (touch_count[static_cast<size_t>(l)] == 0) complete = false;
        bool thin = radical_count < nd - 1;
        if (thin || !complete) {
            for (size_t i = 0; i < nslots; ++i) {
                vals[i] = &(*doms[i])[static_cast<size_t>(digits[i])].sv;
                star_vals[i] = vals[i];
            }
            eval_compiled(ctx, cp, vals, star_vals, scratch, out);
            if (!vec_is_zero(out)) return false;
        }
        for (size_t i = nslots; i-- > 0;) {
            if (++digits[i] < sizes[i]) break;
            digits[i] = 0;
        }
    }
    return true;
}

bool alternating_overflow_identity(const StarAlgebra& A, int t_plus, int t_minus,
                                   const EngineOptions& opts) {
    if (t_plus < 0 || t_minus < 0) throw Error("alternating set sizes must be nonnegative");
    if (t_plus > opts.alternator_cap || t_minus > opts.alternator_cap)
        throw Error("alternator cap exceeded");
    int deg = t_plus + t_minus;
    if (deg == 0) return true;

    std::vector<Vec> sym_b = symmetric_basis(A);
    std::vector<Vec> skew_b = skew_basis(A);
    std::vector<VarRef> ys, zs;
    for (int i = 1; i <= t_plus; ++i) ys.push_back(sym_var(i));
    for (int i = 1; i <= t_minus; ++i) zs.push_back(skew_var(i));

    // Identifying two variables of an alternating set kills the polynomial;
    // verified symbolically it certifies every tuple drawn from a basis
    // smaller than the set.
    auto repeat_certificate = [&](const StarPoly& f, const std::vector<VarRef>& vars) {
        for (size_t i = 0; i < vars.size(); ++i)
            for (size_t j = i + 1; j < vars.size(); ++j) {
                std::map<VarRef, StarPoly> m;
                m.emplace(vars[i], StarPoly::from_monomial({Letter{vars[j].ab, vars[j].index, false}}, 1));
                if (!substitute(f, m).is_zero()) return false;
            }
        return true;
    };

    // Canonical interleavings: every multilinear polynomial alternating in
    // both sets is a scalar multiple of an alternated interleaving word sum,
    // so checking these words is complete.
    std::vector<int> pattern(static_cast<size_t>(deg), 0);
    for (int i = deg - t_plus; i < deg; ++i) pattern[static_cast<size_t>(i)] = 1;
    std::sort(pattern.begin(), pattern.end());
    do {
        Monomial word;
        int yi = 0, zi = 0;
        for (int b : pattern)
            word.push_back(b ? sym_letter(++yi) : skew_letter(++zi));
        StarPoly f = StarPoly::from_monomial(word, 1);
        if (t_plus >= 2) f = alternate(f, ys, opts.alternator_cap);
        if (t_minus >= 2) f = alternate(f, zs, opts.alternator_cap);
        if (f.is_zero()) continue;

        bool certified = false;
        if (static_cast<size_t>(t_plus) > sym_b.size() && repeat_certificate(f, ys))
            certified = true;
        if (!certified && static_cast<size_t>(t_minus) > skew_b.size() &&
            repeat_certificate(f, zs))
            certified = true;
        if (!certified && !is_identity(f, A, opts).identity) return false;
    } while (std::next_permutation(pattern.begin(), pattern.end()));
    return true;
}

}  // namespace starpi
