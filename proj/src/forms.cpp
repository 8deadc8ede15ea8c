#include "starpi/forms.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "starpi/error.hpp"
#include "starpi/linalg.hpp"
#include "poly_lex.hpp"

namespace starpi {

namespace {

bool vec_eq(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return false;
    for (Index i = 0; i < a.size(); ++i)
        if (a(i) != b(i)) return false;
    return true;
}

bool vec_is_zero(const Vec& v) {
    for (Index i = 0; i < v.size(); ++i)
        if (!v(i).is_zero()) return false;
    return true;
}

}  // namespace

FormFactor form_f1(Monomial u) {
    if (u.empty()) throw Error("form factors need a nonempty argument");
    return FormFactor{1, std::move(u), {}};
}

FormFactor form_f2(Monomial u, Monomial v) {
    if (u.empty() || v.empty()) throw Error("form factors need nonempty arguments");
    if (MonoLess{}(v, u)) std::swap(u, v);
    return FormFactor{2, std::move(u), std::move(v)};
}

FormPoly FormPoly::from_term(FormKey k, Rational c) {
    FormPoly p;
    p.add_term(std::move(k), c);
    return p;
}

FormPoly FormPoly::from_star(const StarPoly& p) {
    FormPoly out;
    for (const auto& [m, c] : p.terms()) out.add_term(FormKey{{}, m}, c);
    return out;
}

void FormPoly::add_term(FormKey k, const Rational& c) {
    if (c.is_zero()) return;
    if (k.word.empty() && k.factors.empty())
        throw Error("a form term needs a word or a form factor");
    std::sort(k.factors.begin(), k.factors.end());
    auto [it, inserted] = terms_.try_emplace(std::move(k), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FormPoly FormPoly::operator-() const {
    FormPoly out;
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
    return out;
}

FormPoly& FormPoly::operator+=(const FormPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

FormPoly& FormPoly::operator-=(const FormPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

FormPoly& FormPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

FormPoly operator*(const FormPoly& a, const FormPoly& b) {
    FormPoly out;
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            FormKey k;
            k.factors = ka.factors;
            k.factors.insert(k.factors.end(), kb.factors.begin(), kb.factors.end());
            k.word = ka.word;
            k.word.insert(k.word.end(), kb.word.begin(), kb.word.end());
            out.add_term(std::move(k), ca * cb);
        }
    return out;
}

std::vector<VarRef> form_variables(const FormPoly& p) {
    std::set<VarRef> seen;
    auto scan = [&](const Monomial& m) {
        for (const Letter& l : m) seen.insert(var_of(l));
    };
    for (const auto& [k, c] : p.terms()) {
        scan(k.word);
        for (const FormFactor& f : k.factors) {
            scan(f.u);
            scan(f.v);
        }
    }
    return {seen.begin(), seen.end()};
}

// --- text --------------------------------------------------------------------

namespace {

using detail::Tok;
using detail::Token;

struct FormParser {
    const std::vector<Token>& t;
    std::size_t i = 0;

    const Token& cur() const { return t[i]; }
    bool accept(Tok k) {
        if (t[i].kind == k) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(Tok k, const char* what) {
        if (!accept(k)) throw Error(std::string("parse: expected ") + what);
    }

    Rational parse_coeff() {
        if (cur().kind != Tok::Int) throw Error("parse: expected a number");
        std::string num = cur().number;
        ++i;
        if (accept(Tok::Slash)) {
            if (cur().kind != Tok::Int) throw Error("parse: expected a denominator");
            num += "/" + cur().number;
            ++i;
        }
        auto r = Rational::parse(num);
        if (!r) throw Error("parse: bad coefficient " + num);
        return *r;
    }

    long parse_exponent() {
        if (!accept(Tok::Caret)) return 1;
        if (cur().kind != Tok::Int) throw Error("parse: expected an exponent");
        long e = std::stol(cur().number);
        ++i;
        if (e < 1) throw Error("parse: exponents must be positive");
        return e;
    }

    Monomial parse_monomial() {
        Monomial m;
        for (;;) {
            if (cur().kind != Tok::Var) throw Error("parse: expected a variable");
            Letter l = cur().letter;
            ++i;
            long e = parse_exponent();
            for (long k = 0; k < e; ++k) m.push_back(l);
            if (!accept(Tok::Star)) break;
        }
        return m;
    }

    void parse_component(FormKey& key) {
        if (cur().kind == Tok::F1 || cur().kind == Tok::F2) {
            bool two = cur().kind == Tok::F2;
            ++i;
            expect(Tok::LParen, "'('");
            Monomial u = parse_monomial();
            Monomial v;
            if (two) {
                expect(Tok::Comma, "','");
                v = parse_monomial();
            }
            expect(Tok::RParen, "')'");
            FormFactor f = two ? form_f2(std::move(u), std::move(v)) : form_f1(std::move(u));
            long e = parse_exponent();
            for (long k = 0; k < e; ++k) key.factors.push_back(f);
            return;
        }
        if (cur().kind == Tok::Var) {
            Letter l = cur().letter;
            ++i;
            long e = parse_exponent();
            for (long k = 0; k < e; ++k) key.word.push_back(l);
            return;
        }
        throw Error("parse: expected a variable or a form factor");
    }

    std::pair<Rational, FormKey> parse_term() {
        Rational c(1);
        FormKey k;
        if (cur().kind == Tok::Int) {
            c = parse_coeff();
            if (!accept(Tok::Star)) throw Error("parse: constant terms are not allowed");
        }
        parse_component(k);
        while (accept(Tok::Star)) parse_component(k);
        return {c, k};
    }

    FormPoly parse_poly() {
        FormPoly p;
        bool neg = accept(Tok::Minus);
        auto add = [&](bool negate) {
            auto [c, k] = parse_term();
            p.add_term(std::move(k), negate ? -c : c);
        };
        add(neg);
        for (;;) {
            if (accept(Tok::Plus)) {
                add(false);
                continue;
            }
            if (accept(Tok::Minus)) {
                add(true);
                continue;
            }
            break;
        }
        if (cur().kind != Tok::End) throw Error("parse: trailing input");
        return p;
    }
};

std::string monomial_text(const Monomial& m) { return render(StarPoly::from_monomial(m)); }

std::string factor_text(const FormFactor& f) {
    if (f.arity == 1) return "f1(" + monomial_text(f.u) + ")";
    return "f2(" + monomial_text(f.u) + "," + monomial_text(f.v) + ")";
}

std::string term_text(const FormKey& k) {
    std::string out;
    std::size_t i = 0;
    while (i < k.factors.size()) {
        std::size_t j = i;
        while (j < k.factors.size() && k.factors[j] == k.factors[i]) ++j;
        if (!out.empty()) out += "*";
        out += factor_text(k.factors[i]);
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    if (!k.word.empty()) {
        if (!out.empty()) out += "*";
        out += monomial_text(k.word);
    }
    return out;
}

}  // namespace

FormPoly parse_form(const std::string& text) {
    auto toks = detail::lex(text);
    FormParser p{toks, 0};
    return p.parse_poly();
}

std::string render_form(const FormPoly& p) {
    if (p.is_zero()) return "0";
    // Words in descending order; among equal words, fewer factors first.
    std::vector<const std::pair<const FormKey, Rational>*> items;
    for (const auto& t : p.terms()) items.push_back(&t);
    MonoLess less;
    std::stable_sort(items.begin(), items.end(), [&](const auto* a, const auto* b) {
        if (a->first.word != b->first.word) return less(b->first.word, a->first.word);
        if (a->first.factors.size() != b->first.factors.size())
            return a->first.factors.size() < b->first.factors.size();
        return std::lexicographical_compare(a->first.factors.begin(), a->first.factors.end(),
                                            b->first.factors.begin(), b->first.factors.end());
    });
    std::string out;
    bool first = true;
    for (const auto* t : items) {
        const Rational& c = t->second;
        bool neg = c.sign() < 0;
        Rational mag = neg ? -c : c;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string body = term_text(t->first);
        if (mag != Rational(1)) {
            out += mag.str() + "*" + body;
        } else {
            out += body;
        }
    }
    return out;
}

// --- trace forms ---------------------------------------------------------------

TraceForms make_trace_forms(const StarAlgebra& A) {
    if (!A.wm) throw Error("trace forms require Wedderburn-Malcev data");
    const WedderburnData& wm = *A.wm;

    std::vector<Vec> bbasis;
    for (const Mat& u : wm.units)
        for (Index c = 0; c < u.cols(); ++c) bbasis.push_back(u.col(c));
    Index nB = static_cast<Index>(bbasis.size());
    Index q = wm.radical.cols();
    if (nB + q != A.n) throw Error("semisimple part and radical do not span");

    Mat P(A.n, A.n);
    for (Index j = 0; j < nB; ++j) P.col(j) = bbasis[static_cast<size_t>(j)];
    for (Index j = 0; j < q; ++j) P.col(nB + j) = wm.radical.col(j);

    Mat aug(A.n, 2 * A.n);
    aug.leftCols(A.n) = P;
    aug.rightCols(A.n) = Mat::Identity(A.n, A.n);
    Mat r = rref(aug);
    for (Index i = 0; i < A.n; ++i)
        for (Index j = 0; j < A.n; ++j)
            if (r(i, j) != Rational(i == j ? 1 : 0))
                throw Error("semisimple part and radical do not span");
    Mat pinv = r.rightCols(A.n);
    Mat gamma = pinv.topRows(nB);  // B-coordinates of the semisimple projection

    std::vector<Mat> ops;
    ops.reserve(static_cast<size_t>(nB));
    for (Index i = 0; i < nB; ++i) {
        Mat T(nB, nB);
        for (Index j = 0; j < nB; ++j) {
            Vec prod = multiply(A, bbasis[static_cast<size_t>(i)], bbasis[static_cast<size_t>(j)]) +
                       multiply(A, bbasis[static_cast<size_t>(j)], bbasis[static_cast<size_t>(i)]);
            T.col(j) = gamma * prod;
        }
        ops.push_back(std::move(T));
    }

    Eigen::Matrix<Rational, 1, Eigen::Dynamic> tr(1, nB);
    for (Index i = 0; i < nB; ++i) tr(0, i) = operator_trace(ops[static_cast<size_t>(i)]);
    Mat tt(nB, nB);
    for (Index i = 0; i < nB; ++i)
        for (Index j = i; j < nB; ++j) {
            tt(i, j) = operator_trace(ops[static_cast<size_t>(i)] * ops[static_cast<size_t>(j)]);
            tt(j, i) = tt(i, j);
        }

    TraceForms tf;
    tf.A = &A;
    tf.f1v = tr * gamma;
    tf.f2m = gamma.transpose() * tt * gamma;
    return tf;
}

TraceForms make_matrix_trace_forms(const StarAlgebra& A) {
    if (!A.wm || A.wm->p() != 1 || A.wm->radical.cols() != 0 ||
        A.wm->blocks[0].kind != BlockKind::Transpose)
        throw Error("the ordinary trace is defined for full matrix algebras");
    Index k = A.wm->blocks[0].k;

    auto tr = [&](const Vec& a) {
        return operator_trace(left_mult_matrix(A, a)) / Rational(static_cast<long>(k));
    };
    TraceForms tf;
    tf.A = &A;
    tf.f1v.resize(1, A.n);
    tf.f2m.resize(A.n, A.n);
    for (Index i = 0; i < A.n; ++i) tf.f1v(0, i) = tr(basis_vec(A, i));
    for (Index i = 0; i < A.n; ++i)
        for (Index j = 0; j < A.n; ++j)
            tf.f2m(i, j) = tr(multiply(A, basis_vec(A, i), basis_vec(A, j)));
    return tf;
}

Rational trace_f1(const TraceForms& tf, const Vec& a) {
    Rational out(0);
    for (Index i = 0; i < a.size(); ++i) out += tf.f1v(0, i) * a(i);
    return out;
}

Rational trace_f2(const TraceForms& tf, const Vec& a, const Vec& b) {
    Vec fb = tf.f2m * b;
    Rational out(0);
    for (Index i = 0; i < a.size(); ++i) out += a(i) * fb(i);
    return out;
}

FormValue evaluate_form_parts(const FormPoly& fp, const Substitution& s, const TraceForms& tf) {
    const StarAlgebra& A = *tf.A;
    std::map<Monomial, Vec, MonoLess> cache;
    auto mval = [&](const Monomial& m) -> const Vec& {
        auto it = cache.find(m);
        if (it == cache.end())
            it = cache.emplace(m, evaluate(StarPoly::from_monomial(m), s, A)).first;
        return it->second;
    };
    FormValue out{Rational(0), Vec::Zero(A.n)};
    for (const auto& [key, c] : fp.terms()) {
        Rational scalar = c;
        for (const FormFactor& f : key.factors) {
            scalar *= f.arity == 1 ? trace_f1(tf, mval(f.u))
                                   : trace_f2(tf, mval(f.u), mval(f.v));
            if (scalar.is_zero()) break;
        }
        if (scalar.is_zero()) continue;
        if (key.word.empty())
            out.scalar += scalar;
        else
            out.vec += scalar * mval(key.word);
    }
    return out;
}

Vec evaluate_form(const FormPoly& fp, const Substitution& s, const TraceForms& tf) {
    FormValue v = evaluate_form_parts(fp, s, tf);
    if (v.scalar.is_zero()) return v.vec;
    if (!tf.A->unit) throw Error("word-free terms require a unital algebra");
    return Vec(v.vec + v.scalar * *tf.A->unit);
}

bool verify_traceid10(const TraceForms& tf) {
    const StarAlgebra& A = *tf.A;
    for (Index i = 0; i < A.n; ++i)
        for (Index j = 0; j < A.n; ++j)
            if (tf.f2m(i, j) != tf.f2m(j, i)) return false;
    std::vector<Vec> sym = symmetric_basis(A);
    std::vector<Vec> skew = skew_basis(A);
    for (const Vec& z : skew)
        if (!trace_f1(tf, z).is_zero()) return false;
    for (const Vec& y : sym)
        for (const Vec& z : skew)
            if (!trace_f2(tf, y, z).is_zero() || !trace_f2(tf, z, y).is_zero()) return false;
    if (A.wm) {
        const Mat& rad = A.wm->radical;
        for (Index c = 0; c < rad.cols(); ++c) {
            Vec r = rad.col(c);
            if (!trace_f1(tf, r).is_zero()) return false;
            for (Index j = 0; j < A.n; ++j)
                if (!trace_f2(tf, r, basis_vec(A, j)).is_zero()) return false;
        }
    }
    return true;
}

// --- the trace-transfer identities --------------------------------------------

std::vector<FormIdentity> traceid1_identities(const StarPoly& f, const PolyType& ty,
                                              const StarAlgebra& A) {
    if (!check_type(f, ty)) throw Error("polynomial does not have the declared type");
    if (ty.mu_sets.size() != 1) throw Error("exactly one mu-set is required");
    (void)A;

    int max_sym = 0, max_skew = 0;
    for (const VarRef& v : variables(f)) {
        if (v.ab == Alphabet::Sym) max_sym = std::max(max_sym, v.index);
        if (v.ab == Alphabet::Skew) max_skew = std::max(max_skew, v.index);
    }
    VarRef fy1 = sym_var(max_sym + 1), fy2 = sym_var(max_sym + 2);
    VarRef fz1 = skew_var(max_skew + 1), fz2 = skew_var(max_skew + 2);

    auto vp = [](VarRef v) { return StarPoly::variable(Letter{v.ab, v.index, false}); };
    auto jord = [](const StarPoly& a, const StarPoly& b) { return a * b + b * a; };
    const std::vector<VarRef>& mu = ty.mu_sets[0];
    auto rhs_sum = [&](auto image) {
        StarPoly sum;
        for (const VarRef& v : mu) {
            std::map<VarRef, StarPoly> m;
            m.emplace(v, image(v));
            sum += substitute(f, m);
        }
        return sum;
    };
    auto wrap = [&](FormFactor fac) {
        return FormPoly::from_term(FormKey{{std::move(fac)}, {}}) * FormPoly::from_star(f);
    };
    Monomial my1{Letter{fy1.ab, fy1.index, false}}, my2{Letter{fy2.ab, fy2.index, false}};
    Monomial mz1{Letter{fz1.ab, fz1.index, false}}, mz2{Letter{fz2.ab, fz2.index, false}};

    std::vector<FormIdentity> out;
    out.push_back({"f2-sym", wrap(form_f2(my1, my2)),
                   FormPoly::from_star(rhs_sum(
                       [&](VarRef v) { return jord(vp(fy1), jord(vp(fy2), vp(v))); }))});
    out.push_back({"f2-skew", wrap(form_f2(mz1, mz2)),
                   FormPoly::from_star(rhs_sum(
                       [&](VarRef v) { return jord(vp(fz1), jord(vp(fz2), vp(v))); }))});
    out.push_back({"f1-sym", wrap(form_f1(my1)),
                   FormPoly::from_star(rhs_sum(
                       [&](VarRef v) { return jord(vp(fy1), vp(v)); }))});
    return out;
}

bool verify_form_identity(const FormIdentity& id, const TraceForms& tf,
                          const EngineOptions& opts) {
    const StarAlgebra& A = *tf.A;
    if (!A.wm) throw Error("elementary verification requires Wedderburn-Malcev data");
    const WedderburnData& wm = *A.wm;

    std::set<VarRef> vars;
    for (const VarRef& v : form_variables(id.lhs)) vars.insert(v);
    for (const VarRef& v : form_variables(id.rhs)) vars.insert(v);

    std::vector<Vec> sym_dom, skew_dom;
    for (const BasisElem& e : wm.d0) sym_dom.push_back(e.v);
    for (const BasisElem& e : wm.u0) sym_dom.push_back(e.v);
    for (const BasisElem& e : wm.d1) skew_dom.push_back(e.v);
    for (const BasisElem& e : wm.u1) skew_dom.push_back(e.v);

    std::vector<VarRef> order(vars.begin(), vars.end());
    std::vector<const std::vector<Vec>*> doms;
    long long total = 1;
    for (const VarRef& v : order) {
        if (v.ab == Alphabet::Gen)
            throw Error("elementary substitutions use symmetric and skew variables only");
        const auto* d = v.ab == Alphabet::Sym ? &sym_dom : &skew_dom;
        doms.push_back(d);
        long long sz = static_cast<long long>(d->size());
        if (sz == 0) return true;
        if (total > opts.budget / sz + 1) throw Error("enumeration budget exceeded");
        total *= sz;
    }
    if (total > opts.budget) throw Error("enumeration budget exceeded");

    std::vector<size_t> digits(order.size(), 0);
    for (long long flat = 0; flat < total; ++flat) {
        Substitution s;
        for (size_t i = 0; i < order.size(); ++i) s.assign[order[i]] = (*doms[i])[digits[i]];
        FormValue a = evaluate_form_parts(id.lhs, s, tf);
        FormValue b = evaluate_form_parts(id.rhs, s, tf);
        if (a.scalar != b.scalar || !vec_eq(a.vec, b.vec)) return false;
        for (size_t i = order.size(); i-- > 0;) {
            if (++digits[i] < doms[i]->size()) break;
            digits[i] = 0;
        }
    }
    return true;
}

bool verify_traceid1(const StarPoly& f, const PolyType& ty, const TraceForms& tf,
                     const EngineOptions& opts) {
    const StarAlgebra& A = *tf.A;
    ParStar par = par_star(A);
    if (ty.tbar != std::make_pair(par.t1, par.t2) ||
        ty.big_sets.size() != static_cast<size_t>(par.nd - 1) || ty.mu_sets.size() != 1)
        throw Error("type does not match the algebra parameters");
    for (const FormIdentity& id : traceid1_identities(f, ty, A))
        if (!verify_form_identity(id, tf, opts)) return false;
    return true;
}

// --- Cayley-Hamilton -----------------------------------------------------------

FormPoly ch_trace_poly(int n) {
    if (n < 1) throw Error("the matrix size must be positive");
    Monomial x{gen_letter(1)};
    FormPoly X = FormPoly::from_term(FormKey{{}, x}) -
                 FormPoly::from_term(FormKey{{form_f1(x)}, {}});
    for (int k = 2; k <= n; ++k) {
        FormPoly xx = X * FormPoly::from_term(FormKey{{}, x});
        FormPoly tr;
        for (const auto& [key, c] : xx.terms()) {
            FormKey nk;
            nk.factors = key.factors;
            nk.factors.push_back(form_f1(key.word));
            tr.add_term(std::move(nk), c);
        }
        X = xx - Rational(1, k) * tr;
    }
    return X;
}

namespace {

// Canonical multisets of form factors f1(x^a), f2(x^a, x^b) of total degree d.
void enum_factor_multisets(int rem, const std::vector<std::pair<FormFactor, int>>& cands,
                           size_t start, std::vector<FormFactor>& cur,
                           std::vector<std::vector<FormFactor>>& out) {
    if (rem == 0) {
        out.push_back(cur);
        return;
    }
    for (size_t i = start; i < cands.size(); ++i) {
        if (cands[i].second > rem) continue;
        cur.push_back(cands[i].first);
        enum_factor_multisets(rem - cands[i].second, cands, i, cur, out);
        cur.pop_back();
    }
}

Monomial x_power(int e) { return Monomial(static_cast<size_t>(e), gen_letter(1)); }

}  // namespace

std::optional<FormPoly> derive_ch_type(const StarAlgebra& A, int degree,
                                       const TraceForms& tf, const EngineOptions& opts) {
    if (!A.wm) throw Error("Wedderburn-Malcev data required");
    if (degree < 1) throw Error("degree must be positive");

    std::vector<std::pair<FormFactor, int>> cands;
    for (int g = 1; g < degree; ++g) cands.emplace_back(form_f1(x_power(g)), g);
    for (int a = 1; a < degree; ++a)
        for (int b = a; a + b < degree; ++b)
            cands.emplace_back(form_f2(x_power(a), x_power(b)), a + b);
    std::sort(cands.begin(), cands.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });

    struct AnsatzTerm {
        int i0;
        std::vector<FormFactor> factors;
    };
    std::vector<AnsatzTerm> terms;
    for (int i0 = 1; i0 < degree; ++i0) {
        std::vector<std::vector<FormFactor>> sets;
        std::vector<FormFactor> cur;
        enum_factor_multisets(degree - i0, cands, 0, cur, sets);
        for (auto& s : sets) terms.push_back({i0, std::move(s)});
    }
    Index t = static_cast<Index>(terms.size());

    std::vector<Vec> bbasis;
    for (const Mat& u : A.wm->units)
        for (Index c = 0; c < u.cols(); ++c) bbasis.push_back(u.col(c));
    if (bbasis.empty()) throw Error("empty semisimple part");

    std::mt19937 rng(opts.seed);
    auto rand_coord = [&]() { return Rational(static_cast<long>(rng() % 11) - 5); };
    auto sample_semisimple = [&]() {
        Vec a = Vec::Zero(A.n);
        for (const Vec& b : bbasis) a += rand_coord() * b;
        return a;
    };
    auto sample_full = [&]() {
        Vec a = Vec::Zero(A.n);
        for (Index i = 0; i < A.n; ++i) a(i) = rand_coord();
        return a;
    };

    auto powers_of = [&](const Vec& a) {
        std::vector<Vec> pw(static_cast<size_t>(degree) + 1);
        pw[1] = a;
        for (int e = 2; e <= degree; ++e) pw[static_cast<size_t>(e)] = multiply(A, pw[static_cast<size_t>(e - 1)], a);
        return pw;
    };
    auto factor_scalar = [&](const FormFactor& f, const std::vector<Vec>& pw) {
        const Vec& u = pw[f.u.size()];
        if (f.arity == 1) return trace_f1(tf, u);
        return trace_f2(tf, u, pw[f.v.size()]);
    };

    std::vector<Vec> samples;
    size_t want = static_cast<size_t>(t / std::max<Index>(A.n, 1)) + 3;
    for (size_t k = 0; k < want; ++k) samples.push_back(sample_semisimple());

    const int kNd = par_star(A).nd;
    for (int round = 0; round < 8; ++round) {
        Mat M(static_cast<Index>(samples.size()) * A.n, t);
        Vec rhs(static_cast<Index>(samples.size()) * A.n);
        for (size_t si = 0; si < samples.size(); ++si) {
            auto pw = powers_of(samples[si]);
            Index row0 = static_cast<Index>(si) * A.n;
            for (Index c = 0; c < t; ++c) {
                const AnsatzTerm& at = terms[static_cast<size_t>(c)];
                Rational sc(1);
                for (const FormFactor& f : at.factors) sc *= factor_scalar(f, pw);
                const Vec& w = pw[static_cast<size_t>(at.i0)];
                for (Index r = 0; r < A.n; ++r) M(row0 + r, c) = sc * w(r);
            }
            const Vec& top = pw[static_cast<size_t>(degree)];
            for (Index r = 0; r < A.n; ++r) rhs(row0 + r) = -top(r);
        }
        std::optional<Vec> sol = solve(M, rhs);
        if (!sol) return std::nullopt;

        FormPoly K = FormPoly::from_term(FormKey{{}, x_power(degree)});
        for (Index c = 0; c < t; ++c) {
            if ((*sol)(c).is_zero()) continue;
            const AnsatzTerm& at = terms[static_cast<size_t>(c)];
            K.add_term(FormKey{at.factors, x_power(at.i0)}, (*sol)(c));
        }

        bool certified = true;
        Substitution s;
        for (int k = 0; k < 50 && certified; ++k) {
            Vec a = sample_semisimple();
            s.assign.clear();
            s.assign[gen_var(1)] = a;
            if (!vec_is_zero(evaluate_form(K, s, tf))) {
                samples.push_back(a);
                certified = false;
            }
        }
        if (certified && kNd > 1) {
            for (int k = 0; k < 20 && certified; ++k) {
                Vec a = sample_full();
                s.assign.clear();
                s.assign[gen_var(1)] = a;
                Vec v = evaluate_form(K, s, tf);
                Vec w = v;
                for (int e = 1; e < kNd; ++e) w = multiply(A, w, v);
                if (!vec_is_zero(w)) return std::nullopt;
            }
        }
        if (certified) return K;
    }
    return std::nullopt;
}

}  // namespace starpi
