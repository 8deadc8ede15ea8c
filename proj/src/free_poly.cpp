#include "starpi/free_poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "poly_lex.hpp"

namespace starpi {

std::string letter_name(const Letter& l) {
    std::string base = l.ab == Alphabet::Sym ? "y" : l.ab == Alphabet::Skew ? "z" : "x";
    base += std::to_string(l.index);
    if (l.ab == Alphabet::Gen && l.starred) base += "'";
    return base;
}

std::string var_name(const VarRef& v) { return letter_name(Letter{v.ab, v.index, false}); }

std::optional<VarRef> parse_var_name(const std::string& s) {
    if (s.size() < 2) return std::nullopt;
    Alphabet ab;
    if (s[0] == 'y') ab = Alphabet::Sym;
    else if (s[0] == 'z') ab = Alphabet::Skew;
    else if (s[0] == 'x') ab = Alphabet::Gen;
    else return std::nullopt;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
    }
    int idx = std::stoi(s.substr(1));
    if (idx < 1) return std::nullopt;
    return VarRef{ab, idx};
}

StarPoly StarPoly::from_monomial(Monomial m, Rational c) {
    StarPoly p;
    p.add_term(m, c);
    return p;
}

void StarPoly::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    if (m.empty()) throw Error("StarPoly: empty word (constants are not elements)");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

StarPoly StarPoly::operator-() const {
    StarPoly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

StarPoly& StarPoly::operator+=(const StarPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

StarPoly& StarPoly::operator-=(const StarPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

StarPoly& StarPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

StarPoly operator*(const StarPoly& a, const StarPoly& b) {
    StarPoly out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

std::set<VarRef> variables(const StarPoly& p) {
    std::set<VarRef> out;
    for (const auto& [m, c] : p.terms()) {
        for (const Letter& l : m) out.insert(var_of(l));
    }
    return out;
}

static std::map<VarRef, int> multidegree(const Monomial& m) {
    std::map<VarRef, int> d;
    for (const Letter& l : m) ++d[var_of(l)];
    return d;
}

bool is_multilinear(const StarPoly& p) {
    if (p.is_zero()) return true;
    const auto first = multidegree(p.terms().begin()->first);
    for (const auto& [v, d] : first) {
        if (d != 1) return false;
    }
    for (const auto& [m, c] : p.terms()) {
        if (multidegree(m) != first) return false;
    }
    return true;
}

bool is_linear_in(const StarPoly& p, const VarRef& v) {
    for (const auto& [m, c] : p.terms()) {
        int d = 0;
        for (const Letter& l : m) {
            if (var_of(l) == v) ++d;
        }
        if (d != 1) return false;
    }
    return true;
}

StarPoly star_image(const StarPoly& p) {
    StarPoly out;
    for (const auto& [m, c] : p.terms()) {
        Monomial r;
        r.reserve(m.size());
        int skew = 0;
        for (auto it = m.rbegin(); it != m.rend(); ++it) {
            Letter l = *it;
            if (l.ab == Alphabet::Skew) ++skew;
            if (l.ab == Alphabet::Gen) l.starred = !l.starred;
            r.push_back(l);
        }
        out.add_term(r, (skew % 2 == 0) ? c : -c);
    }
    return out;
}

StarPoly reverse(const StarPoly& p) {
    StarPoly out;
    for (const auto& [m, c] : p.terms()) {
        Monomial r(m.rbegin(), m.rend());
        out.add_term(r, c);
    }
    return out;
}

StarPoly toggle_stars(const StarPoly& p) {
    StarPoly out;
    for (const auto& [m, c] : p.terms()) {
        Monomial r = m;
        for (Letter& l : r) {
            if (l.ab == Alphabet::Gen) l.starred = !l.starred;
        }
        out.add_term(r, c);
    }
    return out;
}

StarPoly substitute(const StarPoly& p, const std::map<VarRef, StarPoly>& images) {
    StarPoly out;
    std::map<VarRef, StarPoly> starred_cache;
    for (const auto& [m, c] : p.terms()) {
        bool first = true;
        StarPoly prod;
        for (const Letter& l : m) {
            StarPoly factor;
            auto it = images.find(var_of(l));
            if (it == images.end()) {
                factor = StarPoly::variable(l);
            } else if (l.ab == Alphabet::Gen && l.starred) {
                auto cit = starred_cache.find(var_of(l));
                if (cit == starred_cache.end()) {
                    cit = starred_cache.emplace(var_of(l), star_image(it->second)).first;
                }
                factor = cit->second;
            } else {
                factor = it->second;
            }
            prod = first ? factor : prod * factor;
            first = false;
        }
        out += c * prod;
    }
    return out;
}

StarPoly to_yz(const StarPoly& p) {
    std::map<VarRef, StarPoly> images;
    for (const VarRef& v : variables(p)) {
        if (v.ab != Alphabet::Gen) throw Error("to_yz: input must use the general alphabet");
        StarPoly img = StarPoly::variable(sym_letter(v.index));
        img += StarPoly::variable(skew_letter(v.index));
        images.emplace(v, img);
    }
    return substitute(p, images);
}

StarPoly to_xstar(const StarPoly& p) {
    std::map<VarRef, StarPoly> images;
    Rational half(1, 2);
    for (const VarRef& v : variables(p)) {
        if (v.ab == Alphabet::Gen) throw Error("to_xstar: input must use the Y/Z alphabet");
        StarPoly x = StarPoly::variable(gen_letter(v.index));
        StarPoly xs = StarPoly::variable(gen_letter(v.index, true));
        StarPoly img = (v.ab == Alphabet::Sym) ? x + xs : x - xs;
        img *= half;
        images.emplace(v, img);
    }
    return substitute(p, images);
}

std::vector<StarPoly> multilinearize(const StarPoly& p) {
    // split into multihomogeneous components
    std::map<std::vector<std::pair<VarRef, int>>, StarPoly> comps;
    for (const auto& [m, c] : p.terms()) {
        auto d = multidegree(m);
        std::vector<std::pair<VarRef, int>> key(d.begin(), d.end());
        comps[key].add_term(m, c);
    }
    // smallest unused index per alphabet, across the whole polynomial
    std::map<Alphabet, int> next_index = {
        {Alphabet::Sym, 1}, {Alphabet::Skew, 1}, {Alphabet::Gen, 1}};
    for (const VarRef& v : variables(p)) {
        next_index[v.ab] = std::max(next_index[v.ab], v.index + 1);
    }

    std::vector<StarPoly> out;
    for (auto& [key, comp] : comps) {
        std::map<Alphabet, int> fresh = next_index;
        StarPoly cur = comp;
        for (const auto& [v, deg] : key) {
            if (deg == 1) continue;
            // replace v by the sum of deg copies and keep the part where every
            // copy occurs exactly once
            std::vector<int> copy_idx(static_cast<std::size_t>(deg));
            copy_idx[0] = v.index;
            for (int c = 1; c < deg; ++c) copy_idx[static_cast<std::size_t>(c)] = fresh[v.ab]++;

            StarPoly expanded;
            for (const auto& [m, coef] : cur.terms()) {
                // positions of v in m
                std::vector<std::size_t> pos;
                for (std::size_t i = 0; i < m.size(); ++i) {
                    if (var_of(m[i]) == v) pos.push_back(i);
                }
                // assign copies to positions in every bijective way
                std::vector<int> perm(pos.size());
                std::iota(perm.begin(), perm.end(), 0);
                do {
                    Monomial mm = m;
                    for (std::size_t i = 0; i < pos.size(); ++i) {
                        mm[pos[i]].index = copy_idx[static_cast<std::size_t>(perm[i])];
                    }
                    expanded.add_term(mm, coef);
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
            cur = expanded;
        }
        out.push_back(cur);
    }
    return out;
}

StarPoly alternate(const StarPoly& p, const std::vector<VarRef>& S, int cap) {
    if (S.empty()) return p;
    if (static_cast<int>(S.size()) > cap)
        throw Error("alternate: set size exceeds the alternator cap");
    Alphabet ab = S.front().ab;
    for (const VarRef& v : S) {
        if (v.ab != ab) throw Error("alternate: set must stay within one alphabet");
        if (v.ab == Alphabet::Gen) throw Error("alternate: set must be symmetric or skew variables");
        if (!is_linear_in(p, v)) throw Error("alternate: polynomial not linear in " + var_name(v));
    }
    std::set<VarRef> uniq(S.begin(), S.end());
    if (uniq.size() != S.size()) throw Error("alternate: repeated variable in set");

    std::map<int, std::size_t> slot;  // index -> position in S
    for (std::size_t i = 0; i < S.size(); ++i) slot[S[i].index] = i;

    std::vector<int> perm(S.size());
    std::iota(perm.begin(), perm.end(), 0);
    StarPoly out;
    do {
        // permutation sign
        int sign = 1;
        std::vector<int> q(perm.begin(), perm.end());
        for (std::size_t i = 0; i < q.size(); ++i) {
            while (q[i] != static_cast<int>(i)) {
                std::swap(q[static_cast<std::size_t>(q[i])], q[i]);
                sign = -sign;
            }
        }
        for (const auto& [m, c] : p.terms()) {
            Monomial mm = m;
            for (Letter& l : mm) {
                if (l.ab != ab) continue;
                auto it = slot.find(l.index);
                if (it != slot.end()) l.index = S[static_cast<std::size_t>(perm[it->second])].index;
            }
            out.add_term(mm, sign > 0 ? c : -c);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

bool is_alternating(const StarPoly& p, const std::vector<VarRef>& S) {
    if (S.size() < 2) return true;
    const TermMap& terms = p.terms();
    Monomial swapped;
    for (std::size_t i = 0; i + 1 < S.size(); ++i) {
        const VarRef a = S[i];
        const VarRef b = S[i + 1];
        for (const auto& [m, c] : terms) {
            swapped = m;
            for (Letter& l : swapped) {
                VarRef v = var_of(l);
                if (v == a) {
                    l.ab = b.ab;
                    l.index = b.index;
                } else if (v == b) {
                    l.ab = a.ab;
                    l.index = a.index;
                }
            }
            auto it = terms.find(swapped);
            if (it == terms.end() || it->second != -c) return false;
        }
    }
    return true;
}

bool check_type(const StarPoly& p, const PolyType& ty) {
    std::set<VarRef> seen;
    auto split_counts = [](const std::vector<VarRef>& s) {
        std::pair<int, int> c{0, 0};
        for (const VarRef& v : s) {
            if (v.ab == Alphabet::Sym) ++c.first;
            else if (v.ab == Alphabet::Skew) ++c.second;
            else throw Error("check_type: sets must contain symmetric/skew variables only");
        }
        return c;
    };
    auto parts = [](const std::vector<VarRef>& s) {
        std::pair<std::vector<VarRef>, std::vector<VarRef>> out;
        for (const VarRef& v : s) {
            (v.ab == Alphabet::Sym ? out.first : out.second).push_back(v);
        }
        return out;
    };
    for (const auto* group : {&ty.big_sets, &ty.mu_sets}) {
        for (const auto& s : *group) {
            for (const VarRef& v : s) {
                if (!seen.insert(v).second) throw Error("check_type: sets are not disjoint");
            }
        }
    }
    for (const auto& s : ty.big_sets) {
        auto tau = split_counts(s);
        if (!(tau > ty.tbar)) return false;
        auto [ys, zs] = parts(s);
        for (const VarRef& v : s) {
            if (!is_linear_in(p, v)) return false;
        }
        if (!is_alternating(p, ys) || !is_alternating(p, zs)) return false;
    }
    for (const auto& s : ty.mu_sets) {
        if (split_counts(s) != ty.tbar) return false;
        auto [ys, zs] = parts(s);
        for (const VarRef& v : s) {
            if (!is_linear_in(p, v)) return false;
        }
        if (!is_alternating(p, ys) || !is_alternating(p, zs)) return false;
    }
    return true;
}

std::vector<Monomial> multilinear_basis(int k, int n_minus_k) {
    if (k < 0 || n_minus_k < 0) throw Error("multilinear_basis: negative count");
    if (k + n_minus_k > 10) throw Error("multilinear_basis: degree too large to enumerate");
    Monomial base;
    for (int i = 1; i <= k; ++i) base.push_back(sym_letter(i));
    for (int i = 1; i <= n_minus_k; ++i) base.push_back(skew_letter(i));
    std::vector<Monomial> out;
    if (base.empty()) return out;
    std::sort(base.begin(), base.end());
    do {
        out.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

// --- parsing / rendering ----------------------------------------------------

namespace {

using detail::Tok;
using detail::Token;

struct PolyParser {
    const std::vector<Token>& toks;
    std::size_t pos = 0;
    bool allow_mixed;

    const Token& cur() const { return toks[pos]; }
    void advance() { ++pos; }
    bool accept(Tok k) {
        if (cur().kind == k) { advance(); return true; }
        return false;
    }

    Rational parse_coeff() {
        if (cur().kind != Tok::Int) throw Error("parse: expected a number");
        std::string num = cur().number;
        advance();
        if (accept(Tok::Slash)) {
            if (cur().kind != Tok::Int) throw Error("parse: expected a denominator");
            std::string den = cur().number;
            advance();
            auto r = Rational::parse(num + "/" + den);
            if (!r) throw Error("parse: bad coefficient " + num + "/" + den);
            return *r;
        }
        auto r = Rational::parse(num);
        if (!r) throw Error("parse: bad coefficient " + num);
        return *r;
    }

    // factor := var ['^' nat]
    void parse_factor(Monomial& m) {
        if (cur().kind != Tok::Var) throw Error("parse: expected a variable");
        Letter l = cur().letter;
        advance();
        int e = 1;
        if (accept(Tok::Caret)) {
            if (cur().kind != Tok::Int) throw Error("parse: expected an exponent");
            e = std::stoi(cur().number);
            advance();
            if (e < 1) throw Error("parse: exponents must be positive");
        }
        for (int i = 0; i < e; ++i) m.push_back(l);
    }

    // term := [coeff '*'] factor ('*' factor)*
    std::pair<Rational, Monomial> parse_term() {
        Rational c(1);
        Monomial m;
        if (cur().kind == Tok::Int) {
            c = parse_coeff();
            if (!accept(Tok::Star)) throw Error("parse: constant terms are not allowed");
        }
        parse_factor(m);
        while (accept(Tok::Star)) parse_factor(m);
        return {c, m};
    }

    StarPoly parse_poly() {
        StarPoly p;
        bool neg = accept(Tok::Minus);
        auto add = [&](bool negate) {
            auto [c, m] = parse_term();
            check_mixing(m);
            p.add_term(m, negate ? -c : c);
        };
        add(neg);
        for (;;) {
            if (accept(Tok::Plus)) { add(false); continue; }
            if (accept(Tok::Minus)) { add(true); continue; }
            break;
        }
        if (cur().kind != Tok::End) throw Error("parse: trailing input");
        return p;
    }

    void check_mixing(const Monomial& m) const {
        if (allow_mixed) return;
        bool has_yz = false, has_gen = false;
        for (const Letter& l : m) {
            (l.ab == Alphabet::Gen ? has_gen : has_yz) = true;
        }
        if (has_yz && has_gen)
            throw Error("parse: monomial mixes general and Y/Z alphabets");
    }
};

}  // namespace

StarPoly parse(const std::string& text, bool allow_mixed) {
    auto toks = detail::lex(text);
    for (const Token& t : toks) {
        if (t.kind == Tok::F1 || t.kind == Tok::F2)
            throw Error("parse: form factors are not allowed in a plain polynomial");
        if (t.kind == Tok::LParen || t.kind == Tok::RParen || t.kind == Tok::Comma)
            throw Error("parse: unexpected punctuation");
    }
    PolyParser p{toks, 0, allow_mixed};
    return p.parse_poly();
}

namespace {

std::string render_monomial(const Monomial& m) {
    std::string out;
    std::size_t i = 0;
    while (i < m.size()) {
        std::size_t j = i;
        while (j < m.size() && m[j] == m[i]) ++j;
        if (!out.empty()) out += "*";
        out += letter_name(m[i]);
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

}  // namespace

std::string render(const StarPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational a = abs(c);
        std::string mag = (a == Rational(1)) ? "" : a.str() + "*";
        if (first) {
            out += (c.sign() < 0 ? "-" : "") + mag + render_monomial(m);
            first = false;
        } else {
            out += (c.sign() < 0 ? " - " : " + ") + mag + render_monomial(m);
        }
    }
    return out;
}

}  // namespace starpi
