#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "starpi/rational.hpp"

namespace starpi {

// Variable alphabets of the free *-algebra: symmetric (y), skew (z), and
// general (x, with x' denoting the starred occurrence).
enum class Alphabet : unsigned char { Sym, Skew, Gen };

struct Letter {
    Alphabet ab;
    int index;       // 1-based
    bool starred;    // only general letters may be starred

    int cls() const {
        if (ab == Alphabet::Sym) return 0;
        if (ab == Alphabet::Skew) return 1;
        return starred ? 3 : 2;
    }
    friend bool operator==(const Letter& a, const Letter& b) {
        return a.cls() == b.cls() && a.index == b.index;
    }
    friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }
    friend bool operator<(const Letter& a, const Letter& b) {
        if (a.cls() != b.cls()) return a.cls() < b.cls();
        return a.index < b.index;
    }
};

inline Letter sym_letter(int i) { return Letter{Alphabet::Sym, i, false}; }
inline Letter skew_letter(int i) { return Letter{Alphabet::Skew, i, false}; }
inline Letter gen_letter(int i, bool starred = false) { return Letter{Alphabet::Gen, i, starred}; }

// Identity of a variable (the starred and plain occurrences of x_i are the
// same variable).
struct VarRef {
    Alphabet ab;
    int index;

    friend bool operator==(const VarRef& a, const VarRef& b) {
        return a.ab == b.ab && a.index == b.index;
    }
    friend bool operator<(const VarRef& a, const VarRef& b) {
        if (a.ab != b.ab) return static_cast<int>(a.ab) < static_cast<int>(b.ab);
        return a.index < b.index;
    }
};

inline VarRef var_of(const Letter& l) { return VarRef{l.ab, l.index}; }
inline VarRef sym_var(int i) { return VarRef{Alphabet::Sym, i}; }
inline VarRef skew_var(int i) { return VarRef{Alphabet::Skew, i}; }
inline VarRef gen_var(int i) { return VarRef{Alphabet::Gen, i}; }

std::string letter_name(const Letter& l);
std::string var_name(const VarRef& v);
// Parses a bare variable name like "y3", "z1", "x2" (no star)
std::optional<VarRef> parse_var_name(const std::string& s);

using Monomial = std::vector<Letter>;

// Degree-lexicographic monomial order (shorter words first, then letterwise).
struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    }
};

using TermMap = std::map<Monomial, Rational, MonoLess>;

// Element of the free associative *-algebra without constant term:
// a finite rational combination of nonempty words.
class StarPoly {
public:
    StarPoly() = default;

    static StarPoly from_monomial(Monomial m, Rational c = Rational(1));
    static StarPoly variable(Letter l) { return from_monomial(Monomial{l}); }

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, const Rational& c);

    StarPoly operator-() const;
    StarPoly& operator+=(const StarPoly& o);
    StarPoly& operator-=(const StarPoly& o);
    StarPoly& operator*=(const Rational& c);

    friend StarPoly operator+(StarPoly a, const StarPoly& b) { a += b; return a; }
    friend StarPoly operator-(StarPoly a, const StarPoly& b) { a -= b; return a; }
    friend StarPoly operator*(const StarPoly& a, const StarPoly& b);
    friend StarPoly operator*(const Rational& c, StarPoly p) { p *= c; return p; }

    friend bool operator==(const StarPoly& a, const StarPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const StarPoly& a, const StarPoly& b) { return !(a == b); }

private:
    TermMap terms_;
};

// --- structure queries ---------------------------------------------------

std::set<VarRef> variables(const StarPoly& p);
// True when every monomial is a permutation of one common variable set, each
// variable occurring exactly once.
bool is_multilinear(const StarPoly& p);
// True when p is linear (degree exactly 1 in every monomial) in variable v.
bool is_linear_in(const StarPoly& p, const VarRef& v);

// --- involution-aware transforms -----------------------------------------

// The image of p under the free involution: words reversed, y fixed, z
// negated, x and x' exchanged.
StarPoly star_image(const StarPoly& p);
// Words reversed, nothing else (the opposite-algebra image).
StarPoly reverse(const StarPoly& p);
// x and x' exchanged in place, no reversal, no signs.
StarPoly toggle_stars(const StarPoly& p);

// Substitutes variables by polynomials; a starred general occurrence receives
// the star image of the assigned value. Unmapped variables stay themselves.
StarPoly substitute(const StarPoly& p, const std::map<VarRef, StarPoly>& images);

// x_i -> y_i + z_i, x_i' -> y_i - z_i (general-alphabet input expected).
StarPoly to_yz(const StarPoly& p);
// y_i -> (x_i + x_i')/2, z_i -> (x_i - x_i')/2 (Y/Z-alphabet input expected).
StarPoly to_xstar(const StarPoly& p);

// --- multilinear machinery -------------------------------------------------

// Full linearization: splits p into multihomogeneous components and linearizes
// each, introducing fresh copies with the smallest unused indices per alphabet.
// Setting all copies of a degree-d variable equal again multiplies the
// component by d! (characteristic-zero inverse).
std::vector<StarPoly> multilinearize(const StarPoly& p);

// Signed sum over all permutations of S (variables of one alphabet, p linear
// in each); |S| above the cap throws.
StarPoly alternate(const StarPoly& p, const std::vector<VarRef>& S, int cap = 8);

bool is_alternating(const StarPoly& p, const std::vector<VarRef>& S);

// Polynomial type (tbar; m; mu): `big_sets` are the tau_j-alternating sets
// with tau_j strictly above tbar lexicographically, `mu_sets` the sets of
// size exactly tbar. Alternation acts on the symmetric and skew parts of each
// set separately.
struct PolyType {
    std::pair<int, int> tbar;
    std::vector<std::vector<VarRef>> big_sets;
    std::vector<std::vector<VarRef>> mu_sets;
};

bool check_type(const StarPoly& p, const PolyType& ty);

// All degree-(k + n_minus_k) multilinear words in y1..yk, z1..z_{n_minus_k},
// in lexicographic order.
std::vector<Monomial> multilinear_basis(int k, int n_minus_k);

// --- text ------------------------------------------------------------------

// Grammar: poly := ['-'] term (('+'|'-') term)*; term := [coeff '*'] factor
// ('*' factor)*; factor := var ['^' nat]; var := y<i> | z<i> | x<i> | x<i>'.
// Monomials mixing the general alphabet with y/z are rejected unless
// allow_mixed is set.
StarPoly parse(const std::string& text, bool allow_mixed = false);
std::string render(const StarPoly& p);

}  // namespace starpi
