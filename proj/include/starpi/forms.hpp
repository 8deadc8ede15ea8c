#pragma once

#include <optional>
#include <vector>

#include "starpi/free_poly.hpp"
#include "starpi/identity.hpp"
#include "starpi/star_algebra.hpp"

namespace starpi {

// Pure form factor f1(u) or f2(u, v) with monomial arguments; f2 arguments
// are stored in canonical order (f2 is symmetric on the algebras it models).
struct FormFactor {
    int arity = 1;
    Monomial u, v;

    friend bool operator==(const FormFactor& a, const FormFactor& b) {
        return a.arity == b.arity && a.u == b.u && a.v == b.v;
    }
    friend bool operator<(const FormFactor& a, const FormFactor& b) {
        if (a.arity != b.arity) return a.arity < b.arity;
        MonoLess less;
        if (a.u != b.u) return less(a.u, b.u);
        return less(a.v, b.v);
    }
};

// Product of pure factors times a word. The word may be empty only when at
// least one factor is present.
struct FormKey {
    std::vector<FormFactor> factors;  // kept sorted
    Monomial word;

    friend bool operator==(const FormKey& a, const FormKey& b) {
        return a.factors == b.factors && a.word == b.word;
    }
    friend bool operator<(const FormKey& a, const FormKey& b) {
        if (a.factors != b.factors)
            return std::lexicographical_compare(a.factors.begin(), a.factors.end(),
                                                b.factors.begin(), b.factors.end());
        return MonoLess{}(a.word, b.word);
    }
};

FormFactor form_f1(Monomial u);
FormFactor form_f2(Monomial u, Monomial v);

class FormPoly {
public:
    FormPoly() = default;

    static FormPoly from_term(FormKey k, Rational c = Rational(1));
    static FormPoly from_star(const StarPoly& p);

    bool is_zero() const { return terms_.empty(); }
    const std::map<FormKey, Rational>& terms() const { return terms_; }

    void add_term(FormKey k, const Rational& c);

    FormPoly operator-() const;
    FormPoly& operator+=(const FormPoly& o);
    FormPoly& operator-=(const FormPoly& o);
    FormPoly& operator*=(const Rational& c);

    friend FormPoly operator+(FormPoly a, const FormPoly& b) { a += b; return a; }
    friend FormPoly operator-(FormPoly a, const FormPoly& b) { a -= b; return a; }
    friend FormPoly operator*(const FormPoly& a, const FormPoly& b);
    friend FormPoly operator*(const Rational& c, FormPoly p) { p *= c; return p; }

    friend bool operator==(const FormPoly& a, const FormPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const FormPoly& a, const FormPoly& b) { return !(a == b); }

private:
    std::map<FormKey, Rational> terms_;
};

std::vector<VarRef> form_variables(const FormPoly& p);

FormPoly parse_form(const std::string& text);
std::string render_form(const FormPoly& p);

// Trace forms f1(a) = Tr(T_{pi a}) and f2(a, b) = Tr(T_{pi a} T_{pi b}),
// where T_b(c) = bc + cb acts on the semisimple part and pi projects along
// the radical. Stored as a linear functional and a bilinear form on A.
struct TraceForms {
    const StarAlgebra* A = nullptr;
    Eigen::Matrix<Rational, 1, Eigen::Dynamic> f1v;
    Mat f2m;
};

TraceForms make_trace_forms(const StarAlgebra& A);
// Ordinary matrix trace on M_k in place of Tr(T_b); used by the
// Cayley-Hamilton checks over plain matrix algebras.
TraceForms make_matrix_trace_forms(const StarAlgebra& A);

Rational trace_f1(const TraceForms& tf, const Vec& a);
Rational trace_f2(const TraceForms& tf, const Vec& a, const Vec& b);

// Scalar part collects word-free terms, vector part the rest.
struct FormValue {
    Rational scalar;
    Vec vec;
};

FormValue evaluate_form_parts(const FormPoly& fp, const Substitution& s, const TraceForms& tf);
// Folds the scalar part into the unit; requires a unit when it is nonzero.
Vec evaluate_form(const FormPoly& fp, const Substitution& s, const TraceForms& tf);

bool verify_traceid10(const TraceForms& tf);

// A claimed identity lhs = rhs of form polynomials over the algebra.
struct FormIdentity {
    std::string name;
    FormPoly lhs, rhs;
};

// The three trace-transfer identities attached to a polynomial of type
// ((t1, t2); nd - 1; 1): multiplying f by f2(y~1, y~2), f2(z~1, z~2) or
// f1(y~1) equals the sum of Jordan-substituted copies over the mu-set.
std::vector<FormIdentity> traceid1_identities(const StarPoly& f, const PolyType& ty,
                                              const StarAlgebra& A);

// Checks lhs = rhs under every elementary substitution.
bool verify_form_identity(const FormIdentity& id, const TraceForms& tf,
                          const EngineOptions& opts = {});

bool verify_traceid1(const StarPoly& f, const PolyType& ty, const TraceForms& tf,
                     const EngineOptions& opts = {});

// Cayley-Hamilton trace polynomial X_n in x1, from the recursion
// X_1 = x - f1(x), X_n = X_{n-1} x - (1/n) f1(X_{n-1} x).
FormPoly ch_trace_poly(int n);

// Searches for a monic degree-d Cayley-Hamilton-type polynomial (every
// non-leading term carries a form factor) annihilating the semisimple part,
// by exact linear solving over seeded random semisimple samples plus
// certification on fresh samples. Returns absent when the sampled system is
// inconsistent.
std::optional<FormPoly> derive_ch_type(const StarAlgebra& A, int degree,
                                       const TraceForms& tf, const EngineOptions& opts = {});

}  // namespace starpi
