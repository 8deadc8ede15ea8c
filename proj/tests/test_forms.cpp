#include <doctest.h>

#include <random>

#include "starpi/forms.hpp"

using namespace starpi;

namespace {

Vec matrix_vec(int k, std::initializer_list<std::initializer_list<long>> entries) {
    Vec v = Vec::Zero(static_cast<Index>(k) * k);
    Index i = 0;
    for (const auto& row : entries) {
        for (long e : row) v(i++) = Rational(e);
    }
    return v;
}

Vec random_matrix_vec(int k, std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 9);
    Vec v(static_cast<Index>(k) * k);
    for (Index i = 0; i < v.size(); ++i) v(i) = Rational(num(rng), den(rng));
    return v;
}

StarPoly ut2_mu_poly() { return parse("y1*y2*y3*z1 - y2*y1*y3*z1"); }

PolyType ut2_mu_type() {
    PolyType ty;
    ty.tbar = {1, 1};
    ty.big_sets = {{sym_var(1), sym_var(2)}};
    ty.mu_sets = {{sym_var(3), skew_var(1)}};
    return ty;
}

}  // namespace

TEST_CASE("form polynomials parse and render canonically") {
    FormPoly fp = parse_form("f2(y1,y1)*z1 - 2*z1");
    CHECK(fp.terms().size() == 2);
    CHECK(parse_form(render_form(fp)) == fp);
    CHECK(render_form(parse_form("f1(y1)")) == "f1(y1)");
    CHECK(parse_form("f2(y1,y2)") == parse_form("f2(y2,y1)"));
    CHECK_THROWS_AS(parse_form("f3(y1)"), Error);
    CHECK_THROWS_AS(parse_form("f2(y1)"), Error);

    FormPoly prod = parse_form("f1(y1)*y2") * parse_form("f1(y3)");
    CHECK(prod.terms().size() == 1);
    const FormKey& key = prod.terms().begin()->first;
    CHECK(key.factors.size() == 2);
    CHECK(key.word == Monomial{sym_letter(2)});
}

TEST_CASE("trace forms on full matrix blocks have the closed form") {
    StarAlgebra M2 = build_star_simple({BlockKind::Transpose, 2});
    TraceForms tf = make_trace_forms(M2);
    Vec e11 = matrix_vec(2, {{1, 0}, {0, 0}});
    Vec s = matrix_vec(2, {{0, 1}, {1, 0}});
    CHECK(trace_f1(tf, e11) == Rational(4));
    CHECK(trace_f2(tf, e11, e11) == Rational(6));
    CHECK(trace_f2(tf, s, s) == Rational(8));

    StarAlgebra E1 = build_star_simple({BlockKind::Exchange, 1});
    TraceForms tfe = make_trace_forms(E1);
    Vec one = Vec::Zero(2);
    one(0) = Rational(1);
    one(1) = Rational(1);
    Vec skew = Vec::Zero(2);
    skew(0) = Rational(1);
    skew(1) = Rational(-1);
    CHECK(trace_f1(tfe, one) == Rational(4));
    CHECK(trace_f2(tfe, one, one) == Rational(8));
    CHECK(trace_f2(tfe, one, skew) == Rational(0));
    CHECK(trace_f1(tfe, skew) == Rational(0));
}

TEST_CASE("the symmetry and associativity laws of the forms hold") {
    for (BlockSpec spec : {BlockSpec{BlockKind::Transpose, 2}, BlockSpec{BlockKind::Exchange, 1},
                           BlockSpec{BlockKind::Symplectic, 2}}) {
        CAPTURE(kind_name(spec.kind));
        StarAlgebra A = build_star_simple(spec);
        TraceForms tf = make_trace_forms(A);
        CHECK(verify_traceid10(tf));
    }
    StarAlgebra U2 = ut_star_algebra(2);
    CHECK(verify_traceid10(make_trace_forms(U2)));
}

TEST_CASE("trace transfer identities hold and detect corruption") {
    StarAlgebra U2 = ut_star_algebra(2);
    TraceForms tf = make_trace_forms(U2);
    StarPoly f = ut2_mu_poly();
    PolyType ty = ut2_mu_type();
    REQUIRE(check_type(f, ty));
    CHECK(verify_traceid1(f, ty, tf));

    auto ids = traceid1_identities(f, ty, U2);
    REQUIRE(ids.size() == 3);
    FormPoly corrupted = ids[0].rhs;
    auto first = corrupted.terms().begin();
    corrupted -= FormPoly::from_term(first->first, first->second);
    FormIdentity bad{"dropped-term", ids[0].lhs, corrupted};
    CHECK_FALSE(verify_form_identity(bad, tf));
}

TEST_CASE("the trace recursion annihilates matrices of the right size") {
    std::mt19937 rng(123);
    for (int n = 1; n <= 3; ++n) {
        CAPTURE(n);
        StarAlgebra A = build_star_simple({BlockKind::Transpose, n});
        TraceForms tf = make_matrix_trace_forms(A);
        FormPoly X = ch_trace_poly(n);
        for (int trial = 0; trial < 10; ++trial) {
            Substitution s;
            s.assign[gen_var(1)] = random_matrix_vec(n, rng);
            Vec out = evaluate_form(X, s, tf);
            CHECK(out == Vec(Vec::Zero(A.n)));
        }
    }
    StarAlgebra M2 = build_star_simple({BlockKind::Transpose, 2});
    Substitution s;
    s.assign[gen_var(1)] = matrix_vec(2, {{1, 2}, {3, 4}});
    CHECK(evaluate_form(ch_trace_poly(2), s, make_matrix_trace_forms(M2)) ==
          Vec(Vec::Zero(4)));
    // one size short fails
    CHECK(evaluate_form(ch_trace_poly(1), s, make_matrix_trace_forms(M2)) !=
          Vec(Vec::Zero(4)));
}

TEST_CASE("the trace recursion renders with the expected coefficients") {
    CHECK(render_form(ch_trace_poly(1)) == "x1 - f1(x1)");
    CHECK(render_form(ch_trace_poly(2)) ==
          "x1^2 - f1(x1)*x1 - 1/2*f1(x1^2) + 1/2*f1(x1)^2");
}

TEST_CASE("a trace-compatible annihilator is derived exactly") {
    StarAlgebra E1 = build_star_simple({BlockKind::Exchange, 1});
    TraceForms tf = make_trace_forms(E1);
    CHECK_FALSE(derive_ch_type(E1, 2, tf).has_value());
    auto fp = derive_ch_type(E1, 3, tf);
    REQUIRE(fp.has_value());
    CHECK(render_form(*fp) ==
          "x1^3 - 1/2*f1(x1)*x1^2 - 1/4*f1(x1^2)*x1 + 1/8*f1(x1)^2*x1");

    std::mt19937 rng(7);
    std::uniform_int_distribution<long> num(-9, 9);
    for (int trial = 0; trial < 20; ++trial) {
        Vec v(2);
        v(0) = Rational(num(rng));
        v(1) = Rational(num(rng));
        Substitution s;
        s.assign[gen_var(1)] = v;
        CHECK(evaluate_form(*fp, s, tf) == Vec(Vec::Zero(2)));
    }

    StarAlgebra T1 = build_star_simple({BlockKind::Transpose, 1});
    TraceForms tf1 = make_trace_forms(T1);
    auto fp1 = derive_ch_type(T1, 2, tf1);
    REQUIRE(fp1.has_value());

    TraceForms broken = tf;
    broken.f1v.setZero();
    broken.f2m.setZero();
    CHECK_FALSE(derive_ch_type(E1, 3, broken).has_value());
}

TEST_CASE("form evaluation splits scalar and vector parts") {
    StarAlgebra M2 = build_star_simple({BlockKind::Transpose, 2});
    TraceForms tf = make_trace_forms(M2);
    Substitution s;
    s.assign[sym_var(1)] = matrix_vec(2, {{1, 0}, {0, 0}});
    FormValue v = evaluate_form_parts(parse_form("f1(y1)"), s, tf);
    CHECK(v.scalar == Rational(4));
    CHECK(v.vec == Vec(Vec::Zero(4)));
    FormValue w = evaluate_form_parts(parse_form("f1(y1)*y1"), s, tf);
    CHECK(w.scalar == Rational(0));
    CHECK(w.vec == Vec(Rational(4) * matrix_vec(2, {{1, 0}, {0, 0}})));
}
