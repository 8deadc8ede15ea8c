#include <doctest.h>

#include "starpi/constructions.hpp"
#include "starpi/identity.hpp"

using namespace starpi;

namespace {

StarPoly standard_poly(int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
    StarPoly p;
    int sign = 1;
    auto parity = [](const std::vector<int>& v) {
        int s = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            for (std::size_t j = i + 1; j < v.size(); ++j) {
                if (v[i] > v[j]) ++s;
            }
        }
        return s % 2 == 0 ? 1 : -1;
    };
    do {
        Monomial m;
        for (int i : perm) m.push_back(gen_letter(i));
        p.add_term(m, Rational(parity(perm)));
        (void)sign;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return p;
}

}  // namespace

TEST_CASE("evaluation is multiplicative and linear") {
    StarAlgebra A = build_star_simple({BlockKind::Transpose, 2});
    Substitution s;
    s.assign[sym_var(1)] = basis_vec(A, 0);
    Vec e12 = basis_vec(A, 1), e21 = basis_vec(A, 2);
    s.assign[sym_var(2)] = Vec(e12 + e21);
    StarPoly p = parse("y1*y2*y1");
    Vec got = evaluate(p, s, A);
    // E11 (E12+E21) E11 = 0
    CHECK(got == Vec(Vec::Zero(4)));

    StarPoly q = parse("y2*y1*y2");
    // (E12+E21) E11 (E12+E21) = E22... sandwich picks the (2,1)(1,1)(1,2) path
    Vec want = basis_vec(A, 3);
    CHECK(evaluate(q, s, A) == want);

    Substitution s2 = s;
    s2.assign[sym_var(2)] = basis_vec(A, 0);
    Substitution s3 = s;
    s3.assign[sym_var(2)] = basis_vec(A, 3);
    Substitution s4 = s;
    s4.assign[sym_var(2)] = Vec(basis_vec(A, 0) + basis_vec(A, 3));
    Vec lhs = evaluate(parse("y1*y2"), s4, A);
    CHECK(lhs == Vec(evaluate(parse("y1*y2"), s2, A) + evaluate(parse("y1*y2"), s3, A)));
}

TEST_CASE("evaluation enforces eigenspace membership and rejects gaps") {
    StarAlgebra A = build_star_simple({BlockKind::Transpose, 2});
    Substitution s;
    s.assign[skew_var(1)] = basis_vec(A, 1);  // E12 is not skew under transpose
    CHECK_THROWS_AS(evaluate(parse("z1"), s, A), Error);
    Substitution empty;
    CHECK_THROWS_AS(evaluate(parse("y1"), empty, A), Error);
}

TEST_CASE("starred general letters evaluate through the involution") {
    StarAlgebra A = build_star_simple({BlockKind::Transpose, 2});
    Substitution s;
    s.assign[gen_var(1)] = basis_vec(A, 1);
    CHECK(evaluate(parse("x1'"), s, A) == basis_vec(A, 2));
    CHECK(evaluate(parse("x1*x1'"), s, A) == basis_vec(A, 0));
}

TEST_CASE("skew commutator is an identity of the transpose algebra") {
    StarAlgebra A = build_star_simple({BlockKind::Transpose, 2});
    CHECK(is_identity(parse("z1*z2 - z2*z1"), A).identity);
    IdentityResult r = is_identity(parse("y1*y2 - y2*y1"), A);
    CHECK_FALSE(r.identity);
    REQUIRE(r.witness.has_value());
    REQUIRE(r.witness_poly.has_value());
    Vec v = evaluate(*r.witness_poly, *r.witness, A);
    CHECK(v != Vec(Vec::Zero(A.n)));
}

TEST_CASE("standard polynomials detect matrix size") {
    StarAlgebra M1 = build_star_simple({BlockKind::Transpose, 1});
    StarAlgebra M2 = build_star_simple({BlockKind::Transpose, 2});
    CHECK(is_identity(standard_poly(2), M1).identity);
    CHECK_FALSE(is_identity(standard_poly(2), M2).identity);
    CHECK(is_identity(standard_poly(4), M2).identity);
}

TEST_CASE("non-multilinear input routes through linearization") {
    StarAlgebra M1 = build_star_simple({BlockKind::Transpose, 1});
    // x1^2 - x1 is not an identity of F even though it vanishes on 0 and 1
    CHECK_FALSE(is_identity(parse("x1^2 - x1"), M1).identity);
    // [x1^2, x1] is an identity everywhere commutative
    CHECK(is_identity(parse("x1^2*x1 - x1*x1^2"), M1).identity);
    StarAlgebra U2 = ut_star_algebra(2);
    CHECK(is_identity(parse("y1*y2 - y2*y1"), U2).identity);
    CHECK_FALSE(is_identity(parse("x1*x2 - x2*x1"), U2).identity);
}

TEST_CASE("substitution classification flags thin and incomplete tuples") {
    StarAlgebra U2 = ut_star_algebra(2);
    REQUIRE(U2.wm.has_value());
    // d0 of the exchange block: E11+E22; u0: E12
    Vec d0 = Vec(basis_vec(U2, 0) + basis_vec(U2, 1));
    Vec u0 = basis_vec(U2, 2);
    Substitution s;
    s.assign[sym_var(1)] = d0;
    s.assign[sym_var(2)] = u0;
    SubstitutionClass c = classify_substitution(U2, s);
    CHECK(c.radical_count == 1);
    CHECK(c.touched_blocks == std::set<int>{1});
    CHECK(c.complete);
    CHECK_FALSE(c.thin);  // nd - 1 = 1 radical value present

    // a radical value touches the blocks named by its Peirce label
    Substitution s2;
    s2.assign[sym_var(1)] = u0;
    SubstitutionClass c2 = classify_substitution(U2, s2);
    CHECK(c2.complete);
    CHECK_FALSE(c2.thin);

    Substitution s3;
    s3.assign[sym_var(1)] = d0;
    SubstitutionClass c3 = classify_substitution(U2, s3);
    CHECK(c3.thin);

    Substitution bad;
    bad.assign[sym_var(1)] = Vec(d0 + u0 + u0);
    CHECK_THROWS_AS(classify_substitution(U2, bad), Error);

    StarAlgebra U3 = ut_star_algebra(3);
    Substitution t1;
    t1.assign[sym_var(1)] = Vec(basis_vec(U3, 0) + basis_vec(U3, 1));
    SubstitutionClass k1 = classify_substitution(U3, t1);
    CHECK_FALSE(k1.complete);
    CHECK(k1.thin);

    Substitution t2 = t1;
    t2.assign[sym_var(2)] = Vec(Rational(1, 2) * (basis_vec(U3, 3) + basis_vec(U3, 5)));
    SubstitutionClass k2 = classify_substitution(U3, t2);
    CHECK(k2.complete);
    CHECK(k2.touched_blocks == std::set<int>{1, 2});
    CHECK(k2.thin);

    Substitution t3 = t2;
    t3.assign[skew_var(1)] = Vec(Rational(1, 2) * (basis_vec(U3, 3) - basis_vec(U3, 5)));
    SubstitutionClass k3 = classify_substitution(U3, t3);
    CHECK(k3.radical_count == 2);
    CHECK_FALSE(k3.thin);
}

TEST_CASE("exactness quantifies over thin and incomplete substitutions") {
    StarAlgebra U2 = ut_star_algebra(2);
    // [y1, z1] vanishes on every radical-free tuple yet is not an identity
    StarPoly f = parse("y1*z1 - z1*y1");
    CHECK(is_exact(f, U2));
    CHECK_FALSE(is_identity(f, U2).identity);
    CHECK_FALSE(is_exact(parse("y1*y2"), U2));
    CHECK_FALSE(is_exact(parse("y1"), U2));
}

TEST_CASE("alternating overflow confirms the eigenspace ceiling") {
    StarAlgebra M2 = build_star_simple({BlockKind::Transpose, 2});
    CHECK(alternating_overflow_identity(M2, 4, 1));
    CHECK(alternating_overflow_identity(M2, 3, 2));
    CHECK(alternating_overflow_identity(M2, 0, 2));
    CHECK_FALSE(alternating_overflow_identity(M2, 3, 1));

    StarAlgebra E1 = build_star_simple({BlockKind::Exchange, 1});
    CHECK(alternating_overflow_identity(E1, 2, 1));
    CHECK(alternating_overflow_identity(E1, 1, 2));
    CHECK_FALSE(alternating_overflow_identity(E1, 1, 1));
}

TEST_CASE("the enumeration budget is a hard error") {
    StarAlgebra M2 = build_star_simple({BlockKind::Transpose, 2});
    EngineOptions tight;
    tight.budget = 3;
    CHECK_THROWS_AS(is_identity(standard_poly(3), M2, tight), Error);
}

TEST_CASE("symmetric and skew bases span the eigenspaces") {
    StarAlgebra M2 = build_star_simple({BlockKind::Transpose, 2});
    CHECK(symmetric_basis(M2).size() == 3);
    CHECK(skew_basis(M2).size() == 1);
    StarAlgebra U2 = ut_star_algebra(2);
    CHECK(symmetric_basis(U2).size() == 2);
    CHECK(skew_basis(U2).size() == 1);
    for (const Vec& v : symmetric_basis(M2)) CHECK(involute(M2, v) == v);
    for (const Vec& v : skew_basis(M2)) CHECK(involute(M2, v) == Vec(-v));
}
