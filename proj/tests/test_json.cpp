#include <doctest.h>

#include "starpi/json_io.hpp"

using namespace starpi;

namespace {

bool same_algebra(const StarAlgebra& A, const StarAlgebra& B) {
    if (A.n != B.n) return false;
    if (A.invol != B.invol) return false;
    for (Index i = 0; i < A.n; ++i) {
        for (Index j = 0; j < A.n; ++j) {
            if (Vec(multiply(A, basis_vec(A, i), basis_vec(A, j))) !=
                Vec(multiply(B, basis_vec(B, i), basis_vec(B, j))))
                return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("scalars vectors and matrices round-trip bit-exactly") {
    Rational r(-22, 7);
    CHECK(rational_from_json(rational_json(r)) == r);
    CHECK(rational_json(Rational(4, 2)) == Json("2"));
    CHECK_THROWS_AS(rational_from_json(Json("1/0")), Error);
    CHECK_THROWS_AS(rational_from_json(Json(1.5)), Error);

    Vec v(3);
    v << Rational(1), Rational(-1, 2), Rational(0);
    CHECK(vec_from_json(vec_json(v)) == v);
    CHECK_THROWS_AS(vec_from_json(vec_json(v), 4), Error);

    Mat m(2, 2);
    m << Rational(1), Rational(2), Rational(3, 5), Rational(-4);
    CHECK(mat_from_json(mat_json(m)) == m);
}

TEST_CASE("star algebras round-trip with their Wedderburn data") {
    for (int variant = 0; variant < 4; ++variant) {
        StarAlgebra A;
        switch (variant) {
            case 0: A = build_star_simple({BlockKind::Transpose, 2}); break;
            case 1: A = ut_star_algebra(2); break;
            case 2: A = ut_star_algebra(3); break;
            default: {
                StarAlgebra zero;
                zero.invol = Mat::Zero(0, 0);
                A = truncated_relfree(zero, {}, 1, 3);
                break;
            }
        }
        CAPTURE(variant);
        Json j = algebra_json(A);
        StarAlgebra B = algebra_from_json(j);
        CHECK(same_algebra(A, B));
        CHECK(B.wm.has_value() == A.wm.has_value());
        if (A.wm) {
            CHECK(par_star(B).par_tuple() == par_star(A).par_tuple());
            CHECK(j.contains("blocks"));
            CHECK(algebra_json(B) == j);
        }
    }
}

TEST_CASE("algebras without complement data serialize raw") {
    StarAlgebra A = build_star_simple({BlockKind::Transpose, 2});
    A.wm.reset();
    Json j = algebra_json(A);
    CHECK_FALSE(j.contains("blocks"));
    StarAlgebra B = algebra_from_json(j);
    CHECK(same_algebra(A, B));
    CHECK_FALSE(B.wm.has_value());
}

TEST_CASE("plain algebras round-trip and rebase into block layout") {
    PlainAlgebra U2 = ut_algebra(2);
    Json j = plain_json(U2);
    REQUIRE(j.contains("blocks"));
    CHECK(j["blocks"] == Json::array({1, 1}));
    CHECK(j["radical"]["dim"] == 1);
    PlainAlgebra B = plain_from_json(j);
    CHECK(B.n == U2.n);
    CHECK(plain_json(B) == j);

    StarAlgebra XA = exchange_algebra(U2);
    StarAlgebra XB = exchange_algebra(B);
    CHECK(par_star(XA).par_tuple() == par_star(XB).par_tuple());
}

TEST_CASE("constructive block specs assemble on load") {
    Json j;
    j["blocks"] = Json::array({Json{{"kind", "transpose"}, {"k", 2}}});
    StarAlgebra A = algebra_from_json(j);
    CHECK(A.n == 4);
    CHECK(dims_star(A) == std::pair<int, int>{3, 1});

    Json ju;
    ju["blocks"] = Json::array({Json{{"kind", "exchange"}, {"k", 1}}});
    ju["radical"] = Json{{"dim", 1},
                         {"mult", Json::array({Json::array({0, 2, 2, "1"}),
                                               Json::array({2, 1, 2, "1"})})},
                         {"invol", Json::array({Json::array({"1"})})},
                         {"peirce", Json::array({Json::array({1, 1})})}};
    StarAlgebra U = algebra_from_json(ju);
    CHECK(same_algebra(U, ut_star_algebra(2)));
}

TEST_CASE("malformed algebra files are rejected with reasons") {
    StarAlgebra A = ut_star_algebra(2);
    Json good = algebra_json(A);

    Json bad = good;
    bad["mult"][0][3] = "1/3";
    CHECK_THROWS_AS(algebra_from_json(bad), Error);

    Json badr = good;
    badr["invol"][0][0] = "2/0";
    CHECK_THROWS_AS(algebra_from_json(badr), Error);

    Json badd = good;
    badd["dim"] = 5;
    CHECK_THROWS_AS(algebra_from_json(badd), Error);

    Json missing = good;
    missing.erase("blocks");
    missing.erase("dim");
    CHECK_THROWS_AS(algebra_from_json(missing), Error);

    Json badidx = good;
    badidx["mult"][0][0] = 9;
    CHECK_THROWS_AS(algebra_from_json(badidx), Error);

    // plain loader checks associativity of the raw table
    PlainAlgebra C = full_matrix_algebra(2);
    Json pj = plain_json(C);
    pj["mult"][0][3] = "7";
    CHECK_THROWS_AS(plain_from_json(pj), Error);
}

TEST_CASE("witnesses serialize with the exact schema keys and re-evaluate") {
    StarAlgebra T2 = build_star_simple({BlockKind::Transpose, 2});
    WitnessResult w = beta_witness(T2, 1);
    Json j = witness_json(w.poly, w.subst, w.value);
    REQUIRE(j.size() == 3);
    auto it = j.begin();
    CHECK(it.key() == "polynomial");
    CHECK((++it).key() == "assignment");
    CHECK((++it).key() == "value");

    ParsedWitness pw = witness_from_json(j, T2.n);
    CHECK(pw.poly == w.poly);
    CHECK(pw.value == w.value);
    CHECK(evaluate(pw.poly, pw.subst, T2) == pw.value);

    Json badvar = j;
    badvar["assignment"]["q7"] = badvar["assignment"].begin().value();
    CHECK_THROWS_AS(witness_from_json(badvar, T2.n), Error);

    Json badlen = j;
    badlen["value"] = Json::array({"1"});
    CHECK_THROWS_AS(witness_from_json(badlen, T2.n), Error);
}

TEST_CASE("certificates and reports serialize to the documented shape") {
    StarAlgebra U3 = ut_star_algebra(3);
    PathCertificate cert;
    cert.order = {2, 1};
    cert.radicals = {basis_vec(U3, 5)};
    cert.diag = {1, 1};
    Json j = cert_json(cert);
    PathCertificate back = cert_from_json(j, U3.n);
    CHECK(back.order == cert.order);
    CHECK(back.diag == cert.diag);
    REQUIRE(back.radicals.size() == 1);
    CHECK(back.radicals[0] == cert.radicals[0]);

    KemerReport r = kemer_report(build_star_simple({BlockKind::Transpose, 2}), 2);
    Json rj = report_json(r);
    CHECK(rj["par_star"]["t"] == Json::array({3, 1}));
    CHECK(rj["beta"]["exact"] == true);
    CHECK(rj["gamma"]["lower"] == 1);
    REQUIRE(rj.contains("ind_star"));
    CHECK(rj["ind_star"]["t"] == Json::array({3, 1}));
    CHECK(rj["ind_star"]["s"] == 1);

    KemerReport ru = kemer_report(ut_star_algebra(2), 2);
    CHECK_FALSE(report_json(ru).contains("ind_star"));
}
