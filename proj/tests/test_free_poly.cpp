#include <doctest.h>

#include <random>

#include "starpi/free_poly.hpp"

using namespace starpi;

namespace {

StarPoly random_poly(std::mt19937& rng, bool with_stars, int max_terms = 4, int max_len = 5) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> len(1, max_len);
    std::uniform_int_distribution<int> idx(1, 3);
    std::uniform_int_distribution<int> ab(0, 2);
    std::uniform_int_distribution<int> coeff(-3, 3);
    StarPoly p;
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        Monomial m;
        int l = len(rng);
        for (int j = 0; j < l; ++j) {
            switch (ab(rng)) {
                case 0: m.push_back(sym_letter(idx(rng))); break;
                case 1: m.push_back(skew_letter(idx(rng))); break;
                default:
                    m.push_back(gen_letter(idx(rng), with_stars && (rng() & 1)));
                    break;
            }
        }
        int c = coeff(rng);
        if (c == 0) c = 1;
        p.add_term(m, Rational(c));
    }
    return p;
}

StarPoly random_general_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(1, 4);
    std::uniform_int_distribution<int> len(1, 5);
    std::uniform_int_distribution<int> idx(1, 3);
    std::uniform_int_distribution<int> coeff(-3, 3);
    StarPoly p;
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        Monomial m;
        int l = len(rng);
        for (int j = 0; j < l; ++j) m.push_back(gen_letter(idx(rng), (rng() & 1) != 0));
        int c = coeff(rng);
        if (c == 0) c = 1;
        p.add_term(m, Rational(c));
    }
    return p;
}

StarPoly random_yz_poly(std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(1, 4);
    std::uniform_int_distribution<int> len(1, 5);
    std::uniform_int_distribution<int> idx(1, 3);
    std::uniform_int_distribution<int> coeff(-3, 3);
    StarPoly p;
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        Monomial m;
        int l = len(rng);
        for (int j = 0; j < l; ++j) {
            m.push_back((rng() & 1) ? sym_letter(idx(rng)) : skew_letter(idx(rng)));
        }
        int c = coeff(rng);
        if (c == 0) c = 1;
        p.add_term(m, Rational(c));
    }
    return p;
}

}  // namespace

TEST_CASE("parser handles the documented grammar") {
    CHECK(render(parse("y1*y2 - y2*y1")) == "y1*y2 - y2*y1");
    CHECK(render(parse("-z1")) == "-z1");
    CHECK(render(parse("2/3*y1^2")) == "2/3*y1^2");
    CHECK(render(parse("y1*y1*z1")) == "y1^2*z1");
    CHECK(parse("x1*x1'") == StarPoly::from_monomial({gen_letter(1), gen_letter(1, true)}));
    CHECK(parse("y1 + y1") == StarPoly::from_monomial({sym_letter(1)}, Rational(2)));
    CHECK(parse("y1 - y1").is_zero());
    CHECK_THROWS_AS(parse("y1*"), Error);
    CHECK_THROWS_AS(parse("y1'"), Error);
    CHECK_THROWS_AS(parse("w1"), Error);
    CHECK_THROWS_AS(parse("y1^0"), Error);
    CHECK_THROWS_AS(parse(""), Error);
    CHECK_THROWS_AS(parse("y1*x1"), Error);
    CHECK_NOTHROW(parse("y1*x1", true));
}

TEST_CASE("render and parse are mutually inverse on a corpus") {
    std::mt19937 rng(11);
    for (int i = 0; i < 60; ++i) {
        StarPoly p = random_poly(rng, true);
        CHECK(parse(render(p), true) == p);
    }
}

TEST_CASE("star image and reverse are involutive") {
    std::mt19937 rng(22);
    for (int i = 0; i < 60; ++i) {
        StarPoly p = random_poly(rng, true);
        CHECK(star_image(star_image(p)) == p);
        CHECK(reverse(reverse(p)) == p);
        CHECK(toggle_stars(toggle_stars(p)) == p);
    }
}

TEST_CASE("star image on general words is reversal plus star toggle") {
    std::mt19937 rng(23);
    for (int i = 0; i < 40; ++i) {
        StarPoly p = random_general_poly(rng);
        CHECK(star_image(p) == toggle_stars(reverse(p)));
        CHECK(star_image(p) == reverse(toggle_stars(p)));
    }
}

TEST_CASE("star image fixes y and negates z letterwise") {
    StarPoly p = parse("y1*z1");
    CHECK(star_image(p) == -parse("z1*y1"));
    CHECK(star_image(parse("z1*z2")) == parse("z2*z1"));
    CHECK(star_image(parse("y1")) == parse("y1"));
    CHECK(star_image(parse("z1")) == -parse("z1"));
}

TEST_CASE("alphabet conversions invert each other") {
    std::mt19937 rng(33);
    for (int i = 0; i < 40; ++i) {
        StarPoly g = random_general_poly(rng);
        CHECK(to_xstar(to_yz(g)) == g);
        StarPoly h = random_yz_poly(rng);
        CHECK(to_yz(to_xstar(h)) == h);
    }
    CHECK(to_yz(parse("x1")) == parse("y1 + z1", true));
    CHECK(to_yz(parse("x1'")) == parse("y1 - z1", true));
    CHECK(to_xstar(parse("y1")) == parse("1/2*x1 + 1/2*x1'", true));
}

TEST_CASE("variable queries see through stars") {
    StarPoly p = parse("x1*x1' + y2*z1", true);
    auto vars = variables(p);
    CHECK(vars.size() == 3);
    CHECK(vars.count(gen_var(1)) == 1);
    // linear = degree exactly one in every monomial
    CHECK_FALSE(is_linear_in(p, sym_var(2)));
    CHECK(is_linear_in(parse("y2*z1 - z1*y2"), sym_var(2)));
    CHECK_FALSE(is_linear_in(p, gen_var(1)));
    CHECK_FALSE(is_multilinear(p));
    CHECK(is_multilinear(parse("y1*z1 - z1*y1")));
    CHECK(is_multilinear(parse("x1*x2' - x2*x1", true)));
}

TEST_CASE("multilinearization counts and re-identification factors") {
    auto lin1 = multilinearize(parse("y1^2*z1"));
    REQUIRE(lin1.size() == 1);
    CHECK(lin1[0].term_count() == 2);

    auto lin2 = multilinearize(parse("y1^3"));
    REQUIRE(lin2.size() == 1);
    CHECK(lin2[0].term_count() == 6);

    auto lin3 = multilinearize(parse("y1^2*y2^2"));
    REQUIRE(lin3.size() == 1);
    CHECK(lin3[0].term_count() == 4);

    auto mixed = multilinearize(parse("y1^2 + y1*z1"));
    CHECK(mixed.size() == 2);
}

TEST_CASE("re-identifying the copies multiplies by the factorial of each degree") {
    std::mt19937 rng(44);
    std::uniform_int_distribution<int> len(1, 6);
    std::uniform_int_distribution<int> ab(0, 2);
    for (int trial = 0; trial < 50; ++trial) {
        Monomial word;
        int l = len(rng);
        for (int j = 0; j < l; ++j) {
            switch (ab(rng)) {
                case 0: word.push_back(sym_letter(1)); break;
                case 1: word.push_back(skew_letter(1)); break;
                default: word.push_back(gen_letter(1, (rng() & 1) != 0)); break;
            }
        }
        StarPoly p = StarPoly::from_monomial(word);
        auto lin = multilinearize(p);
        REQUIRE(lin.size() == 1);

        long factor = 1;
        std::map<VarRef, int> degs;
        for (const Letter& l2 : word) degs[var_of(l2)] += 1;
        for (auto& [v, d] : degs) {
            for (int t = 2; t <= d; ++t) factor *= t;
        }

        std::map<VarRef, StarPoly> collapse;
        for (const VarRef& v : variables(lin[0])) {
            Letter rep = v.ab == Alphabet::Sym ? sym_letter(1)
                         : v.ab == Alphabet::Skew ? skew_letter(1)
                                                  : gen_letter(1);
            collapse[v] = StarPoly::variable(rep);
        }
        CHECK(substitute(lin[0], collapse) == Rational(factor) * p);
    }
}

TEST_CASE("alternators alternate and respect the cap") {
    StarPoly p = parse("y1*y2*z1");
    std::vector<VarRef> S{sym_var(1), sym_var(2)};
    StarPoly a = alternate(p, S);
    CHECK(a.term_count() == 2);
    CHECK(a == parse("y1*y2*z1 - y2*y1*z1"));
    CHECK(is_alternating(a, S));
    CHECK_FALSE(is_alternating(p, S));

    StarPoly big = parse("y1*y2*y3*y4*y5*y6*y7*y8*y9");
    std::vector<VarRef> S9;
    for (int i = 1; i <= 9; ++i) S9.push_back(sym_var(i));
    CHECK_THROWS_AS(alternate(big, S9), Error);
}

TEST_CASE("alternation commutes with the involution") {
    std::mt19937 rng(55);
    for (int trial = 0; trial < 30; ++trial) {
        StarPoly base = random_yz_poly(rng);
        StarPoly p;
        for (const auto& [m, c] : base.terms()) {
            Monomial ext{sym_letter(7), skew_letter(7)};
            ext.insert(ext.end(), m.begin(), m.end());
            Monomial ext2{sym_letter(8), skew_letter(8)};
            ext.insert(ext.end(), ext2.begin(), ext2.end());
            p.add_term(ext, c);
        }
        std::vector<VarRef> Sy{sym_var(7), sym_var(8)};
        std::vector<VarRef> Sz{skew_var(7), skew_var(8)};
        CHECK(star_image(alternate(p, Sy)) == alternate(star_image(p), Sy));
        CHECK(star_image(alternate(p, Sz)) == alternate(star_image(p), Sz));
    }
}

TEST_CASE("type checking separates symmetric and skew alternation") {
    StarPoly w = parse("y1*z1*y2 - y2*z1*y1");
    PolyType ty;
    ty.tbar = {1, 1};
    ty.mu_sets = {{sym_var(1), skew_var(1)}, {sym_var(2)}};
    CHECK_FALSE(check_type(w, ty));

    StarPoly f = alternate(alternate(parse("y1*z1*y2*z2"), {sym_var(1), sym_var(2)}),
                           {skew_var(1), skew_var(2)});
    PolyType good;
    good.tbar = {2, 2};
    good.mu_sets = {{sym_var(1), sym_var(2), skew_var(1), skew_var(2)}};
    CHECK(check_type(f, good));

    PolyType wrong_split;
    wrong_split.tbar = {1, 3};
    wrong_split.mu_sets = good.mu_sets;
    CHECK_FALSE(check_type(f, wrong_split));
}

TEST_CASE("multilinear word bases have factorial sizes") {
    CHECK(multilinear_basis(2, 1).size() == 6);
    CHECK(multilinear_basis(0, 3).size() == 6);
    CHECK(multilinear_basis(1, 0).size() == 1);
    auto words = multilinear_basis(1, 1);
    CHECK(words.size() == 2);
    for (const Monomial& w : words) CHECK(w.size() == 2);
}
