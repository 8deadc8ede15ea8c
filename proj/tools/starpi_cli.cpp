#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "starpi/constructions.hpp"
#include "starpi/error.hpp"
#include "starpi/forms.hpp"
#include "starpi/identity.hpp"
#include "starpi/json_io.hpp"

using namespace starpi;

namespace {

// Thrown by verb handlers for assertion-style failures (exit code 2).
struct AssertionFailure {
    std::string message;
};

struct Common {
    unsigned seed = 0;
    int jobs = 1;
    std::string outfile;

    void attach(CLI::App* sub, bool with_output = true) {
        sub->add_option("--seed", seed, "Seed for randomized verification paths")
            ->capture_default_str();
        sub->add_option("--jobs", jobs, "Parallel width of substitution enumeration")
            ->capture_default_str();
        if (with_output) {
            sub->add_option("-o,--output", outfile, "Write the JSON result to this file");
        }
    }

    EngineOptions options() const {
        EngineOptions o;
        o.seed = seed;
        o.jobs = jobs;
        if (const char* env = std::getenv("STARPI_BUDGET")) {
            char* end = nullptr;
            long long v = std::strtoll(env, &end, 10);
            if (end != env && *end == '\0' && v > 0) o.budget = v;
        }
        return o;
    }

    void emit(const Json& j) const {
        if (outfile.empty()) {
            std::cout << j.dump(2) << '\n';
        } else {
            write_json_file(outfile, j);
        }
    }
};

PlainAlgebra plain_from_spec(const Json& j) {
    if (j.is_object() && j.contains("preset")) {
        std::string p = j.at("preset").get<std::string>();
        if (p == "full_matrix") {
            if (!j.contains("k")) throw Error("preset full_matrix needs \"k\"");
            return full_matrix_algebra(j.at("k").get<int>());
        }
        if (p == "ut") {
            if (!j.contains("n")) throw Error("preset ut needs \"n\"");
            return ut_algebra(j.at("n").get<int>());
        }
        throw Error("unknown plain preset \"" + p + "\" (expected full_matrix or ut)");
    }
    return plain_from_json(j);
}

StarAlgebra algebra_from_spec(const Json& j) {
    if (j.is_object() && j.contains("preset")) {
        std::string p = j.at("preset").get<std::string>();
        if (p == "star_simple") {
            if (!j.contains("kind") || !j.contains("k")) {
                throw Error("preset star_simple needs \"kind\" and \"k\"");
            }
            auto kind = kind_from_name(j.at("kind").get<std::string>());
            if (!kind) {
                throw Error("unknown block kind \"" + j.at("kind").get<std::string>() + "\"");
            }
            return build_star_simple(BlockSpec{*kind, j.at("k").get<int>()});
        }
        if (p == "ut_star") {
            if (!j.contains("n")) throw Error("preset ut_star needs \"n\"");
            return ut_star_algebra(j.at("n").get<int>());
        }
        if (p == "exchange") {
            if (!j.contains("plain")) throw Error("preset exchange needs a \"plain\" spec");
            return exchange_algebra(plain_from_spec(j.at("plain")));
        }
        throw Error("unknown preset \"" + p +
                    "\" (expected star_simple, ut_star, or exchange)");
    }
    return algebra_from_json(j);
}

StarAlgebra load_algebra(const std::string& path) {
    return algebra_from_spec(read_json_file(path));
}

StarPoly poly_from_flags(const std::string& text, const std::string& file) {
    if (!text.empty()) return parse(text, true);
    if (file.empty()) throw Error("no polynomial given: use --poly or --poly-file");
    std::ifstream in(file);
    if (!in) throw Error("cannot open " + file);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), true);
}

std::vector<StarPoly> parse_poly_list(const std::string& text) {
    std::vector<StarPoly> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        out.push_back(parse(item, true));
    }
    return out;
}

std::vector<std::vector<VarRef>> parse_var_sets(const std::string& text) {
    std::vector<std::vector<VarRef>> sets;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        std::vector<VarRef> set;
        std::stringstream ps(part);
        std::string name;
        while (std::getline(ps, name, ',')) {
            std::string trimmed;
            for (char c : name) {
                if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
            }
            if (trimmed.empty()) continue;
            auto v = parse_var_name(trimmed);
            if (!v) throw Error("bad variable name \"" + trimmed + "\" in set list");
            set.push_back(*v);
        }
        if (!set.empty()) sets.push_back(std::move(set));
    }
    return sets;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact workbench for finite-dimensional algebras with involution"};
    app.require_subcommand(1);
    int rc = 0;

    // build
    auto build = app.add_subcommand(
        "build", "Construct an algebra from a JSON spec (preset, blocks, or full tables)");
    Common build_c;
    std::string build_spec;
    build->add_option("spec", build_spec, "Spec JSON file")->required();
    build_c.attach(build);
    build->callback([&] { build_c.emit(algebra_json(load_algebra(build_spec))); });

    // check
    auto check = app.add_subcommand("check", "Decide whether a *-polynomial is an identity");
    Common check_c;
    std::string check_alg, check_poly, check_poly_file;
    bool assert_id = false, assert_nonid = false;
    check->add_option("algebra", check_alg, "Algebra JSON file")->required();
    check->add_option("--poly", check_poly, "Polynomial text");
    check->add_option("--poly-file", check_poly_file, "File holding the polynomial text");
    check->add_flag("--assert-identity", assert_id, "Exit 2 unless the polynomial is an identity");
    check->add_flag("--assert-nonidentity", assert_nonid,
                    "Exit 2 unless the polynomial fails somewhere");
    check_c.attach(check);
    check->callback([&] {
        StarAlgebra A = load_algebra(check_alg);
        StarPoly p = poly_from_flags(check_poly, check_poly_file);
        IdentityResult r = is_identity(p, A, check_c.options());
        Json out;
        out["identity"] = r.identity;
        if (!r.identity && r.witness && r.witness_poly) {
            Vec value = evaluate(*r.witness_poly, *r.witness, A);
            out["witness"] = witness_json(*r.witness_poly, *r.witness, value);
        }
        check_c.emit(out);
        if (assert_id && !r.identity) {
            throw AssertionFailure{"the polynomial is not an identity"};
        }
        if (assert_nonid && r.identity) {
            throw AssertionFailure{"the polynomial is an identity"};
        }
    });

    // params
    auto params = app.add_subcommand("params", "Structural parameters of the algebra");
    Common params_c;
    std::string params_alg;
    params->add_option("algebra", params_alg, "Algebra JSON file")->required();
    params_c.attach(params);
    params->callback([&] {
        StarAlgebra A = load_algebra(params_alg);
        if (!A.wm) {
            throw Error("the algebra declares no Wedderburn complement: add \"blocks\" "
                        "(and \"radical\") to the spec");
        }
        ParStar p = par_star(A);
        Json out;
        out["dims_star"] = Json::array({p.t1, p.t2});
        out["nd"] = p.nd;
        out["dim_radical"] = p.dim_radical;
        out["par_star"] = Json::array({p.t1, p.t2, p.nd});
        out["cpar_star"] = Json::array({p.t1, p.t2, p.nd, p.dim_radical});
        params_c.emit(out);
    });

    // witness
    auto witness = app.add_subcommand(
        "witness", "Build an alternating non-identity witnessing the beta lower bound");
    Common witness_c;
    std::string witness_alg, witness_cert;
    int witness_sets = 1;
    witness->add_option("algebra", witness_alg, "Algebra JSON file")->required();
    witness->add_option("--sets", witness_sets, "Number of alternating set pairs")
        ->capture_default_str();
    witness->add_option("--certificate", witness_cert,
                        "Path certificate JSON (required for multi-block algebras)");
    witness_c.attach(witness);
    witness->callback([&] {
        StarAlgebra A = load_algebra(witness_alg);
        std::optional<PathCertificate> cert;
        if (!witness_cert.empty()) cert = cert_from_json(read_json_file(witness_cert), A.n);
        WitnessResult w;
        try {
            w = beta_witness(A, witness_sets, cert, witness_c.options());
        } catch (const Error& e) {
            std::string msg = e.what();
            if (msg.find("evaluates to zero") != std::string::npos) {
                throw AssertionFailure{msg};
            }
            throw;
        }
        witness_c.emit(witness_json(w.poly, w.subst, w.value));
    });

    // chpoly
    auto chpoly = app.add_subcommand("chpoly", "Cayley-Hamilton trace polynomial X_n");
    Common chpoly_c;
    int chpoly_n = 2;
    chpoly->add_option("--n", chpoly_n, "Matrix size")->capture_default_str();
    chpoly_c.attach(chpoly);
    chpoly->callback([&] {
        Json out;
        out["n"] = chpoly_n;
        out["polynomial"] = render_form(ch_trace_poly(chpoly_n));
        chpoly_c.emit(out);
    });

    // derive-ch
    auto derive = app.add_subcommand(
        "derive-ch", "Search for a Cayley-Hamilton-type polynomial for the semisimple part");
    Common derive_c;
    std::string derive_alg;
    int derive_degree = 2;
    derive->add_option("algebra", derive_alg, "Algebra JSON file")->required();
    derive->add_option("--degree", derive_degree, "Degree of the monic ansatz")
        ->capture_default_str();
    derive_c.attach(derive);
    derive->callback([&] {
        StarAlgebra A = load_algebra(derive_alg);
        TraceForms tf = make_trace_forms(A);
        auto fp = derive_ch_type(A, derive_degree, tf, derive_c.options());
        Json out;
        out["found"] = fp.has_value();
        if (fp) out["polynomial"] = render_form(*fp);
        derive_c.emit(out);
    });

    // relfree
    auto relfree = app.add_subcommand(
        "relfree", "Degree-truncated relatively free algebra over an attached semisimple part");
    Common relfree_c;
    std::string relfree_attached, relfree_gens, relfree_gens_file;
    int relfree_q = 1, relfree_s = 2;
    relfree->add_option("--q", relfree_q, "Number of general generators")->capture_default_str();
    relfree->add_option("--s", relfree_s, "Truncation degree")->capture_default_str();
    relfree->add_option("--attached", relfree_attached, "Attached semisimple algebra JSON file");
    relfree->add_option("--gens", relfree_gens, "Semicolon-separated generator polynomials");
    relfree->add_option("--gens-file", relfree_gens_file,
                        "File with semicolon-separated generator polynomials");
    relfree_c.attach(relfree);
    relfree->callback([&] {
        StarAlgebra B;
        B.invol = Mat::Zero(0, 0);
        if (!relfree_attached.empty()) B = load_algebra(relfree_attached);
        std::string gens_text = relfree_gens;
        if (!relfree_gens_file.empty()) {
            std::ifstream in(relfree_gens_file);
            if (!in) throw Error("cannot open " + relfree_gens_file);
            std::stringstream ss;
            ss << in.rdbuf();
            gens_text += gens_text.empty() ? ss.str() : ";" + ss.str();
        }
        std::vector<StarPoly> gens = parse_poly_list(gens_text);
        StarAlgebra R = truncated_relfree(B, gens, relfree_q, relfree_s, relfree_c.options());
        relfree_c.emit(algebra_json(R));
    });

    // exchange
    auto exchange = app.add_subcommand(
        "exchange", "Exchange algebra C x C^op of a plain algebra");
    Common exchange_c;
    std::string exchange_plain;
    exchange->add_option("plain", exchange_plain, "Plain-algebra JSON file or preset spec")
        ->required();
    exchange_c.attach(exchange);
    exchange->callback([&] {
        PlainAlgebra C = plain_from_spec(read_json_file(exchange_plain));
        exchange_c.emit(algebra_json(exchange_algebra(C)));
    });

    // report
    auto report = app.add_subcommand("report", "Certified bounds on the index of the algebra");
    Common report_c;
    std::string report_alg, report_cert;
    int report_sets = 2;
    report->add_option("algebra", report_alg, "Algebra JSON file")->required();
    report->add_option("--sets-max", report_sets, "Deepest witness checked")
        ->capture_default_str();
    report->add_option("--certificate", report_cert, "Path certificate JSON");
    report_c.attach(report);
    report->callback([&] {
        StarAlgebra A = load_algebra(report_alg);
        std::optional<PathCertificate> cert;
        if (!report_cert.empty()) cert = cert_from_json(read_json_file(report_cert), A.n);
        report_c.emit(report_json(kemer_report(A, report_sets, cert, report_c.options())));
    });

    // verify-forms
    auto verify = app.add_subcommand(
        "verify-forms", "Verify the trace-form identities on the algebra");
    Common verify_c;
    std::string verify_alg, verify_poly, verify_mu, verify_big;
    verify->add_option("algebra", verify_alg, "Algebra JSON file")->required();
    verify->add_option("--poly", verify_poly,
                       "Polynomial for the trace-transfer identities (with --mu)");
    verify->add_option("--mu", verify_mu, "Mu alternating sets, e.g. \"y1,z1\"");
    verify->add_option("--big", verify_big, "Oversized alternating sets, e.g. \"y2,y3,z2\"");
    verify_c.attach(verify);
    verify->callback([&] {
        StarAlgebra A = load_algebra(verify_alg);
        TraceForms tf = make_trace_forms(A);
        Json out;
        bool ok10 = verify_traceid10(tf);
        out["traceid10"] = ok10;
        bool ok1 = true;
        if (!verify_poly.empty()) {
            StarPoly f = parse(verify_poly, true);
            PolyType ty;
            ty.mu_sets = parse_var_sets(verify_mu);
            ty.big_sets = parse_var_sets(verify_big);
            if (ty.mu_sets.empty()) throw Error("--poly needs at least one --mu set");
            int t1 = 0, t2 = 0;
            for (const VarRef& v : ty.mu_sets.front()) {
                (v.ab == Alphabet::Sym ? t1 : t2) += 1;
            }
            ty.tbar = {t1, t2};
            if (!check_type(f, ty)) throw Error("the polynomial does not have the stated type");
            ok1 = verify_traceid1(f, ty, tf, verify_c.options());
            out["traceid1"] = ok1;
        }
        verify_c.emit(out);
        if (!ok10 || !ok1) throw AssertionFailure{"a trace-form identity failed"};
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const AssertionFailure& e) {
        std::cerr << "assertion failed: " << e.message << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return rc;
}
