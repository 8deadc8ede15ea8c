#include "starpi/json_io.hpp"

#include <fstream>
#include <utility>

#include "starpi/error.hpp"

namespace starpi {

namespace {

Vec coord_vec(Index n, Index i) {
    Vec v = Vec::Zero(n);
    v(i) = Rational(1);
    return v;
}

Index require_dim(const Json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw Error(std::string(what) + ": expected a non-negative integer");
    }
    return static_cast<Index>(j.get<long long>());
}

Index checked_index(const Json& j, Index n, const char* what) {
    if (!j.is_number_integer()) throw Error(std::string(what) + ": expected an integer index");
    long long v = j.get<long long>();
    if (v < 0 || v >= n) throw Error(std::string(what) + ": index out of range");
    return static_cast<Index>(v);
}

Json mult_triples_json(const std::vector<std::vector<Vec>>& mult, Index lo) {
    Json out = Json::array();
    Index n = static_cast<Index>(mult.size());
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            if (lo > 0 && i < lo && j < lo) continue;
            const Vec& v = mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            for (Index k = 0; k < v.size(); ++k) {
                if (!v(k).is_zero()) out.push_back(Json::array({i, j, k, v(k).str()}));
            }
        }
    }
    return out;
}

void apply_triples(const Json& arr, std::vector<std::vector<Vec>>& mult, Index n) {
    if (!arr.is_array()) throw Error("mult: expected an array of [i, j, k, coeff] triples");
    for (const Json& t : arr) {
        if (!t.is_array() || t.size() != 4) {
            throw Error("mult: each entry must be [i, j, k, coeff]");
        }
        Index i = checked_index(t[0], n, "mult");
        Index j = checked_index(t[1], n, "mult");
        Index k = checked_index(t[2], n, "mult");
        mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)](k) +=
            rational_from_json(t[3]);
    }
}

std::vector<std::string> names_from_json(const Json& j, Index n) {
    std::vector<std::string> names;
    if (j.contains("basis")) {
        const Json& b = j.at("basis");
        if (!b.is_array() || static_cast<Index>(b.size()) != n) {
            throw Error("basis: expected an array of dim names");
        }
        for (const Json& s : b) {
            if (!s.is_string()) throw Error("basis: names must be strings");
            names.push_back(s.get<std::string>());
        }
    } else {
        for (Index i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
    }
    return names;
}

// Change of basis into the canonical layout (block units first, radical at
// the tail): P columns are the Wedderburn columns in that order. Absent when
// the columns do not form a basis.
struct Rebase {
    Mat P, Pinv;
    bool identity = false;
};

std::optional<Rebase> make_rebase(Index n, const std::vector<Mat>& units, const Mat& radical) {
    Index cols = radical.cols();
    for (const Mat& U : units) cols += U.cols();
    if (cols != n || radical.rows() != n) return std::nullopt;
    Rebase rb;
    rb.P = Mat(n, n);
    Index off = 0;
    for (const Mat& U : units) {
        if (U.rows() != n) return std::nullopt;
        rb.P.middleCols(off, U.cols()) = U;
        off += U.cols();
    }
    rb.P.middleCols(off, radical.cols()) = radical;
    Mat aug(n, 2 * n);
    aug.leftCols(n) = rb.P;
    aug.rightCols(n) = Mat::Zero(n, n);
    for (Index i = 0; i < n; ++i) aug(i, n + i) = Rational(1);
    std::vector<Index> pivots;
    Mat red = rref(aug, &pivots);
    if (static_cast<Index>(pivots.size()) != n || (n > 0 && pivots.back() >= n))
        return std::nullopt;
    rb.Pinv = red.rightCols(n);
    rb.identity = true;
    for (Index r = 0; r < n && rb.identity; ++r) {
        for (Index c = 0; c < n; ++c) {
            Rational want = (r == c) ? Rational(1) : Rational(0);
            if (rb.P(r, c) != want) {
                rb.identity = false;
                break;
            }
        }
    }
    return rb;
}

// e0.. names, keeping original names across pure permutations.
std::vector<std::string> rebased_names(const std::vector<std::string>& names, const Mat& P) {
    Index n = P.rows();
    std::vector<std::string> out;
    for (Index c = 0; c < n; ++c) {
        Index hit = -1;
        bool perm = true;
        for (Index r = 0; r < n; ++r) {
            if (P(r, c).is_zero()) continue;
            if (hit >= 0 || P(r, c) != Rational(1)) {
                perm = false;
                break;
            }
            hit = r;
        }
        if (perm && hit >= 0) {
            out.push_back(names[static_cast<std::size_t>(hit)]);
        } else {
            out.push_back("b" + std::to_string(c));
        }
    }
    return out;
}

std::vector<std::pair<int, int>> labels_from_json(const Json& arr, Index q) {
    if (!arr.is_array() || static_cast<Index>(arr.size()) != q) {
        throw Error("radical.peirce: expected one [l1, l2] pair per radical element");
    }
    std::vector<std::pair<int, int>> labels;
    for (const Json& p : arr) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
            !p[1].is_number_integer()) {
            throw Error("radical.peirce: entries must be [l1, l2] integer pairs");
        }
        labels.emplace_back(p[0].get<int>(), p[1].get<int>());
    }
    return labels;
}

}  // namespace

Json rational_json(const Rational& r) { return Json(r.str()); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw Error("expected a rational as a \"p/q\" string");
    auto r = Rational::parse(j.get<std::string>());
    if (!r) throw Error("malformed rational \"" + j.get<std::string>() + "\"");
    return *r;
}

Json vec_json(const Vec& v) {
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(v(i).str());
    return out;
}

Vec vec_from_json(const Json& j, Index expect) {
    if (!j.is_array()) throw Error("expected a coordinate array");
    if (expect >= 0 && static_cast<Index>(j.size()) != expect) {
        throw Error("coordinate array has length " + std::to_string(j.size()) + ", expected " +
                    std::to_string(expect));
    }
    Vec v(static_cast<Index>(j.size()));
    for (Index i = 0; i < v.size(); ++i) v(i) = rational_from_json(j[static_cast<std::size_t>(i)]);
    return v;
}

Json mat_json(const Mat& m) {
    Json out = Json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
        out.push_back(std::move(row));
    }
    return out;
}

Mat mat_from_json(const Json& j) {
    if (!j.is_array()) throw Error("expected a matrix as an array of rows");
    Index rows = static_cast<Index>(j.size());
    Index cols = rows > 0 ? static_cast<Index>(j[0].size()) : 0;
    Mat m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
            throw Error("matrix rows have inconsistent lengths");
        }
        for (Index c = 0; c < cols; ++c) {
            m(r, c) = rational_from_json(row[static_cast<std::size_t>(c)]);
        }
    }
    return m;
}

Json algebra_json(const StarAlgebra& A) {
    Index n = A.n;
    std::optional<Rebase> rb;
    if (A.wm) rb = make_rebase(n, A.wm->units, A.wm->radical);

    Json out;
    out["dim"] = n;
    if (!rb) {
        out["basis"] = A.basis_names;
        out["mult"] = mult_triples_json(A.mult, 0);
        out["invol"] = mat_json(A.invol);
        if (A.unit) out["unit"] = vec_json(*A.unit);
        return out;
    }

    std::vector<std::vector<Vec>> mult;
    Mat invol;
    std::optional<Vec> unit;
    if (rb->identity) {
        out["basis"] = A.basis_names;
        mult = A.mult;
        invol = A.invol;
        unit = A.unit;
    } else {
        out["basis"] = rebased_names(A.basis_names, rb->P);
        mult.assign(static_cast<std::size_t>(n),
                    std::vector<Vec>(static_cast<std::size_t>(n), Vec::Zero(n)));
        for (Index a = 0; a < n; ++a) {
            for (Index b = 0; b < n; ++b) {
                mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                    rb->Pinv * multiply(A, rb->P.col(a), rb->P.col(b));
            }
        }
        invol = rb->Pinv * A.invol * rb->P;
        if (A.unit) unit = Vec(rb->Pinv * *A.unit);
    }
    out["mult"] = mult_triples_json(mult, 0);
    out["invol"] = mat_json(invol);
    if (unit) out["unit"] = vec_json(*unit);

    Json blocks = Json::array();
    Index nB = 0;
    for (const BlockSpec& b : A.wm->blocks) {
        blocks.push_back(Json{{"kind", kind_name(b.kind)}, {"k", b.k}});
        nB += block_dim(b);
    }
    out["blocks"] = std::move(blocks);
    Index q = n - nB;
    Json rad;
    rad["dim"] = q;
    rad["mult"] = mult_triples_json(mult, nB);
    rad["invol"] = mat_json(invol.bottomRightCorner(q, q));
    Json peirce = Json::array();
    for (auto [l1, l2] : A.wm->peirce_labels) peirce.push_back(Json::array({l1, l2}));
    rad["peirce"] = std::move(peirce);
    out["radical"] = std::move(rad);
    return out;
}

StarAlgebra algebra_from_json(const Json& j) {
    if (!j.is_object()) throw Error("algebra: expected a JSON object");
    if (!j.contains("blocks")) {
        if (!j.contains("dim")) throw Error("algebra: missing \"dim\"");
        Index n = require_dim(j.at("dim"), "dim");
        StarAlgebra A;
        A.n = n;
        A.basis_names = names_from_json(j, n);
        A.mult.assign(static_cast<std::size_t>(n),
                      std::vector<Vec>(static_cast<std::size_t>(n), Vec::Zero(n)));
        if (j.contains("mult")) apply_triples(j.at("mult"), A.mult, n);
        if (!j.contains("invol")) throw Error("algebra: missing \"invol\"");
        A.invol = mat_from_json(j.at("invol"));
        if (A.invol.rows() != n || A.invol.cols() != n) {
            throw Error("invol: expected a dim x dim matrix");
        }
        if (j.contains("unit")) A.unit = vec_from_json(j.at("unit"), n);
        validate(A);
        return A;
    }

    const Json& bj = j.at("blocks");
    if (!bj.is_array()) throw Error("blocks: expected an array of {kind, k} objects");
    std::vector<BlockSpec> blocks;
    Index nB = 0;
    for (const Json& b : bj) {
        if (!b.is_object() || !b.contains("kind") || !b.contains("k")) {
            throw Error("blocks: entries must be {kind, k} objects");
        }
        auto kind = kind_from_name(b.at("kind").get<std::string>());
        if (!kind) throw Error("blocks: unknown kind \"" + b.at("kind").get<std::string>() + "\"");
        BlockSpec spec{*kind, b.at("k").get<int>()};
        if (spec.k < 1) throw Error("blocks: k must be positive");
        blocks.push_back(spec);
        nB += block_dim(spec);
    }

    Index q = 0;
    std::vector<MultTriple> rad_triples;
    Mat rad_invol = Mat::Zero(0, 0);
    std::vector<std::pair<int, int>> labels;
    if (j.contains("radical")) {
        const Json& rj = j.at("radical");
        if (!rj.is_object() || !rj.contains("dim")) throw Error("radical: missing \"dim\"");
        q = require_dim(rj.at("dim"), "radical.dim");
    }
    Index n = nB + q;
    if (j.contains("dim") && require_dim(j.at("dim"), "dim") != n) {
        throw Error("blocks and radical dimensions sum to " + std::to_string(n) +
                    ", which does not match \"dim\"");
    }
    if (j.contains("radical")) {
        const Json& rj = j.at("radical");
        if (rj.contains("mult")) {
            const Json& arr = rj.at("mult");
            if (!arr.is_array()) throw Error("radical.mult: expected an array of triples");
            for (const Json& t : arr) {
                if (!t.is_array() || t.size() != 4) {
                    throw Error("radical.mult: each entry must be [i, j, k, coeff]");
                }
                rad_triples.push_back(MultTriple{checked_index(t[0], n, "radical.mult"),
                                                 checked_index(t[1], n, "radical.mult"),
                                                 checked_index(t[2], n, "radical.mult"),
                                                 rational_from_json(t[3])});
            }
        }
        rad_invol = rj.contains("invol") ? mat_from_json(rj.at("invol")) : Mat::Zero(q, q);
        if (rad_invol.rows() != q || rad_invol.cols() != q) {
            throw Error("radical.invol: expected a dim x dim matrix on radical coordinates");
        }
        labels = rj.contains("peirce") ? labels_from_json(rj.at("peirce"), q)
                                       : std::vector<std::pair<int, int>>();
        if (labels.empty() && q > 0) throw Error("radical: missing \"peirce\" labels");
    }

    StarAlgebra A = assemble(blocks, q, rad_triples, rad_invol, labels);
    if (j.contains("mult")) {
        std::vector<std::vector<Vec>> mult(
            static_cast<std::size_t>(n),
            std::vector<Vec>(static_cast<std::size_t>(n), Vec::Zero(n)));
        apply_triples(j.at("mult"), mult, n);
        for (Index i = 0; i < n; ++i) {
            for (Index jj = 0; jj < n; ++jj) {
                if (A.mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)] !=
                    mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)]) {
                    throw Error("declared blocks do not reproduce the mult table at (" +
                                std::to_string(i) + ", " + std::to_string(jj) + ")");
                }
            }
        }
    }
    if (j.contains("invol")) {
        Mat invol = mat_from_json(j.at("invol"));
        if (invol.rows() != n || invol.cols() != n || A.invol != invol) {
            throw Error("declared blocks do not reproduce the involution");
        }
    }
    if (j.contains("unit")) {
        Vec unit = vec_from_json(j.at("unit"), n);
        if (!A.unit || *A.unit != unit) {
            throw Error("declared unit does not match the assembled algebra");
        }
    }
    if (j.contains("basis")) A.basis_names = names_from_json(j, n);
    return A;
}

Json plain_json(const PlainAlgebra& C) {
    Index n = C.n;
    std::optional<Rebase> rb;
    if (C.wm) rb = make_rebase(n, C.wm->units, C.wm->radical);

    Json out;
    out["dim"] = n;
    if (!rb || rb->identity) {
        out["basis"] = C.basis_names;
        out["mult"] = mult_triples_json(C.mult, 0);
        if (C.unit) out["unit"] = vec_json(*C.unit);
    } else {
        out["basis"] = rebased_names(C.basis_names, rb->P);
        std::vector<std::vector<Vec>> mult(
            static_cast<std::size_t>(n),
            std::vector<Vec>(static_cast<std::size_t>(n), Vec::Zero(n)));
        for (Index a = 0; a < n; ++a) {
            for (Index b = 0; b < n; ++b) {
                mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                    rb->Pinv * plain_multiply(C, rb->P.col(a), rb->P.col(b));
            }
        }
        out["mult"] = mult_triples_json(mult, 0);
        if (C.unit) out["unit"] = vec_json(Vec(rb->Pinv * *C.unit));
    }
    if (rb) {
        out["blocks"] = C.wm->block_sizes;
        Index nB = 0;
        for (int k : C.wm->block_sizes) nB += static_cast<Index>(k) * k;
        Json rad;
        rad["dim"] = n - nB;
        Json peirce = Json::array();
        for (auto [l1, l2] : C.wm->peirce_labels) peirce.push_back(Json::array({l1, l2}));
        rad["peirce"] = std::move(peirce);
        out["radical"] = std::move(rad);
    }
    return out;
}

PlainAlgebra plain_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim")) throw Error("algebra: missing \"dim\"");
    Index n = require_dim(j.at("dim"), "dim");
    PlainAlgebra C;
    C.n = n;
    C.basis_names = names_from_json(j, n);
    C.mult.assign(static_cast<std::size_t>(n),
                  std::vector<Vec>(static_cast<std::size_t>(n), Vec::Zero(n)));
    if (j.contains("mult")) apply_triples(j.at("mult"), C.mult, n);
    if (j.contains("unit")) C.unit = vec_from_json(j.at("unit"), n);

    for (Index a = 0; a < n; ++a) {
        for (Index b = 0; b < n; ++b) {
            for (Index c = 0; c < n; ++c) {
                Vec left = plain_multiply(
                    C, C.mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)],
                    coord_vec(n, c));
                Vec right = plain_multiply(
                    C, coord_vec(n, a),
                    C.mult[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)]);
                if (left != right) throw Error("plain algebra: multiplication not associative");
            }
        }
    }
    if (C.unit) {
        for (Index a = 0; a < n; ++a) {
            Vec e = coord_vec(n, a);
            if (plain_multiply(C, *C.unit, e) != e || plain_multiply(C, e, *C.unit) != e) {
                throw Error("plain algebra: declared unit is not a unit");
            }
        }
    }

    if (j.contains("blocks")) {
        const Json& bj = j.at("blocks");
        if (!bj.is_array()) throw Error("blocks: expected an array of matrix sizes");
        PlainAlgebra::WM wm;
        Index off = 0;
        for (const Json& b : bj) {
            if (!b.is_number_integer() || b.get<int>() < 1) {
                throw Error("blocks: matrix sizes must be positive integers");
            }
            int k = b.get<int>();
            wm.block_sizes.push_back(k);
            Index d = static_cast<Index>(k) * k;
            Mat U = Mat::Zero(n, d);
            for (Index c = 0; c < d; ++c) {
                if (off + c >= n) throw Error("blocks: sizes exceed dim");
                U(off + c, c) = Rational(1);
            }
            wm.units.push_back(std::move(U));
            off += d;
        }
        Index q = n - off;
        if (j.contains("radical")) {
            const Json& rj = j.at("radical");
            if (!rj.is_object() || !rj.contains("dim")) throw Error("radical: missing \"dim\"");
            if (require_dim(rj.at("dim"), "radical.dim") != q) {
                throw Error("radical.dim inconsistent with dim minus block sizes");
            }
            wm.peirce_labels = rj.contains("peirce")
                                   ? labels_from_json(rj.at("peirce"), q)
                                   : std::vector<std::pair<int, int>>();
        }
        if (wm.peirce_labels.empty() && q > 0) throw Error("radical: missing \"peirce\" labels");
        wm.radical = Mat::Zero(n, q);
        for (Index c = 0; c < q; ++c) wm.radical(off + c, c) = Rational(1);
        C.wm = std::move(wm);
    }
    return C;
}

Json witness_json(const StarPoly& p, const Substitution& s, const Vec& value) {
    Json out;
    out["polynomial"] = render(p);
    Json assign;
    for (const auto& [v, val] : s.assign) assign[var_name(v)] = vec_json(val);
    out["assignment"] = std::move(assign);
    out["value"] = vec_json(value);
    return out;
}

ParsedWitness witness_from_json(const Json& j, Index n) {
    if (!j.is_object() || !j.contains("polynomial")) throw Error("witness: missing \"polynomial\"");
    ParsedWitness w;
    w.poly = parse(j.at("polynomial").get<std::string>(), true);
    if (j.contains("assignment")) {
        const Json& a = j.at("assignment");
        if (!a.is_object()) throw Error("witness: \"assignment\" must map variables to vectors");
        for (const auto& [key, val] : a.items()) {
            auto v = parse_var_name(key);
            if (!v) throw Error("witness: bad variable name \"" + key + "\"");
            w.subst.assign[*v] = vec_from_json(val, n);
        }
    }
    if (j.contains("value")) w.value = vec_from_json(j.at("value"), n);
    return w;
}

Json cert_json(const PathCertificate& c) {
    Json out;
    out["order"] = c.order;
    Json rads = Json::array();
    for (const Vec& r : c.radicals) rads.push_back(vec_json(r));
    out["radicals"] = std::move(rads);
    out["diag"] = c.diag;
    return out;
}

PathCertificate cert_from_json(const Json& j, Index n) {
    if (!j.is_object()) throw Error("certificate: expected {order, radicals, diag}");
    PathCertificate c;
    if (j.contains("order")) {
        for (const Json& o : j.at("order")) c.order.push_back(o.get<int>());
    }
    if (j.contains("radicals")) {
        for (const Json& r : j.at("radicals")) c.radicals.push_back(vec_from_json(r, n));
    }
    if (j.contains("diag")) {
        for (const Json& d : j.at("diag")) c.diag.push_back(d.get<int>());
    }
    return c;
}

Json report_json(const KemerReport& r) {
    Json out;
    out["par_star"] = Json{{"t", Json::array({r.par.t1, r.par.t2})},
                           {"nd", r.par.nd},
                           {"dim_radical", r.par.dim_radical}};
    out["beta"] = Json{{"lower", Json::array({r.beta_lower.first, r.beta_lower.second})},
                       {"upper", Json::array({r.beta_upper.first, r.beta_upper.second})},
                       {"witnessed", r.witnessed},
                       {"sets_checked", r.shat_checked},
                       {"overflow_confirmed", r.overflow_confirmed},
                       {"exact", r.beta_exact}};
    out["gamma"] =
        Json{{"lower", r.gamma_lower}, {"upper", r.gamma_upper}, {"exact", r.gamma_exact}};
    if (r.ind_star) {
        out["ind_star"] = Json{
            {"t", Json::array({r.ind_star->first.first, r.ind_star->first.second})},
            {"s", r.ind_star->second}};
    }
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw Error("write to " + path + " failed");
}

}  // namespace starpi
