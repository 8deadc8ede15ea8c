#pragma once

#include <string>

#include <json.hpp>

#include "starpi/constructions.hpp"
#include "starpi/forms.hpp"
#include "starpi/identity.hpp"
#include "starpi/star_algebra.hpp"

namespace starpi {

// All JSON output uses insertion order (ordered_json) so renders are
// deterministic; rationals are serialized as reduced "p/q" strings.
using Json = nlohmann::ordered_json;

Json rational_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json vec_json(const Vec& v);
// expect < 0 skips the length check.
Vec vec_from_json(const Json& j, Index expect = -1);

// Rows of "p/q" strings, outer array indexed by row.
Json mat_json(const Mat& m);
Mat mat_from_json(const Json& j);

// Algebra schema: { dim, basis, mult: [[i, j, k, "p/q"]...], invol, unit?,
// blocks?: [{kind, k}...], radical?: {dim, mult, invol, peirce} }. Indices are
// 0-based; mult triples are the nonzero structure constants e_i e_j =
// sum_k c e_k; invol column j holds the coordinates of sigma(e_j). blocks and
// radical are emitted only when the algebra carries Wedderburn data in the
// canonical layout (block units first, radical last); loading an algebra with
// blocks revalidates the declared complement by reassembly.
Json algebra_json(const StarAlgebra& A);
StarAlgebra algebra_from_json(const Json& j);

// Plain (involution-free) schema: the same minus invol, with blocks a list of
// matrix sizes and radical reduced to {dim, peirce}.
Json plain_json(const PlainAlgebra& C);
PlainAlgebra plain_from_json(const Json& j);

// Witness schema: { polynomial, assignment: { var: [coords] }, value }.
Json witness_json(const StarPoly& p, const Substitution& s, const Vec& value);

struct ParsedWitness {
    StarPoly poly;
    Substitution subst;
    Vec value;
};

ParsedWitness witness_from_json(const Json& j, Index n);

Json cert_json(const PathCertificate& c);
PathCertificate cert_from_json(const Json& j, Index n);

Json report_json(const KemerReport& r);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace starpi
