#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "starpi/free_poly.hpp"
#include "starpi/identity.hpp"
#include "starpi/star_algebra.hpp"

namespace starpi {

// Connecting data for multi-block witnesses: a traversal order of the blocks,
// radical elements joining consecutive blocks, and the diagonal slot picked
// inside each block. The sandwiched product
// e^{(o_1)}_{s s} r_1 e^{(o_2)}_{s s} ... r_{p-1} e^{(o_p)}_{s s}
// must evaluate nonzero.
struct PathCertificate {
    std::vector<int> order;     // permutation of 1..p (1-based block ids)
    std::vector<Vec> radicals;  // p-1 radical elements; radicals[q] joins order[q] -> order[q+1]
    std::vector<int> diag;      // p entries; diag[l-1] in 1..k_l is the slot s_l of block l
};

struct WitnessResult {
    StarPoly poly;
    Substitution subst;
    Vec value;      // evaluate(poly, subst, A), guaranteed nonzero
    PolyType type;  // ((dims_* A); 0; shat)
};

// Builds a non-identity of type ((dims_* A); 0; shat): per block, chains of
// symmetric and skew variables joined by connector variables, capped so that
// the canonical substitution telescopes to a diagonal unit, then alternated
// in each of the shat symmetric/skew variable families. A certificate is
// required when A has two or more blocks; single-block algebras use slot 1.
WitnessResult beta_witness(const StarAlgebra& A, int shat,
                           const std::optional<PathCertificate>& cert = std::nullopt,
                           const EngineOptions& opts = {});

// B = C x C^op with the exchange involution (a,b)* = (b,a). Carries
// WedderburnData when C has it (each M_k block becomes an exchange block).
StarAlgebra exchange_algebra(const PlainAlgebra& C);

// Ordinary identity test over a plain algebra, for star-free polynomials in
// general variables. Multilinearizes first and enumerates basis tuples.
bool plain_is_identity(const StarPoly& p, const PlainAlgebra& C,
                       const EngineOptions& opts = {});

// The degree-truncated relatively free algebra R_{q,s}(Btilde, gens): the
// span of alternating words in x_1..x_q, x_1'..x_q' and Btilde basis factors
// of x-degree below s, modulo the degree-bounded verbal ideal of gens.
// Returns a StarAlgebra whose semisimple part is (a rebasing of) Btilde and
// whose radical is the image of the x-words, Peirce-rebased. Btilde must be
// semisimple (possibly zero-dimensional); gens are multilinearized and closed
// under the involution internally.
StarAlgebra truncated_relfree(const StarAlgebra& Btilde,
                              const std::vector<StarPoly>& gens,
                              int q, int s, const EngineOptions& opts = {});

// Certified bounds on the index of A: beta_lower comes from evaluated
// witnesses (shat = 1..shat_checked, each type-checked), beta_upper from the
// structural parameters, overflow_confirmed from the alternating-overflow
// check one step above dims_* in each coordinate (conclusive for semisimple
// algebras). gamma is bracketed by [1, nd(A)]. ind_star is reported only when
// both components are machine-exact.
struct KemerReport {
    ParStar par;
    std::pair<int, int> beta_lower{0, 0};
    std::pair<int, int> beta_upper{0, 0};
    bool witnessed = false;
    int shat_checked = 0;
    bool overflow_confirmed = false;
    bool beta_exact = false;
    int gamma_lower = 1;
    int gamma_upper = 1;
    bool gamma_exact = false;
    std::optional<std::pair<std::pair<int, int>, int>> ind_star;
};

// Multi-block algebras without a certificate degrade to bounds (witnessed
// stays false); no error is raised.
KemerReport kemer_report(const StarAlgebra& A, int shat_max = 2,
                         const std::optional<PathCertificate>& cert = std::nullopt,
                         const EngineOptions& opts = {});

}  // namespace starpi
