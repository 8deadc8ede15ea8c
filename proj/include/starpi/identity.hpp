#pragma once

#include <map>
#include <set>

#include "starpi/free_poly.hpp"
#include "starpi/star_algebra.hpp"

namespace starpi {

// Assignment of algebra elements to variables. Symmetric variables must get
// symmetric values and skew variables skew values (checked on evaluation).
struct Substitution {
    std::map<VarRef, Vec> assign;
};

struct EngineOptions {
    long long budget = 10'000'000;  // maximum number of enumerated tuples
    int jobs = 1;
    unsigned seed = 0;
    int alternator_cap = 8;
};

Vec evaluate(const StarPoly& p, const Substitution& s, const StarAlgebra& A);

struct IdentityResult {
    bool identity = true;
    // A falsifying substitution, on the variables of witness_poly. The engine
    // routes through multilinearization, so witness_poly is the multilinear
    // component that failed (the input itself when it was already multilinear).
    std::optional<Substitution> witness;
    std::optional<StarPoly> witness_poly;
};

// Decides whether p vanishes under all admissible substitutions, by full
// linearization followed by enumeration of basis tuples (symmetric variables
// over a basis of A+, skew over A-, general over the whole basis).
IdentityResult is_identity(const StarPoly& p, const StarAlgebra& A,
                           const EngineOptions& opts = {});

struct SubstitutionClass {
    int radical_count = 0;          // radical values, counted with multiplicity
    std::set<int> touched_blocks;   // 1-based block indices
    bool thin = false;              // fewer than nd(A) - 1 radical values
    bool complete = false;          // every block touched
};

// Classifies an elementary substitution (every value one of the structured
// basis elements d0/d1/u0/u1); throws when a value is not elementary.
SubstitutionClass classify_substitution(const StarAlgebra& A, const Substitution& s);

// True when the multilinear Y/Z polynomial vanishes under every elementary
// substitution that is thin or incomplete.
bool is_exact(const StarPoly& p, const StarAlgebra& A, const EngineOptions& opts = {});

// True when every multilinear polynomial alternating in t_plus symmetric and
// t_minus skew variables is an identity of A. Complete check: canonical
// interleaving words are alternated and tested; when the corresponding
// eigenspace dimension is smaller than the set size the repeat-cancellation
// certificates are verified symbolically instead of enumerating.
bool alternating_overflow_identity(const StarAlgebra& A, int t_plus, int t_minus,
                                   const EngineOptions& opts = {});

// Spanning sets used by the enumeration: basis of A+ / A- (from the
// involution eigenspaces) and the full basis for general variables.
std::vector<Vec> symmetric_basis(const StarAlgebra& A);
std::vector<Vec> skew_basis(const StarAlgebra& A);

}  // namespace starpi
