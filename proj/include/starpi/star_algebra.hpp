#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "starpi/linalg.hpp"

namespace starpi {

// The three kinds of finite-dimensional *-simple algebras over an
// algebraically closed field of characteristic zero.
enum class BlockKind { Transpose, Symplectic, Exchange };

std::string kind_name(BlockKind k);
std::optional<BlockKind> kind_from_name(const std::string& s);

struct BlockSpec {
    BlockKind kind;
    int k;  // matrix size (symplectic requires even k); exchange = M_k x M_k^op
};

Index block_dim(const BlockSpec& spec);

// A tagged element of the structured basis: block index for semisimple
// elements (1-based), or the sorted Peirce label pair for radical elements.
struct BasisElem {
    Vec v;
    int block = 0;        // 0 for radical elements
    int l1 = 0, l2 = 0;   // 1-based, p+1 = adjoint index; 0 for semisimple elements
};

// Wedderburn-Malcev data: *-simple blocks with their matrix-unit elements,
// a radical basis with Peirce labels, and the block idempotents. All element
// data is stored as coordinate vectors so it survives re-basing.
struct WedderburnData {
    std::vector<BlockSpec> blocks;
    std::vector<Mat> units;  // per block: n x block_dim, unit elements as columns
                             // (row-major (i,j); exchange: first copy then second)
    Mat radical;             // n x q, radical basis as columns
    std::vector<std::pair<int, int>> peirce_labels;  // per radical column
    std::vector<Vec> idempotents;                    // eps_1..eps_p

    // derived element lists (filled by finalize_wm)
    std::vector<BasisElem> d0, d1;  // symmetric / skew semisimple families
    std::vector<BasisElem> u0, u1;  // symmetric / skew radical families

    int p() const { return static_cast<int>(blocks.size()); }
};

// Finite-dimensional associative algebra with involution, given by structure
// constants over an abstract basis.
struct StarAlgebra {
    Index n = 0;
    std::vector<std::string> basis_names;
    std::vector<std::vector<Vec>> mult;  // mult[i][j] = coordinates of e_i * e_j
    Mat invol;                           // column j = coordinates of sigma(e_j)
    std::optional<Vec> unit;
    std::optional<WedderburnData> wm;
};

// --- element operations ------------------------------------------------------

Vec multiply(const StarAlgebra& A, const Vec& a, const Vec& b);
Vec involute(const StarAlgebra& A, const Vec& a);
std::pair<Vec, Vec> split_pm(const StarAlgebra& A, const Vec& a);

Vec basis_vec(const StarAlgebra& A, Index i);
// Matrix of left multiplication by a.
Mat left_mult_matrix(const StarAlgebra& A, const Vec& a);

// --- constructions -----------------------------------------------------------

StarAlgebra build_star_simple(const BlockSpec& spec);

struct MultTriple {
    Index i, j, k;
    Rational c;
};

// Assembles a *-algebra from block specs plus radical data. Basis layout:
// block units first (in block order), then the radical. radical_mult lists
// the nonzero structure constants of products involving radical basis
// elements, in global (0-based) indices; radical_invol is q x q on radical
// coordinates; peirce_labels are 1-based with p+1 the adjoint index.
StarAlgebra assemble(const std::vector<BlockSpec>& blocks,
                     Index radical_dim,
                     const std::vector<MultTriple>& radical_mult,
                     const Mat& radical_invol,
                     const std::vector<std::pair<int, int>>& peirce_labels);

StarAlgebra direct_product(const StarAlgebra& A, const StarAlgebra& B);

// Upper triangular n x n matrices with the reflection involution
// sigma(E_ij) = E_{n+1-j, n+1-i}: exchange blocks pair the diagonal units
// E_ll and E_{n+1-l, n+1-l} (plus a transpose block for the middle unit when
// n is odd); the radical is the strictly upper triangle.
StarAlgebra ut_star_algebra(int n);

// Adjoins a fresh unit (the standard unitalization A + F). The new complement
// block is the line through 1 - sum(eps), a transpose-type block of size 1.
StarAlgebra adjoin_unit(const StarAlgebra& A);

// --- structure ----------------------------------------------------------------

// Kernel of the trace form Tr(L_{ab}); verified to be a nilpotent two-sided
// ideal before returning.
Subspace jacobson_radical(const StarAlgebra& A);

// Least s with J^s = 0 (1 when the radical vanishes).
int nilpotency_class(const StarAlgebra& A);

std::pair<int, int> dims_star(const StarAlgebra& A);

struct ParStar {
    int t1 = 0, t2 = 0;
    int nd = 1;
    Index dim_radical = 0;

    std::array<long, 3> par_tuple() const { return {t1, t2, nd}; }
    std::array<long, 4> cpar_tuple() const { return {t1, t2, nd, dim_radical}; }
};

// par_* = (dims_*; nd), compared lexicographically on par_tuple();
// cpar_* additionally carries dim J and compares on cpar_tuple().
ParStar par_star(const StarAlgebra& A);
ParStar cpar_star(const StarAlgebra& A);

// Peirce component eps_{l1} J eps_{l2} as a subspace; l in 1..p+1 with the
// adjoint index handled operator-style (never materializing eps_{p+1}).
Subspace peirce(const StarAlgebra& A, int l1, int l2);

Vec peirce_project(const StarAlgebra& A, int l1, int l2, const Vec& v);

Subspace semisimple_subspace(const StarAlgebra& A);
Subspace radical_subspace(const StarAlgebra& A);

// Full consistency check: shapes, associativity, involution axioms, unit,
// and (when present) Wedderburn data (block relations, involution action on
// units, idempotents, radical ideal and nilpotency, Peirce labels). Throws
// Error with a description on the first violation.
void validate(const StarAlgebra& A);

// Recomputes the derived d0/d1/u0/u1 element lists of A.wm.
void finalize_wm(StarAlgebra& A);

// --- plain (involution-free) algebras, input to the exchange construction ----

struct PlainAlgebra {
    Index n = 0;
    std::vector<std::string> basis_names;
    std::vector<std::vector<Vec>> mult;
    std::optional<Vec> unit;

    struct WM {
        std::vector<int> block_sizes;  // full matrix blocks M_k
        std::vector<Mat> units;        // per block, n x k^2 columns, row-major
        Mat radical;                   // n x q
        std::vector<std::pair<int, int>> peirce_labels;
    };
    std::optional<WM> wm;
};

PlainAlgebra full_matrix_algebra(int k);
// Upper triangular n x n matrices: diagonal M_1 blocks, strictly upper radical.
PlainAlgebra ut_algebra(int n);

Vec plain_multiply(const PlainAlgebra& C, const Vec& a, const Vec& b);

}  // namespace starpi
