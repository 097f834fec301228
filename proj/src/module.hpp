// Representations of E = C_p^r over F_q as data.
//
// A module stores the r commuting nilpotent matrices N_i giving the action
// of X_i = g_i - 1; everything else (tensor, dual, radical/socle, Hom
// spaces, submodules and quotients) is derived from them.  Modules share
// their field context through a shared_ptr so values stay freely copyable.

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mat.hpp"
#include "poly.hpp"

namespace tilt {

using FqPtr = std::shared_ptr<const Fq>;

struct Module {
    FqPtr ctx;
    int r = 0;
    int dim = 0;
    std::vector<Mat> gens; // N_1..N_r, each dim x dim

    const Fq& F() const { return *ctx; }
};

// A map of modules is just its matrix together with the shape bookkeeping;
// the intertwining property is checked by is_intertwiner where it matters.
struct ModMap {
    Mat mat; // target.dim x source.dim
};

struct GradedModule {
    Module m;
    std::vector<int> weights; // SL_2 weight of each basis vector
};

struct Submodule {
    Mat basis; // columns span an N_i-stable subspace of the ambient module
};

// --- construction -----------------------------------------------------------

Module zero_module(FqPtr F, int r);
Module trivial_module(FqPtr F, int r);         // the module 1
Module regular_module(FqPtr F, int r);         // kE, monomial basis
Module make_module(FqPtr F, int r, std::vector<Mat> gens); // validates

void validate(const Module& M); // throws std::invalid_argument on violation
void validate_graded(const GradedModule& M); // weight-triangularity of the N_i

// --- basic functors ---------------------------------------------------------

Module tensor(const Module& A, const Module& B);
Module dual(const Module& M);
Module direct_sum(const Module& A, const Module& B);
Module frobenius_twist(const Module& M, int times = 1);

bool is_intertwiner(const Module& A, const Module& B, const Mat& f);

// --- structure --------------------------------------------------------------

Mat radical_basis(const Module& M);            // columns: basis of rad M
Mat socle_basis(const Module& M);
std::vector<Mat> radical_series(const Module& M); // M= rad^0 ) rad^1 ) ... ) 0
int loewy_length(const Module& M);
int top_dim(const Module& M);
Mat top_lift(const Module& M); // dim x top_dim, vectors lifting a top basis

Mat submodule_generated(const Module& M, const Mat& vectors);
Module sub_as_module(const Module& M, const Mat& basis);
Module quotient(const Module& M, const Mat& basis);
bool is_cyclic(const Module& M);

// Largest dimension of a cyclic submodule found by sampling (`samples`
// random generators); exhaustive over all of M when dim <= 6 and q <= 9.
int max_cyclic_submodule_dim(const Module& M, Rng& rng, int samples = 64);

// All p^r monomial action matrices X^a, indexed by sum a_i p^(i-1).
std::vector<Mat> monomial_actions(const Module& M);
int monomial_count(const Module& M);

// --- Hom spaces -------------------------------------------------------------

// Minimal presentation data for M: a projective cover kE^d -> M with d =
// dim top(M), plus a minimal generating set of the relation (syzygy) module
// in cover coordinates.  Cover coordinates are indexed (j, a) = j*p^r + a
// with j the free generator and a the monomial index.
struct Presentation {
    int d = 0;
    Mat gen;          // dim x d: lifted top basis (the generator images)
    Mat cover_coords; // dim x d*p^r: column (j,a) = X^a gen_j
    Mat rinv;         // d*p^r x dim: a right inverse of cover_coords
    Mat rels;         // d*p^r x s: minimal generators of the relation module
};

Presentation presentation(const Module& M);

// Basis of Hom_E(M, N) as full matrices (N.dim x M.dim).
std::vector<Mat> hom_space(const Module& M, const Module& N);

// --- field change -----------------------------------------------------------

Module extend_field(const Module& M, const FieldEmbedding& phi, FqPtr big);

// --- serialization ----------------------------------------------------------

std::string module_to_json(const Module& M);
Module module_from_json(const std::string& text);

} // namespace tilt
