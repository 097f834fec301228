// Endomorphism algebras, Fitting decompositions into indecomposables with
// local-ring certificates, isomorphism testing, and split-summand peeling.
//
// The certification route avoids computing algebra radicals generically:
// a module is certified indecomposable (with split local endomorphism ring)
// when every End-basis element has a single rational eigenvalue c_i and the
// span of the (theta_i - c_i) is a codimension-1 nil subspace, verified by a
// strictly decreasing invariant chain.  That gives the residue functional
// phi used by the split-summand pairing B(f,g) = phi(g o f).

#pragma once

#include <optional>
#include <utility>

#include "module.hpp"

namespace tilt {

struct EndAlgebra {
    std::vector<Mat> basis; // full matrices, a basis of End_E(M)
    int dim() const { return int(basis.size()); }
};

EndAlgebra end_algebra(const Module& M);

// Basis of the Jacobson radical J(A) of the spanned matrix algebra.
// Handles the split-local and commutative cases directly; general algebras
// go through iterated kernels of the characteristic-p trace forms.
std::vector<Mat> algebra_radical(const EndAlgebra& A, Rng& rng);

// Certificate that End(M) is split local: residue values per basis element
// and the radical as the span of (theta_i - c_i).
struct LocalCert {
    bool ok = false;
    int offending_degree = 1; // degree of an irreducible factor blocking splitness
    std::vector<Mat> endo;
    std::vector<fel> resid; // c_i with theta_i - c_i nilpotent
};

LocalCert certify_local(const Module& M, Rng& rng);

// Split M along the generalized kernels of an endomorphism.
std::vector<Module> fitting_split(const Module& M, const Mat& theta, Rng& rng);

struct DecompReport {
    std::vector<std::pair<Module, int>> summands; // (representative, multiplicity)
    bool field_extended = false;
};

DecompReport indecomposable_decomposition(const Module& M, std::uint64_t seed);

bool is_isomorphic(const Module& A, const Module& B);

struct SplitResult {
    Mat f;             // T -> M
    Mat g;             // M -> T, with g f invertible
    Module complement; // ker(f (gf)^-1 g)
};

// T must be certified split-local (certify_local passes); returns a witness
// split iff T is a direct summand of M.
std::optional<SplitResult> split_summand(const Module& T, const Module& M);

// Repeatedly peel library summands; returns multiplicities per library index
// and the remainder, which has no summand isomorphic to a library entry.
std::pair<std::vector<int>, Module> peel_against(const Module& M, const std::vector<Module>& library);

} // namespace tilt
