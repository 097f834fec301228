// Projective covers, syzygies, projective-summand stripping, minimal
// resolutions, periodicity, Carlson modules, and pushout extensions.
//
// kE is a local Frobenius algebra, so free modules are exactly the
// projectives and injectives; stripping uses the Frobenius structure: any
// linear functional mu on M induces an equivariant map M -> kE via
// v |-> sum_c mu(X^(top-c) v) X^c, which yields an explicit idempotent onto
// a maximal free summand.

#pragma once

#include <optional>

#include "module.hpp"

namespace tilt {

struct SyzygyData {
    Module module;    // M
    Module cover;     // kE^d, d = dim top M, slot-major monomial basis
    Mat cover_map;    // M.dim x (d p^r), surjective
    Mat syzygy_basis; // columns: kernel of cover_map inside the cover
    Module syzygy;    // the kernel as an abstract module (Omega M)
};

SyzygyData syzygy_data(const Module& M);

// M ~ kE^a (+) core with z = prod_i N_i^(p-1) vanishing on core.
std::pair<int, Module> strip_projectives(const Module& M);

Module omega(const Module& M);
Module omega_inverse(const Module& M);
Module omega_iter(const Module& M, int t); // t may be negative; t=0 strips

std::optional<int> is_periodic(const Module& M, int max_t);

struct Resolution {
    std::vector<int> ranks;    // d_0, d_1, ..., d_L
    std::vector<Module> frees; // P_0, ..., P_L
    std::vector<Mat> diffs;    // P_i -> P_{i-1}, i = 1..L
};

Resolution minimal_resolution(const Module& M, int length);

struct CohomologyClass {
    int degree = 0;
    std::vector<fel> functional; // on the top of P_degree (length d_degree)
};

// L_zeta = ker(zeta-hat : Omega^d(1) -> 1); L_0 = Omega^d(1).
Module carlson_module(FqPtr F, int r, const CohomologyClass& zeta);

// The extension of U by W classified by f: Omega(U) -> W (matrix in the
// syzygy basis coordinates of `u`): (P (+) W) / <(x, -f(x))>.
Module pushout_extension(const SyzygyData& u, const Module& W, const Mat& f);

} // namespace tilt
