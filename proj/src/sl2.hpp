// Modules obtained by restricting SL_2 representations to E = C_p^r along
// an embedding determined by F_p-independent scalars lambda_1..lambda_r:
// the two-dimensional V_lambda, the (co)standard modules, the graded
// tilting tower T_0..T_{p^r-1}, Steinberg modules, the annihilator element
// xi of S inside kE, and the explicit small-field module families.

#pragma once

#include <cstdint>

#include "module.hpp"

namespace tilt {

struct Lambda {
    FqPtr ctx;
    std::vector<fel> entries; // length r, F_p-linearly independent
    int r() const { return int(entries.size()); }
};

// lambda_i = theta^(i-1) for theta the field generator; requires k >= r and
// verifies the Moore determinant is non-zero.
Lambda lambda_auto(FqPtr F, int r);

// nabla_i on the monomial basis x^(i-a) y^a (weight i-2a, a = 0..i), with
// X_j acting by the binomial expansion of x -> x + lambda_j y.  delta_i is
// its dual.
GradedModule nabla_restricted(int i, const Lambda& lam);
GradedModule delta_restricted(int i, const Lambda& lam);

struct TiltingTable {
    Lambda lambda;
    std::vector<GradedModule> entries; // T_0 .. T_{p^r - 1}
};

// Build the tower by peeling V (x) T_{i-1} with grading-preserving
// endomorphisms: T_i is the summand containing the (one-dimensional) top
// weight space i; every other summand must match an already built T_j.
// Each entry is certified to have split local endomorphism ring.
TiltingTable tilting_table(const Lambda& lam);

// T_{p^j - 1}; j = r-1 gives S, j = r gives kE (as a table entry).
const Module& steinberg(const TiltingTable& table, int j);

// The action of sum_a coeffs[a] X^a on M (monomial index as in
// regular_module / monomial_actions).
Mat act_element(const Module& M, const std::vector<fel>& coeffs);

// The unique xi in kE with xi(e_1 (x) ... (x) e_1) = e_1 (x) ... (x) e_2 in
// the free rank-one module S (x) St_1^(r-1); xi annihilates S (checked).
std::vector<fel> xi_element(const TiltingTable& table);

// St_1 on the cyclic basis e_{i+1} = X_1^i e_1: X_1 acts by the regular
// nilpotent J and X_a by sum_{c>0} binom(lambda_a/lambda_1, c) J^c.
Module st1_cyclic(const Lambda& lam);

// The tensor-product model S = St_1 (x) St_1^(1) (x) ... (x) St_1^(r-2)
// used by xi_element (trivial module when r = 1).
Module steinberg_tensor_model(const Lambda& lam);

// p = 3, r = 2 fixtures: the three-dimensional family S(mu) with
// X_1 -> J, X_2 -> lambda J + (lambda - lambda^2 + mu) J^2, and the
// six-dimensional families N^(i)(mu).  lambda must lie outside F_3.
Module s_mu(FqPtr F, fel lambda, fel mu);
Module n_family(FqPtr F, fel lambda, int i, fel mu);

// p = 2, r = 3: all faithful periodic four-dimensional modules A (x) B for
// 2-dimensional A, B given by points of P^2(F_q); each is checked to be
// self-dual.  steinberg_form marks b = a^(1) or a = b^(1) (restrictions of
// St_2).
struct FourDimProduct {
    std::vector<fel> a, b; // normalized projective coordinates
    Module M;
    bool steinberg_form = false;
};

std::vector<FourDimProduct> four_dim_products(FqPtr F);

} // namespace tilt
