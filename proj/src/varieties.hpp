// Rank varieties and supports: projectivity of a module along a shifted
// cyclic subgroup, enumeration of support points over rational points of
// P^{r-1}, Moore-matrix utilities and the Steinberg support point.

#pragma once

#include "module.hpp"
#include "sl2.hpp"

namespace tilt {

// A point of P^{r-1}(F_Q), normalized so the first non-zero coordinate is 1.
struct ProjPoint {
    FqPtr ctx;
    std::vector<fel> coords;

    bool operator==(const ProjPoint& o) const { return coords == o.coords; }
};

ProjPoint normalize_point(FqPtr F, std::vector<fel> coords);

// All rational points of P^{r-1}(F_Q) in a fixed deterministic order.
std::vector<ProjPoint> proj_points(FqPtr F, int r);

// True iff M restricted to k[t]/t^p, t = sum_i pt_i X_i, is free:
// rank((sum_i pt_i N_i)^(p-1)) = dim M / p.
bool is_projective_at(const Module& M, const ProjPoint& pt);

struct SupportSet {
    int e = 1;    // extension degree: points live in P^{r-1}(F_{q^e})
    FqPtr field;  // F_{q^e}
    std::vector<ProjPoint> points;

    bool contains(const ProjPoint& pt) const;
};

// Rational points of the support over F_{q^e} (the module is extended to
// the big field first).  This sees only rational points, not the full
// variety over the algebraic closure.
SupportSet support_points(const Module& M, int e = 1);

Mat moore_matrix(const Lambda& lam); // rows (lambda_j^{p^i})_j, i = 0..r-1
fel moore_det(const Lambda& lam);    // non-zero iff V_lambda faithful

// The unique point annihilated by the first r-1 Moore rows; the support of
// S is exactly this point.  Verifies the last Moore row is non-zero on it.
ProjPoint steinberg_point(const Lambda& lam);

} // namespace tilt
