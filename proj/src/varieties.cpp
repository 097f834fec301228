#include "varieties.hpp"

#include <stdexcept>

namespace tilt {

ProjPoint normalize_point(FqPtr F, std::vector<fel> coords) {
    const Fq& Q = *F;
    fel lead = 0;
    for (fel c : coords)
        if (c != 0) { lead = c; break; }
    if (lead == 0) throw std::invalid_argument("normalize_point: zero vector");
    if (lead != 1) {
        fel inv = Q.inv(lead);
        for (fel& c : coords) c = Q.mul(c, inv);
    }
    return ProjPoint{std::move(F), std::move(coords)};
}

std::vector<ProjPoint> proj_points(FqPtr F, int r) {
    const Fq& Q = *F;
    std::vector<ProjPoint> out;
    for (int lead = 0; lead < r; ++lead) {
        // coords: 0,...,0,1 at position lead, then free entries (odometer,
        // last coordinate fastest, elements in code order).
        std::vector<fel> coords(r, 0);
        coords[lead] = 1;
        int free = r - lead - 1;
        std::vector<std::uint32_t> odo(free, 0);
        while (true) {
            for (int j = 0; j < free; ++j) coords[lead + 1 + j] = fel(odo[j]);
            out.push_back(ProjPoint{F, coords});
            int j = free - 1;
            while (j >= 0 && ++odo[j] == Q.q()) odo[j--] = 0;
            if (j < 0) break;
        }
    }
    return out;
}

bool is_projective_at(const Module& M, const ProjPoint& pt) {
    if (int(pt.coords.size()) != M.r) throw std::invalid_argument("is_projective_at: wrong point length");
    const Fq& Q = M.F();
    int p = Q.p();
    if (M.dim % p != 0) return false;
    Mat N(Q, M.dim, M.dim);
    for (int i = 0; i < M.r; ++i) N = N + M.gens[i].scaled(pt.coords[i]);
    return rank(mat_pow(N, p - 1)) == M.dim / p;
}

bool SupportSet::contains(const ProjPoint& pt) const {
    for (const ProjPoint& q : points)
        if (q.coords == pt.coords) return true;
    return false;
}

SupportSet support_points(const Module& M, int e) {
    if (e < 1) throw std::invalid_argument("support_points: e must be >= 1");
    FqPtr big = M.ctx;
    Module X = M;
    if (e > 1) {
        big = std::make_shared<const Fq>(M.F().p(), M.F().k() * e);
        FieldEmbedding phi(M.F(), *big);
        X = extend_field(M, phi, big);
    }
    SupportSet out;
    out.e = e;
    out.field = big;
    for (const ProjPoint& pt : proj_points(big, M.r))
        if (!is_projective_at(X, pt)) out.points.push_back(pt);
    return out;
}

Mat moore_matrix(const Lambda& lam) {
    const Fq& Q = *lam.ctx;
    int r = lam.r();
    Mat M(Q, r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) M.at(i, j) = Q.frobenius(lam.entries[j], i);
    return M;
}

namespace {

fel det(Mat A) {
    const Fq& Q = A.field();
    int n = A.rows();
    fel d = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (A.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(A.at(piv, j), A.at(c, j));
            d = Q.neg(d);
        }
        d = Q.mul(d, A.at(c, c));
        fel inv = Q.inv(A.at(c, c));
        for (int i = c + 1; i < n; ++i) {
            fel f = Q.mul(A.at(i, c), inv);
            if (f == 0) continue;
            for (int j = c; j < n; ++j) A.at(i, j) = Q.sub(A.at(i, j), Q.mul(f, A.at(c, j)));
        }
    }
    return d;
}

} // namespace

fel moore_det(const Lambda& lam) { return det(moore_matrix(lam)); }

ProjPoint steinberg_point(const Lambda& lam) {
    const Fq& Q = *lam.ctx;
    int r = lam.r();
    Mat M = moore_matrix(lam);
    Mat top(Q, r - 1, r);
    for (int i = 0; i + 1 < r; ++i)
        for (int j = 0; j < r; ++j) top.at(i, j) = M.at(i, j);
    Mat K = kernel_basis(top);
    if (K.cols() != 1) throw std::invalid_argument("steinberg_point: degenerate lambda");
    std::vector<fel> coords(r);
    for (int j = 0; j < r; ++j) coords[j] = K.at(j, 0);
    // the last Moore row must not vanish on the point
    fel last = 0;
    for (int j = 0; j < r; ++j) last = Q.add(last, Q.mul(M.at(r - 1, j), coords[j]));
    if (last == 0) throw std::invalid_argument("steinberg_point: invalid lambda");
    return normalize_point(lam.ctx, std::move(coords));
}

} // namespace tilt
