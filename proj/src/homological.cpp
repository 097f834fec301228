#include "homological.hpp"

#include <stdexcept>

#include "decomp.hpp"

namespace tilt {

SyzygyData syzygy_data(const Module& M) {
    SyzygyData S;
    S.module = M;
    Presentation P = presentation(M);
    S.cover = regular_module(M.ctx, M.r);
    for (int j = 1; j < P.d; ++j) S.cover = direct_sum(S.cover, regular_module(M.ctx, M.r));
    if (P.d == 0) S.cover = zero_module(M.ctx, M.r);
    S.cover_map = P.cover_coords;
    S.syzygy_basis = kernel_basis(S.cover_map);
    S.syzygy = P.d == 0 ? zero_module(M.ctx, M.r) : sub_as_module(S.cover, S.syzygy_basis);
    return S;
}

std::pair<int, Module> strip_projectives(const Module& M) {
    const Fq& F = M.F();
    int p = F.p();
    if (M.dim == 0) return {0, M};
    Mat z = Mat::identity(F, M.dim);
    for (const Mat& N : M.gens) z = z * mat_pow(N, p - 1);
    Mat zr = z;
    auto pivots = rref_inplace(zr);
    int a = int(pivots.size());
    if (a == 0) return {0, M};
    int pr = monomial_count(M);
    int top = pr - 1;
    auto mono = monomial_actions(M);
    // free generators v_j = e_(pivot column j); their monomial translates
    Mat B(F, M.dim, a * pr);
    for (int j = 0; j < a; ++j)
        for (int c = 0; c < pr; ++c)
            for (int i = 0; i < M.dim; ++i) B.at(i, j * pr + c) = mono[c].at(i, pivots[j]);
    // functionals mu_i dual to z v_j within the free subspace:
    // mu * B = E with E[i][(j,c)] = delta_ij delta_(c,top)
    Mat E(F, a * pr, a);
    for (int j = 0; j < a; ++j) E.at(j * pr + top, j) = 1;
    auto mu_t = solve(B.transpose(), E); // (M.dim x a)
    if (!mu_t) throw std::logic_error("strip_projectives: free subspace not split (unexpected)");
    // pi[(i,c), :] = mu_i composed with X^(top - c)
    Mat pi(F, a * pr, M.dim);
    for (int i = 0; i < a; ++i)
        for (int c = 0; c < pr; ++c) {
            const Mat& X = mono[top - c];
            for (int col = 0; col < M.dim; ++col) {
                fel acc = 0;
                for (int row = 0; row < M.dim; ++row)
                    if (X.at(row, col) && mu_t->at(row, i))
                        acc = F.add(acc, F.mul(mu_t->at(row, i), X.at(row, col)));
                pi.at(i * pr + c, col) = acc;
            }
        }
    Mat e = B * pi; // idempotent onto the free summand
    Module core = sub_as_module(M, kernel_basis(e));
    return {a, core};
}

Module omega(const Module& M) {
    if (M.dim == 0) return M;
    Presentation P = presentation(M);
    Module cover = regular_module(M.ctx, M.r);
    for (int j = 1; j < P.d; ++j) cover = direct_sum(cover, regular_module(M.ctx, M.r));
    return sub_as_module(cover, kernel_basis(P.cover_coords));
}

Module omega_inverse(const Module& M) { return dual(omega(dual(M))); }

Module omega_iter(const Module& M, int t) {
    Module X = strip_projectives(M).second;
    for (; t > 0; --t) X = omega(X);
    for (; t < 0; ++t) X = omega_inverse(X);
    return X;
}

std::optional<int> is_periodic(const Module& M, int max_t) {
    Module core = strip_projectives(M).second;
    Module X = core;
    for (int t = 1; t <= max_t; ++t) {
        X = omega(X);
        if (is_isomorphic(X, core)) return t;
    }
    return std::nullopt;
}

Resolution minimal_resolution(const Module& M, int length) {
    Resolution R;
    Module cur = M;
    Mat prev_kernel; // syzygy basis inside the previous cover
    for (int i = 0; i <= length; ++i) {
        SyzygyData S = syzygy_data(cur);
        R.ranks.push_back(top_dim(cur));
        R.frees.push_back(S.cover);
        if (i > 0) R.diffs.push_back(prev_kernel * S.cover_map);
        prev_kernel = S.syzygy_basis;
        cur = S.syzygy;
    }
    return R;
}

Module carlson_module(FqPtr F, int r, const CohomologyClass& zeta) {
    Module one = trivial_module(F, r);
    int d = zeta.degree;
    if (d < 1) throw std::invalid_argument("carlson_module: degree must be >= 1");
    // walk the minimal resolution of 1 down to Omega^d(1)
    Module cur = one;
    SyzygyData S;
    for (int i = 0; i < d; ++i) {
        S = syzygy_data(cur);
        cur = S.syzygy;
    }
    // cur = Omega^d(1), realized inside the cover of Omega^(d-1)(1); its own
    // cover P_d has top of dimension d_d
    SyzygyData Sd = syzygy_data(cur);
    int dd = top_dim(cur);
    if (int(zeta.functional.size()) != dd)
        throw std::invalid_argument("carlson_module: functional length does not match rank d_d");
    bool zero = true;
    for (fel c : zeta.functional)
        if (c) zero = false;
    if (zero) return cur; // L_0 = Omega^d(1)
    // zeta-hat: Omega^d(1) -> 1 factored through P_d / rad: on the cover of
    // cur the functional is zeta_j on the degree-0 coordinate of slot j...
    // but cur itself is P_d/Omega^(d+1), so apply the functional directly to
    // cur via the lifted top basis coordinates.
    const Fq& Fld = *F;
    Presentation P = presentation(cur);
    // row functional on cur: value zeta_j on generator j, zero on radical;
    // coordinates: express x in cover coords via rinv, take monomial-0 entry
    int pr = monomial_count(cur);
    Mat row(Fld, 1, cur.dim);
    for (int col = 0; col < cur.dim; ++col) {
        fel acc = 0;
        for (int j = 0; j < P.d; ++j)
            acc = Fld.add(acc, Fld.mul(zeta.functional[j], P.rinv.at(j * pr + 0, col)));
        row.at(0, col) = acc;
    }
    return sub_as_module(cur, kernel_basis(row));
}

Module pushout_extension(const SyzygyData& u, const Module& W, const Mat& f) {
    if (f.cols() != u.syzygy.dim || f.rows() != W.dim)
        throw std::invalid_argument("pushout_extension: f has wrong shape");
    if (!is_intertwiner(u.syzygy, W, f)) throw std::invalid_argument("pushout_extension: f not equivariant");
    Module D = direct_sum(u.cover, W);
    const Fq& F = D.F();
    int s = u.syzygy.dim;
    Mat graph(F, D.dim, s);
    for (int c = 0; c < s; ++c) {
        for (int i = 0; i < u.cover.dim; ++i) graph.at(i, c) = u.syzygy_basis.at(i, c);
        for (int i = 0; i < W.dim; ++i) graph.at(u.cover.dim + i, c) = F.neg(f.at(i, c));
    }
    return quotient(D, graph);
}

} // namespace tilt
