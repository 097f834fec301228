#include "sl2.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "decomp.hpp"
#include "homological.hpp"
#include "varieties.hpp"

namespace tilt {

namespace {

// binom(n, k) mod p by Lucas' theorem.
int binom_mod_p(long long n, long long k, int p) {
    if (k < 0 || k > n) return 0;
    long long res = 1;
    while (n > 0 || k > 0) {
        long long nd = n % p, kd = k % p;
        if (kd > nd) return 0;
        // Pascal row nd mod p (digits are < p, so the row is short)
        std::vector<int> row(nd + 1, 1);
        for (long long m = 1; m <= nd; ++m)
            for (long long t = m - 1; t >= 1; --t) row[t] = (row[t] + row[t - 1]) % p;
        res = res * row[kd] % p;
        n /= p;
        k /= p;
    }
    return int(res);
}

// binom(lambda, c) in the field: lambda(lambda-1)...(lambda-c+1)/c!
fel field_binom(const Fq& Q, fel lambda, int c) {
    fel num = 1, den = 1;
    for (int t = 0; t < c; ++t) {
        num = Q.mul(num, Q.sub(lambda, Q.from_int(t)));
        den = Q.mul(den, Q.from_int(t + 1));
    }
    return Q.div(num, den);
}

} // namespace

Module st1_cyclic(const Lambda& lam) {
    const Fq& Q = *lam.ctx;
    int p = Q.p(), r = lam.r();
    Mat J(Q, p, p);
    for (int i = 0; i + 1 < p; ++i) J.at(i + 1, i) = 1;
    fel inv1 = Q.inv(lam.entries[0]);
    std::vector<Mat> gens;
    for (int a = 0; a < r; ++a) {
        fel l = Q.mul(lam.entries[a], inv1);
        Mat N(Q, p, p), Jc = Mat::identity(Q, p);
        for (int c = 1; c < p; ++c) {
            Jc = Jc * J;
            N = N + Jc.scaled(field_binom(Q, l, c));
        }
        gens.push_back(std::move(N));
    }
    return make_module(lam.ctx, r, std::move(gens));
}

namespace {

GradedModule graded_trivial(FqPtr F, int r) {
    return GradedModule{trivial_module(std::move(F), r), {0}};
}

GradedModule graded_tensor(const GradedModule& A, const GradedModule& B) {
    GradedModule out{tensor(A.m, B.m), {}};
    out.weights.reserve(size_t(A.m.dim) * B.m.dim);
    for (int a = 0; a < A.m.dim; ++a)
        for (int b = 0; b < B.m.dim; ++b) out.weights.push_back(A.weights[a] + B.weights[b]);
    return out;
}

// Basis of the grading-preserving (degree-0) intertwiners of M.
std::vector<Mat> degree0_ends(const GradedModule& M) {
    const Fq& Q = M.m.F();
    std::vector<Mat> ends = hom_space(M.m, M.m);
    int n = M.m.dim;
    std::vector<std::pair<int, int>> bad;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (M.weights[a] != M.weights[b]) bad.emplace_back(a, b);
    if (bad.empty() || ends.empty()) return ends;
    Mat C(Q, int(bad.size()), int(ends.size()));
    for (int t = 0; t < int(ends.size()); ++t)
        for (int e = 0; e < int(bad.size()); ++e) C.at(e, t) = ends[t].at(bad[e].first, bad[e].second);
    Mat K = kernel_basis(C);
    std::vector<Mat> out;
    for (int j = 0; j < K.cols(); ++j) {
        Mat H(Q, n, n);
        for (int t = 0; t < int(ends.size()); ++t)
            if (K.at(t, j) != 0) H = H + ends[t].scaled(K.at(t, j));
        out.push_back(std::move(H));
    }
    return out;
}

Mat eval_poly_at(const Poly& f, const Mat& A) {
    const Fq& Q = A.field();
    int n = A.rows();
    Mat out(Q, n, n);
    for (int d = int(f.size()) - 1; d >= 0; --d) {
        out = out * A;
        if (f[d] != 0) out = out + Mat::identity(Q, n).scaled(f[d]);
    }
    return out;
}

// Split the columns of K (a basis of a weight-graded subspace) into
// weight-homogeneous basis vectors.
void homogeneous_basis(const GradedModule& M, const Mat& K, Mat& basis, std::vector<int>& weights) {
    const Fq& Q = M.m.F();
    int n = M.m.dim;
    std::set<int> ws(M.weights.begin(), M.weights.end());
    std::vector<Mat> cols;
    weights.clear();
    int total = 0;
    for (int w : ws) {
        Mat Kw(Q, n, K.cols());
        bool any = false;
        for (int i = 0; i < n; ++i) {
            if (M.weights[i] != w) continue;
            for (int j = 0; j < K.cols(); ++j) {
                Kw.at(i, j) = K.at(i, j);
                any = any || K.at(i, j) != 0;
            }
        }
        if (!any) continue;
        Mat R = Kw;
        for (int c : rref_inplace(R)) {
            cols.push_back(Kw.columns({c}));
            weights.push_back(w);
            ++total;
        }
    }
    if (total != K.cols())
        throw std::runtime_error("homogeneous_basis: subspace is not weight-graded");
    basis = Mat::hstack(cols);
}

GradedModule graded_sub(const GradedModule& M, const Mat& K) {
    Mat basis;
    std::vector<int> weights;
    homogeneous_basis(M, K, basis, weights);
    return GradedModule{sub_as_module(M.m, basis), std::move(weights)};
}

std::vector<GradedModule> graded_decompose(const GradedModule& M, Rng& rng) {
    if (M.m.dim == 0) return {};
    const Fq& Q = M.m.F();
    std::vector<Mat> A0 = degree0_ends(M);
    if (A0.size() <= 1) return {M};
    int attempts = int(A0.size()) + 64;
    for (int t = 0; t < attempts; ++t) {
        Mat theta;
        if (t < int(A0.size())) {
            theta = A0[t];
        } else {
            theta = Mat(Q, M.m.dim, M.m.dim);
            for (const Mat& H : A0) theta = theta + H.scaled(fel(rng.below(Q.q())));
        }
        auto factors = factor_poly(Q, charpoly(theta), rng);
        if (factors.size() <= 1) continue;
        std::vector<GradedModule> out;
        for (const auto& [f, mult] : factors) {
            Mat G = eval_poly_at(f, theta);
            long long e = 1;
            while (e < M.m.dim) e *= 2;
            Mat K = kernel_basis(mat_pow(G, e));
            for (GradedModule& piece : graded_decompose(graded_sub(M, K), rng))
                out.push_back(std::move(piece));
        }
        return out;
    }
    return {M};
}

long long ipow_ll(int b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

} // namespace

Lambda lambda_auto(FqPtr F, int r) {
    const Fq& Q = *F;
    if (Q.k() < r) throw std::invalid_argument("lambda_auto: need k >= r");
    Lambda lam{F, {}};
    fel theta = Q.gen();
    fel cur = 1;
    for (int i = 0; i < r; ++i) {
        lam.entries.push_back(cur);
        cur = Q.mul(cur, theta);
    }
    if (moore_det(lam) == 0) throw std::invalid_argument("lambda_auto: Moore determinant vanishes");
    return lam;
}

GradedModule nabla_restricted(int i, const Lambda& lam) {
    if (i < 0) throw std::invalid_argument("nabla_restricted: i < 0");
    const Fq& Q = *lam.ctx;
    int p = Q.p(), r = lam.r(), n = i + 1;
    GradedModule out;
    out.weights.resize(n);
    for (int a = 0; a <= i; ++a) out.weights[a] = i - 2 * a;
    std::vector<Mat> gens;
    for (int j = 0; j < r; ++j) {
        Mat N(Q, n, n);
        for (int a = 0; a <= i; ++a)
            for (int c = 1; c <= i - a; ++c) {
                int b = binom_mod_p(i - a, c, p);
                if (b == 0) continue;
                N.at(a + c, a) = Q.mul(Q.from_int(b), Q.pow(lam.entries[j], c));
            }
        gens.push_back(std::move(N));
    }
    out.m = make_module(lam.ctx, r, std::move(gens));
    validate_graded(out);
    return out;
}

GradedModule delta_restricted(int i, const Lambda& lam) {
    GradedModule nab = nabla_restricted(i, lam);
    GradedModule out{dual(nab.m), {}};
    for (int w : nab.weights) out.weights.push_back(-w);
    validate_graded(out);
    return out;
}

TiltingTable tilting_table(const Lambda& lam) {
    const Fq& Q = *lam.ctx;
    int p = Q.p(), r = lam.r();
    if (moore_det(lam) == 0) throw std::invalid_argument("tilting_table: invalid lambda");
    long long n = ipow_ll(p, r);
    Rng rng(0x7ea51e5u);
    GradedModule V = nabla_restricted(1, lam);
    TiltingTable table{lam, {}};
    table.entries.push_back(graded_trivial(lam.ctx, r));
    for (long long i = 1; i < n; ++i) {
        GradedModule M = graded_tensor(V, table.entries[i - 1]);
        int top_count = 0;
        for (int w : M.weights) top_count += (w == i);
        if (top_count != 1) throw std::runtime_error("tilting_table: top weight space not one-dimensional");
        std::vector<GradedModule> pieces = graded_decompose(M, rng);
        int found = -1;
        for (int t = 0; t < int(pieces.size()); ++t) {
            bool has_top = false;
            for (int w : pieces[t].weights) has_top = has_top || (w == i);
            if (!has_top) continue;
            if (found >= 0) throw std::runtime_error("tilting_table: top-weight summand not unique");
            found = t;
        }
        if (found < 0) throw std::runtime_error("tilting_table: top weight lost in decomposition");
        for (int t = 0; t < int(pieces.size()); ++t) {
            if (t == found) continue;
            bool matched = false;
            for (long long j = i - 1; j >= 0 && !matched; --j)
                if (table.entries[j].m.dim == pieces[t].m.dim)
                    matched = is_isomorphic(table.entries[j].m, pieces[t].m);
            if (!matched) throw std::runtime_error("tilting_table: stray summand is not an earlier T_j");
        }
        Rng crng = rng.split();
        LocalCert cert = certify_local(pieces[found].m, crng);
        if (!cert.ok) throw std::runtime_error("tilting_table: T_i failed the local-endomorphism certificate");
        table.entries.push_back(std::move(pieces[found]));
    }
    return table;
}

const Module& steinberg(const TiltingTable& table, int j) {
    const Fq& Q = *table.lambda.ctx;
    int r = table.lambda.r();
    if (j < 0 || j > r) throw std::invalid_argument("steinberg: j out of range");
    return table.entries[ipow_ll(Q.p(), j) - 1].m;
}

Mat act_element(const Module& M, const std::vector<fel>& coeffs) {
    if (int(coeffs.size()) != monomial_count(M)) throw std::invalid_argument("act_element: wrong coefficient count");
    const Fq& Q = M.F();
    std::vector<Mat> mono = monomial_actions(M);
    Mat out(Q, M.dim, M.dim);
    for (size_t a = 0; a < coeffs.size(); ++a)
        if (coeffs[a] != 0) out = out + mono[a].scaled(coeffs[a]);
    return out;
}

Module steinberg_tensor_model(const Lambda& lam) {
    int r = lam.r();
    Module S = trivial_module(lam.ctx, r);
    if (r >= 2) {
        Module st = st1_cyclic(lam);
        S = st;
        for (int j = 1; j <= r - 2; ++j) S = tensor(S, frobenius_twist(st, j));
    }
    return S;
}

std::vector<fel> xi_element(const TiltingTable& table) {
    const Lambda& lam = table.lambda;
    const Fq& Q = *lam.ctx;
    int r = lam.r();
    Module st = st1_cyclic(lam);
    Module W = st;
    for (int j = 1; j <= r - 1; ++j) W = tensor(W, frobenius_twist(st, j));
    // W = S (x) St_1^(r-1) is free of rank one on v_0 = e_1 (x) ... (x) e_1.
    std::vector<Mat> mono = monomial_actions(W);
    Mat A(Q, W.dim, int(mono.size()));
    for (int a = 0; a < int(mono.size()); ++a)
        for (int i = 0; i < W.dim; ++i) A.at(i, a) = mono[a].at(i, 0);
    Mat b(Q, W.dim, 1);
    b.at(1, 0) = 1; // e_1 (x) ... (x) e_1 (x) e_2
    std::optional<Mat> sol = solve(A, b);
    if (!sol) throw std::runtime_error("xi_element: S (x) St_1^(r-1) is not free (invalid lambda)");
    std::vector<fel> xi(mono.size());
    for (size_t a = 0; a < xi.size(); ++a) xi[a] = sol->at(int(a), 0);
    Module S = steinberg_tensor_model(lam);
    if (!act_element(S, xi).is_zero()) throw std::runtime_error("xi_element: xi does not annihilate S");
    return xi;
}

Module s_mu(FqPtr F, fel lambda, fel mu) {
    const Fq& Q = *F;
    if (Q.p() != 3) throw std::invalid_argument("s_mu: requires p = 3");
    if (Q.frobenius(lambda) == lambda) throw std::invalid_argument("s_mu: lambda lies in F_3");
    Mat J(Q, 3, 3), J2(Q, 3, 3);
    J.at(1, 0) = J.at(2, 1) = 1;
    J2.at(2, 0) = 1;
    fel lt = Q.sub(lambda, Q.mul(lambda, lambda)); // lambda - lambda^2
    Mat N2 = J.scaled(lambda) + J2.scaled(Q.add(lt, mu));
    return make_module(std::move(F), 2, {J, N2});
}

Module n_family(FqPtr F, fel lambda, int i, fel mu) {
    const Fq& Q = *F;
    if (Q.p() != 3) throw std::invalid_argument("n_family: requires p = 3");
    if (i < 0 || i > 2) throw std::invalid_argument("n_family: i must be 0, 1 or 2");
    if (Q.frobenius(lambda) == lambda) throw std::invalid_argument("n_family: lambda lies in F_3");
    Mat J(Q, 3, 3), J2(Q, 3, 3);
    J.at(1, 0) = J.at(2, 1) = 1;
    J2.at(2, 0) = 1;
    fel lt = Q.sub(lambda, Q.mul(lambda, lambda));
    Mat B = J.scaled(lambda) + J2.scaled(Q.add(lt, mu)); // X_2 block on each copy
    Mat Ji = i == 0 ? Mat::identity(Q, 3) : (i == 1 ? J : J2);
    Mat N1(Q, 6, 6), N2(Q, 6, 6);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            N1.at(a, b) = J.at(a, b);
            N1.at(a + 3, b + 3) = J.at(a, b);
            N2.at(a, b) = B.at(a, b);
            N2.at(a + 3, b + 3) = B.at(a, b);
            N2.at(a + 3, b) = Ji.at(a, b);
        }
    return make_module(std::move(F), 2, {N1, N2});
}

namespace {

Module point_module(FqPtr F, const std::vector<fel>& coords) {
    const Fq& Q = *F;
    std::vector<Mat> gens;
    for (fel c : coords) {
        Mat N(Q, 2, 2);
        N.at(1, 0) = c;
        gens.push_back(std::move(N));
    }
    return make_module(F, int(coords.size()), std::move(gens));
}

bool is_faithful(const Module& M) {
    const Fq& Q = M.F();
    int p = Q.p();
    // group elements g^a = prod (1 + N_i)^(a_i), a in F_p^r \ {0}
    std::vector<Mat> gpow; // gens as group elements
    for (const Mat& N : M.gens) gpow.push_back(Mat::identity(Q, M.dim) + N);
    long long total = ipow_ll(p, M.r);
    for (long long a = 1; a < total; ++a) {
        Mat G = Mat::identity(Q, M.dim);
        long long rest = a;
        for (int i = 0; i < M.r; ++i) {
            int d = int(rest % p);
            rest /= p;
            for (int t = 0; t < d; ++t) G = G * gpow[i];
        }
        if (G == Mat::identity(Q, M.dim)) return false;
    }
    return true;
}

} // namespace

std::vector<FourDimProduct> four_dim_products(FqPtr F) {
    const Fq& Q = *F;
    if (Q.p() != 2) throw std::invalid_argument("four_dim_products: requires p = 2");
    const int r = 3;
    std::vector<ProjPoint> pts = proj_points(F, r);
    std::vector<FourDimProduct> out;
    for (size_t ia = 0; ia < pts.size(); ++ia)
        for (size_t ib = ia; ib < pts.size(); ++ib) {
            const auto& a = pts[ia].coords;
            const auto& b = pts[ib].coords;
            Module M = tensor(point_module(F, a), point_module(F, b));
            if (!is_faithful(M)) continue;
            if (!is_periodic(M, 2).has_value()) continue;
            if (!is_isomorphic(M, dual(M))) throw std::runtime_error("four_dim_products: module is not self-dual");
            bool st = true, ts = true;
            for (int j = 0; j < r; ++j) {
                st = st && (b[j] == Q.frobenius(a[j]));
                ts = ts && (a[j] == Q.frobenius(b[j]));
            }
            out.push_back(FourDimProduct{a, b, std::move(M), st || ts});
        }
    return out;
}

} // namespace tilt
