#include "decomp.hpp"

#include <algorithm>
#include <stdexcept>

namespace tilt {

namespace {

Mat vectorize(const Mat& A) {
    Mat v(A.field(), A.rows() * A.cols(), 1);
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) v.at(i * A.cols() + j, 0) = A.at(i, j);
    return v;
}

// Echelonized basis of the column space.
Mat column_space(const Mat& A) {
    Mat R = A.transpose();
    rref_inplace(R);
    int rk = 0;
    for (int i = 0; i < R.rows(); ++i)
        for (int j = 0; j < R.cols(); ++j)
            if (R.at(i, j)) {
                rk = i + 1;
                break;
            }
    Mat out(A.field(), A.rows(), rk);
    for (int i = 0; i < rk; ++i)
        for (int j = 0; j < A.rows(); ++j) out.at(j, i) = R.at(i, j);
    return out;
}

// L with L * B = I for a full-column-rank B.
std::optional<Mat> left_inverse(const Mat& B) {
    const Fq& F = B.field();
    Mat aug = Mat::hstack({B, Mat::identity(F, B.rows())});
    auto pivots = rref_inplace(aug);
    for (int i = 0; i < B.cols(); ++i)
        if (i >= int(pivots.size()) || pivots[i] != i) return std::nullopt;
    Mat L(F, B.cols(), B.rows());
    for (int i = 0; i < B.cols(); ++i)
        for (int j = 0; j < B.rows(); ++j) L.at(i, j) = aug.at(i, B.cols() + j);
    return L;
}

// The unique rational eigenvalue, if the charpoly is (t-c)^n with (theta-c)
// nilpotent; otherwise nullopt with diagnostic info.
struct EigInfo {
    std::optional<fel> value;
    bool splittable = false;  // >= 2 coprime factors: a Fitting split exists
    int offending_degree = 1; // an irreducible factor degree > 1, if any
};

EigInfo single_eigenvalue(const Mat& theta, Rng& rng) {
    const Fq& F = theta.field();
    int n = theta.rows();
    EigInfo info;
    Poly cp = charpoly(theta);
    auto fac = factor_poly(F, cp, rng);
    if (fac.size() > 1) {
        info.splittable = true;
        for (auto& [g, e] : fac) info.offending_degree = std::max(info.offending_degree, deg(g));
        return info;
    }
    if (deg(fac[0].first) > 1) {
        info.offending_degree = deg(fac[0].first);
        return info;
    }
    fel c = F.neg(fac[0].first[0]);
    (void)n;
    info.value = c;
    return info;
}

// Nilpotency of the span of the given operators, via a strictly decreasing
// invariant chain V <- sum_i op_i(V).
bool span_is_nilpotent(const std::vector<Mat>& ops, int dim) {
    if (ops.empty()) return true;
    const Fq& F = ops[0].field();
    Mat V = Mat::identity(F, dim);
    while (V.cols() > 0) {
        std::vector<Mat> imgs;
        imgs.reserve(ops.size());
        for (const Mat& o : ops) imgs.push_back(o * V);
        Mat next = column_space(Mat::hstack(imgs));
        if (next.cols() >= V.cols()) return false;
        V = std::move(next);
    }
    return true;
}

Mat random_combo(const std::vector<Mat>& basis, Rng& rng) {
    const Fq& F = basis[0].field();
    Mat acc(F, basis[0].rows(), basis[0].cols());
    for (const Mat& b : basis) {
        fel c = fel(rng.below(F.q()));
        if (c) acc = acc + b.scaled(c);
    }
    return acc;
}

} // namespace

EndAlgebra end_algebra(const Module& M) { return EndAlgebra{hom_space(M, M)}; }

LocalCert certify_local(const Module& M, Rng& rng) {
    LocalCert cert;
    cert.endo = hom_space(M, M);
    int h = int(cert.endo.size());
    if (M.dim == 0 || h == 0) return cert; // zero module: not certifiable
    cert.resid.resize(h);
    std::vector<Mat> nilparts;
    const Fq& F = M.F();
    for (int i = 0; i < h; ++i) {
        EigInfo e = single_eigenvalue(cert.endo[i], rng);
        if (!e.value) {
            cert.offending_degree = e.offending_degree;
            return cert;
        }
        cert.resid[i] = *e.value;
        Mat nil = cert.endo[i] - Mat::identity(F, M.dim).scaled(*e.value);
        nilparts.push_back(std::move(nil));
    }
    // J0 = span(theta_i - c_i) must have codimension 1 in End
    std::vector<Mat> vecs;
    for (const Mat& n : nilparts) vecs.push_back(vectorize(n));
    if (rank(Mat::hstack(vecs)) != h - 1) return cert;
    if (!span_is_nilpotent(nilparts, M.dim)) return cert;
    cert.ok = true;
    return cert;
}

std::vector<Mat> algebra_radical(const EndAlgebra& A, Rng& rng) {
    if (A.basis.empty()) return {};
    const Fq& F = A.basis[0].field();
    int n = A.basis[0].rows(), h = A.dim();
    // split-local fast path: radical = span(theta_i - c_i)
    {
        std::vector<Mat> nilparts;
        bool ok = true;
        for (const Mat& th : A.basis) {
            EigInfo e = single_eigenvalue(th, rng);
            if (!e.value) {
                ok = false;
                break;
            }
            nilparts.push_back(th - Mat::identity(F, n).scaled(*e.value));
        }
        if (ok && span_is_nilpotent(nilparts, n)) {
            std::vector<Mat> vecs;
            for (const Mat& m : nilparts) vecs.push_back(vectorize(m));
            Mat span = column_space(Mat::hstack(vecs));
            std::vector<Mat> out;
            for (int c = 0; c < span.cols(); ++c) {
                Mat m(F, n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) m.at(i, j) = span.at(i * n + j, c);
                out.push_back(std::move(m));
            }
            return out;
        }
    }
    // general case: iterated characteristic-p trace forms over F_p
    // (Cohen-Ivanyos-Wales).  Restrict scalars: F_p-basis theta_i * g^j.
    int p = F.p(), k = F.k();
    std::vector<Mat> fpbasis;
    for (const Mat& th : A.basis)
        for (int j = 0; j < k; ++j) fpbasis.push_back(th.scaled(F.pow(F.gen(), j)));
    auto abs_trace = [&](const Mat& m) {
        fel t = 0;
        for (int i = 0; i < n; ++i) t = F.add(t, m.at(i, i));
        // Tr_{F_q/F_p}
        fel s = 0, cur = t;
        for (int j = 0; j < k; ++j) {
            s = F.add(s, cur);
            cur = F.frobenius(cur);
        }
        return s; // lies in the prime subfield
    };
    Fq Fp(p, 1);
    std::vector<Mat> current = fpbasis; // basis of the current F_p-subspace
    long long pl = 1;
    for (int l = 0; pl <= n; ++l, pl *= p) {
        if (current.empty()) break;
        // Gram matrix G[v][u] = Tr((x_v b_u)^(p^l)) over F_p
        Mat G(Fp, int(fpbasis.size()), int(current.size()));
        for (size_t v = 0; v < current.size(); ++v)
            for (size_t u = 0; u < fpbasis.size(); ++u) {
                Mat prod = mat_pow(current[v] * fpbasis[u], pl);
                fel t = abs_trace(prod);
                G.at(int(u), int(v)) = Fp.from_coeffs({F.to_coeffs(t)[0]});
            }
        Mat K = kernel_basis(G);
        std::vector<Mat> next;
        for (int c = 0; c < K.cols(); ++c) {
            Mat m(F, n, n);
            for (size_t v = 0; v < current.size(); ++v) {
                int coef = Fp.to_coeffs(K.at(int(v), c))[0];
                for (int rep = 0; rep < coef; ++rep) m = m + current[v];
            }
            next.push_back(std::move(m));
        }
        current = std::move(next);
    }
    // re-echelonize over F_q
    if (current.empty()) return {};
    std::vector<Mat> vecs;
    for (const Mat& m : current) vecs.push_back(vectorize(m));
    Mat span = column_space(Mat::hstack(vecs));
    std::vector<Mat> out;
    for (int c = 0; c < span.cols(); ++c) {
        Mat m(F, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = span.at(i * n + j, c);
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<Module> fitting_split(const Module& M, const Mat& theta, Rng& rng) {
    const Fq& F = M.F();
    Poly cp = charpoly(theta);
    auto fac = factor_poly(F, cp, rng);
    if (fac.size() <= 1) return {M};
    std::vector<Module> parts;
    int n = M.dim;
    for (auto& [f, e] : fac) {
        // generalized kernel of f(theta): ker f(theta)^n
        Mat A(F, n, n);
        // Horner evaluation of f at theta
        for (int i = deg(f); i >= 0; --i) {
            A = A * theta;
            if (f[i]) A = A + Mat::identity(F, n).scaled(f[i]);
        }
        Mat P = mat_pow(A, 1);
        // raise to >= n by squaring
        long long pw = 1;
        while (pw < n) {
            P = P * P;
            pw *= 2;
        }
        parts.push_back(sub_as_module(M, kernel_basis(P)));
    }
    return parts;
}

namespace {

void decompose_rec(const Module& M, Rng& rng, std::vector<Module>& out, bool& extended, int depth) {
    if (M.dim == 0) return;
    if (depth > 64) throw std::runtime_error("indecomposable_decomposition: recursion depth exceeded");
    EndAlgebra E = end_algebra(M);
    if (E.dim() == 1) {
        out.push_back(M); // End = k: indecomposable, certified
        return;
    }
    for (int attempt = 0; attempt < 32; ++attempt) {
        Mat theta = random_combo(E.basis, rng);
        auto parts = fitting_split(M, theta, rng);
        if (parts.size() > 1) {
            for (const Module& P : parts) decompose_rec(P, rng, out, extended, depth + 1);
            return;
        }
    }
    LocalCert cert = certify_local(M, rng);
    if (cert.ok) {
        out.push_back(M);
        return;
    }
    // non-split residue field: extend and retry once
    const Fq& F = M.F();
    int e = std::max(2, cert.offending_degree);
    auto big = std::make_shared<const Fq>(F.p(), F.k() * e);
    FieldEmbedding phi(F, *big);
    Module lifted = extend_field(M, phi, big);
    extended = true;
    LocalCert cert2 = certify_local(lifted, rng);
    if (cert2.ok) {
        out.push_back(lifted);
        return;
    }
    for (int attempt = 0; attempt < 32; ++attempt) {
        Mat theta = random_combo(end_algebra(lifted).basis, rng);
        auto parts = fitting_split(lifted, theta, rng);
        if (parts.size() > 1) {
            for (const Module& P : parts) decompose_rec(P, rng, out, extended, depth + 1);
            return;
        }
    }
    throw std::runtime_error("indecomposable_decomposition: could not split or certify after field extension");
}

} // namespace

DecompReport indecomposable_decomposition(const Module& M, std::uint64_t seed) {
    Rng rng(seed ^ 0x7c0ffee5eedULL);
    std::vector<Module> flat;
    DecompReport rep;
    decompose_rec(M, rng, flat, rep.field_extended, 0);
    // group by isomorphism
    std::vector<char> used(flat.size(), 0);
    for (size_t i = 0; i < flat.size(); ++i) {
        if (used[i]) continue;
        int mult = 1;
        for (size_t j = i + 1; j < flat.size(); ++j) {
            if (used[j] || flat[j].dim != flat[i].dim) continue;
            if (is_isomorphic(flat[i], flat[j])) {
                used[j] = 1;
                ++mult;
            }
        }
        rep.summands.emplace_back(flat[i], mult);
    }
    std::sort(rep.summands.begin(), rep.summands.end(),
              [](const auto& a, const auto& b) { return a.first.dim < b.first.dim; });
    return rep;
}

std::optional<SplitResult> split_summand(const Module& T, const Module& M) {
    if (T.dim == 0 || T.dim > M.dim) return std::nullopt;
    const Fq& F = T.F();
    Rng rng(0x5eedULL);
    LocalCert cert = certify_local(T, rng);
    if (!cert.ok) throw std::invalid_argument("split_summand: T is not certified split-local");
    auto homTM = hom_space(T, M);
    if (homTM.empty()) return std::nullopt;
    auto homMT = hom_space(M, T);
    if (homMT.empty()) return std::nullopt;
    int t = T.dim;
    // residue functional as a matrix contraction: phi(h) = sum W[u][v] h[u][v]
    std::vector<Mat> vecs;
    for (const Mat& b : cert.endo) vecs.push_back(vectorize(b));
    auto L = left_inverse(Mat::hstack(vecs));
    if (!L) throw std::logic_error("split_summand: End basis not independent");
    Mat W(F, t, t);
    for (int u = 0; u < t; ++u)
        for (int v = 0; v < t; ++v) {
            fel acc = 0;
            for (size_t i = 0; i < cert.endo.size(); ++i)
                acc = F.add(acc, F.mul(cert.resid[i], L->at(int(i), u * t + v)));
            W.at(u, v) = acc;
        }
    for (const Mat& g : homMT) {
        Mat G = g.transpose() * W; // M.dim x t
        for (const Mat& f : homTM) {
            fel B = 0;
            for (int m = 0; m < M.dim; ++m)
                for (int v = 0; v < t; ++v)
                    if (G.at(m, v) && f.at(m, v)) B = F.add(B, F.mul(G.at(m, v), f.at(m, v)));
            if (!B) continue;
            Mat gf = g * f;
            Mat e = f * inverse(gf) * g;
            SplitResult res;
            res.f = f;
            res.g = inverse(gf) * g;
            res.complement = sub_as_module(M, kernel_basis(e));
            return res;
        }
    }
    return std::nullopt;
}

bool is_isomorphic(const Module& A, const Module& B) {
    if (A.dim != B.dim || A.r != B.r) return false;
    if (A.dim == 0) return true;
    // cheap invariants first
    for (int i = 0; i < A.r; ++i)
        if (rank(A.gens[i]) != rank(B.gens[i])) return false;
    if (top_dim(A) != top_dim(B)) return false;
    Module a = A, b = B;
    if (a.F().q() != b.F().q()) return false;
    DecompReport da = indecomposable_decomposition(a, 101), db = indecomposable_decomposition(b, 202);
    while (da.field_extended != db.field_extended ||
           (!da.summands.empty() && !db.summands.empty() &&
            da.summands[0].first.F().q() != db.summands[0].first.F().q())) {
        // re-run both over the common larger field
        std::uint32_t qa = da.summands.empty() ? a.F().q() : da.summands[0].first.F().q();
        std::uint32_t qb = db.summands.empty() ? b.F().q() : db.summands[0].first.F().q();
        if (qa == qb) break;
        const Module& small = qa < qb ? a : b;
        std::uint32_t qbig = std::max(qa, qb);
        int kk = 0;
        for (std::uint32_t x = 1; x != qbig; x *= small.F().p()) ++kk;
        auto big = std::make_shared<const Fq>(small.F().p(), kk);
        FieldEmbedding phi(small.F(), *big);
        if (qa < qb)
            a = extend_field(a, phi, big);
        else
            b = extend_field(b, phi, big);
        da = indecomposable_decomposition(a, 101);
        db = indecomposable_decomposition(b, 202);
    }
    if (da.summands.size() != db.summands.size()) return false;
    std::vector<char> used(db.summands.size(), 0);
    for (auto& [sa, ma] : da.summands) {
        bool found = false;
        for (size_t j = 0; j < db.summands.size(); ++j) {
            if (used[j]) continue;
            auto& [sb, mb] = db.summands[j];
            if (ma != mb || sa.dim != sb.dim) continue;
            if (split_summand(sa, sb)) { // indecomposable + same dim: summand <=> iso
                used[j] = 1;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

std::pair<std::vector<int>, Module> peel_against(const Module& M, const std::vector<Module>& library) {
    std::vector<int> counts(library.size(), 0);
    Module core = M;
    for (size_t i = 0; i < library.size(); ++i) {
        while (core.dim >= library[i].dim && library[i].dim > 0) {
            auto s = split_summand(library[i], core);
            if (!s) break;
            ++counts[i];
            core = s->complement;
        }
    }
    return {counts, core};
}

} // namespace tilt
