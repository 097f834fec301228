#include "module.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include <json.hpp>

namespace tilt {

namespace {

long long ipow(int b, int e) {
    long long v = 1;
    for (int i = 0; i < e; ++i) v *= b;
    return v;
}

// Echelonized basis of the column space (deterministic).
Mat column_space(const Mat& A) {
    Mat R = A.transpose();
    rref_inplace(R);
    int rk = 0;
    for (int i = 0; i < R.rows(); ++i) {
        bool nz = false;
        for (int j = 0; j < R.cols(); ++j)
            if (R.at(i, j)) nz = true;
        if (nz) ++rk;
    }
    Mat out(A.field(), A.rows(), rk);
    for (int i = 0; i < rk; ++i)
        for (int j = 0; j < A.rows(); ++j) out.at(j, i) = R.at(i, j);
    return out;
}

// Indices of standard basis vectors completing span(basis) to the full space.
std::vector<int> completion_indices(const Mat& basis, int dim) {
    const Fq& F = basis.field();
    Mat B(F, dim, basis.cols() + dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < basis.cols(); ++j) B.at(i, j) = basis.at(i, j);
        B.at(i, basis.cols() + i) = 1;
    }
    // rref scans columns left to right, so basis columns claim pivots first;
    // pivot columns landing in the identity block index completion vectors.
    auto pivots = rref_inplace(B);
    std::vector<int> out;
    for (int c : pivots)
        if (c >= basis.cols()) out.push_back(c - basis.cols());
    return out;
}

} // namespace

Module zero_module(FqPtr F, int r) {
    Module M{std::move(F), r, 0, {}};
    for (int i = 0; i < r; ++i) M.gens.emplace_back(M.F(), 0, 0);
    return M;
}

Module trivial_module(FqPtr F, int r) {
    Module M{std::move(F), r, 1, {}};
    for (int i = 0; i < r; ++i) M.gens.emplace_back(M.F(), 1, 1);
    return M;
}

int monomial_count(const Module& M) { return int(ipow(M.F().p(), M.r)); }

Module regular_module(FqPtr F, int r) {
    int p = F->p();
    int n = int(ipow(p, r));
    Module M{F, r, n, {}};
    for (int i = 0; i < r; ++i) {
        Mat N(*F, n, n);
        long long stride = ipow(p, i);
        for (int a = 0; a < n; ++a) {
            int digit = int(a / stride) % p;
            if (digit < p - 1) N.at(a + int(stride), a) = 1;
        }
        M.gens.push_back(std::move(N));
    }
    return M;
}

Module make_module(FqPtr F, int r, std::vector<Mat> gens) {
    Module M{std::move(F), r, gens.empty() ? 0 : gens[0].rows(), std::move(gens)};
    validate(M);
    return M;
}

void validate(const Module& M) {
    if (int(M.gens.size()) != M.r) throw std::invalid_argument("validate: wrong number of generators");
    int p = M.F().p();
    for (int i = 0; i < M.r; ++i) {
        const Mat& N = M.gens[i];
        if (N.rows() != M.dim || N.cols() != M.dim)
            throw std::invalid_argument("validate: N_" + std::to_string(i + 1) + " has wrong shape");
        if (!mat_pow(N, p).is_zero())
            throw std::invalid_argument("validate: N_" + std::to_string(i + 1) + "^p != 0");
        for (int j = i + 1; j < M.r; ++j)
            if (!(N * M.gens[j] == M.gens[j] * N))
                throw std::invalid_argument("validate: N_" + std::to_string(i + 1) + " and N_" +
                                            std::to_string(j + 1) + " do not commute");
    }
}

void validate_graded(const GradedModule& G) {
    validate(G.m);
    if (int(G.weights.size()) != G.m.dim)
        throw std::invalid_argument("validate_graded: weight vector has wrong length");
    for (int i = 0; i < G.m.r; ++i)
        for (int a = 0; a < G.m.dim; ++a)
            for (int b = 0; b < G.m.dim; ++b)
                if (G.m.gens[i].at(a, b)) {
                    int drop = G.weights[b] - G.weights[a];
                    if (drop <= 0 || drop % 2 != 0)
                        throw std::invalid_argument(
                            "validate_graded: X_i entry does not strictly lower weight evenly");
                }
}

Module tensor(const Module& A, const Module& B) {
    if (A.ctx.get() != B.ctx.get() || A.r != B.r)
        throw std::invalid_argument("tensor: context or rank mismatch");
    Module M{A.ctx, A.r, A.dim * B.dim, {}};
    Mat IA = Mat::identity(A.F(), A.dim), IB = Mat::identity(A.F(), B.dim);
    for (int i = 0; i < A.r; ++i)
        M.gens.push_back(A.gens[i].kron(IB) + IA.kron(B.gens[i]) + A.gens[i].kron(B.gens[i]));
    return M;
}

Module dual(const Module& M) {
    Module D{M.ctx, M.r, M.dim, {}};
    const Fq& F = M.F();
    int p = F.p();
    for (int i = 0; i < M.r; ++i) {
        Mat acc(F, M.dim, M.dim);
        Mat pw = Mat::identity(F, M.dim);
        for (int j = 1; j <= p - 1; ++j) {
            pw = pw * M.gens[i];
            acc = (j % 2 == 1) ? acc - pw : acc + pw;
        }
        D.gens.push_back(acc.transpose());
    }
    return D;
}

Module direct_sum(const Module& A, const Module& B) {
    Module M{A.ctx, A.r, A.dim + B.dim, {}};
    for (int i = 0; i < A.r; ++i) {
        Mat N(A.F(), M.dim, M.dim);
        for (int a = 0; a < A.dim; ++a)
            for (int b = 0; b < A.dim; ++b) N.at(a, b) = A.gens[i].at(a, b);
        for (int a = 0; a < B.dim; ++a)
            for (int b = 0; b < B.dim; ++b) N.at(A.dim + a, A.dim + b) = B.gens[i].at(a, b);
        M.gens.push_back(std::move(N));
    }
    return M;
}

Module frobenius_twist(const Module& M, int times) {
    Module T{M.ctx, M.r, M.dim, {}};
    const Fq& F = M.F();
    for (const Mat& N : M.gens) {
        Mat G(F, M.dim, M.dim);
        for (int a = 0; a < M.dim; ++a)
            for (int b = 0; b < M.dim; ++b) G.at(a, b) = F.frobenius(N.at(a, b), times);
        T.gens.push_back(std::move(G));
    }
    return T;
}

bool is_intertwiner(const Module& A, const Module& B, const Mat& f) {
    for (int i = 0; i < A.r; ++i)
        if (!(f * A.gens[i] == B.gens[i] * f)) return false;
    return true;
}

Mat radical_basis(const Module& M) {
    if (M.dim == 0) return Mat(M.F(), 0, 0);
    return column_space(Mat::hstack(M.gens));
}

Mat socle_basis(const Module& M) {
    if (M.dim == 0) return Mat(M.F(), 0, 0);
    return kernel_basis(Mat::vstack(M.gens));
}

std::vector<Mat> radical_series(const Module& M) {
    std::vector<Mat> series;
    if (M.dim == 0) return series;
    Mat cur = Mat::identity(M.F(), M.dim);
    while (cur.cols() > 0) {
        series.push_back(cur);
        std::vector<Mat> imgs;
        for (const Mat& N : M.gens) imgs.push_back(N * cur);
        cur = column_space(Mat::hstack(imgs));
    }
    return series;
}

int loewy_length(const Module& M) { return int(radical_series(M).size()); }

int top_dim(const Module& M) { return M.dim - radical_basis(M).cols(); }

Mat top_lift(const Module& M) {
    Mat rad = radical_basis(M);
    auto idx = completion_indices(rad, M.dim);
    Mat out(M.F(), M.dim, int(idx.size()));
    for (size_t j = 0; j < idx.size(); ++j) out.at(idx[j], int(j)) = 1;
    return out;
}

Mat submodule_generated(const Module& M, const Mat& vectors) {
    const Fq& F = M.F();
    // row-echelon accumulation of the generated subspace
    std::vector<std::vector<fel>> rows; // echelonized, leading index ascending
    std::vector<int> lead;
    std::deque<std::vector<fel>> work;
    auto reduce_insert = [&](std::vector<fel> v) -> bool {
        for (size_t i = 0; i < rows.size(); ++i) {
            if (v[lead[i]]) {
                fel c = v[lead[i]];
                for (int j = 0; j < M.dim; ++j) v[j] = F.sub(v[j], F.mul(c, rows[i][j]));
            }
        }
        int l = -1;
        for (int j = 0; j < M.dim; ++j)
            if (v[j]) {
                l = j;
                break;
            }
        if (l < 0) return false;
        fel inv = F.inv(v[l]);
        for (int j = 0; j < M.dim; ++j) v[j] = F.mul(v[j], inv);
        // back-substitute into existing rows
        for (size_t i = 0; i < rows.size(); ++i)
            if (rows[i][l]) {
                fel c = rows[i][l];
                for (int j = 0; j < M.dim; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(c, v[j]));
            }
        rows.push_back(v);
        lead.push_back(l);
        work.push_back(std::move(v));
        return true;
    };
    for (int c = 0; c < vectors.cols(); ++c) {
        std::vector<fel> v(M.dim);
        for (int i = 0; i < M.dim; ++i) v[i] = vectors.at(i, c);
        reduce_insert(std::move(v));
    }
    while (!work.empty()) {
        std::vector<fel> v = work.front();
        work.pop_front();
        for (const Mat& N : M.gens) {
            std::vector<fel> w(M.dim, 0);
            for (int i = 0; i < M.dim; ++i) {
                fel acc = 0;
                const fel* row = N.row(i);
                for (int j = 0; j < M.dim; ++j)
                    if (row[j] && v[j]) acc = F.add(acc, F.mul(row[j], v[j]));
                w[i] = acc;
            }
            reduce_insert(std::move(w));
        }
    }
    // sort rows by leading index for determinism
    std::vector<int> order(rows.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return lead[a] < lead[b]; });
    Mat out(F, M.dim, int(rows.size()));
    for (size_t c = 0; c < order.size(); ++c)
        for (int i = 0; i < M.dim; ++i) out.at(i, int(c)) = rows[order[c]][i];
    return out;
}

Module sub_as_module(const Module& M, const Mat& basis) {
    Module S{M.ctx, M.r, basis.cols(), {}};
    for (const Mat& N : M.gens) {
        auto A = solve(basis, N * basis);
        if (!A) throw std::invalid_argument("sub_as_module: basis not stable");
        S.gens.push_back(std::move(*A));
    }
    return S;
}

Module quotient(const Module& M, const Mat& basis) {
    const Fq& F = M.F();
    auto idx = completion_indices(basis, M.dim);
    int qd = int(idx.size());
    Mat U(F, M.dim, M.dim);
    for (int j = 0; j < basis.cols(); ++j)
        for (int i = 0; i < M.dim; ++i) U.at(i, j) = basis.at(i, j);
    for (int j = 0; j < qd; ++j) U.at(idx[j], basis.cols() + j) = 1;
    Mat Uinv = inverse(U);
    Module Q{M.ctx, M.r, qd, {}};
    for (const Mat& N : M.gens) {
        Mat full = Uinv * N * U;
        Mat block(F, qd, qd);
        for (int a = 0; a < qd; ++a)
            for (int b = 0; b < qd; ++b) block.at(a, b) = full.at(basis.cols() + a, basis.cols() + b);
        Q.gens.push_back(std::move(block));
    }
    return Q;
}

bool is_cyclic(const Module& M) { return top_dim(M) <= 1; }

int max_cyclic_submodule_dim(const Module& M, Rng& rng, int samples) {
    if (M.dim == 0) return 0;
    const Fq& F = M.F();
    int best = 0;
    auto try_vec = [&](const std::vector<fel>& v) {
        Mat vm(F, M.dim, 1);
        bool nz = false;
        for (int i = 0; i < M.dim; ++i) {
            vm.at(i, 0) = v[i];
            nz = nz || v[i];
        }
        if (!nz) return;
        best = std::max(best, submodule_generated(M, vm).cols());
    };
    long long total = 1;
    bool exhaustive = M.dim <= 6 && F.q() <= 9;
    if (exhaustive) {
        for (int i = 0; i < M.dim; ++i) total *= F.q();
        for (long long n = 1; n < total; ++n) {
            std::vector<fel> v(M.dim);
            long long m = n;
            for (int i = 0; i < M.dim; ++i) {
                v[i] = fel(m % F.q());
                m /= F.q();
            }
            try_vec(v);
            if (best == M.dim) break;
        }
    } else {
        for (int t = 0; t < samples && best < M.dim; ++t) {
            std::vector<fel> v(M.dim);
            for (int i = 0; i < M.dim; ++i) v[i] = fel(rng.below(F.q()));
            try_vec(v);
        }
    }
    return best;
}

std::vector<Mat> monomial_actions(const Module& M) {
    int p = M.F().p();
    int total = monomial_count(M);
    std::vector<Mat> mono;
    mono.reserve(total);
    mono.push_back(Mat::identity(M.F(), M.dim));
    std::vector<long long> strides(M.r);
    for (int i = 0; i < M.r; ++i) strides[i] = ipow(p, i);
    for (int a = 1; a < total; ++a) {
        int i = 0;
        while ((a / strides[i]) % p == 0) ++i;
        mono.push_back(M.gens[i] * mono[a - int(strides[i])]);
    }
    return mono;
}

Presentation presentation(const Module& M) {
    const Fq& F = M.F();
    int pr = monomial_count(M);
    Presentation P;
    P.gen = top_lift(M);
    P.d = P.gen.cols();
    auto mono = monomial_actions(M);
    P.cover_coords = Mat(F, M.dim, P.d * pr);
    for (int j = 0; j < P.d; ++j) {
        Mat gj(F, M.dim, 1);
        for (int i = 0; i < M.dim; ++i) gj.at(i, 0) = P.gen.at(i, j);
        for (int a = 0; a < pr; ++a) {
            Mat col = mono[a] * gj;
            for (int i = 0; i < M.dim; ++i) P.cover_coords.at(i, j * pr + a) = col.at(i, 0);
        }
    }
    auto ri = solve(P.cover_coords, Mat::identity(F, M.dim));
    if (!ri) throw std::logic_error("presentation: cover map not surjective");
    P.rinv = std::move(*ri);

    Mat K = kernel_basis(P.cover_coords); // d*pr x s_full
    if (K.cols() == 0) {
        P.rels = K;
        return P;
    }
    // rad(kE^d) * K: multiply each kernel column by each X_i in coordinates
    int p = F.p();
    Mat RK(F, P.d * pr, K.cols() * M.r);
    for (int i = 0; i < M.r; ++i) {
        long long stride = ipow(p, i);
        for (int c = 0; c < K.cols(); ++c)
            for (int j = 0; j < P.d; ++j)
                for (int a = 0; a < pr; ++a) {
                    fel v = K.at(j * pr + a, c);
                    if (!v) continue;
                    int digit = int(a / stride) % p;
                    if (digit < p - 1)
                        RK.at(j * pr + a + int(stride), i * K.cols() + c) =
                            F.add(RK.at(j * pr + a + int(stride), i * K.cols() + c), v);
                }
    }
    // pick kernel columns completing col(RK) inside the kernel space
    Mat both = Mat::hstack({RK, K});
    Mat tmp = both;
    auto pivots = rref_inplace(tmp);
    std::vector<int> chosen;
    for (int c : pivots)
        if (c >= RK.cols()) chosen.push_back(c - RK.cols());
    P.rels = K.columns(chosen);
    return P;
}

std::vector<Mat> hom_space(const Module& M, const Module& N) {
    const Fq& F = M.F();
    if (M.dim == 0 || N.dim == 0) return {};
    Presentation P = presentation(M);
    int pr = monomial_count(M);
    auto monoN = monomial_actions(N);
    int d = P.d, n = N.dim, s = P.rels.cols();
    // constraints: for each relation kappa, sum_j kappa_j(N) w_j = 0
    Mat C(F, s * n, d * n);
    for (int c = 0; c < s; ++c)
        for (int j = 0; j < d; ++j) {
            // kappa_j(N) = sum_a rels[(j,a),c] * monoN[a]
            for (int a = 0; a < pr; ++a) {
                fel v = P.rels.at(j * pr + a, c);
                if (!v) continue;
                const Mat& X = monoN[a];
                for (int u = 0; u < n; ++u)
                    for (int w = 0; w < n; ++w)
                        if (X.at(u, w))
                            C.at(c * n + u, j * n + w) =
                                F.add(C.at(c * n + u, j * n + w), F.mul(v, X.at(u, w)));
            }
        }
    Mat K = s == 0 ? Mat::identity(F, d * n) : kernel_basis(C);
    std::vector<Mat> out;
    out.reserve(K.cols());
    for (int h = 0; h < K.cols(); ++h) {
        // Psi: n x d*pr with column (j,a) = X^a(N) w_j
        Mat Psi(F, n, d * pr);
        for (int j = 0; j < d; ++j) {
            Mat wj(F, n, 1);
            for (int i = 0; i < n; ++i) wj.at(i, 0) = K.at(j * n + i, h);
            for (int a = 0; a < pr; ++a) {
                Mat col = monoN[a] * wj;
                for (int i = 0; i < n; ++i) Psi.at(i, j * pr + a) = col.at(i, 0);
            }
        }
        out.push_back(Psi * P.rinv);
    }
    return out;
}

Module extend_field(const Module& M, const FieldEmbedding& phi, FqPtr big) {
    Module out{std::move(big), M.r, M.dim, {}};
    for (const Mat& N : M.gens) out.gens.push_back(N.mapped(phi));
    return out;
}

std::string module_to_json(const Module& M) {
    nlohmann::json j;
    const Fq& F = M.F();
    j["p"] = F.p();
    j["k"] = F.k();
    j["modulus"] = F.modulus();
    j["r"] = M.r;
    j["dim"] = M.dim;
    auto gens = nlohmann::json::array();
    for (const Mat& N : M.gens) {
        auto rows = nlohmann::json::array();
        for (int i = 0; i < M.dim; ++i) {
            auto row = nlohmann::json::array();
            for (int jj = 0; jj < M.dim; ++jj) row.push_back(F.to_coeffs(N.at(i, jj)));
            rows.push_back(std::move(row));
        }
        gens.push_back(std::move(rows));
    }
    j["generators"] = std::move(gens);
    return j.dump();
}

Module module_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int p = j.at("p"), k = j.at("k"), r = j.at("r"), dim = j.at("dim");
    std::vector<int> modulus = j.at("modulus").get<std::vector<int>>();
    auto F = std::make_shared<const Fq>(p, k, modulus);
    Module M{F, r, dim, {}};
    const auto& gens = j.at("generators");
    if (int(gens.size()) != r) throw std::invalid_argument("module_from_json: wrong generator count");
    for (const auto& g : gens) {
        Mat N(*F, dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int jj = 0; jj < dim; ++jj)
                N.at(i, jj) = F->from_coeffs(g.at(i).at(jj).get<std::vector<int>>());
        M.gens.push_back(std::move(N));
    }
    validate(M);
    return M;
}

} // namespace tilt
