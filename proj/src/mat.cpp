#include "mat.hpp"

#include <stdexcept>

namespace tilt {

bool Mat::is_zero() const {
    for (fel x : a_)
        if (x) return false;
    return true;
}

Mat Mat::operator+(const Mat& o) const {
    Mat out(*F_, r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = F_->add(a_[i], o.a_[i]);
    return out;
}

Mat Mat::operator-(const Mat& o) const {
    Mat out(*F_, r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = F_->sub(a_[i], o.a_[i]);
    return out;
}

Mat Mat::operator*(const Mat& o) const {
    if (c_ != o.r_) throw std::invalid_argument("Mat::mul: shape mismatch");
    Mat out(*F_, r_, o.c_);
    const Fq& F = *F_;
    for (int i = 0; i < r_; ++i) {
        fel* dst = out.row(i);
        for (int k = 0; k < c_; ++k) {
            fel aik = at(i, k);
            if (!aik) continue;
            const fel* src = o.row(k);
            for (int j = 0; j < o.c_; ++j)
                if (src[j]) dst[j] = F.add(dst[j], F.mul(aik, src[j]));
        }
    }
    return out;
}

Mat Mat::scaled(fel c) const {
    Mat out(*F_, r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = F_->mul(a_[i], c);
    return out;
}

Mat Mat::transpose() const {
    Mat out(*F_, c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) out.at(j, i) = at(i, j);
    return out;
}

Mat Mat::kron(const Mat& o) const {
    Mat out(*F_, r_ * o.r_, c_ * o.c_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) {
            fel v = at(i, j);
            if (!v) continue;
            for (int s = 0; s < o.r_; ++s)
                for (int t = 0; t < o.c_; ++t)
                    if (o.at(s, t)) out.at(i * o.r_ + s, j * o.c_ + t) = F_->mul(v, o.at(s, t));
        }
    return out;
}

Mat Mat::hstack(const std::vector<Mat>& parts) {
    int c = 0;
    for (const Mat& m : parts) c += m.cols();
    Mat out(parts.front().field(), parts.front().rows(), c);
    int off = 0;
    for (const Mat& m : parts) {
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) out.at(i, off + j) = m.at(i, j);
        off += m.cols();
    }
    return out;
}

Mat Mat::vstack(const std::vector<Mat>& parts) {
    int r = 0;
    for (const Mat& m : parts) r += m.rows();
    Mat out(parts.front().field(), r, parts.front().cols());
    int off = 0;
    for (const Mat& m : parts) {
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) out.at(off + i, j) = m.at(i, j);
        off += m.rows();
    }
    return out;
}

Mat Mat::columns(const std::vector<int>& idx) const {
    Mat out(*F_, r_, int(idx.size()));
    for (int i = 0; i < r_; ++i)
        for (size_t j = 0; j < idx.size(); ++j) out.at(i, int(j)) = at(i, idx[j]);
    return out;
}

Mat Mat::mapped(const FieldEmbedding& phi) const {
    Mat out(phi.to(), r_, c_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) out.at(i, j) = phi(at(i, j));
    return out;
}

std::vector<int> rref_inplace(Mat& A) {
    const Fq& F = A.field();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < A.cols() && r < A.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < A.rows(); ++i)
            if (A.at(i, c)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = c; j < A.cols(); ++j) std::swap(A.at(piv, j), A.at(r, j));
        fel inv = F.inv(A.at(r, c));
        if (inv != 1)
            for (int j = c; j < A.cols(); ++j) A.at(r, j) = F.mul(A.at(r, j), inv);
        for (int i = 0; i < A.rows(); ++i) {
            if (i == r) continue;
            fel f = A.at(i, c);
            if (!f) continue;
            fel* dst = A.row(i);
            const fel* src = A.row(r);
            for (int j = c; j < A.cols(); ++j)
                if (src[j]) dst[j] = F.sub(dst[j], F.mul(f, src[j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rank(Mat A) { return int(rref_inplace(A).size()); }

Mat kernel_basis(const Mat& A) {
    const Fq& F = A.field();
    Mat R = A;
    std::vector<int> pivots = rref_inplace(R);
    std::vector<char> is_pivot(A.cols(), 0);
    for (int c : pivots) is_pivot[c] = 1;
    int nfree = A.cols() - int(pivots.size());
    Mat K(F, A.cols(), nfree);
    int col = 0;
    for (int c = 0; c < A.cols(); ++c) {
        if (is_pivot[c]) continue;
        K.at(c, col) = 1;
        for (size_t i = 0; i < pivots.size(); ++i) K.at(pivots[i], col) = F.neg(R.at(int(i), c));
        ++col;
    }
    return K;
}

std::optional<Mat> solve(const Mat& A, const Mat& B) {
    if (A.rows() != B.rows()) throw std::invalid_argument("solve: shape mismatch");
    const Fq& F = A.field();
    Mat aug = Mat::hstack({A, B});
    std::vector<int> pivots = rref_inplace(aug);
    // any pivot in the B block means inconsistency
    for (int c : pivots)
        if (c >= A.cols()) return std::nullopt;
    Mat X(F, A.cols(), B.cols());
    for (size_t i = 0; i < pivots.size(); ++i)
        for (int j = 0; j < B.cols(); ++j) X.at(pivots[i], j) = aug.at(int(i), A.cols() + j);
    return X;
}

Mat inverse(const Mat& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("inverse: not square");
    auto X = solve(A, Mat::identity(A.field(), A.rows()));
    if (!X || rank(A) != A.rows()) throw std::invalid_argument("inverse: singular matrix");
    return *X;
}

Mat mat_pow(Mat A, long long e) {
    Mat r = Mat::identity(A.field(), A.rows());
    while (e > 0) {
        if (e & 1) r = r * A;
        A = A * A;
        e >>= 1;
    }
    return r;
}

std::vector<fel> charpoly(Mat A) {
    // Hessenberg reduction by similarity, then the standard determinant
    // recurrence on the Hessenberg form.
    const Fq& F = A.field();
    int n = A.rows();
    if (n != A.cols()) throw std::invalid_argument("charpoly: not square");
    for (int c = 0; c + 2 < n; ++c) {
        int piv = -1;
        for (int i = c + 1; i < n; ++i)
            if (A.at(i, c)) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != c + 1) {
            for (int j = 0; j < n; ++j) std::swap(A.at(piv, j), A.at(c + 1, j));
            for (int i = 0; i < n; ++i) std::swap(A.at(i, piv), A.at(i, c + 1));
        }
        fel inv = F.inv(A.at(c + 1, c));
        for (int i = c + 2; i < n; ++i) {
            fel f = F.mul(A.at(i, c), inv);
            if (!f) continue;
            for (int j = 0; j < n; ++j) A.at(i, j) = F.sub(A.at(i, j), F.mul(f, A.at(c + 1, j)));
            for (int j = 0; j < n; ++j) A.at(j, c + 1) = F.add(A.at(j, c + 1), F.mul(f, A.at(j, i)));
        }
    }
    // p_0 = 1; p_m = (x - a_mm) p_{m-1} - sum_i (prod of subdiagonals) a_im p_{i-1}
    std::vector<std::vector<fel>> p(n + 1);
    p[0] = {1};
    for (int m = 1; m <= n; ++m) {
        std::vector<fel>& cur = p[m];
        cur.assign(m + 1, 0);
        // (x - A[m-1][m-1]) * p[m-1]
        for (int i = 0; i < m; ++i) {
            cur[i + 1] = F.add(cur[i + 1], p[m - 1][i]);
            cur[i] = F.sub(cur[i], F.mul(A.at(m - 1, m - 1), p[m - 1][i]));
        }
        fel t = 1;
        for (int i = m - 1; i >= 1; --i) {
            t = F.mul(t, A.at(i, i - 1));
            if (!t) break;
            fel coeff = F.mul(t, A.at(i - 1, m - 1));
            if (!coeff) continue;
            for (int j = 0; j < i; ++j) cur[j] = F.sub(cur[j], F.mul(coeff, p[i - 1][j]));
        }
    }
    return p[n];
}

} // namespace tilt
