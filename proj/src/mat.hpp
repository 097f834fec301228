// Dense matrices over a small finite field, with the exact linear algebra
// the rest of the project relies on: elimination, kernels, solving,
// characteristic polynomials.  Vectors are column vectors; a kernel basis is
// returned as a matrix whose columns span the null space.

#pragma once

#include <optional>
#include <vector>

#include "fq.hpp"

namespace tilt {

class Mat {
public:
    Mat() = default;
    Mat(const Fq& F, int rows, int cols) : F_(&F), r_(rows), c_(cols), a_(size_t(rows) * cols, 0) {}

    static Mat identity(const Fq& F, int n) {
        Mat m(F, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    const Fq& field() const { return *F_; }
    int rows() const { return r_; }
    int cols() const { return c_; }
    bool empty() const { return r_ == 0 || c_ == 0; }

    fel& at(int i, int j) { return a_[size_t(i) * c_ + j]; }
    fel at(int i, int j) const { return a_[size_t(i) * c_ + j]; }
    const fel* row(int i) const { return a_.data() + size_t(i) * c_; }
    fel* row(int i) { return a_.data() + size_t(i) * c_; }

    bool is_zero() const;
    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat scaled(fel c) const;
    Mat transpose() const;
    Mat kron(const Mat& o) const; // Kronecker product, row-major convention

    // Column/row composition helpers.
    static Mat hstack(const std::vector<Mat>& parts);
    static Mat vstack(const std::vector<Mat>& parts);
    Mat columns(const std::vector<int>& idx) const;

    // Map every entry through an embedding into a larger field.
    Mat mapped(const FieldEmbedding& phi) const;

private:
    const Fq* F_ = nullptr;
    int r_ = 0, c_ = 0;
    std::vector<fel> a_;
};

// In-place reduction to reduced row echelon form; returns pivot columns.
std::vector<int> rref_inplace(Mat& A);

int rank(Mat A);

// Columns span the right null space { x : Ax = 0 }.
Mat kernel_basis(const Mat& A);

// Solve A X = B; returns std::nullopt if inconsistent.  A need not be square.
std::optional<Mat> solve(const Mat& A, const Mat& B);

Mat inverse(const Mat& A);

Mat mat_pow(Mat A, long long e);

// Characteristic polynomial, ascending coefficients, monic of degree n.
std::vector<fel> charpoly(Mat A);

} // namespace tilt
