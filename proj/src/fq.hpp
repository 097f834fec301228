// Finite field arithmetic for small fields F_{p^k}, built on Zech logarithms.
//
// Elements are stored as 16-bit codes: 0 is the zero element, and a code
// c > 0 denotes g^(c-1) for a fixed primitive element g.  Multiplication is
// then addition of discrete logs, and addition uses the Zech table
// z(n) defined by 1 + g^n = g^(z(n)).  All tables are built once per field
// context; contexts are immutable and shared by const pointer.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tilt {

using fel = std::uint16_t; // field element code: 0 = zero, c>0 = g^(c-1)

class Fq {
public:
    // Construct F_{p^k} with an explicit monic modulus (k+1 coefficients,
    // ascending, over F_p), or with the default modulus: the first monic
    // irreducible of degree k in the enumeration that increments lower
    // coefficients fastest.
    Fq(int p, int k, std::vector<int> modulus);
    Fq(int p, int k);

    int p() const { return p_; }
    int k() const { return k_; }
    std::uint32_t q() const { return q_; }
    const std::vector<int>& modulus() const { return mod_; }

    fel zero() const { return 0; }
    fel one() const { return 1; }
    fel gen() const { return k_ == 1 ? from_int(smallest_prim_root_) : 2; }

    bool is_zero(fel a) const { return a == 0; }

    fel add(fel a, fel b) const {
        if (a == 0) return b;
        if (b == 0) return a;
        std::uint32_t n = b >= a ? b - a : b + qm1_ - a; // log(b/a)
        std::int32_t z = zech_[n];
        if (z < 0) return 0;
        std::uint32_t s = a - 1 + std::uint32_t(z);
        if (s >= qm1_) s -= qm1_;
        return fel(s + 1);
    }
    fel neg(fel a) const {
        if (a == 0 || p_ == 2) return a;
        std::uint32_t s = a - 1 + half_;
        if (s >= qm1_) s -= qm1_;
        return fel(s + 1);
    }
    fel sub(fel a, fel b) const { return add(a, neg(b)); }
    fel mul(fel a, fel b) const {
        if (a == 0 || b == 0) return 0;
        std::uint32_t s = std::uint32_t(a - 1) + std::uint32_t(b - 1);
        if (s >= qm1_) s -= qm1_;
        return fel(s + 1);
    }
    fel inv(fel a) const {
        if (a == 0) throw std::domain_error("Fq::inv: division by zero");
        return a == 1 ? fel(1) : fel(qm1_ - (a - 1) + 1);
    }
    fel div(fel a, fel b) const { return mul(a, inv(b)); }
    fel pow(fel a, long long e) const;

    // x -> x^(p^times); the absolute Frobenius iterated.
    fel frobenius(fel a, int times = 1) const;

    // Conversions.  Coefficient vectors are ascending in the residue t of
    // the modulus variable, length k, entries in [0,p).
    fel from_coeffs(const std::vector<int>& c) const;
    std::vector<int> to_coeffs(fel a) const;
    fel from_int(long long n) const; // image of an integer (prime subfield)
    std::string to_string(fel a) const;

    // Discrete log with respect to gen(); requires a != 0.
    std::uint32_t log(fel a) const {
        if (a == 0) throw std::domain_error("Fq::log of zero");
        return a - 1;
    }
    fel from_log(std::uint32_t n) const { return fel(n % qm1_ + 1); }

    // All q elements, in a fixed deterministic order (zero first).
    std::vector<fel> elements() const;

private:
    void build_tables();

    int p_ = 0, k_ = 0;
    std::uint32_t q_ = 0, qm1_ = 0, half_ = 0; // half_ = log(-1)
    int smallest_prim_root_ = 1;               // for k == 1 printing/gen
    std::vector<int> mod_;                     // monic, k+1 coeffs over F_p
    std::vector<std::uint32_t> exp_;           // log -> packed coeff integer
    std::vector<fel> log_;                     // packed coeff integer -> code
    std::vector<std::int32_t> zech_;           // 1 + g^n = g^zech[n], -1 if 0
};

// Default (deterministic) modulus used by Fq(p, k).
std::vector<int> default_modulus(int p, int k);

// An embedding of fields phi: F -> G with [G:F_p] a multiple of [F:F_p],
// determined by sending the residue generator of F to the first root of F's
// modulus in G (in G's element enumeration order).  Application is a table
// lookup.
class FieldEmbedding {
public:
    FieldEmbedding(const Fq& from, const Fq& to);
    fel operator()(fel a) const { return table_[a]; }
    const Fq& from() const { return *from_; }
    const Fq& to() const { return *to_; }

private:
    const Fq* from_;
    const Fq* to_;
    std::vector<fel> table_;
};

} // namespace tilt
