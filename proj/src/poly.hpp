// Univariate polynomial arithmetic and factorization over F_q.
//
// Polynomials are coefficient vectors, ascending, with no trailing zeros
// (the zero polynomial is the empty vector).  Factorization is the classic
// chain: square-free decomposition (with p-th root descent in positive
// characteristic), distinct-degree splitting, then Cantor-Zassenhaus
// equal-degree splitting seeded by an explicit RNG state so runs are
// reproducible.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fq.hpp"

namespace tilt {

using Poly = std::vector<fel>;

// Small deterministic RNG (splitmix64) used wherever randomness is needed.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    Rng split() { return Rng(next() ^ 0xa02bdbf7bb3c0a7ull); }
};

int deg(const Poly& a); // -1 for the zero polynomial
void trim(Poly& a);
Poly poly_add(const Fq& F, const Poly& a, const Poly& b);
Poly poly_sub(const Fq& F, const Poly& a, const Poly& b);
Poly poly_mul(const Fq& F, const Poly& a, const Poly& b);
Poly poly_scale(const Fq& F, const Poly& a, fel c);
// Division with remainder; b != 0.
std::pair<Poly, Poly> poly_divmod(const Fq& F, const Poly& a, const Poly& b);
Poly poly_mod(const Fq& F, const Poly& a, const Poly& b);
Poly poly_gcd(const Fq& F, Poly a, Poly b); // monic gcd
Poly poly_monic(const Fq& F, Poly a);
Poly poly_derivative(const Fq& F, const Poly& a);
Poly poly_powmod(const Fq& F, Poly base, unsigned long long e, const Poly& f);
fel poly_eval(const Fq& F, const Poly& a, fel x);

// Irreducible factorization f = c * prod f_i^{e_i} with monic f_i, sorted
// deterministically.  Returns the list of (f_i, e_i); the scalar c is
// leading_coefficient(f).
std::vector<std::pair<Poly, int>> factor_poly(const Fq& F, const Poly& f, Rng& rng);

// Roots in F_q (without multiplicity), sorted by element code.
std::vector<fel> poly_roots(const Fq& F, const Poly& f, Rng& rng);

bool poly_is_irreducible(const Fq& F, const Poly& f, Rng& rng);

} // namespace tilt
