#include "poly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tilt {

int deg(const Poly& a) { return int(a.size()) - 1; }

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_add(const Fq& F, const Poly& a, const Poly& b) {
    Poly c(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < c.size(); ++i)
        c[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(c);
    return c;
}

Poly poly_sub(const Fq& F, const Poly& a, const Poly& b) {
    Poly c(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < c.size(); ++i)
        c[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    trim(c);
    return c;
}

Poly poly_mul(const Fq& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (b[j]) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
    }
    trim(c);
    return c;
}

Poly poly_scale(const Fq& F, const Poly& a, fel c) {
    Poly out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = F.mul(a[i], c);
    trim(out);
    return out;
}

std::pair<Poly, Poly> poly_divmod(const Fq& F, const Poly& a, const Poly& b) {
    if (b.empty()) throw std::domain_error("poly_divmod: division by zero");
    Poly r = a, q;
    int db = deg(b);
    fel binv = F.inv(b.back());
    if (deg(r) >= db) q.assign(deg(r) - db + 1, 0);
    while (deg(r) >= db) {
        int shift = deg(r) - db;
        fel t = F.mul(r.back(), binv);
        q[shift] = t;
        for (int i = 0; i <= db; ++i) r[shift + i] = F.sub(r[shift + i], F.mul(t, b[i]));
        trim(r);
    }
    trim(q);
    return {q, r};
}

Poly poly_mod(const Fq& F, const Poly& a, const Poly& b) { return poly_divmod(F, a, b).second; }

Poly poly_monic(const Fq& F, Poly a) {
    if (a.empty() || a.back() == 1) return a;
    return poly_scale(F, a, F.inv(a.back()));
}

Poly poly_gcd(const Fq& F, Poly a, Poly b) {
    while (!b.empty()) {
        Poly r = poly_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(F, a);
}

Poly poly_derivative(const Fq& F, const Poly& a) {
    Poly d;
    for (size_t i = 1; i < a.size(); ++i) {
        fel c = 0;
        for (size_t j = 0; j < i % F.p(); ++j) c = F.add(c, a[i]);
        d.push_back(c);
    }
    trim(d);
    return d;
}

Poly poly_powmod(const Fq& F, Poly base, unsigned long long e, const Poly& f) {
    Poly r = {1};
    base = poly_mod(F, base, f);
    while (e > 0) {
        if (e & 1) r = poly_mod(F, poly_mul(F, r, base), f);
        base = poly_mod(F, poly_mul(F, base, base), f);
        e >>= 1;
    }
    return r;
}

fel poly_eval(const Fq& F, const Poly& a, fel x) {
    fel acc = 0;
    for (int i = deg(a); i >= 0; --i) acc = F.add(F.mul(acc, x), a[i]);
    return acc;
}

namespace {

// a^(p^j) extraction of the coefficient p-th root: in F_q with q = p^k the
// p-th root of c is c^(p^(k-1)).
fel pth_root(const Fq& F, fel c) { return F.frobenius(c, F.k() - 1); }

// Square-free decomposition of a monic polynomial; returns (g, multiplicity)
// pairs with g monic square-free, pairwise coprime.
void squarefree_decomp(const Fq& F, Poly f, int mult, std::vector<std::pair<Poly, int>>& out) {
    if (deg(f) <= 0) return;
    Poly d = poly_derivative(F, f);
    if (d.empty()) {
        // f = h(x^p); descend with multiplicity * p
        Poly h((deg(f) / F.p()) + 1, 0);
        for (int i = 0; i <= deg(f); i += F.p()) h[i / F.p()] = pth_root(F, f[i]);
        squarefree_decomp(F, h, mult * F.p(), out);
        return;
    }
    Poly c = poly_gcd(F, f, d);
    Poly w = poly_divmod(F, f, c).first; // product of factors with mult not divisible by p
    int i = 1;
    while (deg(w) > 0) {
        Poly y = poly_gcd(F, w, c);
        Poly g = poly_divmod(F, w, y).first; // factors of multiplicity exactly i
        if (deg(g) > 0) out.emplace_back(poly_monic(F, g), mult * i);
        c = poly_divmod(F, c, y).first;
        w = std::move(y);
        ++i;
    }
    if (deg(c) > 0) squarefree_decomp(F, c, mult, out); // leftover p-th power part
}

// a^((q^d - 1)/2) mod f for odd q, avoiding overflow: first the norm-type
// exponent (q^d-1)/(q-1) as a product of Frobenius powers, then (q-1)/2.
Poly half_order_power(const Fq& F, const Poly& a, int d, const Poly& f) {
    Poly norm = {1};
    Poly cur = poly_mod(F, a, f);
    for (int i = 0; i < d; ++i) {
        norm = poly_mod(F, poly_mul(F, norm, cur), f);
        cur = poly_powmod(F, cur, F.q(), f);
    }
    return poly_powmod(F, norm, (F.q() - 1) / 2, f);
}

// Equal-degree splitting: f monic square-free, all irreducible factors of
// degree d.  Appends the factors to out.
void edf(const Fq& F, const Poly& f, int d, Rng& rng, std::vector<Poly>& out) {
    int n = deg(f);
    if (n == d) {
        out.push_back(f);
        return;
    }
    while (true) {
        Poly a(n, 0);
        for (int i = 0; i < n; ++i) a[i] = fel(rng.below(F.q()));
        trim(a);
        if (deg(a) < 1) continue;
        Poly g = poly_gcd(F, a, f);
        if (deg(g) > 0 && deg(g) < n) {
            edf(F, g, d, rng, out);
            edf(F, poly_divmod(F, f, g).first, d, rng, out);
            return;
        }
        Poly b;
        if (F.p() == 2) {
            // trace map over F_2: sum of a^(2^i), i < k*d
            b = {};
            Poly cur = poly_mod(F, a, f);
            for (int i = 0; i < F.k() * d; ++i) {
                b = poly_add(F, b, cur);
                cur = poly_mod(F, poly_mul(F, cur, cur), f);
            }
        } else {
            b = half_order_power(F, a, d, f);
            b = poly_sub(F, b, Poly{1});
        }
        g = poly_gcd(F, b, f);
        if (deg(g) > 0 && deg(g) < n) {
            edf(F, g, d, rng, out);
            edf(F, poly_divmod(F, f, g).first, d, rng, out);
            return;
        }
    }
}

} // namespace

std::vector<std::pair<Poly, int>> factor_poly(const Fq& F, const Poly& f, Rng& rng) {
    if (f.empty()) throw std::domain_error("factor_poly: zero polynomial");
    std::vector<std::pair<Poly, int>> result;
    Poly g = poly_monic(F, f);
    if (deg(g) == 0) return result;
    std::vector<std::pair<Poly, int>> sqf;
    squarefree_decomp(F, g, 1, sqf);
    for (auto& [part, mult] : sqf) {
        // distinct-degree on the square-free part
        Poly rem = part;
        Poly x = {0, 1};
        Poly h = poly_mod(F, x, rem); // will hold x^(q^d) mod rem
        int d = 0;
        while (deg(rem) > 0) {
            ++d;
            if (2 * d > deg(rem)) {
                result.emplace_back(rem, mult); // what's left is irreducible
                break;
            }
            h = poly_powmod(F, h, F.q(), rem);
            Poly gd = poly_gcd(F, poly_sub(F, h, x), rem);
            if (deg(gd) > 0) {
                std::vector<Poly> irr;
                edf(F, gd, d, rng, irr);
                for (Poly& u : irr) result.emplace_back(std::move(u), mult);
                rem = poly_divmod(F, rem, gd).first;
                h = poly_mod(F, h, rem);
            }
        }
    }
    std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        return a.first < b.first;
    });
    return result;
}

std::vector<fel> poly_roots(const Fq& F, const Poly& f, Rng& rng) {
    std::vector<fel> roots;
    for (auto& [g, e] : factor_poly(F, f, rng))
        if (deg(g) == 1) roots.push_back(F.neg(g[0]));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

bool poly_is_irreducible(const Fq& F, const Poly& f, Rng& rng) {
    if (deg(f) <= 0) return false;
    auto fac = factor_poly(F, f, rng);
    return fac.size() == 1 && fac[0].second == 1 && deg(fac[0].first) == deg(f);
}

} // namespace tilt
