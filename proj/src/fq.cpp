#include "fq.hpp"

#include <algorithm>
#include <numeric>

namespace tilt {
namespace {

// Dense polynomials over the prime field F_p, used only while building a
// field context: coefficient vectors, ascending, entries in [0,p).

using PPoly = std::vector<int>;

void ptrim(PPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& f, int p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    // reduce by monic f
    int df = int(f.size()) - 1;
    for (int i = int(c.size()) - 1; i >= df; --i) {
        int t = c[i];
        if (t == 0) continue;
        c[i] = 0;
        for (int j = 0; j < df; ++j)
            c[i - df + j] = ((c[i - df + j] - t * f[j]) % p + p * p) % p;
    }
    c.resize(df);
    PPoly r(c.begin(), c.end());
    ptrim(r);
    return r;
}

PPoly ppowmod(PPoly base, long long e, const PPoly& f, int p) {
    PPoly r = {1};
    while (e > 0) {
        if (e & 1) r = pmulmod(r, base, f, p);
        base = pmulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

PPoly pgcd(PPoly a, PPoly b, int p) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        // a mod b with b made monic on the fly
        int lb = b.back();
        int lbinv = 1;
        for (int i = 1; i < p; ++i)
            if (lb * i % p == 1) lbinv = i;
        while (a.size() >= b.size() && !a.empty()) {
            int t = a.back() * lbinv % p;
            int shift = int(a.size()) - int(b.size());
            for (size_t j = 0; j < b.size(); ++j)
                a[shift + j] = ((a[shift + j] - t * b[j]) % p + p * p) % p;
            ptrim(a);
        }
        std::swap(a, b);
    }
    return a;
}

bool is_irreducible(const PPoly& f, int p) {
    int k = int(f.size()) - 1;
    if (k == 1) return true;
    // x^(p^k) == x mod f, and gcd(x^(p^(k/d)) - x, f) = 1 for prime d | k
    auto frob_iter = [&](int times) {
        PPoly r = {0, 1};
        for (int i = 0; i < times; ++i) r = ppowmod(r, p, f, p);
        return r;
    };
    PPoly xqk = frob_iter(k);
    PPoly x = {0, 1};
    if (xqk != x) return false;
    for (int d = 2; d <= k; ++d) {
        if (k % d != 0) continue;
        bool prime = true;
        for (int e = 2; e < d; ++e)
            if (d % e == 0) prime = false;
        if (!prime) continue;
        PPoly diff = frob_iter(k / d);
        // diff - x
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = ((diff[1] - 1) % p + p) % p;
        ptrim(diff);
        if (diff.empty()) return false; // x^(p^(k/d)) == x: f splits
        if (pgcd(diff, f, p).size() != 1) return false;
    }
    return true;
}

std::vector<long long> prime_divisors(long long n) {
    std::vector<long long> out;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back(n);
    return out;
}

} // namespace

std::vector<int> default_modulus(int p, int k) {
    // Enumerate monic degree-k polynomials x^k + c_{k-1}x^{k-1} + ... + c_0
    // with the constant coefficient varying fastest, and take the first
    // irreducible one.  Deterministic across runs and platforms.
    long long total = 1;
    for (int i = 0; i < k; ++i) total *= p;
    for (long long n = 0; n < total; ++n) {
        PPoly f(k + 1, 0);
        long long m = n;
        for (int i = 0; i < k; ++i) {
            f[i] = int(m % p);
            m /= p;
        }
        f[k] = 1;
        if (is_irreducible(f, p)) return std::vector<int>(f.begin(), f.end());
    }
    throw std::logic_error("default_modulus: no irreducible polynomial found");
}

Fq::Fq(int p, int k) : Fq(p, k, default_modulus(p, k)) {}

Fq::Fq(int p, int k, std::vector<int> modulus) : p_(p), k_(k), mod_(std::move(modulus)) {
    if (p < 2 || k < 1) throw std::invalid_argument("Fq: need p >= 2, k >= 1");
    for (int d = 2; d < p; ++d)
        if (p % d == 0) throw std::invalid_argument("Fq: p is not prime");
    long long q = 1;
    for (int i = 0; i < k; ++i) {
        q *= p;
        if (q >= 65536) throw std::invalid_argument("Fq: field too large (q >= 2^16)");
    }
    q_ = std::uint32_t(q);
    qm1_ = q_ - 1;
    half_ = p == 2 ? 0 : qm1_ / 2;
    if (int(mod_.size()) != k + 1 || mod_[k] != 1)
        throw std::invalid_argument("Fq: modulus must be monic of degree k");
    for (int& c : mod_) c = (c % p + p) % p;
    PPoly f(mod_.begin(), mod_.end());
    if (!is_irreducible(f, p)) throw std::invalid_argument("Fq: modulus is reducible");
    build_tables();
}

void Fq::build_tables() {
    PPoly f(mod_.begin(), mod_.end());
    auto pack = [&](const PPoly& a) {
        long long v = 0, w = 1;
        for (int i = 0; i < k_; ++i) {
            v += (i < int(a.size()) ? a[i] : 0) * w;
            w *= p_;
        }
        return std::uint32_t(v);
    };
    auto unpack = [&](std::uint32_t v) {
        PPoly a(k_, 0);
        for (int i = 0; i < k_; ++i) {
            a[i] = int(v % p_);
            v /= p_;
        }
        ptrim(a);
        return a;
    };

    // Find a primitive element: the first packed value (>= 2) whose
    // multiplicative order is q - 1.
    auto divisors = prime_divisors(qm1_);
    PPoly g;
    std::uint32_t gpacked = 0;
    for (std::uint32_t n = 2; n < q_; ++n) {
        PPoly a = unpack(n);
        bool prim = true;
        for (long long d : divisors)
            if (ppowmod(a, qm1_ / d, f, p_) == PPoly{1}) {
                prim = false;
                break;
            }
        if (prim) {
            g = a;
            gpacked = n;
            break;
        }
    }
    if (g.empty() && qm1_ == 1) { // F_2: the unit group is trivial
        g = {1};
        gpacked = 1;
    }
    if (g.empty()) throw std::logic_error("Fq: no primitive element found");
    if (k_ == 1) smallest_prim_root_ = int(gpacked);

    exp_.assign(qm1_, 0);
    log_.assign(q_, 0);
    PPoly cur = {1};
    for (std::uint32_t n = 0; n < qm1_; ++n) {
        exp_[n] = pack(cur);
        log_[exp_[n]] = fel(n + 1);
        cur = pmulmod(cur, g, f, p_);
    }

    zech_.assign(qm1_, -1);
    for (std::uint32_t n = 0; n < qm1_; ++n) {
        std::uint32_t v = exp_[n];
        std::uint32_t c0 = v % p_;
        std::uint32_t s = v - c0 + (c0 + 1) % p_; // add 1 in the constant digit
        zech_[n] = s == 0 ? -1 : std::int32_t(log_[s]) - 1;
    }
}

fel Fq::pow(fel a, long long e) const {
    if (a == 0) {
        if (e <= 0) throw std::domain_error("Fq::pow: 0^e with e <= 0");
        return 0;
    }
    long long n = (long long)(a - 1) * (e % qm1_) % qm1_;
    if (n < 0) n += qm1_;
    return fel(n + 1);
}

fel Fq::frobenius(fel a, int times) const {
    if (a == 0) return 0;
    std::uint64_t n = a - 1;
    for (int i = 0; i < times; ++i) n = n * p_ % qm1_;
    return fel(n + 1);
}

fel Fq::from_coeffs(const std::vector<int>& c) const {
    if (int(c.size()) > k_) throw std::invalid_argument("Fq::from_coeffs: too many coefficients");
    std::uint32_t v = 0, w = 1;
    for (int i = 0; i < k_; ++i) {
        int d = i < int(c.size()) ? ((c[i] % p_) + p_) % p_ : 0;
        v += d * w;
        w *= p_;
    }
    return v == 0 ? fel(0) : log_[v];
}

std::vector<int> Fq::to_coeffs(fel a) const {
    std::uint32_t v = a == 0 ? 0 : exp_[a - 1];
    std::vector<int> c(k_, 0);
    for (int i = 0; i < k_; ++i) {
        c[i] = int(v % p_);
        v /= p_;
    }
    return c;
}

fel Fq::from_int(long long n) const {
    int r = int((n % p_ + p_) % p_);
    return from_coeffs({r});
}

std::string Fq::to_string(fel a) const {
    auto c = to_coeffs(a);
    std::string s = "[";
    for (int i = 0; i < k_; ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + "]";
}

std::vector<fel> Fq::elements() const {
    std::vector<fel> out(q_);
    for (std::uint32_t i = 0; i < q_; ++i) out[i] = fel(i);
    return out;
}

FieldEmbedding::FieldEmbedding(const Fq& from, const Fq& to) : from_(&from), to_(&to) {
    if (from.p() != to.p() || to.k() % from.k() != 0)
        throw std::invalid_argument("FieldEmbedding: no embedding exists");
    // Find the first root of `from`'s modulus in `to`.
    fel root = 0;
    bool found = false;
    const auto& m = from.modulus();
    for (std::uint32_t code = 0; code < to.q(); ++code) {
        fel x = fel(code);
        fel acc = to.from_int(m.back());
        for (int i = int(m.size()) - 2; i >= 0; --i)
            acc = to.add(to.mul(acc, x), to.from_int(m[i]));
        if (acc == 0) {
            root = x;
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("FieldEmbedding: modulus has no root in target");
    table_.assign(from.q(), 0);
    for (std::uint32_t code = 0; code < from.q(); ++code) {
        auto c = from.to_coeffs(fel(code));
        fel acc = 0;
        for (int i = from.k() - 1; i >= 0; --i)
            acc = to.add(to.mul(acc, root), to.from_int(c[i]));
        table_[code] = acc;
    }
}

} // namespace tilt
