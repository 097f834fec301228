// Acceptance battery: one pass/fail line per criterion, exit 0 iff all pass.
// Budgets (iteration counts, dimension caps, runtime limits) are pinned here.

#include <chrono>
#include <cstdio>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "conjecture.hpp"
#include "decomp.hpp"
#include "homological.hpp"
#include "module.hpp"
#include "sl2.hpp"
#include "verify.hpp"

using namespace tilt;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::map<std::tuple<int, int, int>, TiltingTable> g_tables;

const TiltingTable& table_for(int p, int k, int r) {
    auto key = std::make_tuple(p, k, r);
    auto it = g_tables.find(key);
    if (it == g_tables.end()) {
        auto F = std::make_shared<const Fq>(p, k);
        it = g_tables.emplace(key, tilting_table(lambda_auto(F, r))).first;
    }
    return it->second;
}

int ipow(int b, int e) {
    int v = 1;
    while (e-- > 0) v *= b;
    return v;
}

// dim T_i for p^(r-1)-1 <= i <= p^r-2 from the p-adic digits of i+1:
// leading digit l' times 2^l times p^(r-1), l = #(non-zero lower digits).
int digit_dim(int p, int r, int i) {
    int v = i + 1, lp = 0, l = 0;
    for (int pos = 0; pos < r; ++pos, v /= p) {
        if (pos == r - 1)
            lp = v % p;
        else if (v % p != 0)
            ++l;
    }
    return lp * (1 << l) * ipow(p, r - 1);
}

struct Criterion {
    int id;
    std::string title;
    bool pass = true;
    std::vector<std::string> details;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            details.push_back(what);
        }
    }
    void time_limit(double elapsed, double limit) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "runtime %.1fs exceeds %.0fs budget", elapsed, limit);
        expect(elapsed < limit, buf);
    }
    void absorb(const SuiteResult& s) {
        for (const auto& f : s.failures) details.push_back(s.name + ": " + f);
        if (!s.pass) pass = false;
    }
};

void criterion_towers(Criterion& c) {
    auto t0 = std::chrono::steady_clock::now();
    const std::tuple<int, int, int> configs[] = {
        {2, 2, 2}, {2, 3, 3}, {3, 2, 2}, {3, 3, 3}, {5, 2, 2}};
    for (auto [p, k, r] : configs) {
        const TiltingTable& t = table_for(p, k, r);
        int pr = ipow(p, r), prm1 = ipow(p, r - 1);
        c.expect(int(t.entries.size()) == pr, "table size wrong");
        for (int i = 0; i < pr; ++i) {
            int d = t.entries[size_t(i)].m.dim;
            if (i <= p - 1) c.expect(d == i + 1, "small-index dim at i=" + std::to_string(i));
            if (i >= prm1 - 1 && i <= pr - 2)
                c.expect(d == digit_dim(p, r, i),
                         "digit-formula dim at (p,r,i)=(" + std::to_string(p) + "," +
                             std::to_string(r) + "," + std::to_string(i) + ")");
        }
        c.expect(is_isomorphic(t.entries[size_t(pr - 1)].m, regular_module(t.lambda.ctx, r)),
                 "T_(p^r-1) is not kE at p=" + std::to_string(p) + " r=" + std::to_string(r));
    }
    c.time_limit(seconds_since(t0), 120.0);
}

void criterion_donkin(Criterion& c) {
    const std::pair<int, int> configs[] = {{2, 3}, {3, 2}};
    for (auto [p, r] : configs) {
        const TiltingTable& t = table_for(p, r, r); // k = r via lambda_auto
        int pr = ipow(p, r);
        for (int i = p - 1; i <= 2 * p - 2; ++i)
            for (int j = 0; i + p * j < pr; ++j) {
                Module rhs = tensor(t.entries[size_t(i)].m,
                                    frobenius_twist(t.entries[size_t(j)].m));
                c.expect(is_isomorphic(t.entries[size_t(i + p * j)].m, rhs),
                         "T_(i+pj) mismatch at (p,r,i,j)=(" + std::to_string(p) + "," +
                             std::to_string(r) + "," + std::to_string(i) + "," +
                             std::to_string(j) + ")");
            }
    }
}

void criterion_suite_over(Criterion& c, const std::string& suite,
                          const std::vector<std::tuple<int, int, int>>& configs,
                          double limit = 0.0) {
    auto t0 = std::chrono::steady_clock::now();
    for (auto [p, k, r] : configs) c.absorb(run_suite(suite, table_for(p, k, r)));
    if (limit > 0.0) c.time_limit(seconds_since(t0), limit);
}

void criterion_carlson(Criterion& c) {
    auto t0 = std::chrono::steady_clock::now();
    const std::tuple<int, int, int> configs[] = {{2, 2, 2}, {3, 2, 2}, {2, 3, 3}};
    for (auto [p, k, r] : configs) {
        const TiltingTable& t = table_for(p, k, r);
        CarlsonReport d1 = carlson_battery(t, 1, 0);
        CarlsonReport d2 = carlson_battery(t, 2, 50, 1);
        std::string at = " at p=" + std::to_string(p) + " r=" + std::to_string(r);
        c.expect(d1.all_allowed, "degree-1 outcome off the allowed list" + at);
        c.expect(d2.total >= 50, "fewer than 50 degree-2 classes" + at);
        c.expect(d2.all_allowed, "degree-2 outcome off the allowed list" + at);
        for (int a : d2.allowed) {
            if (a == -2) continue; // composite S (+) Omega(S), not a listed outcome
            bool seen = d1.histogram.count(a) > 0 || d2.histogram.count(a) > 0;
            c.expect(seen, "listed outcome " + std::to_string(a) + " never realized" + at);
        }
    }
    c.time_limit(seconds_since(t0), 300.0);
}

void criterion_selfext(Criterion& c) {
    SuiteResult s = run_suite("selfext", table_for(3, 2, 2));
    c.absorb(s);
    // The suite recomputes the census; pin the (3,2) list and the count here.
    std::set<int> expected = {3, 4, 5};
    int p = 3, r = 2;
    c.expect(int(expected.size()) == p * r - p - r + 2, "census count formula at (3,2)");
    bool listed = false;
    for (const auto& n : s.notes)
        if (n == "found census: 3 4 5")
            listed = true;
    c.expect(listed, "selfext census note does not report {3,4,5}");
    // Count formula at a second shape.
    SuiteResult s23 = run_suite("selfext", table_for(2, 3, 3));
    c.absorb(s23);
}

void criterion_fuzz(Criterion& c) {
    auto t0 = std::chrono::steady_clock::now();
    const int jobs = 4;
    FuzzReport a = fuzz(2026, 500, "random", 40, table_for(3, 2, 2), "", jobs);
    c.expect(a.candidates == 0, "persisted candidates at (3,2)");
    c.expect(a.in_ideal == 500, "non-candidate iteration not in the ideal at (3,2)");
    FuzzReport b = fuzz(2026, 300, "random", 64, table_for(2, 3, 3), "", jobs);
    c.expect(b.candidates == 0, "persisted candidates at (2,3)");
    c.expect(b.in_ideal == 300, "non-candidate iteration not in the ideal at (2,3)");
    FuzzReport a2 = fuzz(2026, 500, "random", 40, table_for(3, 2, 2), "", 1);
    c.expect(a2.in_ideal == a.in_ideal && a2.candidates == a.candidates,
             "report depends on seed replay / thread count");
    c.time_limit(seconds_since(t0), 900.0);
}

void criterion_p2_complete(Criterion& c) {
    const TiltingTable& t = table_for(2, 2, 2);
    FqPtr F = t.lambda.ctx;
    int reached = 0;
    auto check = [&](const Module& M, const std::string& id) {
        if (M.dim == 0 || M.dim > 6) return;
        ++reached;
        Verdict v = check_membership(M, t, id);
        c.expect(v.status == VerdictStatus::IN_IDEAL, "not in the ideal: " + id);
    };
    for (std::uint64_t s = 0; s < 50; ++s) {
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 4; ++b) {
                check(random_module(s, a, b, t),
                      "random:" + std::to_string(s) + ":" + std::to_string(a) + ":" +
                          std::to_string(b));
                if (a + b <= 6)
                    check(loewy2_module(s, a, b, F, 2),
                          "loewy2:" + std::to_string(s) + ":" + std::to_string(a) + ":" +
                              std::to_string(b));
            }
        for (int d = 1; d <= 2; ++d)
            for (int e = 1; e <= 2; ++e)
                check(uniserial_ext_module(s, d, e, t),
                      "uniserial:" + std::to_string(s) + ":" + std::to_string(d) + ":" +
                          std::to_string(e));
        check(random_cyclic_module(s, 1 + int(s % 3), t), "cyclic:" + std::to_string(s));
    }
    c.expect(reached >= 300, "sampler reached too few small modules: " +
                                 std::to_string(reached));
}

} // namespace

int main() {
    std::vector<Criterion> crits;
    auto add = [&](int id, const std::string& title, auto&& fn) {
        Criterion c{id, title};
        fn(c);
        crits.push_back(std::move(c));
    };

    add(1, "tilting towers build with certified dims; T_(p^r-1) = kE", criterion_towers);
    add(2, "Donkin tensor factorization T_(i+pj) = T_i (x) T_j^(1)", criterion_donkin);
    add(3, "syzygy grid Omega(T_(a+mb)) = T_(a+m(p-2-b))", [](Criterion& c) {
        criterion_suite_over(c, "omega", {{2, 3, 3}, {3, 2, 2}, {3, 3, 3}});
    });
    add(4, "support varieties match the Moore hyperplane law", [](Criterion& c) {
        criterion_suite_over(c, "support", {{3, 2, 2}, {2, 3, 3}}, 60.0);
    });
    add(5, "q=9 fusion rules over F_81", [](Criterion& c) {
        criterion_suite_over(c, "fusion9", {{3, 2, 2}});
    });
    add(6, "Carlson modules: S (x) L_zeta outcomes all on the allowed list",
        criterion_carlson);
    add(7, "Loewy-length-2 modules land in the ideal, confined indices", [](Criterion& c) {
        criterion_suite_over(c, "loewy2", {{2, 2, 2}, {3, 2, 2}, {2, 3, 3}});
    });
    add(8, "uniserial extensions land in the ideal", [](Criterion& c) {
        criterion_suite_over(c, "uniserial", {{2, 2, 2}, {3, 2, 2}, {2, 3, 3}});
    });
    add(9, "tensor power summand censuses", [](Criterion& c) {
        criterion_suite_over(c, "tensorpowers", {{2, 3, 3}, {3, 2, 2}});
    });
    add(10, "self-extension census matches the closed-form index list",
        criterion_selfext);
    add(11, "cyclic scan: S-projective cyclics are exactly T_(lp-1)", [](Criterion& c) {
        criterion_suite_over(c, "cyclic", {{3, 2, 2}});
    });
    add(12, "fuzz: 500@(3,2) + 300@(2,3), zero candidates, deterministic",
        criterion_fuzz);
    add(13, "p=r=2: every reachable module of dim <= 6 is in the ideal",
        criterion_p2_complete);

    int failures = 0;
    for (const auto& c : crits) {
        std::printf("[%s] criterion %2d: %s\n", c.pass ? "PASS" : "FAIL", c.id,
                    c.title.c_str());
        for (const auto& d : c.details) std::printf("         - %s\n", d.c_str());
        failures += c.pass ? 0 : 1;
    }
    std::printf("%d/13 criteria passed\n", 13 - failures);
    return failures == 0 ? 0 : 1;
}
