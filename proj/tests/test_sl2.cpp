#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "decomp.hpp"
#include "homological.hpp"
#include "sl2.hpp"
#include "varieties.hpp"

using namespace tilt;

namespace {

// dims of T_i from the p-adic digits of i+1 (leading digit l', l = number of
// non-zero non-leading digits), valid for p^(r-1)-1 <= i <= p^r-2.
int digit_dim(int p, int r, int i) {
    int v = i + 1;
    std::vector<int> digits;
    while (v > 0) {
        digits.push_back(v % p);
        v /= p;
    }
    REQUIRE(int(digits.size()) == r);
    int lp = digits.back(), l = 0;
    for (size_t d = 0; d + 1 < digits.size(); ++d) l += (digits[d] != 0);
    int prm1 = 1;
    for (int t = 0; t < r - 1; ++t) prm1 *= p;
    return lp * (1 << l) * prm1;
}

} // namespace

TEST_CASE("lambda_auto and nabla") {
    auto F = std::make_shared<const Fq>(3, 2);
    CHECK_THROWS(lambda_auto(F, 3)); // k < r
    Lambda lam = lambda_auto(F, 2);
    CHECK(lam.entries == std::vector<fel>{1, F->gen()});

    // nabla_0 = 1, nabla_1 = V_lambda
    GradedModule n0 = nabla_restricted(0, lam);
    CHECK(n0.m.dim == 1);
    CHECK(n0.m.gens[0].is_zero());
    GradedModule n1 = nabla_restricted(1, lam);
    CHECK(n1.m.dim == 2);
    CHECK(n1.weights == std::vector<int>{1, -1});
    for (int j = 0; j < 2; ++j) {
        CHECK(n1.m.gens[j].at(1, 0) == lam.entries[j]);
        CHECK(n1.m.gens[j].at(0, 1) == 0);
    }
    // delta_i = dual(nabla_i), weights negated
    GradedModule d2 = delta_restricted(2, lam);
    CHECK(d2.weights == std::vector<int>{-2, 0, 2});
    CHECK(is_isomorphic(d2.m, dual(nabla_restricted(2, lam).m)));

    // LemDescSt1: with lambda_1 = 1, X_a acts on St_1 as
    // sum_{c>0} binom(lambda_a, c) X_1^c
    GradedModule st = nabla_restricted(2, lam);
    const Mat& X1 = st.m.gens[0];
    fel la = lam.entries[1];
    fel lt = F->mul(F->mul(la, F->sub(la, 1)), F->inv(F->from_int(2))); // binom(lambda, 2)
    Mat expect = X1.scaled(la) + (X1 * X1).scaled(lt);
    CHECK(st.m.gens[1] == expect);
}

TEST_CASE("tilting table at (3,2)") {
    auto F = std::make_shared<const Fq>(3, 2);
    Lambda lam = lambda_auto(F, 2);
    TiltingTable table = tilting_table(lam);
    REQUIRE(table.entries.size() == 9);
    std::vector<int> dims;
    for (const auto& T : table.entries) dims.push_back(T.m.dim);
    CHECK(dims == std::vector<int>{1, 2, 3, 6, 6, 6, 12, 12, 9});
    for (int i = 3; i <= 7; ++i) CHECK(dims[i] == digit_dim(3, 2, i));
    // top weight i, one-dimensional top weight space
    for (int i = 0; i < 9; ++i) {
        int count = 0, maxw = -1;
        for (int w : table.entries[i].weights) {
            maxw = std::max(maxw, w);
            count += (w == i);
        }
        CHECK(maxw == i);
        CHECK(count == 1);
        validate_graded(table.entries[i]);
    }
    // T_{p^r-1} = kE; self-duality of every entry
    CHECK(is_isomorphic(table.entries[8].m, regular_module(F, 2)));
    for (const auto& T : table.entries) CHECK(is_isomorphic(T.m, dual(T.m)));
    // Donkin: T_{i+pj} = T_i (x) T_j^(1) for p-1 <= i <= 2p-2
    for (int i = 2; i <= 4; ++i)
        for (int j = 0; i + 3 * j <= 8; ++j)
            CHECK(is_isomorphic(table.entries[i + 3 * j].m,
                                tensor(table.entries[i].m, frobenius_twist(table.entries[j].m))));
    // steinberg accessor
    CHECK(steinberg(table, 0).dim == 1);
    CHECK(steinberg(table, 1).dim == 3);
    CHECK(is_isomorphic(steinberg(table, 2), regular_module(F, 2)));
    CHECK(is_isomorphic(steinberg(table, 1), steinberg_tensor_model(lam)));
    CHECK_THROWS(steinberg(table, 3));
    // cyclicity of the steinbergs
    for (int j = 0; j <= 2; ++j) CHECK(is_cyclic(steinberg(table, j)));
    // Omega grid: omega(T_{a+3b}) = T_{a+3(1-b)} for 2 <= a <= 4, 0 <= b <= 1
    for (int a = 2; a <= 4; ++a)
        for (int b = 0; b <= 1; ++b)
            CHECK(is_isomorphic(omega(table.entries[a + 3 * b].m), table.entries[a + 3 * (1 - b)].m));
}

TEST_CASE("tilting table at (2,2)") {
    auto F = std::make_shared<const Fq>(2, 2);
    TiltingTable table = tilting_table(lambda_auto(F, 2));
    std::vector<int> dims;
    for (const auto& T : table.entries) dims.push_back(T.m.dim);
    // (the digit formula gives dim T_2 = 4 here: V (x) V^(1) is already free)
    CHECK(dims == std::vector<int>{1, 2, 4, 4});
    for (int i = 1; i <= 2; ++i) CHECK(dims[i] == digit_dim(2, 2, i));
    CHECK(is_isomorphic(table.entries[3].m, regular_module(F, 2)));
}

TEST_CASE("xi element") {
    auto F = std::make_shared<const Fq>(3, 2);
    Lambda lam = lambda_auto(F, 2);
    TiltingTable table = tilting_table(lam);
    std::vector<fel> xi = xi_element(table);
    // xi annihilates S (also enforced inside xi_element)
    Module S = steinberg_tensor_model(lam);
    CHECK(act_element(S, xi).is_zero());
    // Powxi: on W = S (x) St_1^(1), xi^(i-1) v_0 = e_1 (x) e_i in the
    // cyclic basis e_{i+1} = X_1^i e_1
    Module st = steinberg_tensor_model(lam); // r = 2: this is St_1 itself
    Module W = tensor(st, frobenius_twist(st));
    Mat X = act_element(W, xi);
    Mat v(*F, W.dim, 1);
    v.at(0, 0) = 1;
    for (int i = 1; i <= 3; ++i) {
        Mat img = mat_pow(X, i - 1) * v;
        for (int t = 0; t < W.dim; ++t) CHECK(img.at(t, 0) == (t == i - 1 ? 1 : 0));
    }
    CHECK((X * X * X).is_zero());
}

TEST_CASE("s_mu family") {
    auto F = std::make_shared<const Fq>(3, 4); // F_81 so fusion-scale scalars exist
    fel la = F->gen();
    CHECK_THROWS(s_mu(F, F->from_int(2), 0)); // lambda in F_3
    Module S0 = s_mu(F, la, 0);
    // S(0) = St_1 for the embedding [1:lambda]
    Lambda lam{F, {1, la}};
    CHECK(is_isomorphic(S0, nabla_restricted(2, lam).m));
    // dual(S(mu)) = S(-mu); support is always {[lambda : -1]}
    ProjPoint pt = normalize_point(F, {la, F->neg(1)});
    for (fel mu : {fel(0), fel(1), la, F->mul(la, la)}) {
        Module Smu = s_mu(F, la, mu);
        CHECK(is_isomorphic(dual(Smu), s_mu(F, la, F->neg(mu))));
        SupportSet supp = support_points(Smu);
        REQUIRE(supp.points.size() == 1);
        CHECK(supp.points[0] == pt);
    }
}

TEST_CASE("n_family") {
    auto F = std::make_shared<const Fq>(3, 4);
    fel la = F->gen();
    Rng rng(11);
    CHECK_THROWS(n_family(F, la, 3, 0));
    for (fel mu : {fel(0), la}) {
        Module N0 = n_family(F, la, 0, mu);
        Module N1 = n_family(F, la, 1, mu);
        Module N2 = n_family(F, la, 2, mu);
        CHECK(is_cyclic(N0));
        CHECK(!is_cyclic(N1));
        CHECK(!is_cyclic(N2));
        Rng r1 = rng.split(), r2 = rng.split();
        CHECK(max_cyclic_submodule_dim(N1, r1, 200) == 5);
        CHECK(max_cyclic_submodule_dim(N2, r2, 200) == 4);
    }
    // identifications with tilting modules under [1:lambda]
    Lambda lam{F, {1, la}};
    TiltingTable table = tilting_table(lam);
    CHECK(is_isomorphic(n_family(F, la, 2, 0), table.entries[3].m));
    CHECK(is_isomorphic(n_family(F, la, 1, 0), table.entries[4].m));
    CHECK(is_isomorphic(n_family(F, la, 0, 0), table.entries[5].m));
}

TEST_CASE("four dimensional products at (2,3)") {
    auto F = std::make_shared<const Fq>(2, 3);
    std::vector<FourDimProduct> prods = four_dim_products(F);
    CHECK(!prods.empty());
    int steinbergs = 0;
    for (const auto& P : prods) {
        CHECK(P.M.dim == 4);
        steinbergs += P.steinberg_form;
    }
    // V (x) V^(1) for V = V_lambda over the 72 points with F_2-independent
    // coordinate... at least the auto-lambda one must appear
    CHECK(steinbergs > 0);
    // the St_2 restriction: compare one steinberg_form entry against the table
    Lambda lam = lambda_auto(F, 3);
    TiltingTable table = tilting_table(lam);
    const Module& S = steinberg(table, 2);
    bool found = false;
    for (const auto& P : prods)
        if (P.steinberg_form && is_isomorphic(P.M, S)) found = true;
    CHECK(found);
    // dim End = 4 throughout
    for (size_t t = 0; t < prods.size(); t += 7) CHECK(end_algebra(prods[t].M).dim() == 4);
}
