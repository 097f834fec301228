#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "decomp.hpp"

using namespace tilt;

namespace {

Module steinberg1_32(FqPtr F) {
    const Fq& Q = *F;
    fel t = Q.gen();
    Mat J(Q, 3, 3), J2(Q, 3, 3);
    J.at(1, 0) = J.at(2, 1) = 1;
    J2.at(2, 0) = 1;
    Mat N2 = J.scaled(t) + J2.scaled(Q.sub(t, Q.mul(t, t)));
    return make_module(F, 2, {J, N2});
}

Module v_lambda(FqPtr F, std::vector<fel> lam) {
    std::vector<Mat> gens;
    for (fel l : lam) {
        Mat N(*F, 2, 2);
        N.at(1, 0) = l;
        gens.push_back(std::move(N));
    }
    return make_module(F, int(lam.size()), std::move(gens));
}

} // namespace

TEST_CASE("end algebra dimensions and commutativity") {
    auto F = std::make_shared<const Fq>(3, 2);
    CHECK(end_algebra(trivial_module(F, 2)).dim() == 1);
    Module S = steinberg1_32(F);
    EndAlgebra E = end_algebra(S);
    CHECK(E.dim() == 3); // p^(r-1)
    for (const Mat& a : E.basis)
        for (const Mat& b : E.basis) CHECK(a * b == b * a);
}

TEST_CASE("algebra radicals of local algebras have codimension 1") {
    auto F = std::make_shared<const Fq>(3, 2);
    Rng rng(2);
    CHECK(algebra_radical(end_algebra(trivial_module(F, 2)), rng).empty());
    Module S = steinberg1_32(F);
    auto radS = algebra_radical(end_algebra(S), rng);
    CHECK(int(radS.size()) == 2); // codim 1 in a 3-dim local algebra
    for (const Mat& m : radS) CHECK(mat_pow(m, S.dim).is_zero());
    Module kE = regular_module(F, 2);
    CHECK(int(algebra_radical(end_algebra(kE), rng).size()) == kE.dim - 1);
}

TEST_CASE("fitting split") {
    auto F = std::make_shared<const Fq>(2, 2);
    Rng rng(5);
    Module kE = regular_module(F, 2);
    Module M = direct_sum(trivial_module(F, 2), kE);
    // identity endomorphism: no split
    CHECK(fitting_split(M, Mat::identity(*F, M.dim), rng).size() == 1);
    // projection onto the trivial summand: idempotent, splits 1 | kE
    Mat e(*F, M.dim, M.dim);
    e.at(0, 0) = 1;
    auto parts = fitting_split(M, e, rng);
    REQUIRE(parts.size() == 2);
    CHECK(std::min(parts[0].dim, parts[1].dim) == 1);
    CHECK(std::max(parts[0].dim, parts[1].dim) == 4);
}

TEST_CASE("indecomposable decomposition basics") {
    auto F = std::make_shared<const Fq>(3, 2);
    Module kE = regular_module(F, 2);
    auto rep = indecomposable_decomposition(kE, 1);
    REQUIRE(rep.summands.size() == 1);
    CHECK(rep.summands[0].second == 1);
    CHECK(rep.summands[0].first.dim == 9);

    Module one = trivial_module(F, 2);
    auto rep2 = indecomposable_decomposition(direct_sum(one, one), 1);
    REQUIRE(rep2.summands.size() == 1);
    CHECK(rep2.summands[0].second == 2);
    CHECK(rep2.summands[0].first.dim == 1);

    // Krull-Schmidt doubling
    Module S = steinberg1_32(F);
    Module M = direct_sum(S, kE);
    auto a = indecomposable_decomposition(M, 7);
    auto b = indecomposable_decomposition(direct_sum(M, M), 9);
    REQUIRE(a.summands.size() == b.summands.size());
    for (size_t i = 0; i < a.summands.size(); ++i) {
        CHECK(a.summands[i].first.dim == b.summands[i].first.dim);
        CHECK(2 * a.summands[i].second == b.summands[i].second);
    }
}

TEST_CASE("local ring property of certified summands") {
    auto F = std::make_shared<const Fq>(3, 2);
    Module S = steinberg1_32(F);
    Rng rng(3);
    LocalCert cert = certify_local(S, rng);
    REQUIRE(cert.ok);
    // every sampled endomorphism is invertible or nilpotent
    for (int t = 0; t < 32; ++t) {
        Mat theta(*F, S.dim, S.dim);
        for (const Mat& b : cert.endo) theta = theta + b.scaled(fel(rng.below(F->q())));
        bool invertible = rank(theta) == S.dim;
        bool nilpotent = mat_pow(theta, S.dim).is_zero();
        CHECK(invertible != nilpotent);
    }
}

TEST_CASE("is_isomorphic and split_summand") {
    auto F = std::make_shared<const Fq>(3, 2);
    Module S = steinberg1_32(F);
    Module kE = regular_module(F, 2);
    Module one = trivial_module(F, 2);
    CHECK(is_isomorphic(S, S));
    CHECK(is_isomorphic(S, dual(S))); // S(0)* = S(-0)
    CHECK(!is_isomorphic(S, kE));
    CHECK(!is_isomorphic(one, trivial_module(std::make_shared<const Fq>(3, 2), 2)) == false);

    auto split = split_summand(one, direct_sum(one, kE));
    REQUIRE(split.has_value());
    CHECK(split->complement.dim == 9);
    CHECK(is_isomorphic(split->complement, kE));
    CHECK(!split_summand(S, kE).has_value());

    // idempotent property of the witness
    Mat e = split->f * split->g;
    CHECK(e * e == e);
}

TEST_CASE("peel_against") {
    auto F = std::make_shared<const Fq>(2, 2);
    Module one = trivial_module(F, 2);
    Module kE = regular_module(F, 2);
    Module V = v_lambda(F, {1, F->gen()});
    Module M = direct_sum(direct_sum(one, V), direct_sum(kE, V));
    std::vector<Module> lib = {one, V, kE};
    auto [counts, rem] = peel_against(M, lib);
    CHECK(counts == std::vector<int>{1, 2, 1});
    CHECK(rem.dim == 0);
    // remainder truly has no library summand
    auto [counts2, rem2] = peel_against(direct_sum(V, V), {one, kE});
    CHECK(counts2 == std::vector<int>{0, 0});
    CHECK(rem2.dim == 4);
}

TEST_CASE("determinism of decomposition reports") {
    auto F = std::make_shared<const Fq>(3, 2);
    Module M = direct_sum(steinberg1_32(F), trivial_module(F, 2));
    auto a = indecomposable_decomposition(M, 42);
    auto b = indecomposable_decomposition(M, 42);
    REQUIRE(a.summands.size() == b.summands.size());
    for (size_t i = 0; i < a.summands.size(); ++i) {
        CHECK(a.summands[i].second == b.summands[i].second);
        for (int g = 0; g < 2; ++g)
            CHECK(a.summands[i].first.gens[g] == b.summands[i].first.gens[g]);
    }
}
