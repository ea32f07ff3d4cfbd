#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tiltkit/witt.hpp"

using namespace tiltkit;

TEST_CASE("teichmuller lift basics") {
    WittCtx w = make_witt_ctx(7, 3);
    CHECK(teichmuller(RingElem::one(w.residue_field), w).is_one());
    CHECK(teichmuller(RingElem::zero(w.residue_field), w).is_zero());

    // oracle for q = 5, M = 2: iterate y -> y^5 from the lift 2:
    // 2^5 = 32 = 7 mod 25, 7^5 = 16807 = 7 mod 25, stabilized at 7
    CHECK((16807 % 25) == 7);
    WittCtx w52 = make_witt_ctx(5, 2);
    RingElem lift = teichmuller(RingElem::from_int(w52.residue_field, 2), w52);
    CHECK(lift == RingElem::from_int(w52.realization, 7));

    // the lift is a section of reduction and a q-th root of itself
    for (uint64_t q : {4, 9, 25}) {
        WittCtx ctx = make_witt_ctx(q, 3);
        for (uint64_t i = 0; i < q; ++i) {
            RingElem a = elem_from_index(ctx.residue_field, i);
            RingElem la = teichmuller(a, ctx);
            CHECK(proj_mod_p(la) == a);
            CHECK(la.pow(q) == la);
        }
    }
}

TEST_CASE("teichmuller lift is multiplicative") {
    for (uint64_t q : {4, 9, 25}) {
        WittCtx ctx = make_witt_ctx(q, 3);
        for (uint64_t i = 0; i < q; ++i) {
            for (uint64_t j = 0; j < q; ++j) {
                RingElem a = elem_from_index(ctx.residue_field, i);
                RingElem b = elem_from_index(ctx.residue_field, j);
                CHECK(teichmuller(a * b, ctx) == teichmuller(a, ctx) * teichmuller(b, ctx));
            }
        }
    }
}

TEST_CASE("image of the lift over F_2 excludes -1") {
    for (uint32_t M = 2; M <= 5; ++M) {
        WittCtx w = make_witt_ctx(2, M);
        RingElem zero = teichmuller(RingElem::zero(w.residue_field), w);
        RingElem one = teichmuller(RingElem::one(w.residue_field), w);
        CHECK(zero.is_zero());
        CHECK(one.is_one());
        // the image is {0, 1}; -1 = 2^M - 1 is squared to 1 but never hit
        RingElem minus_one = RingElem::from_int(w.realization, -1);
        CHECK(minus_one.pow(2).is_one());
        CHECK(minus_one != zero);
        CHECK(minus_one != one);
    }
}

TEST_CASE("the two lift routes agree") {
    CHECK(sharp_equals_teichmuller(make_witt_ctx(2, 3)).holds());
    CHECK(sharp_equals_teichmuller(make_witt_ctx(5, 2)).holds());
    CHECK(sharp_equals_teichmuller(make_witt_ctx(9, 3)).holds());
    CHECK(sharp_equals_teichmuller(make_witt_ctx(81, 2)).holds());
    CHECK_THROWS_AS(sharp_equals_teichmuller(make_witt_ctx(121, 2)), Error);
}

TEST_CASE("unique p-th root in the section image") {
    // oracle: the roots of t^2 = 1 in Z/16 are 1, 7, 9, 15
    {
        std::vector<uint64_t> roots;
        for (uint64_t t = 0; t < 16; ++t)
            if (t * t % 16 == 1) roots.push_back(t);
        CHECK(roots == std::vector<uint64_t>{1, 7, 9, 15});
    }
    WittCtx w24 = make_witt_ctx(2, 4);
    PRootResult r = unique_p_root_in_sharp_image(RingElem::one(w24.realization), w24);
    CHECK(r.enumerated);
    CHECK(r.ambient_roots == 4);
    CHECK(r.image_roots == 1);
    CHECK(r.root.is_one());

    // a = 0: the unique root is 0
    PRootResult rz = unique_p_root_in_sharp_image(RingElem::zero(w24.realization), w24);
    CHECK(rz.root.is_zero());
    CHECK(rz.image_roots == 1);

    // q = 5, M = 2, a = 7 = lift(2): oracle enumeration gives the five
    // ambient roots 2, 7, 12, 17, 22 of t^5 = 7 mod 25
    {
        std::vector<uint64_t> roots;
        for (uint64_t t = 0; t < 25; ++t) {
            uint64_t t5 = (t * t % 25) * (t * t % 25) % 25 * t % 25;
            if (t5 == 7) roots.push_back(t);
        }
        CHECK(roots == std::vector<uint64_t>{2, 7, 12, 17, 22});
    }
    WittCtx w52 = make_witt_ctx(5, 2);
    PRootResult r7 = unique_p_root_in_sharp_image(RingElem::from_int(w52.realization, 7), w52);
    CHECK(r7.ambient_roots == 5);
    CHECK(r7.image_roots == 1);
    CHECK(r7.root == RingElem::from_int(w52.realization, 7)); // 2^(1/5) = 2 in F_5

    // 2 reduces to 2 but its lift is 7, so 2 is outside the image
    CHECK_THROWS_AS(
        unique_p_root_in_sharp_image(RingElem::from_int(w52.realization, 2), w52), Error);
}

TEST_CASE("uniqueness by enumeration across small realizations") {
    for (auto [q, M] : {std::pair<uint64_t, uint32_t>{2, 5}, {3, 3}, {4, 3}, {9, 2}, {25, 2}}) {
        WittCtx w = make_witt_ctx(q, M);
        for (uint64_t i = 0; i < q; ++i) {
            RingElem a = teichmuller(elem_from_index(w.residue_field, i), w);
            PRootResult r = unique_p_root_in_sharp_image(a, w);
            CHECK(r.enumerated);
            CHECK(r.image_roots == 1);
            CHECK(r.root.pow(w.realization->p) == a);
        }
    }
}

TEST_CASE("witt context records its modulus") {
    WittCtx w = make_witt_ctx(9, 3);
    CHECK(w.realization->kind == RingKind::WittUnramified);
    CHECK(w.realization->minpoly.size() == 3); // monic quadratic
    CHECK(w.residue_field->minpoly == w.realization->minpoly);
    CheckReport rep = sharp_equals_teichmuller(w);
    bool has_modulus = false;
    for (const auto& [k, v] : rep.data)
        if (k == "modulus" && !v.empty()) has_modulus = true;
    CHECK(has_modulus);
}
