#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "tiltkit/tilt.hpp"

using namespace tiltkit;

namespace {

RingElem rand_elem(std::mt19937_64& rng, const RingCtxPtr& ctx) {
    std::vector<uint64_t> v(ctx->deg);
    for (auto& x : v) x = rng() % ctx->pM;
    return RingElem(ctx, std::move(v));
}

// compatible systems are parametrized by their deepest component
TiltElem rand_tilt(std::mt19937_64& rng, const RingCtxPtr& ctx, uint32_t depth) {
    RingElem deepest = rand_elem(rng, ctx);
    std::vector<RingElem> seq(depth + 1, deepest);
    for (uint32_t n = depth; n-- > 0;) seq[n] = seq[n + 1].pow(ctx->p);
    return tilt_lift(ctx, std::move(seq));
}

TiltElem varpi_flat(const RingCtxPtr& kummer) {
    // (p, x^(p^K / p), ..., x): the p-power-root system of p at full depth
    std::vector<RingElem> seq;
    uint32_t e = kummer->deg;
    for (uint32_t j = 0; j <= kummer->K; ++j) {
        seq.push_back(RingElem::monomial(kummer, 1).pow(e));
        e /= kummer->p;
    }
    return tilt_lift(kummer, std::move(seq));
}

} // namespace

TEST_CASE("tilt_lift validates compatibility") {
    RingCtxPtr z81 = make_zmod(3, 4);
    TiltElem id = tilt_lift(z81, {RingElem::one(z81), RingElem::one(z81), RingElem::one(z81)});
    CHECK(id.depth() == 2);
    CHECK(id.prec == 4);

    RingCtxPtr kummer = make_kummer(3, 4, 2);
    RingElem x = RingElem::monomial(kummer, 1);
    TiltElem vf = tilt_lift(kummer, {RingElem::from_int(kummer, 3), x.pow(3), x});
    CHECK(vf.seq[0] == RingElem::from_int(kummer, 3));

    RingCtxPtr z25 = make_zmod(5, 2);
    // 2^5 = 32 = 7 mod 25, so (2, 2) is not compatible; the defect 5 has
    // valuation 1
    try {
        tilt_lift(z25, {RingElem::from_int(z25, 2), RingElem::from_int(z25, 2)});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Incompatible);
        CHECK(std::string(e.what()).find("index 0") != std::string::npos);
        CHECK(std::string(e.what()).find("valuation 1") != std::string::npos);
    }

    CHECK_THROWS_AS(tilt_lift(z81, {}), Error);
}

TEST_CASE("limit of p-th powers") {
    RingCtxPtr z25 = make_zmod(5, 2);
    auto [v1, c1] = limit_pth_powers(z25, {RingElem::from_int(z25, 2), RingElem::from_int(z25, 2)});
    CHECK(v1 == RingElem::from_int(z25, 7)); // 2^5 = 32 = 7 mod 25
    CHECK(c1 == 2);

    RingCtxPtr z81 = make_zmod(3, 4);
    auto [v2, c2] = limit_pth_powers(
        z81, std::vector<RingElem>(4, RingElem::one(z81)));
    CHECK(v2.is_one());
    CHECK(c2 == 4);

    // 4 = 1 mod 3; the limit is 1^3 = 1 with certificate 2
    auto [v3, c3] = limit_pth_powers(z81, {RingElem::from_int(z81, 4), RingElem::one(z81)});
    CHECK(v3.is_one());
    CHECK(c3 == 2);

    // 1^5 = 1 is not congruent to 0 mod 5
    CHECK_THROWS_AS(
        limit_pth_powers(z25, {RingElem::zero(z25), RingElem::one(z25)}), Error);
}

TEST_CASE("sharp projects to the 0-th component") {
    RingCtxPtr kummer = make_kummer(3, 4, 2);
    TiltElem vf = varpi_flat(kummer);
    auto [value, cert] = sharp(vf);
    CHECK(value == RingElem::from_int(kummer, 3));
    CHECK(cert == 3); // min(depth + 1, M) = min(3, 4)

    RingCtxPtr z25 = make_zmod(5, 2);
    CHECK(sharp(tilt_one(z25, 2)).first.is_one());
    CHECK(sharp(tilt_zero(z25, 2)).first.is_zero());
}

TEST_CASE("tilt addition consumes depth for precision") {
    RingCtxPtr z25 = make_zmod(5, 2);
    TiltElem one = tilt_one(z25, 1);
    TiltElem sum = tilt_add(one, one);
    CHECK(sum.depth() == 0);
    CHECK(sum.prec == 2);
    CHECK(sum.seq[0] == RingElem::from_int(z25, 7)); // limit of (2, 2^5)

    // sharp is not additive: 7 != 2
    CHECK(sharp(sum).first != RingElem::from_int(z25, 2));

    // adding zero returns the element at the certified precision
    std::mt19937_64 rng(21);
    RingCtxPtr z81 = make_zmod(3, 4);
    TiltElem x = rand_tilt(rng, z81, 4);
    TiltElem x0 = tilt_add(x, tilt_zero(z81, 4));
    CHECK(x0.prec == 4); // min(M, D+1) = 4, unchanged from lift
    for (uint32_t n = 0; n <= x0.depth(); ++n) CHECK(x0.seq[n] == x.seq[n]);

    // requesting more precision than depth supports reports the maximum
    try {
        tilt_add(one, one, 5);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InsufficientDepth);
        CHECK(std::string(e.what()).find("maximum achievable is 2") != std::string::npos);
    }
}

TEST_CASE("tilt addition in characteristic p is componentwise") {
    RingCtxPtr series = make_perf_series(2, 1, 3);
    RingElem t = RingElem::monomial(series, 2), half = RingElem::monomial(series, 1);
    TiltElem tb = tilt_lift(series, {t, half});
    TiltElem sum = tilt_add(tb, tb);
    CHECK(sum.depth() == 1); // no depth loss
    CHECK(sum.seq[0].is_zero()); // characteristic 2
    CHECK(sum.seq[1].is_zero());

    RingCtxPtr f9 = make_finite_field(9);
    std::mt19937_64 rng(22);
    for (int i = 0; i < 50; ++i) {
        TiltElem x = rand_tilt(rng, f9, 2), y = rand_tilt(rng, f9, 2);
        TiltElem s = tilt_add(x, y);
        for (uint32_t n = 0; n <= 2; ++n) CHECK(s.seq[n] == x.seq[n] + y.seq[n]);
    }
}

TEST_CASE("tilt multiplication is componentwise") {
    RingCtxPtr kummer = make_kummer(3, 4, 2);
    TiltElem vf = varpi_flat(kummer);
    TiltElem sq = tilt_mul(vf, vf);
    RingElem x = RingElem::monomial(kummer, 1);
    CHECK(sq.seq[0] == RingElem::from_int(kummer, 9));
    CHECK(sq.seq[1] == x.pow(6));
    CHECK(sq.seq[2] == x.pow(2));

    TiltElem id = tilt_one(kummer, 2);
    TiltElem prod = tilt_mul(vf, id);
    for (uint32_t n = 0; n <= 2; ++n) CHECK(prod.seq[n] == vf.seq[n]);

    TiltElem z = tilt_mul(vf, tilt_zero(kummer, 2));
    for (uint32_t n = 0; n <= 2; ++n) CHECK(z.seq[n].is_zero());
}

TEST_CASE("tilt Frobenius is the shift") {
    RingCtxPtr kummer = make_kummer(3, 4, 2);
    TiltElem vf = varpi_flat(kummer);
    TiltElem fr = tilt_frobenius(vf);
    RingElem x = RingElem::monomial(kummer, 1);
    CHECK(fr.depth() == 2);
    CHECK(fr.seq[0] == RingElem::from_int(kummer, 27));
    CHECK(fr.seq[1] == RingElem::from_int(kummer, 3));
    CHECK(fr.seq[2] == x.pow(3));

    std::mt19937_64 rng(23);
    for (const RingCtxPtr& ctx : {make_zmod(3, 4), make_zmod(2, 5), kummer}) {
        for (int i = 0; i < 100; ++i) {
            TiltElem t = rand_tilt(rng, ctx, 3);
            TiltElem round = tilt_frobenius_inv(tilt_frobenius(t));
            CHECK(round.depth() == 2);
            for (uint32_t n = 0; n <= 2; ++n) CHECK(round.seq[n] == t.seq[n]);
            TiltElem round2 = tilt_frobenius(tilt_frobenius_inv(t));
            for (uint32_t n = 0; n <= 2; ++n) CHECK(round2.seq[n] == t.seq[n]);
        }
    }

    // characteristic p: the inverse shifts the root system one level deeper
    RingCtxPtr series = make_perf_series(2, 1, 3);
    TiltElem tb = tilt_lift(series, {RingElem::monomial(series, 2), RingElem::monomial(series, 1)});
    TiltElem inv = tilt_frobenius_inv(tb);
    CHECK(inv.depth() == 0);
    CHECK(inv.seq[0] == RingElem::monomial(series, 1));

    CHECK_THROWS_AS(tilt_frobenius_inv(tilt_one(kummer, 0)), Error);
}

TEST_CASE("monoid-lemma round trip at the certified rate") {
    std::mt19937_64 rng(24);
    for (const RingCtxPtr& ctx : {make_zmod(3, 4), make_zmod(5, 3), make_witt_ring(4, 3)}) {
        RingCtxPtr res = residue_ctx(ctx);
        for (int iter = 0; iter < 200; ++iter) {
            uint32_t L = ctx->M;
            std::vector<RingElem> chain(L + 1, rand_elem(rng, res));
            for (uint32_t n = L; n-- > 0;) chain[n] = chain[n + 1].pow(ctx->p);
            std::vector<RingElem> lifts;
            for (const auto& r : chain) {
                std::vector<uint64_t> v(r.coeffs());
                v.resize(ctx->deg, 0);
                for (auto& c : v) c = (c + ctx->p * (rng() % (ctx->pM / ctx->p))) % ctx->pM;
                lifts.emplace_back(ctx, std::move(v));
            }
            auto [value, cert] = limit_pth_powers(ctx, lifts);
            CHECK(cert == ctx->M);
            CHECK(proj_mod_p(value) == chain[0]);
            // one power of p per refinement step
            RingElem prev = lifts[0];
            for (uint32_t k = 1; k <= L; ++k) {
                RingElem cur = lifts[k];
                for (uint32_t i = 0; i < k; ++i) cur = cur.pow(ctx->p);
                CHECK(congruent_mod_p_pow(cur, prev, k));
                prev = cur;
            }
        }
    }
}

TEST_CASE("precision law: lower-target sums agree with full-target sums") {
    std::mt19937_64 rng(25);
    RingCtxPtr z81 = make_zmod(3, 4);
    for (int iter = 0; iter < 200; ++iter) {
        TiltElem x = rand_tilt(rng, z81, 5), y = rand_tilt(rng, z81, 5);
        // a target-tau sum uses tau-1 refinement steps per component; the
        // values differ from the full-precision sum but must agree mod p^tau
        TiltElem full = tilt_add(x, y); // tau = min(M, 6) = 4, depth 2
        CHECK(full.prec == 4);
        for (uint32_t tau = 1; tau <= 3; ++tau) {
            TiltElem partial = tilt_add(x, y, tau); // depth 6 - tau
            CHECK(partial.prec == tau);
            for (uint32_t n = 0; n <= std::min(partial.depth(), full.depth()); ++n)
                CHECK(congruent_mod_p_pow(partial.seq[n], full.seq[n], tau));
        }
    }
}

TEST_CASE("injectivity of sharp via compatible systems") {
    CheckReport r1 = tilt_is_injective_sharp(make_zmod(2, 3));
    CHECK(r1.holds());
    CheckReport r2 = tilt_is_injective_sharp(make_zmod(5, 2));
    CHECK(r2.holds());

    // depth-1 truncations over F_3[t]/t^2 contain artifact pairs sharing
    // their 0-th component; without the extension filter they are reported
    RingCtxPtr flat = make_perf_series(3, 0, 2);
    TiltEnumOptions raw;
    raw.slack = 0;
    CheckReport r3 = tilt_is_injective_sharp(flat, raw);
    CHECK(r3.fails());
    CHECK(r3.witness.has_value());
    // systems that extend two levels deeper collapse to the constants
    CheckReport r4 = tilt_is_injective_sharp(flat);
    CHECK(r4.holds());

    CHECK_THROWS_AS(tilt_is_injective_sharp(make_zmod(2, 40)), Error);
}

TEST_CASE("reducedness and domain transfer on enumerable contexts") {
    for (const RingCtxPtr& ctx :
         {make_zmod(2, 2), make_zmod(3, 2), make_kummer(2, 2, 1), make_finite_field(4),
          make_perf_series(2, 1, 2)}) {
        CHECK(tilt_reduced_check(ctx).holds());
        CHECK(tilt_domain_check(ctx).holds());
    }
}

TEST_CASE("sharp is multiplicative") {
    std::mt19937_64 rng(26);
    for (const RingCtxPtr& ctx : {make_zmod(5, 2), make_kummer(3, 3, 1), make_witt_ring(9, 2)}) {
        for (int i = 0; i < 200; ++i) {
            TiltElem x = rand_tilt(rng, ctx, 2), y = rand_tilt(rng, ctx, 2);
            CHECK(sharp(tilt_mul(x, y)).first == sharp(x).first * sharp(y).first);
        }
    }
}

TEST_CASE("tilt negation") {
    std::mt19937_64 rng(27);
    RingCtxPtr z25 = make_zmod(5, 2);
    for (int i = 0; i < 100; ++i) {
        TiltElem x = rand_tilt(rng, z25, 2);
        TiltElem n = tilt_neg(x);
        TiltElem sum = tilt_add(x, n);
        CHECK(tilt_is_zero_certified(sum));
    }
    // characteristic 2: negation is the identity
    RingCtxPtr z8 = make_zmod(2, 3);
    TiltElem x = rand_tilt(rng, z8, 2);
    TiltElem n = tilt_neg(x);
    for (uint32_t i = 0; i <= 2; ++i) CHECK(n.seq[i] == x.seq[i]);
}
