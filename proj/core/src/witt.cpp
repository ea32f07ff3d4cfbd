#include "tiltkit/witt.hpp"

#include "tiltkit/tilt.hpp"

namespace tiltkit {

WittCtx make_witt_ctx(uint64_t q, uint32_t M) {
    WittCtx c;
    c.q = q;
    c.M = M;
    c.realization = make_witt_ring(q, M);
    c.residue_field = make_finite_field(q);
    return c;
}

namespace {

RingElem lift_to_realization(const RingElem& a, const WittCtx& ctx) {
    if (!(*a.ctx() == *ctx.residue_field))
        fail(ErrorCode::CtxMismatch, "element does not live in the residue field");
    return RingElem(ctx.realization, a.coeffs());
}

RingElem project_to_residue(const RingElem& a, const WittCtx& ctx) {
    std::vector<uint64_t> v(a.coeffs());
    for (auto& x : v) x %= ctx.realization->p;
    return RingElem(ctx.residue_field, std::move(v));
}

} // namespace

RingElem teichmuller(const RingElem& a, const WittCtx& ctx) {
    RingElem y = lift_to_realization(a, ctx);
    // stabilizes after at most M-1 steps; run to M for a verified fixed point
    for (uint32_t i = 0; i < ctx.M; ++i) {
        RingElem next = y.pow(ctx.q);
        if (next == y) return y;
        y = next;
    }
    RingElem fixed = y.pow(ctx.q);
    if (fixed != y) fail(ErrorCode::BadParameter, "teichmuller iteration failed to stabilize");
    return y;
}

CheckReport sharp_equals_teichmuller(const WittCtx& ctx) {
    CheckReport rep;
    rep.refs = {"multiplicative-section-equals-teichmuller"};
    rep.bound("q", static_cast<long long>(ctx.q));
    rep.bound("M", ctx.M);
    rep.datum("modulus", RingElem(ctx.realization, ctx.realization->minpoly).str());
    if (ctx.q > 81 || ctx.M > 6)
        fail(ErrorCode::TooLarge, "sharp_equals_teichmuller is bounded to q <= 81, M <= 6");

    uint32_t depth = ctx.M >= 1 ? ctx.M - 1 : 0;
    for (uint64_t i = 0; i < ctx.q; ++i) {
        RingElem a = elem_from_index(ctx.residue_field, i);
        // compatible system of Frobenius inverses a, a^(1/p), ..., a^(1/p^depth)
        std::vector<RingElem> approx;
        RingElem r = a;
        approx.push_back(lift_to_realization(r, ctx));
        for (uint32_t n = 0; n < depth; ++n) {
            auto pre = frobenius_preimage(r);
            if (!pre) fail(ErrorCode::BadParameter, "finite field lost a Frobenius preimage");
            r = *pre;
            approx.push_back(lift_to_realization(r, ctx));
        }
        auto [via_tilt, prec] = limit_pth_powers(ctx.realization, approx);
        RingElem via_iteration = teichmuller(a, ctx);
        if (!congruent_mod_p_pow(via_tilt, via_iteration, prec) || prec != ctx.M) {
            rep.verdict = CheckReport::Verdict::Fails;
            rep.witness = "a = " + a.str() + ": tilt route " + via_tilt.str() +
                          " != iteration route " + via_iteration.str();
            return rep;
        }
    }
    rep.notes = "all " + std::to_string(ctx.q) + " residues lift identically along both routes";
    return rep;
}

PRootResult unique_p_root_in_sharp_image(const RingElem& a, const WittCtx& ctx, uint64_t enum_cap) {
    if (!(*a.ctx() == *ctx.realization))
        fail(ErrorCode::CtxMismatch, "element does not live in the Witt realization");
    RingElem abar = project_to_residue(a, ctx);
    if (teichmuller(abar, ctx) != a)
        fail(ErrorCode::NotInImage, "element " + a.str() + " is not a multiplicative lift");

    auto root_residue = frobenius_preimage(abar);
    if (!root_residue) fail(ErrorCode::BadParameter, "finite field lost a Frobenius preimage");
    PRootResult res{teichmuller(*root_residue, ctx)};
    if (res.root.pow(ctx.realization->p) != a)
        fail(ErrorCode::BadParameter, "computed root fails verification");

    if (auto size = ctx.realization->size_capped(enum_cap)) {
        res.enumerated = true;
        for (uint64_t i = 0; i < *size; ++i) {
            RingElem t = elem_from_index(ctx.realization, i);
            if (t.pow(ctx.realization->p) == a) {
                ++res.ambient_roots;
                if (teichmuller(project_to_residue(t, ctx), ctx) == t) ++res.image_roots;
            }
        }
    }
    return res;
}

} // namespace tiltkit
