#include "tiltkit/tilt.hpp"

#include <algorithm>
#include <sstream>

namespace tiltkit {

namespace {

void require_ctx(const TiltElem& x, const TiltElem& y) {
    if (!(*x.ctx == *y.ctx))
        fail(ErrorCode::CtxMismatch, "tilt elements belong to different ring contexts");
}

uint32_t default_depth(const RingCtx& c) {
    return c.mixed_char() ? (c.M - 1) : (c.K + 1);
}

// system of depth L parametrized by its deepest component
std::vector<RingElem> power_chain(const RingElem& deepest, uint32_t depth) {
    std::vector<RingElem> seq(depth + 1, deepest);
    for (uint32_t n = depth; n-- > 0;) seq[n] = seq[n + 1].pow(deepest.ctx()->p);
    return seq;
}

} // namespace

TiltElem tilt_zero(const RingCtxPtr& ctx, uint32_t depth) {
    return TiltElem{ctx, std::vector<RingElem>(depth + 1, RingElem::zero(ctx)), ctx->M};
}

TiltElem tilt_one(const RingCtxPtr& ctx, uint32_t depth) {
    return TiltElem{ctx, std::vector<RingElem>(depth + 1, RingElem::one(ctx)), ctx->M};
}

TiltElem tilt_lift(const RingCtxPtr& ctx, std::vector<RingElem> seq) {
    if (seq.empty()) fail(ErrorCode::BadParameter, "tilt_lift needs a nonempty sequence");
    for (const auto& a : seq)
        if (!(*a.ctx() == *ctx)) fail(ErrorCode::CtxMismatch, "sequence element from another context");
    for (size_t n = 0; n + 1 < seq.size(); ++n) {
        RingElem defect = seq[n + 1].pow(ctx->p) - seq[n];
        if (!defect.is_zero()) {
            std::ostringstream os;
            os << "incompatible sequence at index " << n << ": a_" << n + 1 << "^p - a_" << n
               << " has p-adic valuation " << p_valuation(defect);
            fail(ErrorCode::Incompatible, os.str());
        }
    }
    return TiltElem{ctx, std::move(seq), ctx->M};
}

std::pair<RingElem, uint32_t> limit_pth_powers(const RingCtxPtr& ctx,
                                               const std::vector<RingElem>& approximants) {
    if (approximants.empty())
        fail(ErrorCode::BadParameter, "limit_pth_powers needs at least one approximant");
    for (size_t k = 0; k + 1 < approximants.size(); ++k) {
        RingElem defect = approximants[k + 1].pow(ctx->p) - approximants[k];
        if (!divisible_by_p_pow(defect, 1)) {
            std::ostringstream os;
            os << "approximants are not a p-power Cauchy chain at index " << k;
            fail(ErrorCode::NotCauchy, os.str());
        }
    }
    uint32_t L = static_cast<uint32_t>(approximants.size()) - 1;
    RingElem limit = approximants[L];
    for (uint32_t i = 0; i < L; ++i) limit = limit.pow(ctx->p);
    return {limit, std::min<uint32_t>(L + 1, ctx->M)};
}

std::pair<RingElem, uint32_t> sharp(const TiltElem& x) {
    return {x.seq[0], std::min<uint32_t>(x.depth() + 1, x.prec)};
}

TiltElem tilt_add(const TiltElem& x, const TiltElem& y, std::optional<uint32_t> target_prec) {
    require_ctx(x, y);
    const RingCtxPtr& ctx = x.ctx;
    uint32_t D = std::min(x.depth(), y.depth());
    if (ctx->char_p()) {
        // Frobenius is additive, so every limit is a constant chain
        std::vector<RingElem> seq;
        seq.reserve(D + 1);
        for (uint32_t n = 0; n <= D; ++n) seq.push_back(x.seq[n] + y.seq[n]);
        return TiltElem{ctx, std::move(seq), std::min(x.prec, y.prec)};
    }
    uint32_t max_prec = std::min<uint32_t>(ctx->M, D + 1);
    uint32_t tau = target_prec.value_or(max_prec);
    if (tau < 1 || tau > max_prec) {
        std::ostringstream os;
        os << "target precision " << tau << " unreachable at depth " << D
           << "; maximum achievable is " << max_prec;
        fail(ErrorCode::InsufficientDepth, os.str());
    }
    uint32_t r = tau - 1;
    std::vector<RingElem> seq;
    seq.reserve(D - r + 1);
    for (uint32_t n = 0; n + r <= D; ++n) {
        std::vector<RingElem> approx;
        approx.reserve(r + 1);
        for (uint32_t m = 0; m <= r; ++m) approx.push_back(x.seq[n + m] + y.seq[n + m]);
        seq.push_back(limit_pth_powers(ctx, approx).first);
    }
    return TiltElem{ctx, std::move(seq), std::min({tau, x.prec, y.prec})};
}

TiltElem tilt_mul(const TiltElem& x, const TiltElem& y) {
    require_ctx(x, y);
    uint32_t D = std::min(x.depth(), y.depth());
    std::vector<RingElem> seq;
    seq.reserve(D + 1);
    for (uint32_t n = 0; n <= D; ++n) seq.push_back(x.seq[n] * y.seq[n]);
    return TiltElem{x.ctx, std::move(seq), std::min(x.prec, y.prec)};
}

TiltElem tilt_neg(const TiltElem& x) {
    if (x.ctx->p == 2) return x;
    std::vector<RingElem> seq;
    seq.reserve(x.seq.size());
    for (const auto& a : x.seq) seq.push_back(-a);
    return TiltElem{x.ctx, std::move(seq), x.prec};
}

TiltElem tilt_frobenius(const TiltElem& x) {
    std::vector<RingElem> seq;
    seq.reserve(x.seq.size());
    for (const auto& a : x.seq) seq.push_back(a.pow(x.ctx->p));
    return TiltElem{x.ctx, std::move(seq), x.prec};
}

TiltElem tilt_frobenius_inv(const TiltElem& x) {
    if (x.depth() == 0)
        fail(ErrorCode::InsufficientDepth, "frobenius inverse needs depth >= 1");
    std::vector<RingElem> seq(x.seq.begin() + 1, x.seq.end());
    return TiltElem{x.ctx, std::move(seq), x.prec};
}

bool tilt_equal_at(const TiltElem& x, const TiltElem& y, uint32_t r) {
    require_ctx(x, y);
    uint32_t D = std::min(x.depth(), y.depth());
    for (uint32_t n = 0; n <= D; ++n)
        if (!congruent_mod_p_pow(x.seq[n], y.seq[n], r)) return false;
    return true;
}

bool tilt_equal_certified(const TiltElem& x, const TiltElem& y) {
    require_ctx(x, y);
    uint32_t D = std::min(x.depth(), y.depth());
    uint32_t prec = std::min(x.prec, y.prec);
    for (uint32_t n = 0; n <= D; ++n) {
        uint32_t r = std::min(prec, D - n + 1);
        if (!congruent_mod_p_pow(x.seq[n], y.seq[n], r)) return false;
    }
    return true;
}

bool tilt_is_zero_certified(const TiltElem& x) {
    return tilt_equal_certified(x, tilt_zero(x.ctx, x.depth()));
}

// ---------------------------------------------------------------------------
// enumeration-backed whole-context checks

namespace {

struct SystemEnum {
    RingCtxPtr ctx;
    uint32_t depth;
    uint32_t slack;
    uint64_t size;

    /// Slack-filtered systems of the given depth: deepest components that
    /// are p^slack-th powers. Deduplicated.
    std::vector<RingElem> deepest_components() const {
        std::vector<char> seen(size, 0);
        std::vector<RingElem> out;
        for (uint64_t i = 0; i < size; ++i) {
            RingElem c = elem_from_index(ctx, i);
            RingElem d = c;
            for (uint32_t s = 0; s < slack; ++s) d = d.pow(ctx->p);
            uint64_t idx = elem_to_index(d);
            if (!seen[idx]) {
                seen[idx] = 1;
                out.push_back(d);
            }
        }
        return out;
    }
};

SystemEnum make_enum(const RingCtxPtr& ctx, const TiltEnumOptions& opts) {
    auto size = ctx->size_capped(opts.enum_cap);
    if (!size)
        fail(ErrorCode::TooLarge, "context too large to enumerate compatible systems (cap " +
                                      std::to_string(opts.enum_cap) + ")");
    uint32_t depth = opts.depth.value_or(default_depth(*ctx));
    return SystemEnum{ctx, depth, opts.slack, *size};
}

std::string system_str(const std::vector<RingElem>& seq) {
    std::string s = "(";
    for (size_t i = 0; i < seq.size(); ++i) {
        if (i) s += ", ";
        s += seq[i].str();
    }
    return s + ")";
}

void record_enum_bounds(CheckReport& rep, const SystemEnum& e) {
    rep.bound("depth", e.depth);
    rep.bound("slack", e.slack);
    rep.bound("ring_size", static_cast<long long>(e.size));
}

} // namespace

CheckReport tilt_is_injective_sharp(const RingCtxPtr& ctx, TiltEnumOptions opts) {
    SystemEnum e = make_enum(ctx, opts);
    CheckReport rep;
    rep.refs = {"sharp-injectivity-via-compatible-systems"};
    record_enum_bounds(rep, e);

    // bucket systems by 0-th component, then compare graded representations
    std::vector<std::vector<std::pair<uint64_t, RingElem>>> buckets(e.size);
    for (const RingElem& d : e.deepest_components()) {
        RingElem a0 = d;
        for (uint32_t n = 0; n < e.depth; ++n) a0 = a0.pow(ctx->p);
        buckets[elem_to_index(a0)].emplace_back(elem_to_index(d), d);
    }
    for (auto& bucket : buckets) {
        for (size_t i = 0; i < bucket.size(); ++i) {
            for (size_t j = i + 1; j < bucket.size(); ++j) {
                TiltElem x{ctx, power_chain(bucket[i].second, e.depth), ctx->M};
                TiltElem y{ctx, power_chain(bucket[j].second, e.depth), ctx->M};
                if (!tilt_equal_certified(x, y)) {
                    rep.verdict = CheckReport::Verdict::Fails;
                    rep.witness = system_str(x.seq) + " vs " + system_str(y.seq);
                    rep.notes = "two compatible systems share component 0 but differ "
                                "beyond the certified precision";
                    return rep;
                }
            }
        }
    }
    rep.notes = "no distinct compatible systems share their 0-th component";
    return rep;
}

CheckReport tilt_reduced_check(const RingCtxPtr& ctx, TiltEnumOptions opts) {
    SystemEnum e = make_enum(ctx, opts);
    CheckReport rep;
    rep.refs = {"perfect-implies-reduced"};
    record_enum_bounds(rep, e);

    // nilpotency indices are bounded by deg*M powers of p
    uint32_t steps = 1;
    uint64_t pw = ctx->p;
    while (pw < static_cast<uint64_t>(ctx->deg) * ctx->M && steps < 40) { pw *= ctx->p; ++steps; }

    for (const RingElem& d : e.deepest_components()) {
        TiltElem x{ctx, power_chain(d, e.depth), ctx->M};
        if (tilt_is_zero_certified(x)) continue;
        RingElem dd = d;
        for (uint32_t k = 0; k < steps; ++k) {
            dd = dd.pow(ctx->p);
            TiltElem xp{ctx, power_chain(dd, e.depth), ctx->M};
            if (tilt_is_zero_certified(xp)) {
                rep.verdict = CheckReport::Verdict::Fails;
                rep.witness = system_str(x.seq) + " with x^(p^" + std::to_string(k + 1) + ") = 0";
                return rep;
            }
        }
    }
    rep.notes = "no nonzero nilpotent tilt element";
    return rep;
}

CheckReport tilt_domain_check(const RingCtxPtr& ctx, TiltEnumOptions opts) {
    SystemEnum e = make_enum(ctx, opts);
    CheckReport rep;
    rep.refs = {"tilt-of-domain-is-domain"};
    record_enum_bounds(rep, e);

    std::vector<RingElem> nonzero;
    for (const RingElem& d : e.deepest_components()) {
        TiltElem x{ctx, power_chain(d, e.depth), ctx->M};
        if (!tilt_is_zero_certified(x)) nonzero.push_back(d);
    }
    rep.bound("nonzero_elements", static_cast<long long>(nonzero.size()));
    for (size_t i = 0; i < nonzero.size(); ++i) {
        for (size_t j = i; j < nonzero.size(); ++j) {
            RingElem prod = nonzero[i] * nonzero[j];
            TiltElem xy{ctx, power_chain(prod, e.depth), ctx->M};
            if (tilt_is_zero_certified(xy)) {
                rep.verdict = CheckReport::Verdict::Fails;
                rep.witness = nonzero[i].str() + " * " + nonzero[j].str() + " ~ 0";
                return rep;
            }
        }
    }
    rep.notes = "no zero divisors among certified-nonzero tilt elements";
    return rep;
}

} // namespace tiltkit
