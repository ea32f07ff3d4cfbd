#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tiltkit/arith.hpp"
#include "tiltkit/report.hpp"

namespace tiltkit {

/// A finite-depth element of the inverse limit lim_{x -> x^p} A, stored as
/// the sequence (a_0, ..., a_D) with a_{n+1}^p = a_n certified mod p^prec.
/// Characteristic-p contexts use M = 1, where "mod p^1" means exact
/// equality (pA = 0), so prec = 1 encodes an exact relation there.
struct TiltElem {
    RingCtxPtr ctx;
    std::vector<RingElem> seq; // a_0 .. a_D
    uint32_t prec = 1;

    uint32_t depth() const { return static_cast<uint32_t>(seq.size()) - 1; }
    const RingElem& component(uint32_t n) const { return seq[n]; }
};

TiltElem tilt_zero(const RingCtxPtr& ctx, uint32_t depth);
TiltElem tilt_one(const RingCtxPtr& ctx, uint32_t depth);

/// Validates a_{n+1}^p = a_n in the ring (equality is congruence mod p^M at
/// the ring's own precision) and wraps the sequence with prec = M.
/// Throws Incompatible naming the first failing index and the p-adic
/// valuation of the defect.
TiltElem tilt_lift(const RingCtxPtr& ctx, std::vector<RingElem> seq);

/// The Cauchy-limit primitive: given approximants c_0, ..., c_L with
/// c_{k+1}^p = c_k mod p, returns c_L^{p^L} together with its certificate
/// min(L+1, M). Successive refinements agree mod p^{k+1}, which is the
/// one-power-per-step exchange rate every limit here relies on.
std::pair<RingElem, uint32_t> limit_pth_powers(const RingCtxPtr& ctx,
                                               const std::vector<RingElem>& approximants);

/// The multiplicative (non-additive) projection to the 0-th component,
/// certified mod p^min(depth+1, prec).
std::pair<RingElem, uint32_t> sharp(const TiltElem& x);

/// Addition via componentwise limits. With D the overlapping depth, the
/// default target precision is min(M, D+1); reaching target precision tau
/// consumes tau-1 components, so the result has depth D-(tau-1) and every
/// kept component carries the uniform certificate tau. Requesting more
/// than min(M, D+1) throws InsufficientDepth reporting the maximum.
/// Characteristic p: exact componentwise addition, no depth loss.
TiltElem tilt_add(const TiltElem& x, const TiltElem& y,
                  std::optional<uint32_t> target_prec = std::nullopt);

/// Componentwise product; precision min of inputs, no depth loss.
TiltElem tilt_mul(const TiltElem& x, const TiltElem& y);

/// Additive inverse (componentwise negation for odd p; identity for p = 2,
/// where the limit ring has characteristic 2).
TiltElem tilt_neg(const TiltElem& x);

/// x -> x^p. Componentwise p-th powers, equivalently the right shift with
/// new head a_0^p; depth is preserved.
TiltElem tilt_frobenius(const TiltElem& x);

/// Left shift (a_1, ..., a_D); depth drops by one.
TiltElem tilt_frobenius_inv(const TiltElem& x);

/// Flat equality at precision r over the common depth.
bool tilt_equal_at(const TiltElem& x, const TiltElem& y, uint32_t r);

/// Graded equality at each component's own certificate: component n is
/// compared mod p^min(prec, D-n+1), the precision the depth supports.
bool tilt_equal_certified(const TiltElem& x, const TiltElem& y);

bool tilt_is_zero_certified(const TiltElem& x);

/// Options for the enumeration-backed checks on a whole context. Compatible
/// systems of depth L are parametrized by their deepest component, so the
/// enumeration walks ring elements; `slack` asks witnesses to extend that
/// many levels deeper, filtering truncation artifacts that belong to no
/// infinite system.
struct TiltEnumOptions {
    std::optional<uint32_t> depth;  // default: M-1 (mixed), K+1 (char p)
    uint32_t slack = 2;
    uint64_t enum_cap = default_enum_cap();
};

/// Searches for two distinct compatible systems sharing their 0-th
/// component; "distinct" is graded inequality at the compared depth.
CheckReport tilt_is_injective_sharp(const RingCtxPtr& ctx, TiltEnumOptions opts = {});

/// No nonzero tilt element is nilpotent (exhaustive, slack-filtered).
CheckReport tilt_reduced_check(const RingCtxPtr& ctx, TiltEnumOptions opts = {});

/// No two nonzero tilt elements multiply to zero (exhaustive, slack-filtered).
CheckReport tilt_domain_check(const RingCtxPtr& ctx, TiltEnumOptions opts = {});

} // namespace tiltkit
