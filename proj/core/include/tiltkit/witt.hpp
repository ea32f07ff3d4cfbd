#pragma once

#include <cstdint>

#include "tiltkit/arith.hpp"
#include "tiltkit/report.hpp"

namespace tiltkit {

/// Truncated Witt vectors over F_q, realized as the unramified quotient
/// Z/p^M[x]/(f) for f the fixed lift of the first monic irreducible
/// polynomial of degree d over F_p. Reports record the modulus choice.
struct WittCtx {
    uint64_t q = 0;
    uint32_t M = 1;
    RingCtxPtr realization;   // kind WittUnramified
    RingCtxPtr residue_field; // F_q with the same modulus mod p
};

WittCtx make_witt_ctx(uint64_t q, uint32_t M);

/// The unique multiplicative lift w(a) with w(a)^q = w(a) and w(a) = a mod
/// p, computed by iterating y -> y^q from any lift until two successive
/// iterates agree mod p^M (at most M-1 iterations).
RingElem teichmuller(const RingElem& a, const WittCtx& ctx);

/// Builds, for every a in F_q, the compatible system of Frobenius inverses,
/// lifts its 0-th component through limit_pth_powers, and compares with the
/// direct stabilization iteration. The two routes are independent.
CheckReport sharp_equals_teichmuller(const WittCtx& ctx);

struct PRootResult {
    RingElem root;
    /// Ambient root statistics, filled when the realization is enumerable.
    uint64_t ambient_roots = 0;
    uint64_t image_roots = 0;
    bool enumerated = false;
};

/// For a in the multiplicative-section image, the unique p-th root of a
/// that lies in the image, namely w((a mod p)^{1/p}). When the realization
/// fits under the cap, all ambient roots of t^p = a are counted as well.
/// Throws NotInImage when a != w(a mod p).
PRootResult unique_p_root_in_sharp_image(const RingElem& a, const WittCtx& ctx,
                                         uint64_t enum_cap = default_enum_cap());

} // namespace tiltkit
