#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tiltkit/errors.hpp"

namespace tiltkit {

/// The four descriptor-level ring kinds plus the unramified realization
/// W_M(F_q) = Z/p^M[x]/(f) used by the Witt-vector module.
enum class RingKind { ZmodPM, KummerQuot, FiniteField, PerfSeries, WittUnramified };

struct RingCtx;
using RingCtxPtr = std::shared_ptr<const RingCtx>;

/// A concrete truncated ring. Immutable after construction.
///
///   ZmodPM         Z/p^M
///   KummerQuot     Z/p^M[x]/(x^{p^K} - p)
///   FiniteField    F_q = F_p[x]/(f), q = p^d, f the first monic irreducible
///   PerfSeries     F_p[t^{1/p^K}] truncated at t-degree B (u = t^{1/p^K})
///   WittUnramified Z/p^M[x]/(f~), f~ the coefficientwise lift of f
///
/// Elements are coefficient vectors of length `deg` with entries in [0, pM).
struct RingCtx {
    RingKind kind = RingKind::ZmodPM;
    uint64_t p = 0;   // prime
    uint32_t M = 1;   // p-adic precision exponent; 1 for characteristic-p kinds
    uint32_t K = 0;   // p-power-root depth
    uint32_t B = 1;   // t-degree truncation bound (PerfSeries)
    uint64_t q = 0;   // field size p^d (FiniteField / WittUnramified)
    uint64_t pM = 0;  // p^M, the coefficient modulus
    uint32_t deg = 1; // coefficient vector length
    std::vector<uint64_t> minpoly; // monic modulus, deg+1 coefficients (FiniteField / WittUnramified)

    bool mixed_char() const {
        return kind == RingKind::ZmodPM || kind == RingKind::KummerQuot ||
               kind == RingKind::WittUnramified;
    }
    bool char_p() const { return !mixed_char(); }

    /// Canonical descriptor-language form of this context.
    std::string descriptor() const;

    /// Name of the element variable ("x", "t", or "" for Z/p^M).
    const char* var() const;

    /// Number of elements if it is at most `cap`, otherwise nullopt.
    std::optional<uint64_t> size_capped(uint64_t cap) const;
};

bool operator==(const RingCtx& a, const RingCtx& b);
inline bool operator!=(const RingCtx& a, const RingCtx& b) { return !(a == b); }

RingCtxPtr make_zmod(uint64_t p, uint32_t M);
RingCtxPtr make_kummer(uint64_t p, uint32_t M, uint32_t K);
RingCtxPtr make_finite_field(uint64_t q);
RingCtxPtr make_perf_series(uint64_t p, uint32_t K, uint32_t B);
RingCtxPtr make_witt_ring(uint64_t q, uint32_t M);

/// Parses the ring-descriptor mini-language:
///   `Zp p=<prime> M=<int>`
///   `Zp[p^(1/p^<K>)] p=<prime> M=<int>`
///   `Fq q=<p^d>`
///   `Fp[t^(1/p^<K>)]/t^<B> p=<prime>`
///   `Wq q=<p^d> M=<int>`            (unramified Witt realization)
RingCtxPtr ring_make(const std::string& descriptor);

class RingElem {
public:
    RingElem() = default;
    /// Takes an arbitrary-length coefficient vector and reduces it to
    /// canonical form through the context's defining relation.
    RingElem(RingCtxPtr ctx, std::vector<uint64_t> coeffs);

    static RingElem zero(const RingCtxPtr& ctx);
    static RingElem one(const RingCtxPtr& ctx);
    static RingElem from_int(const RingCtxPtr& ctx, long long value);
    /// coeff * <var>^idx, idx in coefficient-vector position units.
    static RingElem monomial(const RingCtxPtr& ctx, uint32_t idx, uint64_t coeff = 1);

    const RingCtxPtr& ctx() const { return ctx_; }
    const std::vector<uint64_t>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;

    RingElem operator+(const RingElem& rhs) const;
    RingElem operator-() const;
    RingElem operator-(const RingElem& rhs) const;
    RingElem operator*(const RingElem& rhs) const;
    bool operator==(const RingElem& rhs) const;
    bool operator!=(const RingElem& rhs) const { return !(*this == rhs); }

    RingElem pow(uint64_t n) const;

    std::string str() const;

private:
    RingCtxPtr ctx_;
    std::vector<uint64_t> coeffs_;
};

/// Parses an element expression such as "3", "x^3+2", "2*t^(1/2)+1".
RingElem elem_parse(const RingCtxPtr& ctx, const std::string& text);

// Named operation aliases (the operator forms are the primary surface).
inline RingElem elem_add(const RingElem& a, const RingElem& b) { return a + b; }
inline RingElem elem_mul(const RingElem& a, const RingElem& b) { return a * b; }
inline RingElem elem_neg(const RingElem& a) { return -a; }
inline RingElem elem_pow(const RingElem& a, uint64_t n) { return a.pow(n); }

/// Residue ring A/pA of a mixed-characteristic context:
///   ZmodPM         -> FiniteField F_p
///   KummerQuot     -> PerfSeries with K'=0, B'=p^K  (x-bar <-> t)
///   WittUnramified -> FiniteField F_q (same modulus mod p)
RingCtxPtr residue_ctx(const RingCtxPtr& ctx);
RingElem proj_mod_p(const RingElem& a);

/// Depth-aware presentation of the KummerQuot residue ring: the same
/// quotient written as PerfSeries(p, K, B=1) with x-bar <-> t^{1/p^K}.
/// This presentation remembers which exponents the depth-K truncation
/// can still halve, which is what the semiperfectness audit needs.
RingCtxPtr residue_ctx_at_depth(const RingCtxPtr& ctx);
RingElem proj_mod_p_at_depth(const RingElem& a);

/// a^p on a characteristic-p context.
RingElem frobenius(const RingElem& a);
/// Some b with b^p = a, or nullopt. Unique for FiniteField; for PerfSeries
/// the canonical preimage with support supp(a)/p is returned.
std::optional<RingElem> frobenius_preimage(const RingElem& a);

uint64_t default_enum_cap();  // 10^6, overridable via TILTKIT_MAX_ENUM

/// True iff a*b = 0 implies b = 0. Structural rule (unit test against
/// enumeration): a is a nonzero divisor iff its image in the reduced
/// quotient of A/pA is nonzero, i.e. iff the constant coefficient is a
/// unit mod p. Falls back to enumeration for rings within the cap.
bool is_nonzerodivisor(const RingElem& a, uint64_t enum_cap = default_enum_cap());
/// A nonzero b with a*b = 0, when one exists.
std::optional<RingElem> zero_divisor_witness(const RingElem& a, uint64_t enum_cap = default_enum_cap());

/// Coefficientwise divisibility by p^k; k >= M means "is zero".
/// In characteristic p, k >= 1 also means "is zero".
bool divisible_by_p_pow(const RingElem& a, uint32_t k);
/// Largest k <= M with p^k | a (so M for a = 0).
uint32_t p_valuation(const RingElem& a);
bool congruent_mod_p_pow(const RingElem& a, const RingElem& b, uint32_t k);

/// x-adic valuation on KummerQuot (v(x) = 1, v(p) = p^K); deg*M for zero.
uint32_t pi_valuation(const RingElem& a);
/// Membership b in c*A for KummerQuot/ZmodPM, decided through valuations.
bool in_principal_ideal(const RingElem& b, const RingElem& c);

/// Element <-> index bijection for exhaustive checks (mixed-radix digits).
RingElem elem_from_index(const RingCtxPtr& ctx, uint64_t index);
uint64_t elem_to_index(const RingElem& a);

/// The modulus polynomial of a FiniteField / WittUnramified context as a
/// plain string (no reduction), e.g. "x^2+1".
std::string modulus_str(const RingCtx& ctx);

// Small numeric helpers shared across modules.
bool is_prime_u64(uint64_t n);
uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m);
uint64_t modinv_u64(uint64_t a, uint64_t m);
/// Smallest prime factor; returns n for n prime.
uint64_t smallest_prime_factor(uint64_t n);

} // namespace tiltkit
