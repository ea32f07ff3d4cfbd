#include "tiltkit/arith.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <cstring>
#include <numeric>
#include <sstream>

namespace tiltkit {

// ---------------------------------------------------------------------------
// numeric helpers

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

uint64_t smallest_prime_factor(uint64_t n) {
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return d;
    return n;
}

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

uint64_t modinv_u64(uint64_t a, uint64_t m) {
    // extended Euclid; requires gcd(a, m) = 1
    long long t = 0, newt = 1;
    long long r = static_cast<long long>(m), newr = static_cast<long long>(a % m);
    while (newr != 0) {
        long long quot = r / newr;
        std::swap(t, newt); newt -= quot * t;
        std::swap(r, newr); newr -= quot * r;
    }
    if (r != 1) fail(ErrorCode::BadParameter, "element not invertible");
    if (t < 0) t += static_cast<long long>(m);
    return static_cast<uint64_t>(t);
}

namespace {

uint64_t checked_pow_u64(uint64_t base, uint32_t exp, const char* what) {
    __uint128_t r = 1;
    for (uint32_t i = 0; i < exp; ++i) {
        r *= base;
        if (r > (static_cast<__uint128_t>(1) << 62))
            fail(ErrorCode::BadParameter, std::string(what) + ": value too large");
    }
    return static_cast<uint64_t>(r);
}

// ---------------------------------------------------------------------------
// dense F_p polynomial helpers for the modulus search

using Poly = std::vector<uint64_t>; // coefficient i = coeff of x^i

Poly poly_mod(Poly a, const Poly& b, uint64_t p) {
    // b monic
    while (a.size() >= b.size() && !a.empty()) {
        uint64_t lead = a.back();
        if (lead != 0) {
            size_t shift = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) {
                uint64_t sub = mulmod_u64(lead, b[i], p);
                a[shift + i] = (a[shift + i] + p - sub) % p;
            }
        }
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

bool poly_divides(const Poly& d, const Poly& f, uint64_t p) {
    return poly_mod(f, d, p).empty();
}

bool poly_irreducible(const Poly& f, uint64_t p) {
    uint32_t n = static_cast<uint32_t>(f.size()) - 1;
    if (n == 1) return true;
    // trial division by every monic polynomial of degree 1..n/2
    for (uint32_t dd = 1; 2 * dd <= n; ++dd) {
        uint64_t count = checked_pow_u64(p, dd, "modulus search");
        for (uint64_t idx = 0; idx < count; ++idx) {
            Poly cand(dd + 1, 0);
            uint64_t v = idx;
            for (uint32_t i = 0; i < dd; ++i) { cand[i] = v % p; v /= p; }
            cand[dd] = 1;
            if (poly_divides(cand, f, p)) return false;
        }
    }
    return true;
}

/// First monic irreducible polynomial of degree d over F_p in the
/// coefficient-counting order (constant coefficient fastest).
Poly first_irreducible(uint64_t p, uint32_t d) {
    if (d == 1) return Poly{0, 1}; // x
    uint64_t count = checked_pow_u64(p, d, "modulus search");
    for (uint64_t idx = 0; idx < count; ++idx) {
        Poly f(d + 1, 0);
        uint64_t v = idx;
        for (uint32_t i = 0; i < d; ++i) { f[i] = v % p; v /= p; }
        f[d] = 1;
        if (poly_irreducible(f, p)) return f;
    }
    fail(ErrorCode::BadParameter, "no irreducible modulus found"); // unreachable
}

uint32_t log_base(uint64_t q, uint64_t p) {
    uint32_t d = 0;
    while (q > 1) {
        if (q % p != 0) fail(ErrorCode::BadParameter, "q is not a power of p");
        q /= p;
        ++d;
    }
    return d;
}

RingCtxPtr finish(RingCtx ctx) { return std::make_shared<const RingCtx>(std::move(ctx)); }

} // namespace

// ---------------------------------------------------------------------------
// contexts

RingCtxPtr make_zmod(uint64_t p, uint32_t M) {
    if (!is_prime_u64(p)) fail(ErrorCode::BadParameter, "p must be prime");
    if (M < 1) fail(ErrorCode::BadParameter, "M must be >= 1");
    RingCtx c;
    c.kind = RingKind::ZmodPM;
    c.p = p;
    c.M = M;
    c.pM = checked_pow_u64(p, M, "p^M");
    c.deg = 1;
    return finish(std::move(c));
}

RingCtxPtr make_kummer(uint64_t p, uint32_t M, uint32_t K) {
    if (!is_prime_u64(p)) fail(ErrorCode::BadParameter, "p must be prime");
    if (M < 1) fail(ErrorCode::BadParameter, "M must be >= 1");
    RingCtx c;
    c.kind = RingKind::KummerQuot;
    c.p = p;
    c.M = M;
    c.K = K;
    c.pM = checked_pow_u64(p, M, "p^M");
    uint64_t d = checked_pow_u64(p, K, "p^K");
    if (d > 100000) fail(ErrorCode::BadParameter, "p^K too large");
    c.deg = static_cast<uint32_t>(d);
    return finish(std::move(c));
}

RingCtxPtr make_finite_field(uint64_t q) {
    uint64_t p = smallest_prime_factor(q);
    uint32_t d = log_base(q, p);
    if (d == 0) fail(ErrorCode::BadParameter, "q must be a prime power > 1");
    RingCtx c;
    c.kind = RingKind::FiniteField;
    c.p = p;
    c.M = 1;
    c.q = q;
    c.pM = p;
    c.deg = d;
    c.minpoly = first_irreducible(p, d);
    return finish(std::move(c));
}

RingCtxPtr make_perf_series(uint64_t p, uint32_t K, uint32_t B) {
    if (!is_prime_u64(p)) fail(ErrorCode::BadParameter, "p must be prime");
    if (B < 1) fail(ErrorCode::BadParameter, "B must be >= 1");
    RingCtx c;
    c.kind = RingKind::PerfSeries;
    c.p = p;
    c.M = 1;
    c.K = K;
    c.B = B;
    c.pM = p;
    uint64_t d = static_cast<uint64_t>(B) * checked_pow_u64(p, K, "p^K");
    if (d > 100000) fail(ErrorCode::BadParameter, "B*p^K too large");
    c.deg = static_cast<uint32_t>(d);
    return finish(std::move(c));
}

RingCtxPtr make_witt_ring(uint64_t q, uint32_t M) {
    uint64_t p = smallest_prime_factor(q);
    uint32_t d = log_base(q, p);
    if (d == 0) fail(ErrorCode::BadParameter, "q must be a prime power > 1");
    if (M < 1) fail(ErrorCode::BadParameter, "M must be >= 1");
    RingCtx c;
    c.kind = RingKind::WittUnramified;
    c.p = p;
    c.M = M;
    c.q = q;
    c.pM = checked_pow_u64(p, M, "p^M");
    c.deg = d;
    c.minpoly = first_irreducible(p, d); // coefficients lifted as-is to [0, p^M)
    return finish(std::move(c));
}

bool operator==(const RingCtx& a, const RingCtx& b) {
    return a.kind == b.kind && a.p == b.p && a.M == b.M && a.K == b.K && a.B == b.B &&
           a.q == b.q && a.minpoly == b.minpoly;
}

const char* RingCtx::var() const {
    switch (kind) {
        case RingKind::ZmodPM: return "";
        case RingKind::PerfSeries: return "t";
        default: return "x";
    }
}

std::string RingCtx::descriptor() const {
    std::ostringstream os;
    switch (kind) {
        case RingKind::ZmodPM:
            os << "Zp p=" << p << " M=" << M;
            break;
        case RingKind::KummerQuot:
            os << "Zp[p^(1/p^" << K << ")] p=" << p << " M=" << M;
            break;
        case RingKind::FiniteField:
            os << "Fq q=" << q;
            break;
        case RingKind::PerfSeries:
            os << "Fp[t^(1/p^" << K << ")]/t^" << B << " p=" << p;
            break;
        case RingKind::WittUnramified:
            os << "Wq q=" << q << " M=" << M;
            break;
    }
    return os.str();
}

std::optional<uint64_t> RingCtx::size_capped(uint64_t cap) const {
    __uint128_t n = 1;
    for (uint32_t i = 0; i < deg; ++i) {
        n *= pM;
        if (n > cap) return std::nullopt;
    }
    return static_cast<uint64_t>(n);
}

// ---------------------------------------------------------------------------
// descriptor parser

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;

    void skip_ws() { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; }
    bool eat(const char* lit) {
        size_t n = std::strlen(lit);
        if (s.compare(i, n, lit) == 0) { i += n; return true; }
        return false;
    }
    bool done() { skip_ws(); return i >= s.size(); }
    uint64_t parse_uint(const char* what) {
        skip_ws();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            fail(ErrorCode::Parse, std::string("expected integer for ") + what);
        uint64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            if (v > (1ull << 62)) fail(ErrorCode::Parse, "integer too large");
            ++i;
        }
        return v;
    }
};

uint64_t require_kv(Cursor& c, const char* key) {
    c.skip_ws();
    if (!c.eat(key) || !c.eat("="))
        fail(ErrorCode::Parse, std::string("expected ") + key + "=<int> in ring descriptor");
    return c.parse_uint(key);
}

} // namespace

RingCtxPtr ring_make(const std::string& descriptor) {
    Cursor c{descriptor};
    c.skip_ws();
    if (c.eat("Zp[p^(1/p^")) {
        uint64_t K = c.parse_uint("K");
        if (!c.eat(")]")) fail(ErrorCode::Parse, "malformed KummerQuot descriptor");
        uint64_t p = require_kv(c, "p");
        uint64_t M = require_kv(c, "M");
        if (!c.done()) fail(ErrorCode::Parse, "trailing input in ring descriptor");
        return make_kummer(p, static_cast<uint32_t>(M), static_cast<uint32_t>(K));
    }
    if (c.eat("Zp")) {
        uint64_t p = require_kv(c, "p");
        uint64_t M = require_kv(c, "M");
        if (!c.done()) fail(ErrorCode::Parse, "trailing input in ring descriptor");
        return make_zmod(p, static_cast<uint32_t>(M));
    }
    if (c.eat("Fq")) {
        uint64_t q = require_kv(c, "q");
        if (!c.done()) fail(ErrorCode::Parse, "trailing input in ring descriptor");
        return make_finite_field(q);
    }
    if (c.eat("Fp[t^(1/p^")) {
        uint64_t K = c.parse_uint("K");
        if (!c.eat(")]/t^")) fail(ErrorCode::Parse, "malformed PerfSeries descriptor");
        uint64_t B = c.parse_uint("B");
        uint64_t p = require_kv(c, "p");
        if (!c.done()) fail(ErrorCode::Parse, "trailing input in ring descriptor");
        return make_perf_series(p, static_cast<uint32_t>(K), static_cast<uint32_t>(B));
    }
    if (c.eat("Wq")) {
        uint64_t q = require_kv(c, "q");
        uint64_t M = require_kv(c, "M");
        if (!c.done()) fail(ErrorCode::Parse, "trailing input in ring descriptor");
        return make_witt_ring(q, static_cast<uint32_t>(M));
    }
    fail(ErrorCode::Parse, "unrecognized ring descriptor: " + descriptor);
}

// ---------------------------------------------------------------------------
// elements

RingElem::RingElem(RingCtxPtr ctx, std::vector<uint64_t> coeffs) : ctx_(std::move(ctx)) {
    const RingCtx& c = *ctx_;
    for (auto& v : coeffs) v %= c.pM;
    // reduce exponents >= deg through the defining relation
    if (coeffs.size() > c.deg) {
        switch (c.kind) {
            case RingKind::ZmodPM:
                break; // deg = 1, nothing above it is produced
            case RingKind::KummerQuot:
                for (size_t i = coeffs.size(); i-- > c.deg;) {
                    coeffs[i - c.deg] = (coeffs[i - c.deg] + mulmod_u64(coeffs[i], c.p, c.pM)) % c.pM;
                    coeffs[i] = 0;
                }
                break;
            case RingKind::FiniteField:
            case RingKind::WittUnramified:
                for (size_t i = coeffs.size(); i-- > c.deg;) {
                    uint64_t lead = coeffs[i];
                    if (lead == 0) continue;
                    coeffs[i] = 0;
                    for (uint32_t j = 0; j < c.deg; ++j) {
                        uint64_t sub = mulmod_u64(lead, c.minpoly[j] % c.pM, c.pM);
                        coeffs[i - c.deg + j] = (coeffs[i - c.deg + j] + c.pM - sub) % c.pM;
                    }
                }
                break;
            case RingKind::PerfSeries:
                break; // exponents beyond the truncation are zero
        }
    }
    coeffs.resize(c.deg, 0);
    coeffs_ = std::move(coeffs);
}

RingElem RingElem::zero(const RingCtxPtr& ctx) { return RingElem(ctx, {}); }

RingElem RingElem::one(const RingCtxPtr& ctx) { return RingElem(ctx, {1}); }

RingElem RingElem::from_int(const RingCtxPtr& ctx, long long value) {
    uint64_t m = ctx->pM;
    long long r = value % static_cast<long long>(m);
    if (r < 0) r += static_cast<long long>(m);
    return RingElem(ctx, {static_cast<uint64_t>(r)});
}

RingElem RingElem::monomial(const RingCtxPtr& ctx, uint32_t idx, uint64_t coeff) {
    std::vector<uint64_t> v(idx + 1, 0);
    v[idx] = coeff;
    return RingElem(ctx, std::move(v));
}

bool RingElem::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](uint64_t v) { return v == 0; });
}

bool RingElem::is_one() const {
    if (coeffs_.empty() || coeffs_[0] != 1) return false;
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](uint64_t v) { return v == 0; });
}

namespace {
void require_same_ctx(const RingElem& a, const RingElem& b) {
    if (!a.ctx() || !b.ctx() || !(*a.ctx() == *b.ctx()))
        fail(ErrorCode::CtxMismatch, "operands belong to different ring contexts");
}
} // namespace

RingElem RingElem::operator+(const RingElem& rhs) const {
    require_same_ctx(*this, rhs);
    std::vector<uint64_t> v(coeffs_);
    for (size_t i = 0; i < v.size(); ++i) v[i] = (v[i] + rhs.coeffs_[i]) % ctx_->pM;
    return RingElem(ctx_, std::move(v));
}

RingElem RingElem::operator-() const {
    std::vector<uint64_t> v(coeffs_);
    for (auto& x : v) x = (ctx_->pM - x) % ctx_->pM;
    return RingElem(ctx_, std::move(v));
}

RingElem RingElem::operator-(const RingElem& rhs) const { return *this + (-rhs); }

RingElem RingElem::operator*(const RingElem& rhs) const {
    require_same_ctx(*this, rhs);
    const RingCtx& c = *ctx_;
    std::vector<__uint128_t> acc(2 * c.deg - 1, 0);
    for (uint32_t i = 0; i < c.deg; ++i) {
        if (coeffs_[i] == 0) continue;
        for (uint32_t j = 0; j < c.deg; ++j) {
            if (rhs.coeffs_[j] == 0) continue;
            acc[i + j] += static_cast<__uint128_t>(coeffs_[i]) * rhs.coeffs_[j];
        }
    }
    std::vector<uint64_t> v(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) v[i] = static_cast<uint64_t>(acc[i] % c.pM);
    return RingElem(ctx_, std::move(v));
}

bool RingElem::operator==(const RingElem& rhs) const {
    require_same_ctx(*this, rhs);
    return coeffs_ == rhs.coeffs_;
}

RingElem RingElem::pow(uint64_t n) const {
    RingElem r = RingElem::one(ctx_);
    RingElem base = *this;
    while (n) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

std::string RingElem::str() const {
    const RingCtx& c = *ctx_;
    if (c.kind == RingKind::ZmodPM) return std::to_string(coeffs_[0]);
    std::ostringstream os;
    bool first = true;
    for (uint32_t i = 0; i < c.deg; ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << coeffs_[i];
            continue;
        }
        if (coeffs_[i] != 1) os << coeffs_[i] << "*";
        os << c.var();
        if (c.kind == RingKind::PerfSeries) {
            uint64_t scale = c.deg / c.B; // p^K
            if (i % scale == 0) {
                if (i / scale != 1) os << "^" << i / scale;
            } else {
                long long g = std::gcd<long long>(i, scale);
                os << "^(" << i / g << "/" << scale / g << ")";
            }
        } else if (i != 1) {
            os << "^" << i;
        }
    }
    if (first) return "0";
    return os.str();
}

std::string modulus_str(const RingCtx& ctx) {
    if (ctx.minpoly.empty()) return "";
    std::ostringstream os;
    bool first = true;
    for (size_t i = ctx.minpoly.size(); i-- > 0;) {
        if (ctx.minpoly[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || ctx.minpoly[i] != 1) os << ctx.minpoly[i];
        if (i >= 1) {
            if (ctx.minpoly[i] != 1) os << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// element expression parser

namespace {

struct ElemParser {
    Cursor c;
    const RingCtxPtr& ctx;

    RingElem parse() {
        RingElem acc = parse_term(false);
        for (;;) {
            c.skip_ws();
            if (c.eat("+")) acc = acc + parse_term(false);
            else if (c.eat("-")) acc = acc + parse_term(true);
            else break;
        }
        if (!c.done()) fail(ErrorCode::Parse, "trailing input in element expression");
        return acc;
    }

    RingElem parse_term(bool negate) {
        c.skip_ws();
        if (c.eat("-")) negate = !negate;
        c.skip_ws();
        uint64_t coeff = 1;
        bool have_coeff = false;
        if (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
            coeff = c.parse_uint("coefficient");
            have_coeff = true;
            c.skip_ws();
            if (c.eat("*")) c.skip_ws();
        }
        RingElem term = RingElem::from_int(ctx, static_cast<long long>(coeff % ctx->pM));
        const char* var = ctx->var();
        if (c.i < c.s.size() && var[0] != '\0' && c.s[c.i] == var[0]) {
            ++c.i;
            term = term * parse_var_power();
        } else if (c.i < c.s.size() && std::isalpha(static_cast<unsigned char>(c.s[c.i]))) {
            fail(ErrorCode::Parse, std::string("unknown variable '") + c.s[c.i] +
                                       "' in context " + ctx->descriptor());
        } else if (!have_coeff) {
            fail(ErrorCode::Parse, "expected term in element expression");
        }
        return negate ? -term : term;
    }

    // called just after the variable character; parses an optional exponent
    RingElem parse_var_power() {
        long long num = 1, den = 1;
        c.skip_ws();
        if (c.eat("^")) {
            c.skip_ws();
            if (c.eat("(")) {
                bool neg = c.eat("-");
                num = static_cast<long long>(c.parse_uint("exponent"));
                if (neg) num = -num;
                c.skip_ws();
                if (c.eat("/")) den = static_cast<long long>(c.parse_uint("exponent denominator"));
                c.skip_ws();
                if (!c.eat(")")) fail(ErrorCode::Parse, "expected ')' in exponent");
            } else {
                num = static_cast<long long>(c.parse_uint("exponent"));
            }
        }
        if (num < 0) fail(ErrorCode::Parse, "negative exponents are not ring elements");
        uint64_t scale = 1; // coefficient-vector positions per unit exponent
        if (ctx->kind == RingKind::PerfSeries) scale = ctx->deg / ctx->B;
        __uint128_t scaled = static_cast<__uint128_t>(num) * scale;
        if (scaled % den != 0)
            fail(ErrorCode::Parse, "exponent not representable at depth K=" + std::to_string(ctx->K));
        scaled /= den;
        if (ctx->kind == RingKind::PerfSeries && scaled >= ctx->deg)
            return RingElem::zero(ctx); // beyond the truncation
        if (scaled > 4 * static_cast<uint64_t>(ctx->deg) + 64)
            fail(ErrorCode::Parse, "exponent too large");
        return RingElem::monomial(ctx, static_cast<uint32_t>(scaled));
    }
};

} // namespace

RingElem elem_parse(const RingCtxPtr& ctx, const std::string& text) {
    ElemParser p{Cursor{text}, ctx};
    return p.parse();
}

// ---------------------------------------------------------------------------
// residue projection and Frobenius

RingCtxPtr residue_ctx(const RingCtxPtr& ctx) {
    switch (ctx->kind) {
        case RingKind::ZmodPM:
            return make_finite_field(ctx->p);
        case RingKind::KummerQuot:
            return make_perf_series(ctx->p, 0, ctx->deg);
        case RingKind::WittUnramified:
            return make_finite_field(ctx->q);
        default:
            fail(ErrorCode::CtxMismatch, "residue projection needs a mixed-characteristic context");
    }
}

RingElem proj_mod_p(const RingElem& a) {
    RingCtxPtr target = residue_ctx(a.ctx());
    std::vector<uint64_t> v(a.coeffs());
    for (auto& x : v) x %= a.ctx()->p;
    return RingElem(target, std::move(v));
}

RingCtxPtr residue_ctx_at_depth(const RingCtxPtr& ctx) {
    if (ctx->kind != RingKind::KummerQuot)
        fail(ErrorCode::CtxMismatch, "depth-aware residue is defined for KummerQuot contexts");
    return make_perf_series(ctx->p, ctx->K, 1);
}

RingElem proj_mod_p_at_depth(const RingElem& a) {
    RingCtxPtr target = residue_ctx_at_depth(a.ctx());
    std::vector<uint64_t> v(a.coeffs());
    for (auto& x : v) x %= a.ctx()->p;
    return RingElem(target, std::move(v));
}

RingElem frobenius(const RingElem& a) {
    if (!a.ctx()->char_p())
        fail(ErrorCode::CtxMismatch, "frobenius needs a characteristic-p context");
    return a.pow(a.ctx()->p);
}

std::optional<RingElem> frobenius_preimage(const RingElem& a) {
    const RingCtx& c = *a.ctx();
    if (!c.char_p())
        fail(ErrorCode::CtxMismatch, "frobenius_preimage needs a characteristic-p context");
    if (c.kind == RingKind::FiniteField) {
        // a^(p^(d-1)) is the unique preimage since a^q = a
        RingElem b = a;
        for (uint32_t i = 0; i + 1 < c.deg; ++i) b = b.pow(c.p);
        return b;
    }
    // PerfSeries: need every supported exponent divisible by p
    std::vector<uint64_t> v(c.deg, 0);
    for (uint32_t i = 0; i < c.deg; ++i) {
        if (a.coeffs()[i] == 0) continue;
        if (i % c.p != 0) return std::nullopt;
        v[i / c.p] = a.coeffs()[i];
    }
    return RingElem(a.ctx(), std::move(v));
}

// ---------------------------------------------------------------------------
// divisibility and valuations

uint64_t default_enum_cap() {
    static const uint64_t cap = [] {
        if (const char* env = std::getenv("TILTKIT_MAX_ENUM")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<uint64_t>(v);
        }
        return static_cast<uint64_t>(1000000);
    }();
    return cap;
}

bool divisible_by_p_pow(const RingElem& a, uint32_t k) {
    const RingCtx& c = *a.ctx();
    if (k == 0) return true;
    if (k >= c.M) return a.is_zero();
    uint64_t pk = 1;
    for (uint32_t i = 0; i < k; ++i) pk *= c.p;
    return std::all_of(a.coeffs().begin(), a.coeffs().end(),
                       [pk](uint64_t v) { return v % pk == 0; });
}

uint32_t p_valuation(const RingElem& a) {
    const RingCtx& c = *a.ctx();
    if (a.is_zero()) return c.M;
    uint32_t best = c.M;
    for (uint64_t v : a.coeffs()) {
        if (v == 0) continue;
        uint32_t k = 0;
        while (v % c.p == 0) { v /= c.p; ++k; }
        best = std::min(best, k);
    }
    return best;
}

bool congruent_mod_p_pow(const RingElem& a, const RingElem& b, uint32_t k) {
    return divisible_by_p_pow(a - b, k);
}

uint32_t pi_valuation(const RingElem& a) {
    const RingCtx& c = *a.ctx();
    if (c.kind != RingKind::KummerQuot && c.kind != RingKind::ZmodPM)
        fail(ErrorCode::CtxMismatch, "pi_valuation is defined on KummerQuot/ZmodPM");
    uint32_t full = c.deg * c.M;
    if (a.is_zero()) return full;
    uint32_t best = full;
    for (uint32_t i = 0; i < c.deg; ++i) {
        uint64_t v = a.coeffs()[i];
        if (v == 0) continue;
        uint32_t k = 0;
        while (v % c.p == 0) { v /= c.p; ++k; }
        best = std::min(best, c.deg * k + i);
    }
    return best;
}

bool in_principal_ideal(const RingElem& b, const RingElem& c) {
    require_same_ctx(b, c);
    if (b.is_zero()) return true;
    if (c.is_zero()) return false;
    // the canonical representative of v(a) = k is unit * pi^k, so membership
    // is a valuation comparison
    return pi_valuation(b) >= pi_valuation(c);
}

// ---------------------------------------------------------------------------
// enumeration

RingElem elem_from_index(const RingCtxPtr& ctx, uint64_t index) {
    std::vector<uint64_t> v(ctx->deg);
    for (uint32_t i = 0; i < ctx->deg; ++i) {
        v[i] = index % ctx->pM;
        index /= ctx->pM;
    }
    return RingElem(ctx, std::move(v));
}

uint64_t elem_to_index(const RingElem& a) {
    uint64_t idx = 0;
    for (uint32_t i = a.ctx()->deg; i-- > 0;)
        idx = idx * a.ctx()->pM + a.coeffs()[i];
    return idx;
}

// ---------------------------------------------------------------------------
// nonzero divisors

namespace {

std::optional<RingElem> structural_zero_divisor(const RingElem& a) {
    const RingCtx& c = *a.ctx();
    switch (c.kind) {
        case RingKind::FiniteField:
            if (a.is_zero()) return RingElem::one(a.ctx());
            return std::nullopt;
        case RingKind::ZmodPM:
        case RingKind::KummerQuot: {
            uint32_t v = (c.kind == RingKind::ZmodPM)
                             ? p_valuation(a) * c.deg // deg = 1
                             : pi_valuation(a);
            uint32_t full = c.deg * c.M;
            if (v == 0) return std::nullopt; // unit constant coefficient
            // pi^(full - v) annihilates a; write it canonically as x^r * p^s
            uint32_t e = full - v;
            uint32_t s = e / c.deg, r = e % c.deg;
            uint64_t pw = 1;
            for (uint32_t i = 0; i < s; ++i) pw *= c.p;
            return RingElem::monomial(a.ctx(), r, pw % c.pM);
        }
        case RingKind::PerfSeries: {
            uint32_t low = c.deg;
            for (uint32_t i = 0; i < c.deg; ++i)
                if (a.coeffs()[i] != 0) { low = i; break; }
            if (low == 0) return std::nullopt; // unit constant term
            if (low == c.deg) return RingElem::one(a.ctx()); // a = 0
            return RingElem::monomial(a.ctx(), c.deg - low);
        }
        case RingKind::WittUnramified:
            if (p_valuation(a) == 0) return std::nullopt; // unit
            return RingElem::from_int(a.ctx(), static_cast<long long>(c.pM / c.p));
    }
    return std::nullopt;
}

} // namespace

std::optional<RingElem> zero_divisor_witness(const RingElem& a, uint64_t enum_cap) {
    auto w = structural_zero_divisor(a);
    if (w) {
        if (!w->is_zero() && (a * *w).is_zero()) return w;
        // structural candidate failed (should not happen); fall through
    } else {
        return std::nullopt;
    }
    auto size = a.ctx()->size_capped(enum_cap);
    if (!size) fail(ErrorCode::TooLarge, "ring too large to enumerate zero divisors");
    for (uint64_t i = 1; i < *size; ++i) {
        RingElem b = elem_from_index(a.ctx(), i);
        if ((a * b).is_zero()) return b;
    }
    return std::nullopt;
}

bool is_nonzerodivisor(const RingElem& a, uint64_t enum_cap) {
    return !zero_divisor_witness(a, enum_cap).has_value();
}

} // namespace tiltkit
