#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "tiltkit/closure.hpp"

using namespace tiltkit;

namespace {

std::string datum(const CheckReport& rep, const std::string& key) {
    for (const auto& [k, v] : rep.data)
        if (k == key) return v;
    return {};
}

MonomialRing random_ring(std::mt19937_64& rng, bool small_uniformizer = false) {
    const uint64_t primes[] = {2, 3, 5};
    uint64_t p = primes[rng() % 3];
    uint32_t K = rng() % 2;
    std::set<long long> gens;
    int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) gens.insert(1 + static_cast<long long>(rng() % 9));
    MonomialRing probe(p, K, {gens.begin(), gens.end()});
    if (!small_uniformizer) return probe;
    // pick the smallest generator as uniformizer to keep divergence scans short
    return MonomialRing(p, K, {gens.begin(), gens.end()}, *gens.begin());
}

} // namespace

TEST_CASE("monomial ring parsing and membership") {
    MonomialRing cusp = monomial_ring_parse("Fp[t^2,t^3] p=5");
    CHECK(cusp.p() == 5);
    CHECK(cusp.K() == 0);
    CHECK(cusp.gens() == std::vector<long long>{2, 3});
    CHECK(cusp.uniformizer() == 2); // t not representable, smallest generator
    CHECK(cusp.gcd() == 1);
    CHECK(cusp.frobenius_gap() == 1);
    CHECK(cusp.contains(0));
    CHECK_FALSE(cusp.contains(1));
    for (long long e = 2; e < 40; ++e) CHECK(cusp.contains(e));

    MonomialRing deep = monomial_ring_parse("Fp[t^(1/9)] p=3");
    CHECK(deep.K() == 2);
    CHECK(deep.scale() == 9);
    CHECK(deep.gens() == std::vector<long long>{1});
    CHECK(deep.uniformizer() == 9); // t itself
    CHECK_FALSE(deep.frobenius_gap().has_value());

    MonomialRing even = monomial_ring_parse("Fp[t^2] p=3");
    CHECK(even.gcd() == 2);
    CHECK(even.contains(4));
    CHECK_FALSE(even.contains(3));
    CHECK_FALSE(even.frobenius_gap().has_value()); // saturated inside 2Z

    CHECK_THROWS_AS(monomial_ring_parse("Fp[t^2] p=6"), Error);
    CHECK_THROWS_AS(monomial_ring_parse("Fp[t^(1/6)] p=3"), Error); // 6 is not a power of 3
    CHECK_THROWS_AS(monomial_ring_parse("Fp[] p=3"), Error);
    CHECK_THROWS_AS(monomial_ring_parse("Fp[t^2,t^3] p=5", std::string("t")), Error); // 1 not in S
}

TEST_CASE("laurent parsing") {
    MonomialRing cusp = monomial_ring_parse("Fp[t^2,t^3] p=5");
    LaurentPoly t = laurent_parse(cusp, "t");
    CHECK(t.is_monomial());
    CHECK(t.min_exp() == 1);
    LaurentPoly inv = laurent_parse(cusp, "t^(-1)");
    CHECK(inv.min_exp() == -1);
    LaurentPoly sum = laurent_parse(cusp, "t^2+4*t^3+1");
    CHECK(sum.terms.size() == 3);
    LaurentPoly cancel = laurent_parse(cusp, "t^2+4*t^2");
    CHECK(cancel.is_zero()); // 1 + 4 = 0 mod 5

    MonomialRing deep = monomial_ring_parse("Fp[t^(1/3)] p=3");
    CHECK(laurent_parse(deep, "t^(2/3)").min_exp() == 2);
    CHECK_THROWS_AS(laurent_parse(deep, "t^(1/9)"), Error); // below depth
}

TEST_CASE("almost integrality") {
    MonomialRing cusp(5, 0, {2, 3}, 2);
    CheckReport t_rep = is_almost_integral(laurent_monomial(5, 1), cusp);
    CHECK(t_rep.holds());
    CHECK(t_rep.witness->find("c = 1") != std::string::npos);
    CHECK(t_rep.witness->find("t^2") != std::string::npos);

    CHECK(is_almost_integral(laurent_monomial(5, 0), cusp).holds()); // x = 1

    MonomialRing line(5, 0, {1}, 1);
    CheckReport neg = is_almost_integral(laurent_monomial(5, -1), line);
    CHECK(neg.fails());
    CHECK(neg.witness->find("lowest term") != std::string::npos);

    // outside A[1/varpi]: odd exponent over F_5[t^2]
    MonomialRing even(5, 0, {2}, 2);
    CHECK_THROWS_AS(is_almost_integral(laurent_monomial(5, 3), even), Error);

    // polynomial with a negative lowest term fails; with nonnegative
    // support it holds
    MonomialRing full(3, 0, {1}, 1);
    LaurentPoly mixed = laurent_add(laurent_monomial(3, -2), laurent_monomial(3, 5));
    CHECK(is_almost_integral(mixed, full).fails());
    LaurentPoly poly = laurent_add(laurent_monomial(3, 1), laurent_monomial(3, 4));
    CHECK(is_almost_integral(poly, full).holds());
}

TEST_CASE("integrality") {
    MonomialRing cusp(5, 0, {2, 3}, 2);
    CheckReport t_rep = is_integral(laurent_monomial(5, 1), cusp);
    CHECK(t_rep.holds());
    CHECK(t_rep.witness == "X^2 - t^2");

    MonomialRing line(5, 0, {1}, 1);
    CHECK(is_integral(laurent_monomial(5, -1), line).fails());

    MonomialRing deep(3, 1, {1}); // F_3[t^(1/3)], scale 3
    CHECK_THROWS_AS(laurent_parse(deep, "t^(1/9)"), Error); // BadElement at depth 1

    // linear-algebra route finds an explicit relation for a binomial
    MonomialRing cusp2(2, 0, {2, 3}, 2);
    LaurentPoly x = laurent_add(laurent_monomial(2, 1), laurent_monomial(2, 2)); // t + t^2
    CheckReport rep = is_integral(x, cusp2);
    CHECK(rep.holds());
    long long deg = 0;
    for (const auto& [k, v] : rep.bounds)
        if (k == "relation_degree") deg = v;
    CHECK(deg == 2); // t + t^2 satisfies X^2 = t^2 X + (t^2 + t^3) over F_2
}

TEST_CASE("p-root closedness") {
    MonomialRing cusp(5, 0, {2, 3}, 2);
    CheckReport rep = is_p_root_closed(cusp);
    CHECK(rep.fails());
    CHECK(rep.witness->rfind("t:", 0) == 0); // witness is t: t^5 = t^2 t^3 in A

    CHECK(is_p_root_closed(MonomialRing(5, 0, {1}, 1)).holds());
    CHECK(is_p_root_closed(MonomialRing(3, 1, {1})).holds()); // depth-1 perfected model
}

TEST_CASE("semiperfectness") {
    CHECK(is_semiperfect(make_finite_field(5)).holds());
    CHECK(is_semiperfect(make_finite_field(9)).holds());

    CheckReport flat = is_semiperfect(make_perf_series(2, 0, 2)); // F_2[t]/t^2
    CHECK(flat.fails());
    CHECK(flat.witness->rfind("t ", 0) == 0);

    CheckReport deep = is_semiperfect(make_perf_series(2, 1, 2)); // F_2[t^(1/2)]/t^2
    CHECK(deep.holds());
    bool restricted = false;
    for (const auto& [k, v] : deep.bounds)
        if (k == "depth_restricted" && v == 1) restricted = true;
    CHECK(restricted);

    CHECK_THROWS_AS(is_semiperfect(make_zmod(3, 2)), Error);          // mixed characteristic
    CHECK_THROWS_AS(is_semiperfect(make_perf_series(2, 5, 1000)), Error); // above the cap
}

TEST_CASE("ideal transfer consistency") {
    MonomialRing A = monomial_ring_parse("Fp[t^2,t^3] p=2");
    MonomialRing B = monomial_ring_parse("Fp[t] p=2");
    CheckReport rep = ideal_transfer_check(A, B, {2}); // I = t^2 B
    CHECK(rep.holds());
    CHECK(datum(rep, "monoid_side") == "not integrally closed");
    CHECK(datum(rep, "quotient_side") == "not integrally closed");
    CHECK(datum(rep, "agree") == "yes");
    CHECK(datum(rep, "quotient_witness").find("X^2 = 0") != std::string::npos);

    // trivial extension: both sides closed
    CheckReport triv = ideal_transfer_check(A, A, {2});
    CHECK(triv.holds());
    CHECK(datum(triv, "monoid_side") == "integrally closed");
    CHECK(datum(triv, "quotient_side") == "integrally closed");

    // I = t^4 B with A = F_3[t^2, t^3]: hypothesis holds, verdicts agree
    MonomialRing A3 = monomial_ring_parse("Fp[t^2,t^3] p=3");
    MonomialRing B3 = monomial_ring_parse("Fp[t] p=3");
    CheckReport rep4 = ideal_transfer_check(A3, B3, {4});
    CHECK(rep4.holds());
    CHECK(datum(rep4, "agree") == "yes");

    // t^2 B escapes F_3[t^3, t^4]: hypothesis violation is reported
    MonomialRing narrow(3, 0, {3, 4}, 3);
    CHECK_THROWS_AS(ideal_transfer_check(narrow, B3, {2}), Error);
}

TEST_CASE("conclusion check on perfected models and controls") {
    for (uint32_t K = 0; K <= 3; ++K) {
        long long scale = 1;
        for (uint32_t i = 0; i < K; ++i) scale *= 3;
        MonomialRing A(3, K, {1}, scale);
        CheckReport rep = mt1_conclusion_check(A);
        CHECK(rep.holds());
        CHECK(datum(rep, "A_completely_integrally_closed") == "holds");
        CHECK(datum(rep, "tilt_model_completely_integrally_closed") == "holds");
        CHECK(datum(rep, "conclusion") == "consistent");
    }

    MonomialRing control(3, 0, {2, 3}, 2);
    CheckReport rep = mt1_conclusion_check(control);
    CHECK(rep.fails());
    CHECK(datum(rep, "control_case") == "hypothesis-violating");
    CHECK(datum(rep, "A_completely_integrally_closed") == "fails");
    CHECK(datum(rep, "conclusion") == "consistent"); // implication is vacuous
    CHECK(rep.witness->rfind("t ", 0) == 0);

    // Kummer shadow
    CheckReport shadow = mt1_conclusion_check(make_kummer(3, 4, 2));
    CHECK(shadow.holds());
    CHECK(datum(shadow, "shadow") == "exponent monoid of the uniformizer");
}

TEST_CASE("hypothesis audit") {
    RingCtxPtr kummer = make_kummer(3, 4, 2);
    CheckReport good = mt2_hypotheses_audit(kummer, RingElem::monomial(kummer, 1));
    CHECK(good.holds());
    CHECK(datum(good, "p_in_varpi_p_A") == "holds");
    CHECK(datum(good, "residue_semiperfect") == "holds");
    CHECK(datum(good, "nonzero_divisor") == "fails at finite precision");
    CHECK(datum(good, "integrally_closed_shadow") == "holds");

    RingCtxPtr plain = make_zmod(3, 4);
    CheckReport bad = mt2_hypotheses_audit(plain, RingElem::from_int(plain, 3));
    CHECK(bad.fails());
    CHECK(datum(bad, "p_in_varpi_p_A") == "fails");

    CheckReport zero = mt2_hypotheses_audit(kummer, RingElem::zero(kummer));
    CHECK(zero.fails());
    CHECK(datum(zero, "nonzero_divisor") == "fails: uniformizer is zero");
}

TEST_CASE("complete integral closure monoid") {
    MonomialRing cusp(5, 0, {2, 3}, 2);
    MonomialRing closed = complete_integral_closure_monoid(cusp);
    CHECK(closed.gens() == std::vector<long long>{1}); // F_5[t]
    CHECK(closed.uniformizer() == 2);                  // uniformizer carried over
    MonomialRing again = complete_integral_closure_monoid(closed);
    CHECK(again.gens() == closed.gens());

    MonomialRing line(5, 0, {1}, 1);
    CHECK(complete_integral_closure_monoid(line).gens() == line.gens());

    MonomialRing frac = monomial_ring_parse("Fp[t^(2/3),t] p=3");
    CHECK(frac.K() == 1);
    MonomialRing fclosed = complete_integral_closure_monoid(frac);
    CHECK(fclosed.gens() == std::vector<long long>{1}); // F_3[t^(1/3)]
    CHECK(fclosed.K() == 1);
}

TEST_CASE("monomial decisions agree with naive brute force") {
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 200; ++iter) {
        MonomialRing A = random_ring(rng, true);
        long long gap = A.frobenius_gap().value_or(-1);
        long long w = A.uniformizer();

        // naive almost-integrality for monomials: scan c <= 10, n <= 50
        for (long long e = -3 * A.gcd(); e <= gap + 2 * A.gcd(); e += A.gcd()) {
            bool naive = false;
            for (long long c = 0; c <= 10 && !naive; ++c) {
                bool all = true;
                for (long long n = 0; n <= 50; ++n)
                    if (!A.contains(c * w + n * e)) { all = false; break; }
                naive = all;
            }
            // the naive scan can only overreport when the divergence is
            // slower than 50 steps; the uniformizer is small by
            // construction, so the scan is decisive here
            bool exact = is_almost_integral(laurent_monomial(A.p(), e), A).holds();
            CHECK(exact == naive);
        }

        // naive p-root closedness: scan all integers up to the gap
        bool naive_proot = true;
        std::string naive_witness;
        for (long long e = 0; e <= gap; ++e) {
            if (e % A.gcd() != 0) continue; // outside the localization
            if (!A.contains(e) && A.contains(static_cast<long long>(A.p()) * e)) {
                naive_proot = false;
                break;
            }
        }
        CHECK(is_p_root_closed(A).holds() == naive_proot);

        // naive saturation: e is integral iff some multiple m <= 60 lands in S
        MonomialRing B = complete_integral_closure_monoid(A);
        for (long long e = 0; e <= gap + 2 * A.gcd(); ++e) {
            bool naive_sat = false;
            for (long long m = 1; m <= 60 && !naive_sat; ++m)
                if (A.contains(m * e)) naive_sat = true;
            if (e % A.gcd() == 0)
                CHECK(B.contains(e) == naive_sat);
        }
    }
}

TEST_CASE("closure operator is extensive and its output is almost integral") {
    std::mt19937_64 rng(32);
    for (int iter = 0; iter < 100; ++iter) {
        MonomialRing A = random_ring(rng);
        MonomialRing B = complete_integral_closure_monoid(A);
        for (long long g : A.gens()) CHECK(B.contains(g)); // extensive
        for (long long g : B.gens())
            CHECK(is_almost_integral(laurent_monomial(A.p(), g), A).holds());
        // consistency: if the closure is the identity, A is p-root closed
        if (B.gens() == A.gens()) CHECK(is_p_root_closed(A).holds());
    }
}

TEST_CASE("randomized transfer instances agree") {
    std::mt19937_64 rng(33);
    for (int iter = 0; iter < 100; ++iter) {
        const uint64_t primes[] = {2, 3, 5};
        uint64_t p = primes[rng() % 3];
        long long delta = 1 + static_cast<long long>(rng() % 2);
        std::set<long long> agens_set;
        for (int i = 0, n = 1 + static_cast<int>(rng() % 3); i < n; ++i)
            agens_set.insert(delta * (2 + static_cast<long long>(rng() % 6)));
        MonomialRing A(p, 0, {agens_set.begin(), agens_set.end()});
        std::vector<long long> bgens(agens_set.begin(), agens_set.end());
        bgens.push_back(A.gcd() * (1 + static_cast<long long>(rng() % 3)));
        MonomialRing B(p, 0, bgens);
        long long g = std::max<long long>(A.frobenius_gap().value_or(-1), 0) +
                      A.gcd() * (1 + static_cast<long long>(rng() % 4));
        if (g % A.gcd() != 0) g += A.gcd() - g % A.gcd();
        CHECK(ideal_transfer_check(A, B, {g}).holds());
    }
}
