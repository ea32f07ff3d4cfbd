#pragma once

#include <cstdint>
#include <string>

#include "tiltkit/report.hpp"

namespace tiltkit {

/// Ordered abelian groups the value-level checks run over: Z, Z^2 with the
/// lexicographic order (first coordinate dominant), and Q (divisible rank
/// one, the shape of Z[1/p] hulls).
enum class GroupKind { Z, Z2Lex, Q };

struct ValueGroup {
    GroupKind kind = GroupKind::Z;
    int rank() const { return kind == GroupKind::Z2Lex ? 2 : 1; }
    std::string name() const;
};

/// One group element. Z: a. Z2Lex: (a, b). Q: a/b with b > 0 reduced.
struct GroupElem {
    long long a = 0;
    long long b = 0; // denominator for Q (then > 0), second coordinate for Z2Lex

    static GroupElem of_int(long long v) { return {v, 0}; }
    static GroupElem of_pair(long long x1, long long x2) { return {x1, x2}; }
    static GroupElem of_fraction(long long num, long long den);
};

int cmp(const ValueGroup& g, const GroupElem& x, const GroupElem& y);
GroupElem add(const ValueGroup& g, const GroupElem& x, const GroupElem& y);
GroupElem scalar_mul(const ValueGroup& g, long long n, const GroupElem& x);
bool nonneg(const ValueGroup& g, const GroupElem& x);
std::string elem_str(const ValueGroup& g, const GroupElem& x);

/// A valuation-ring model: membership of a value in the ring is v >= 0;
/// t_val is the value of the pseudouniformizer and must be positive.
struct ValModel {
    ValueGroup group;
    GroupElem t_val;
};

ValModel make_val_model(GroupKind kind);
ValModel make_val_model(GroupKind kind, GroupElem t_val);

/// Exact decision of "is there c >= 0 with c + n*xi >= 0 for all n":
/// rank one holds iff xi >= 0, lexicographic rank two iff the dominant
/// coordinate is >= 0 (an infinitesimally negative tail is absorbed by
/// c = (1, 0)).
CheckReport val_almost_integral(const GroupElem& xi, const ValModel& model);

/// Value sets appearing as complete integral closures.
enum class ValSet { Ring, HeightOneLocalization, Whole };

bool set_contains(const ValueGroup& g, ValSet set, const GroupElem& xi);
std::string set_str(const ValueGroup& g, ValSet set);

struct CicResult {
    ValSet set = ValSet::Ring;
    CheckReport report;
};

/// The complete integral closure at the value level: the ring itself in
/// rank one, the half-space {xi_1 >= 0} (value monoid of the localization
/// at the height-one prime) in lexicographic rank two. Idempotence under
/// the almost-integrality operator is verified on a grid.
CicResult val_cic(const ValModel& model, long long grid_bound = 20);

/// All supported groups have a smallest nonzero convex subgroup; for Z^2
/// lex this is verified by enumerating generated convex subgroups on a
/// grid. The report names the subgroup.
CheckReport val_height_one_report(const ValModel& model, long long grid_bound = 20);
bool val_height_one_exists(const ValModel& model);

/// Rank-one discrete completion model: checks that every nonzero class of
/// Z/p^M carries a valuation < M, that the ideals form a chain of length
/// M+1, and that fractions with denominator prime to p stay distinct mod
/// p^M whenever their difference has valuation < M.
CheckReport val_completion_check(uint64_t p, uint32_t M, long long sample_bound = 30);

} // namespace tiltkit
