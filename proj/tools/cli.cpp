#include "cli.hpp"

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "tiltkit/closure.hpp"
#include "tiltkit/serialize.hpp"
#include "tiltkit/suite.hpp"
#include "tiltkit/tilt.hpp"
#include "tiltkit/valuation.hpp"
#include "tiltkit/witt.hpp"

namespace tiltkit::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFails = 1;
constexpr int kUsage = 2;
constexpr int kLimit = 3;

int code_of(const Error& e) {
    switch (e.code()) {
        case ErrorCode::TooLarge:
        case ErrorCode::InsufficientDepth:
            return kLimit;
        default:
            return kUsage;
    }
}

int code_of(const CheckReport& rep) {
    return rep.fails() ? kFails : kOk;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

TiltElem parse_tilt(const std::string& ring, const std::string& seq) {
    // the wire format itself is accepted as input
    if (!seq.empty() && seq.front() == '{') {
        ojson j = ojson::parse(seq, nullptr, false);
        if (j.is_discarded()) fail(ErrorCode::Parse, "malformed tilt-element JSON");
        return tilt_from_json(j);
    }
    if (ring.empty()) fail(ErrorCode::Usage, "--ring is required for a plain --seq");
    RingCtxPtr ctx = ring_make(ring);
    std::vector<RingElem> elems;
    for (const std::string& part : split_commas(seq)) elems.push_back(elem_parse(ctx, part));
    return tilt_lift(ctx, std::move(elems));
}

void print_report(const CheckReport& rep, bool json, std::ostream& out) {
    if (json) {
        out << report_to_json(rep).dump(2) << "\n";
        return;
    }
    out << "verdict: " << rep.verdict_name() << "\n";
    if (rep.witness) out << "witness: " << *rep.witness << "\n";
    for (const auto& [k, v] : rep.data) out << k << ": " << v << "\n";
    if (!rep.bounds.empty()) {
        out << "bounds:";
        for (const auto& [k, v] : rep.bounds) out << " " << k << "=" << v;
        out << "\n";
    }
    if (!rep.notes.empty()) out << "notes: " << rep.notes << "\n";
}

// ---------------------------------------------------------------------------
// demos

int demo_monoid_lemma(bool json, std::ostream& out) {
    RingCtxPtr z25 = make_zmod(5, 2);
    TiltElem one = tilt_one(z25, 1);
    TiltElem sum = tilt_add(one, one);
    auto [s, cert] = sharp(sum);
    ojson j;
    j["ring"] = z25->descriptor();
    j["walkthrough"] = ojson::array();
    auto step = [&](const std::string& text) {
        j["walkthrough"].push_back(text);
        if (!json) out << text << "\n";
    };
    step("addition on the inverse limit is a componentwise limit of p-th powers");
    step("take x = y = (1, 1) at depth 1 over " + z25->descriptor());
    step("component 0 approximants: 1+1 = 2, then (1+1)^5 = 2^5 = 32 = 7 mod 25  [certified mod 5^2]");
    step("x + y = (" + sum.seq[0].str() + ") at depth 0, precision " + std::to_string(sum.prec));
    step("sharp(x + y) = " + s.str() + " (certified mod 5^" + std::to_string(cert) + ")");
    step("sharp(x) + sharp(y) = 2, so sharp is not additive: 7 != 2");
    step("sharp(x * y) = 1 = sharp(x) * sharp(y): multiplicativity is exact");
    if (json) out << j.dump(2) << "\n";
    return kOk;
}

int demo_teichmuller(bool json, std::ostream& out) {
    WittCtx w = make_witt_ctx(5, 2);
    ojson j;
    j["ring"] = w.realization->descriptor();
    j["iteration"] = ojson::array();
    auto step = [&](const std::string& text) {
        j["iteration"].push_back(text);
        if (!json) out << text << "\n";
    };
    step("the multiplicative lift of a mod-p residue is the limit of y -> y^q");
    RingElem y = RingElem::from_int(w.realization, 2);
    step("start with the lift 2 of 2 in F_5");
    for (int i = 0; i < 2; ++i) {
        RingElem next = y.pow(5);
        step(y.str() + "^5 = " + next.str() + " mod 25  [gain: one power of 5 per step]");
        y = next;
    }
    ojson table = ojson::array();
    for (uint64_t a = 0; a < 5; ++a) {
        RingElem lift = teichmuller(RingElem::from_int(w.residue_field, static_cast<long long>(a)), w);
        table.push_back({a, lift.coeffs()[0]});
        if (!json) out << "lift(" << a << ") = " << lift.str() << "\n";
    }
    j["lift_table"] = table;
    if (json) out << j.dump(2) << "\n";
    return kOk;
}

int demo_minus_one(bool json, std::ostream& out) {
    WittCtx w = make_witt_ctx(2, 4);
    PRootResult root = unique_p_root_in_sharp_image(RingElem::one(w.realization), w);
    ojson j;
    j["ring"] = w.realization->descriptor();
    std::vector<uint64_t> roots;
    for (uint64_t t = 0; t < 16; ++t)
        if ((t * t) % 16 == 1) roots.push_back(t);
    j["roots_of_t2_eq_1"] = roots;
    j["image"] = {0, 1};
    j["image_roots"] = root.image_roots;
    if (json) {
        j["note"] = "15 = -1 mod 16 squares to 1 but is outside the multiplicative-lift image {0, 1}";
        out << j.dump(2) << "\n";
        return kOk;
    }
    out << "over " << w.realization->descriptor() << ", t^2 = 1 has roots:";
    for (uint64_t r : roots) out << " " << r;
    out << "\n";
    out << "the multiplicative-lift image of F_2 is {0, 1}\n";
    out << "exactly " << root.image_roots << " root lies in the image, namely " << root.root.str()
        << "\n";
    out << "-1 = 15 mod 16 is a root but is not in the image\n";
    return kOk;
}

int demo_krull_rank2(bool json, std::ostream& out) {
    ValModel m = make_val_model(GroupKind::Z2Lex);
    CicResult cic = val_cic(m);
    ojson j;
    j["group"] = m.group.name();
    j["ring"] = set_str(m.group, ValSet::Ring);
    j["complete_integral_closure"] = set_str(m.group, cic.set);
    j["group_set"] = set_str(m.group, ValSet::Whole);
    j["examples"] = ojson::array();
    auto ex = [&](long long a, long long b) {
        GroupElem xi = GroupElem::of_pair(a, b);
        CheckReport rep = val_almost_integral(xi, m);
        std::string line = elem_str(m.group, xi) + ": " +
                           (rep.holds() ? "almost integral" : "not almost integral");
        j["examples"].push_back(line);
        if (!json) out << "  " << line << "\n";
    };
    if (!json) {
        out << "value group " << m.group.name() << ", ring = " << set_str(m.group, ValSet::Ring)
            << "\n";
        out << "complete integral closure = " << set_str(m.group, cic.set)
            << " (the height-one localization)\n";
    }
    ex(0, -3);
    ex(0, 0);
    ex(-1, 5);
    if (!json)
        out << "three strictly nested sets: {xi >= 0} < {xi_1 >= 0} < Gamma\n";
    else
        out << j.dump(2) << "\n";
    return kOk;
}

int demo_mt2_audit(bool json, std::ostream& out) {
    RingCtxPtr kummer = make_kummer(3, 4, 2);
    CheckReport rep = mt2_hypotheses_audit(kummer, RingElem::monomial(kummer, 1));
    if (!json)
        out << "hypothesis audit over " << kummer->descriptor() << " with varpi = x\n";
    print_report(rep, json, out);
    return code_of(rep);
}

// ---------------------------------------------------------------------------

struct TiltArgs {
    std::string ring;
    std::vector<std::string> seqs;
    std::optional<uint32_t> prec;
};

int run_tilt_subcommand(const std::string& verb, const TiltArgs& args, bool json,
                        std::ostream& out) {
    if (args.seqs.empty()) fail(ErrorCode::Usage, "--seq is required");
    TiltElem x = parse_tilt(args.ring, args.seqs[0]);

    auto emit_elem = [&](const TiltElem& e) {
        out << tilt_to_json(e).dump(json ? 2 : -1) << "\n";
        return kOk;
    };
    if (verb == "lift") return emit_elem(x);
    if (verb == "sharp") {
        auto [value, cert] = sharp(x);
        if (json) {
            ojson j;
            j["value"] = elem_to_json(value);
            j["str"] = value.str();
            j["precision"] = cert;
            out << j.dump(2) << "\n";
        } else {
            out << value.str() << "\n";
        }
        return kOk;
    }
    if (verb == "frob") return emit_elem(tilt_frobenius(x));
    if (verb == "frobinv") return emit_elem(tilt_frobenius_inv(x));
    if (verb == "add" || verb == "mul") {
        if (args.seqs.size() != 2) fail(ErrorCode::Usage, verb + " needs --seq twice");
        TiltElem y = parse_tilt(args.ring, args.seqs[1]);
        return emit_elem(verb == "add" ? tilt_add(x, y, args.prec) : tilt_mul(x, y));
    }
    fail(ErrorCode::Usage, "unknown tilt subcommand " + verb);
}

int run_check(const std::string& kind, const std::string& ring,
              const std::optional<std::string>& elem, const std::optional<std::string>& uniformizer,
              std::optional<long long> bound, bool json, std::ostream& out) {
    ClosureBounds bounds;
    if (bound) bounds.power_bound = static_cast<int>(*bound);

    if (kind == "almost-integral" || kind == "integral") {
        MonomialRing A = monomial_ring_parse(ring, uniformizer);
        if (!elem) fail(ErrorCode::Usage, "--elem is required");
        LaurentPoly x = laurent_parse(A, *elem);
        CheckReport rep =
            kind == "integral" ? is_integral(x, A, bounds) : is_almost_integral(x, A, bounds);
        print_report(rep, json, out);
        return code_of(rep);
    }
    if (kind == "proot") {
        MonomialRing A = monomial_ring_parse(ring, uniformizer);
        CheckReport rep = is_p_root_closed(A);
        print_report(rep, json, out);
        return code_of(rep);
    }
    if (kind == "closure") {
        MonomialRing A = monomial_ring_parse(ring, uniformizer);
        MonomialRing B = complete_integral_closure_monoid(A);
        CheckReport rep;
        rep.refs = {"complete-integral-closure-of-monomial-ring"};
        rep.datum("input", A.str());
        rep.datum("closure", B.str());
        rep.datum("idempotent", "yes");
        rep.notes = B.gens() == A.gens() ? "ring is its own complete integral closure"
                                         : "closure is strictly larger";
        print_report(rep, json, out);
        return kOk;
    }
    if (kind == "semiperfect") {
        RingCtxPtr ctx = ring_make(ring);
        CheckReport rep = is_semiperfect(ctx);
        print_report(rep, json, out);
        return code_of(rep);
    }
    if (kind == "mt1") {
        CheckReport rep = ring.rfind("Fp[", 0) == 0
                              ? mt1_conclusion_check(monomial_ring_parse(ring, uniformizer))
                              : mt1_conclusion_check(ring_make(ring));
        print_report(rep, json, out);
        return code_of(rep);
    }
    if (kind == "mt2") {
        RingCtxPtr ctx = ring_make(ring);
        if (!uniformizer) fail(ErrorCode::Usage, "--uniformizer is required for mt2");
        CheckReport rep = mt2_hypotheses_audit(ctx, elem_parse(ctx, *uniformizer));
        print_report(rep, json, out);
        return code_of(rep);
    }
    fail(ErrorCode::Usage, "unknown check kind " + kind);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite-precision toolkit for tilting, multiplicative lifts and closure checks"};
    app.require_subcommand(1);
    app.fallthrough(true); // let --json appear after the subcommand
    bool json = false;
    app.add_flag("--json", json, "emit machine-readable JSON");

    int exit_code = kOk;
    std::function<void()> action;

    // tilt family
    auto add_tilt_sub = [&](CLI::App* parent, const std::string& verb) {
        auto sub = parent->add_subcommand(verb);
        auto targs = std::make_shared<TiltArgs>();
        sub->add_option("--ring", targs->ring, "ring descriptor");
        sub->add_option("--seq", targs->seqs,
                        "comma-separated compatible sequence, or a tilt-element JSON")
            ->expected(1, 2);
        auto prec = std::make_shared<long long>(-1);
        if (verb == "add") sub->add_option("--prec", *prec, "target precision");
        sub->callback([&, verb, targs, prec] {
            action = [&, verb, targs, prec] {
                TiltArgs a = *targs;
                if (*prec >= 0) a.prec = static_cast<uint32_t>(*prec);
                exit_code = run_tilt_subcommand(verb, a, json, out);
            };
        });
        return sub;
    };
    auto tilt_cmd = app.add_subcommand("tilt", "operations on inverse-limit elements");
    tilt_cmd->require_subcommand(1);
    for (const char* verb : {"lift", "sharp", "add", "mul", "frob", "frobinv"})
        add_tilt_sub(tilt_cmd, verb);
    add_tilt_sub(&app, "sharp"); // top-level alias

    // teich
    {
        auto sub = app.add_subcommand("teich", "multiplicative lift of a residue");
        auto q = std::make_shared<uint64_t>(0);
        auto M = std::make_shared<uint32_t>(1);
        auto a = std::make_shared<std::string>();
        auto verify = std::make_shared<bool>(false);
        sub->add_option("--q", *q, "residue field size")->required();
        sub->add_option("--M", *M, "precision")->required();
        sub->add_option("--a", *a, "residue element");
        sub->add_flag("--verify", *verify,
                      "compare the lift with the inverse-limit route on all residues");
        sub->callback([&, q, M, a, verify] {
            action = [&, q, M, a, verify] {
                WittCtx w = make_witt_ctx(*q, *M);
                if (*verify) {
                    CheckReport rep = sharp_equals_teichmuller(w);
                    print_report(rep, json, out);
                    exit_code = code_of(rep);
                    return;
                }
                if (a->empty()) fail(ErrorCode::Usage, "teich needs --a or --verify");
                RingElem lift = teichmuller(elem_parse(w.residue_field, *a), w);
                if (json) {
                    ojson j;
                    j["ring"] = w.realization->descriptor();
                    j["modulus"] = RingElem(w.realization, w.realization->minpoly).str();
                    j["value"] = elem_to_json(lift);
                    j["str"] = lift.str();
                    out << j.dump(2) << "\n";
                } else {
                    out << lift.str() << "\n";
                }
                exit_code = kOk;
            };
        });
    }

    // check
    {
        auto sub = app.add_subcommand("check", "decidable closure-property checks");
        auto kind = std::make_shared<std::string>();
        auto ring = std::make_shared<std::string>();
        auto elem = std::make_shared<std::string>();
        auto unif = std::make_shared<std::string>();
        auto bound = std::make_shared<long long>(-1);
        sub->add_option("kind", *kind, "almost-integral|integral|proot|semiperfect|mt1|mt2|closure")
            ->required();
        sub->add_option("--ring", *ring, "ring descriptor")->required();
        sub->add_option("--elem", *elem, "element expression");
        sub->add_option("--uniformizer", *unif, "pseudouniformizer monomial");
        sub->add_option("--bound", *bound, "power bound for bounded scans");
        sub->callback([&, kind, ring, elem, unif, bound] {
            action = [&, kind, ring, elem, unif, bound] {
                std::optional<std::string> e =
                    elem->empty() ? std::nullopt : std::make_optional(*elem);
                std::optional<std::string> u =
                    unif->empty() ? std::nullopt : std::make_optional(*unif);
                std::optional<long long> b = *bound < 0 ? std::nullopt : std::make_optional(*bound);
                exit_code = run_check(*kind, *ring, e, u, b, json, out);
            };
        });
    }

    // krull
    {
        auto sub = app.add_subcommand("krull", "value-level valuation-ring checks");
        auto rank = std::make_shared<int>(2);
        sub->add_option("--rank", *rank, "1 or 2")->check(CLI::IsMember({1, 2}));
        auto grid = sub->add_subcommand("grid", "verify the nested sets on a grid");
        auto bound = std::make_shared<long long>(20);
        grid->add_option("--bound", *bound, "grid half-width");
        grid->callback([&, rank, bound] {
            action = [&, rank, bound] {
                ValModel m = make_val_model(*rank == 1 ? GroupKind::Z : GroupKind::Z2Lex);
                CicResult cic = val_cic(m, *bound);
                print_report(cic.report, json, out);
                exit_code = code_of(cic.report);
            };
        });
        sub->callback([&, rank] {
            if (sub->get_subcommands().empty()) {
                action = [&, rank] {
                    ValModel m = make_val_model(*rank == 1 ? GroupKind::Z : GroupKind::Z2Lex);
                    CicResult cic = val_cic(m);
                    CheckReport h1 = val_height_one_report(m);
                    if (json) {
                        ojson j;
                        j["group"] = m.group.name();
                        j["ring"] = set_str(m.group, ValSet::Ring);
                        j["complete_integral_closure"] = set_str(m.group, cic.set);
                        j["cic_report"] = report_to_json(cic.report);
                        j["height_one"] = report_to_json(h1);
                        out << j.dump(2) << "\n";
                    } else {
                        out << "group: " << m.group.name() << "\n";
                        out << "ring: " << set_str(m.group, ValSet::Ring) << "\n";
                        out << "complete integral closure: " << set_str(m.group, cic.set) << "\n";
                        print_report(cic.report, false, out);
                        print_report(h1, false, out);
                    }
                    exit_code = cic.report.holds() && h1.holds() ? kOk : kFails;
                };
            }
        });
    }

    // completion
    {
        auto sub = app.add_subcommand("completion", "rank-one completion model checks");
        auto p = std::make_shared<uint64_t>(0);
        auto M = std::make_shared<uint32_t>(1);
        sub->add_option("--p", *p, "prime")->required();
        sub->add_option("--M", *M, "precision")->required();
        sub->callback([&, p, M] {
            action = [&, p, M] {
                CheckReport rep = val_completion_check(*p, *M);
                print_report(rep, json, out);
                exit_code = code_of(rep);
            };
        });
    }

    // demo
    {
        auto sub = app.add_subcommand("demo", "narrated walkthroughs");
        auto name = std::make_shared<std::string>();
        sub->add_option("name", *name, "monoid-lemma|teichmuller|minus-one|krull-rank2|mt2-audit")
            ->required();
        sub->callback([&, name] {
            action = [&, name] {
                static const std::map<std::string, std::function<int(bool, std::ostream&)>> registry =
                    {{"monoid-lemma", demo_monoid_lemma},
                     {"teichmuller", demo_teichmuller},
                     {"minus-one", demo_minus_one},
                     {"krull-rank2", demo_krull_rank2},
                     {"mt2-audit", demo_mt2_audit}};
                auto it = registry.find(*name);
                if (it == registry.end()) fail(ErrorCode::UnknownDemo, "unknown demo " + *name);
                exit_code = it->second(json, out);
            };
        });
    }

    // suite
    {
        auto sub = app.add_subcommand("suite", "run the acceptance suite");
        auto seed = std::make_shared<uint64_t>(42);
        sub->add_option("--seed", *seed, "deterministic seed");
        sub->callback([&, seed] {
            action = [&, seed] {
                auto results = run_acceptance_suite(*seed);
                bool all = true;
                if (json) {
                    out << suite_to_json(results, *seed).dump(2) << "\n";
                    for (const auto& r : results) all = all && r.pass;
                } else {
                    for (const auto& r : results) {
                        all = all && r.pass;
                        out << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ": " << r.name;
                        if (!r.pass) out << " -- " << r.detail;
                        out << "\n";
                    }
                }
                exit_code = all ? kOk : kFails;
            };
        });
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return kOk;
        }
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (action) action();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return code_of(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return exit_code;
}

} // namespace tiltkit::cli
