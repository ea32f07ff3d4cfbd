#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = tiltkit::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("sharp prints the 0-th component") {
    Run r = run({"sharp", "--ring", "Zp[p^(1/p^2)] p=3 M=4", "--seq", "3,x^3,x"});
    CHECK(r.code == 0);
    CHECK(r.out == "3\n");

    Run alias = run({"tilt", "sharp", "--ring", "Zp[p^(1/p^2)] p=3 M=4", "--seq", "3,x^3,x"});
    CHECK(alias.code == 0);
    CHECK(alias.out == "3\n");
}

TEST_CASE("check proot exits 1 with the witness") {
    Run r = run({"check", "proot", "--ring", "Fp[t^2,t^3] p=5", "--uniformizer", "t^2"});
    CHECK(r.code == 1);
    CHECK(r.out.find("witness: t:") != std::string::npos);

    Run ok = run({"check", "proot", "--ring", "Fp[t] p=5"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("verdict: holds") != std::string::npos);
}

TEST_CASE("json reports carry the declared fields") {
    Run r = run({"check", "almost-integral", "--ring", "Fp[t^2,t^3] p=5", "--uniformizer", "t^2",
                 "--elem", "t", "--json"});
    CHECK(r.code == 0);
    auto j = nlohmann::ordered_json::parse(r.out);
    CHECK(j.contains("verdict"));
    CHECK(j.contains("witness"));
    CHECK(j.contains("bounds"));
    CHECK(j.contains("refs"));
    CHECK(j["verdict"] == "holds");
    CHECK(!j["refs"].empty());
}

TEST_CASE("tilt verbs emit the wire format") {
    Run r = run({"tilt", "lift", "--ring", "Zp p=5 M=2", "--seq", "1,1"});
    CHECK(r.code == 0);
    auto j = nlohmann::ordered_json::parse(r.out);
    CHECK(j["ctx"] == "Zp p=5 M=2");
    CHECK(j["seq"].size() == 2);
    CHECK(j["prec"] == 2);

    Run add = run({"tilt", "add", "--ring", "Zp p=5 M=2", "--seq", "1,1", "--seq", "1,1"});
    CHECK(add.code == 0);
    auto js = nlohmann::ordered_json::parse(add.out);
    CHECK(js["seq"].size() == 1);
    CHECK(js["seq"][0][0] == 7); // 2^5 mod 25

    Run mul = run({"tilt", "mul", "--ring", "Zp p=5 M=2", "--seq", "1,1", "--seq", "1,1"});
    CHECK(mul.code == 0);

    Run frob = run({"tilt", "frob", "--ring", "Zp[p^(1/p^2)] p=3 M=4", "--seq", "3,x^3,x"});
    CHECK(frob.code == 0);
    auto jf = nlohmann::ordered_json::parse(frob.out);
    CHECK(jf["seq"][0][0] == 27);
}

TEST_CASE("error exit statuses") {
    // parse errors and bad data exit 2
    CHECK(run({"sharp", "--ring", "Zp p=4 M=2", "--seq", "1"}).code == 2);
    CHECK(run({"tilt", "lift", "--ring", "Zp p=5 M=2", "--seq", "2,2"}).code == 2); // incompatible
    CHECK(run({"demo", "no-such-demo"}).code == 2);
    CHECK(run({"check", "almost-integral", "--ring", "Fp[t^2,t^3] p=5"}).code == 2); // missing --elem
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"suite", "--unknown-flag"}).code == 2);

    // caps and depth limits exit 3
    CHECK(run({"check", "semiperfect", "--ring", "Fp[t^(1/p^5)]/t^1000 p=2"}).code == 3);
    CHECK(run({"tilt", "add", "--ring", "Zp p=5 M=2", "--seq", "1,1", "--seq", "1,1", "--prec",
               "5"}).code == 3);
}

TEST_CASE("teich prints the lift") {
    Run r = run({"teich", "--q", "5", "--M", "2", "--a", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "7\n");

    Run j = run({"teich", "--q", "9", "--M", "3", "--a", "x+1", "--json"});
    CHECK(j.code == 0);
    auto parsed = nlohmann::ordered_json::parse(j.out);
    CHECK(parsed.contains("modulus"));
}

TEST_CASE("demos run and narrate") {
    for (const char* name : {"monoid-lemma", "teichmuller", "minus-one", "krull-rank2"}) {
        Run r = run({"demo", name});
        CHECK(r.code == 0);
        CHECK(r.out.size() > 40);
    }
    Run audit = run({"demo", "mt2-audit"});
    CHECK(audit.code == 0);
    CHECK(audit.out.find("p_in_varpi_p_A") != std::string::npos);
}

TEST_CASE("krull and completion verbs") {
    Run k1 = run({"krull", "--rank", "1"});
    CHECK(k1.code == 0);
    CHECK(k1.out.find("{xi >= 0}") != std::string::npos);

    Run k2 = run({"krull", "--rank", "2"});
    CHECK(k2.code == 0);
    CHECK(k2.out.find("{xi_1 >= 0}") != std::string::npos);

    Run grid = run({"krull", "grid", "--bound", "10"});
    CHECK(grid.code == 0);

    Run comp = run({"completion", "--p", "3", "--M", "5"});
    CHECK(comp.code == 0);
    CHECK(comp.out.find("verdict: holds") != std::string::npos);
}

TEST_CASE("suite json output is byte-identical for a fixed seed") {
    Run a = run({"suite", "--seed", "42", "--json"});
    Run b = run({"suite", "--seed", "42", "--json"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"pass\": false") == std::string::npos);

    // plain mode prints one line per criterion
    Run plain = run({"suite", "--seed", "7"});
    CHECK(plain.code == 0);
    int lines = 0;
    for (char ch : plain.out)
        if (ch == '\n') ++lines;
    CHECK(lines == 11);
}

TEST_CASE("check mt1 and mt2 dispatch on the ring descriptor") {
    Run mono = run({"check", "mt1", "--ring", "Fp[t^(1/9)] p=3"});
    CHECK(mono.code == 0);

    Run shadow = run({"check", "mt1", "--ring", "Zp[p^(1/p^2)] p=3 M=4"});
    CHECK(shadow.code == 0);
    CHECK(shadow.out.find("shadow") != std::string::npos);

    Run audit = run({"check", "mt2", "--ring", "Zp[p^(1/p^2)] p=3 M=4", "--uniformizer", "x"});
    CHECK(audit.code == 0);

    Run fail = run({"check", "mt2", "--ring", "Zp p=3 M=4", "--uniformizer", "3"});
    CHECK(fail.code == 1);
}
