#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "capax/cli.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;

    json envelope() const { return json::parse(out); }
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = capax::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("capacity subcommand") {
    const auto r = run({"--json", "capacity", "S^2 v S^5"});
    CHECK(r.code == 0);
    const json env = r.envelope();
    CHECK(env["command"] == "capacity");
    CHECK(env["input"] == "S^2 v S^5");
    CHECK(env["status"] == "ok");
    CHECK(env["result"]["capacity"] == 4);

    const auto inf = run({"--json", "capacity", "M(Z^inf, 2)"});
    CHECK(inf.code == 0);
    CHECK(inf.envelope()["result"]["capacity"] == "inf");

    const auto unk = run({"--json", "capacity", "S^1 v S^2"});
    CHECK(unk.code == 0);
    CHECK(unk.envelope()["result"]["capacity"] == "unknown");
    CHECK(unk.envelope()["result"]["reason"] == "open-problem");

    const auto text = run({"capacity", "T^2"});
    CHECK(text.code == 0);
    CHECK(text.out == "C(T^2) = 3\n");
}

TEST_CASE("require-finite") {
    CHECK(run({"capacity", "--require-finite", "S^3"}).code == 0);
    const auto r = run({"--json", "capacity", "--require-finite", "S^1 v S^2"});
    CHECK(r.code == 2);
    CHECK(r.envelope()["status"] == "error");
    CHECK(r.envelope()["error"]["code"] == "unsupported");
}

TEST_CASE("syntax errors report offsets and exit 1") {
    const auto r = run({"--json", "capacity", "S^2 v @"});
    CHECK(r.code == 1);
    const json env = r.envelope();
    CHECK(env["status"] == "error");
    CHECK(env["error"]["code"] == "syntax");
    CHECK(env["error"]["offset"] == 6);

    const auto plain = run({"capacity", "S^2 v @"});
    CHECK(plain.code == 1);
    CHECK(plain.out.empty());
    CHECK(plain.err.find("offset 6") != std::string::npos);

    CHECK(run({"capacity", "M(Z, 1)"}).code == 1);
}

TEST_CASE("dominated subcommand") {
    const auto r = run({"--json", "dominated", "S^2 v S^5"});
    CHECK(r.code == 0);
    const json env = r.envelope();
    CHECK(env["result"]["count"] == 4);
    CHECK(env["result"]["types"] == json::array({"pt", "S^2", "S^5", "S^2 v S^5"}));

    CHECK(run({"dominated", "S^1 v S^2"}).code == 2);
}

TEST_CASE("summands subcommand") {
    const auto r = run({"--json", "summands", "Z_9 + Z_64"});
    CHECK(r.code == 0);
    const json env = r.envelope();
    CHECK(env["result"]["count"] == 4);
    CHECK(env["result"]["classes"] ==
          json::array({"0", "Z_9", "Z_64", "Z_64 + Z_9"}));

    const auto inf = run({"--json", "summands", "Z^inf"});
    CHECK(inf.code == 0);
    CHECK(inf.envelope()["result"]["count"] == "inf");
    CHECK_FALSE(inf.envelope()["result"].contains("classes"));

    CHECK(run({"summands", "Z_1"}).code == 1);
}

TEST_CASE("homology and homotopy subcommands") {
    const auto r = run({"--json", "homology", "--max-degree", "4", "M(Z_6, 3)"});
    CHECK(r.code == 0);
    const json groups = r.envelope()["result"]["groups"];
    CHECK(groups["1"] == "0");
    CHECK(groups["3"] == "Z_2 + Z_3");
    CHECK(groups["4"] == "0");

    const auto h = run({"--json", "homotopy", "--max-degree", "3", "T^2"});
    CHECK(h.code == 0);
    CHECK(h.envelope()["result"]["groups"]["1"] == "Z^2");
    CHECK(h.envelope()["result"]["groups"]["2"] == "0");

    CHECK(run({"homology", "T^2"}).code == 2);
}

TEST_CASE("pp-form subcommand") {
    const auto r = run({"--json", "pp-form", "M(Z_6, 3)"});
    CHECK(r.code == 0);
    CHECK(r.envelope()["result"]["expr"] == "susp^2(P_2 v P_3)");
    CHECK(run({"pp-form", "T^2"}).code == 2);
}

TEST_CASE("idempotents subcommand") {
    const auto r = run({"--json", "idempotents", "Z^2"});
    CHECK(r.code == 0);
    const json env = r.envelope();
    CHECK(env["result"]["count"] == "inf");
    CHECK(env["result"]["em_capacity"] == 3);
    CHECK(env["result"]["witness"] == "[[1, n], [0, 0]] for n in Z");
    CHECK(env["result"]["bound_holds"].is_null());

    const auto z4 = run({"--json", "idempotents", "Z_4"});
    CHECK(z4.code == 0);
    CHECK(z4.envelope()["result"]["count"] == 2);
    CHECK(z4.envelope()["result"]["bound_holds"] == true);
}

TEST_CASE("verify subcommand") {
    const auto r = run({"--json", "verify", "--max-order", "12"});
    CHECK(r.code == 0);
    const json env = r.envelope();
    CHECK(env["result"]["mismatches"] == 0);
    CHECK(env["result"]["all_pass"] == true);
    // 1,1,1,2,1,1,1,3,2,1,1,2 groups for n = 1..12
    CHECK(env["result"]["checked"] == 17);
}

TEST_CASE("oracle cap yields exit 3") {
    const auto r = run({"--json", "--oracle-cap", "8", "idempotents", "Z_16"});
    CHECK(r.code == 3);
    CHECK(r.envelope()["error"]["code"] == "resource-limit");
}

TEST_CASE("usage errors and help") {
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    const auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("capacity") != std::string::npos);
}
