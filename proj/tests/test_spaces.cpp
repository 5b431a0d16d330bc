#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "capax/error.hpp"
#include "capax/spaces.hpp"
#include "capax/summands.hpp"
#include "test_support.hpp"

using namespace capax;
using namespace capax::spaces;
using fga::AbelianGroup;
using fga::parse_group;

namespace {

CapacityResult cap(const std::string& text) { return capacity(parse(text)); }

} // namespace

TEST_CASE("parsing atoms and operators") {
    const auto e = parse("S^2 v S^5");
    REQUIRE(e->kind == SpaceExpr::Kind::Wedge);
    REQUIRE(e->children.size() == 2);
    CHECK(e->children[0]->kind == SpaceExpr::Kind::Sphere);
    CHECK(e->children[0]->n == 2);
    CHECK(e->children[1]->n == 5);

    const auto m = parse("M(Z_9 + Z_64, 2)");
    REQUIRE(m->kind == SpaceExpr::Kind::Moore);
    CHECK(m->group == parse_group("Z_9 + Z_64"));
    CHECK(m->n == 2);

    CHECK(parse("pt")->kind == SpaceExpr::Kind::Point);
    CHECK(parse("T^3")->n == 3);
    CHECK(parse("P_5")->kind == SpaceExpr::Kind::PseudoProjective);
    CHECK(parse("susp^2(P_3)")->kind == SpaceExpr::Kind::Suspension);
    CHECK(parse(" S^2vS^3 ")->kind == SpaceExpr::Kind::Wedge);
    // precedence: x binds tighter than v
    const auto p = parse("S^2 v T^1 x T^2");
    REQUIRE(p->kind == SpaceExpr::Kind::Wedge);
    CHECK(p->children[1]->kind == SpaceExpr::Kind::Product);
}

TEST_CASE("parse errors carry byte offsets") {
    try {
        parse("S^2 v @");
        FAIL("expected a syntax error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Syntax);
        REQUIRE(e.offset().has_value());
        CHECK(*e.offset() == 6);
    }
    try {
        parse("M(Z, 1)");
        FAIL("expected a domain error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Domain);
        REQUIRE(e.offset().has_value());
    }
    CHECK_THROWS_AS(parse("M(W, 2)"), Error);
    CHECK_THROWS_AS(parse("S^2 v"), Error);
    CHECK_THROWS_AS(parse(""), Error);
}

TEST_CASE("normalization of the basic rewrites") {
    const auto nf = normalize(parse("S^2 v S^2"));
    REQUIRE(nf.kind == NormalForm::Kind::MooreWedge);
    CHECK(nf.groups.at(2) == AbelianGroup::free_group(2));

    const auto t2 = normalize(parse("T^2"));
    REQUIRE(t2.kind == NormalForm::Kind::EMProduct);
    CHECK(t2.groups.at(1) == AbelianGroup::free_group(2));

    const auto open = normalize(parse("S^1 v S^2"));
    REQUIRE(open.kind == NormalForm::Kind::Unclassified);
    CHECK(open.reason_code == "open-problem");

    CHECK(normalize(parse("pt")).kind == NormalForm::Kind::PointForm);
    CHECK(normalize(parse("P_1")).kind == NormalForm::Kind::PointForm);
    CHECK(normalize(parse("M(0, 3)")).kind == NormalForm::Kind::PointForm);
    CHECK(normalize(parse("P_0")) == normalize(parse("S^1")));
    CHECK(normalize(parse("susp^1(P_5)")) == normalize(parse("M(Z_5, 2)")));
    CHECK(normalize(parse("susp^3(S^2)")) == normalize(parse("S^5")));
    CHECK(normalize(parse("K(Z^2, 1)")) == normalize(parse("T^2")));

    // single-atom wedge/product collapse
    CHECK(normalize(parse("(T^2) v pt")) == normalize(parse("T^2")));
    CHECK(normalize(parse("S^2 x pt")) == normalize(parse("S^2")));

    // unsupported mixes
    CHECK(normalize(parse("S^2 x S^3")).reason_code == "unsupported-mix");
    CHECK(normalize(parse("K(Z_2, 1) v S^2")).reason_code == "unsupported-mix");
    CHECK(normalize(parse("P_3")).reason_code == "unsupported-mix");
    CHECK(normalize(parse("M(Q, 2) v M(Q, 2)")).reason_code == "q-sum");
}

TEST_CASE("capacity of the worked spaces") {
    CHECK(cap("S^3") == CapacityResult::finite(2));
    CHECK(cap("S^1") == CapacityResult::finite(2));
    CHECK(cap("S^2 v S^5") == CapacityResult::finite(4));
    CHECK(cap("T^2") == CapacityResult::finite(3));
    CHECK(cap("S^1 v S^1 v S^1") == CapacityResult::finite(4));
    CHECK(cap("M(Z_2^2 + Z_3 + Z^2, 4)") == CapacityResult::finite(18));
    CHECK(cap("K(Q,1)") == CapacityResult::finite(2));
    CHECK(cap("M(Z^inf, 2)") == CapacityResult::infinite());
    CHECK(cap("pt") == CapacityResult::finite(1));
    CHECK(cap("S^1 v S^2") == CapacityResult::unknown("open-problem"));
    // non-Hopfian factor in a multi-degree product rule
    CHECK(cap("M(Z^inf, 2) v M(Z_2, 3)") == CapacityResult::unknown("non-hopfian"));
}

TEST_CASE("capacity ignores child order") {
    std::mt19937 rng(2718);
    for (int i = 0; i < 40; ++i) {
        auto e = testsupport::random_finite_expr(rng);
        if (e->kind != SpaceExpr::Kind::Wedge && e->kind != SpaceExpr::Kind::Product) continue;
        auto children = e->children;
        std::reverse(children.begin(), children.end());
        auto r = e->kind == SpaceExpr::Kind::Wedge ? wedge(children) : product(children);
        CHECK(capacity(e) == capacity(r));
    }
}

TEST_CASE("dominated types of the worked spaces") {
    auto names = [](const std::vector<ExprPtr>& v) {
        std::vector<std::string> out;
        for (const auto& e : v) out.push_back(print(e));
        return out;
    };
    CHECK(names(dominated_types(parse("S^2"))) == std::vector<std::string>{"pt", "S^2"});
    CHECK(names(dominated_types(parse("S^2 v S^5"))) ==
          std::vector<std::string>{"pt", "S^2", "S^5", "S^2 v S^5"});
    CHECK(names(dominated_types(parse("M(Z_4, 3)"))) == std::vector<std::string>{"pt", "M(Z_4, 3)"});
    CHECK(names(dominated_types(parse("T^2"))) == std::vector<std::string>{"pt", "S^1", "T^2"});
    CHECK(names(dominated_types(parse("K(Q, 1)"))) == std::vector<std::string>{"pt", "K(Q, 1)"});
    CHECK_THROWS_AS(dominated_types(parse("S^1 v S^2")), Error);
    CHECK_THROWS_AS(dominated_types(parse("M(Z^inf, 2)")), Error);
}

TEST_CASE("domination consistency on random expressions") {
    std::mt19937 rng(424242);
    int done = 0;
    while (done < 60) {
        const auto e = testsupport::random_finite_expr(rng);
        const auto c = capacity(e);
        REQUIRE(c.kind == CapacityResult::Kind::Finite);
        const auto doms = dominated_types(e);
        CHECK(Int(doms.size()) == c.value);
        for (std::size_t i = 0; i < doms.size(); ++i) {
            const auto ci = capacity(doms[i]);
            REQUIRE(ci.kind == CapacityResult::Kind::Finite);
            CHECK(ci.value <= c.value);
            for (std::size_t j = i + 1; j < doms.size(); ++j) CHECK_FALSE(*doms[i] == *doms[j]);
        }
        ++done;
    }
}

TEST_CASE("homology") {
    CHECK(homology(parse("M(Z_9 + Z_64, 3)"), 3) == parse_group("Z_9 + Z_64"));
    CHECK(homology(parse("S^2 v S^2"), 2) == parse_group("Z^2"));
    CHECK(homology(parse("S^2"), 5) == AbelianGroup::trivial());
    CHECK(homology(parse("pt"), 1) == AbelianGroup::trivial());
    CHECK_THROWS_AS(homology(parse("T^2"), 1), Error);
    CHECK_THROWS_AS(homology(parse("S^2"), 0), Error);
}

TEST_CASE("homotopy groups") {
    CHECK(homotopy_group(parse("T^3"), 1) == parse_group("Z^3"));
    CHECK(homotopy_group(parse("K(Z_6, 2)"), 2) == parse_group("Z_6"));
    CHECK(homotopy_group(parse("K(Z_6, 2)"), 3) == AbelianGroup::trivial());
    CHECK_THROWS_AS(homotopy_group(parse("S^2"), 2), Error);
}

TEST_CASE("pseudo-projective form") {
    CHECK(print(moore_pseudoprojective_form(parse("M(Z_5, 4)"))) == "susp^3(P_5)");
    CHECK(print(moore_pseudoprojective_form(parse("M(Z, 4)"))) == "susp^3(P_0)");
    CHECK(print(moore_pseudoprojective_form(parse("M(Z_6, 2)"))) == "susp^1(P_2 v P_3)");
    CHECK_THROWS_AS(moore_pseudoprojective_form(parse("M(Q, 2)")), Error);
    CHECK_THROWS_AS(moore_pseudoprojective_form(parse("M(Z^inf, 2)")), Error);
    CHECK_THROWS_AS(moore_pseudoprojective_form(parse("T^2")), Error);
}

TEST_CASE("pseudo-projective round trip") {
    std::mt19937 rng(606);
    for (int i = 0; i < 40; ++i) {
        const auto g = testsupport::random_fg_group(rng);
        std::uniform_int_distribution<std::uint64_t> deg(2, 6);
        const auto m = g.is_trivial() ? point() : moore(g, deg(rng));
        CHECK(normalize(moore_pseudoprojective_form(m)) == normalize(m));
    }
}

TEST_CASE("print/parse round trip under normalize equality") {
    std::mt19937 rng(987);
    for (int i = 0; i < 150; ++i) {
        const auto e = testsupport::random_expr(rng);
        const auto reparsed = parse(print(e));
        CHECK(normalize(reparsed) == normalize(e));
    }
}

TEST_CASE("single-degree capacity equals the summand count") {
    std::mt19937 rng(55);
    for (int i = 0; i < 40; ++i) {
        const auto g = testsupport::random_fg_group(rng);
        if (g.is_trivial()) continue;
        const auto c = capacity(moore(g, 3));
        REQUIRE(c.kind == CapacityResult::Kind::Finite);
        CHECK(c.value == summands::count_summands(g).value);
    }
}
