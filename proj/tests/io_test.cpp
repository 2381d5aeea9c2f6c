#include <cstdio>
#include <fstream>

#include "bpskit/error.hpp"
#include "bpskit/io.hpp"
#include "bpskit/pipeline.hpp"
#include "doctest.h"

using namespace bpskit;

TEST_CASE("rationals") {
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(parse_rational("7") == 7);
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
    CHECK_THROWS_AS(parse_rational("x"), InvalidInput);
    CHECK_THROWS_AS(parse_rational(""), InvalidInput);
}

TEST_CASE("quiver files round trip") {
    for (const auto& name : preset_names()) {
        const QuiverWithPotential qp = preset(name);
        const QuiverWithPotential back = qp_from_json(to_json(qp), name);
        CHECK(back.quiver == qp.quiver);
        CHECK(back.potential == qp.potential);
        CHECK(back.stability == qp.stability);
        CHECK(back.cut == qp.cut);
    }
}

TEST_CASE("reading the documented format") {
    const Json j = Json::parse(R"({
        "vertices": ["1", "2"],
        "arrows": [{"name": "x", "from": "1", "to": "2"}, {"name": "y", "from": "2", "to": "1"}],
        "potential": [{"coeff": "1/2", "cycle": ["y", "x"]}],
        "stability": {"1": "1", "2": "-1"}
    })");
    const QuiverWithPotential qp = qp_from_json(j);
    CHECK(qp.quiver.num_arrows() == 2);
    CHECK(qp.potential.terms().begin()->second == Rational(1, 2));
    CHECK(qp.stability == Stability{Rational(1), Rational(-1)});
    CHECK(!qp.cut.has_value());

    Json bad = j;
    bad["arrows"][0]["to"] = "3";
    CHECK_THROWS_AS(qp_from_json(bad), InvalidInput);
    bad = j;
    bad["potential"][0]["cycle"] = {"x", "x"};
    CHECK_THROWS_AS(qp_from_json(bad), InvalidInput);
    bad = j;
    bad["stability"].erase("2");
    CHECK_THROWS_AS(qp_from_json(bad), InvalidInput);
    bad = j;
    bad.erase("vertices");
    CHECK_THROWS_AS(qp_from_json(bad), InvalidInput);
    CHECK_THROWS_AS(load_qp_file("/nonexistent/quiver.json"), InvalidInput);

    const std::string path = "io_test_bad.json";
    std::ofstream(path) << "{ not json";
    CHECK_THROWS_AS(load_qp_file(path), InvalidInput);
    std::remove(path.c_str());
}

TEST_CASE("Laurent serialization") {
    const HalfLaurent p1 = HalfLaurent::exact({{-1, Rational(-1)}, {1, Rational(-1)}});
    const Json j = to_json(p1);
    CHECK(j["terms"]["h:-1"] == "-1");
    CHECK(j["known_through"].is_null());
    CHECK(j["pretty"] == p1.str());
    CHECK(laurent_from_json(j) == p1);

    const HalfLaurent s = HalfLaurent::series({{1, Rational(2, 3)}}, 9);
    CHECK(laurent_from_json(to_json(s)) == s);
    CHECK_THROWS_AS(laurent_from_json(Json::parse(R"({"terms": {"q:1": "1"}})")), InvalidInput);
}

TEST_CASE("BPS tables serialize by dimension vector") {
    PipelineOptions o;
    o.box = DimVector({1, 1, 0});
    const Json j = to_json(bps_table(preset("markov-gen"), o));
    CHECK(j.contains("(1,1,0)"));
    CHECK(j["(1,0,0)"]["terms"]["h:0"] == "1");
}
