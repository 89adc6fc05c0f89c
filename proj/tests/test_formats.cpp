#include <doctest.h>

#include "cope/cope_io.hpp"
#include "cope/fixtures.hpp"
#include "cope/report.hpp"
#include "cope/svg.hpp"

using namespace cope;
using Q = QuadraticScalar;

TEST_CASE("COPE JSON round trip") {
    auto box = fixtures::box_world();
    std::string text = cope_to_json(box);
    auto back = parse_cope_json<Q>(text);
    CHECK(back.data == box.data);
    CHECK(back.block_heights == box.block_heights);
    CHECK(cope_to_json(back) == text);

    auto pent = fixtures::pentagon();
    auto pback = parse_cope_json<Q>(cope_to_json(pent));
    CHECK(pback.data == pent.data);
}

TEST_CASE("parse errors carry messages") {
    CHECK_THROWS_AS(parse_cope_json<Q>("{"), ParseError);
    CHECK_THROWS_AS(parse_cope_json<Q>("{\"radicand\":5}"), ParseError);
    CHECK_THROWS_AS(parse_cope_json<Q>(
                        "{\"entries\":[[\"1\",\"0\"],[\"0\",\"oops\"]]}"),
                    ParseError);
    // inconsistent measurement count
    CHECK_THROWS_AS(parse_cope_json<Q>(
                        "{\"l\":3,\"block_heights\":[2],\"entries\":[[\"1\"],[\"0\"]]}"),
                    ParseError);
    // structurally invalid matrix surfaces as validation, not parsing
    CHECK_THROWS_AS(parse_cope_json<Q>("{\"entries\":[[\"1\",\"2\"],[\"0\",\"-1\"]]}"),
                    ValidationError);
}

TEST_CASE("float CSV input") {
    FloatScalar::set_tolerance(1e-9);
    auto c = parse_cope_csv("1, 1, 0, 0\n0 0 1 1\n1,0,1,0\n0,1,0,1\n", {2, 2});
    CHECK(c.rows() == 4);
    CHECK(c.measurements() == 2);
    CHECK(rank(c.data) == 3);
    CHECK_THROWS_AS(parse_cope_csv("", {}), ParseError);
    CHECK_THROWS_AS(parse_cope_csv("1,oops\n", {}), ParseError);
}

TEST_CASE("analysis report round trips and is deterministic") {
    auto box = fixtures::box_world();
    AnalysisOptions opt;
    AnalysisReport r1 = run_analysis(box, opt);
    AnalysisReport r2 = run_analysis(box, opt);
    CHECK(r1.to_json() == r2.to_json());

    AnalysisReport parsed = AnalysisReport::from_json(r1.to_json());
    CHECK(parsed == r1);
    CHECK(parsed.to_json() == r1.to_json());

    CHECK(r1.doc["rank"] == 3);
    CHECK(r1.doc["nnr"]["lower"] == 4);
    CHECK(r1.doc["contextuality"]["verdict"] == "contextual");
}

TEST_CASE("backend agreement on the identity fixture") {
    FloatScalar::set_tolerance(1e-9);
    auto exact_report = run_analysis(fixtures::identity_cope(4));
    auto float_report = run_analysis(fixtures::convert_cope<FloatScalar>(fixtures::identity_cope(4)));
    CHECK(exact_report.doc["rank"] == float_report.doc["rank"]);
    CHECK(exact_report.doc["ennr"]["value"] == float_report.doc["ennr"]["value"]);
    CHECK(exact_report.doc["contextuality"]["verdict"] ==
          float_report.doc["contextuality"]["verdict"]);
}

TEST_CASE("SVG output is deterministic and color-coded") {
    auto pent = fixtures::pentagon();
    std::string svg1 = render_rank3(pent);
    std::string svg2 = render_rank3(pent);
    CHECK(svg1 == svg2);
    CHECK(svg1.find("stroke=\"black\"") != std::string::npos);
    CHECK(svg1.find("stroke=\"green\"") != std::string::npos);
    CHECK(svg1.find("stroke=\"red\"") != std::string::npos);

    CHECK_THROWS_AS(render_rank3(fixtures::identity_cope(4)), DomainError);

    // rank-3 identity renders coincident triangles with a triangle witness
    std::string tri = render_rank3(fixtures::identity_cope(3));
    CHECK(tri.find("stroke=\"green\"") != std::string::npos);
    CHECK(tri.find("stroke=\"red\"") != std::string::npos);
}

TEST_CASE("certificate and LP dump serialization") {
    auto inst = fixtures::capped_pentagon_instance();
    auto sp = build_shear_lp(inst.g, inst.b);
    auto dump = lp_dump_json(sp);
    CHECK(dump["k"] == 6);
    CHECK(dump["r"] == 3);
    CHECK(dump["objective"].size() == 6 * 5 + 2 * 3 * 3);
    auto cert = decide_nonneg_map(sp);
    auto cj = certificate_json(cert);
    CHECK(cj["verdict"] == "not_exists");
    CHECK(cj["dual_value"] == fixtures::capped_pentagon_gap_value().str());
}
