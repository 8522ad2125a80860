#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "glab/families.hpp"
#include "glab/spec_file.hpp"
#include "glab/verify_stats.hpp"

using namespace glab;

namespace {
const double A = kGoldenAlpha;

bool contains_coord(const std::vector<Point>& pts, double coord) {
    for (const Point& p : pts)
        if (std::fabs(p.coord - coord) < 1e-9) return true;
    return false;
}
} // namespace

TEST_CASE("cycle rotation basics") {
    Graphing g = make_cycle_rotation(A);
    CHECK(g.degree_bound() == 2);
    auto nb = g.neighbors({0, 0.0});
    REQUIRE(nb.size() == 2);
    CHECK(contains_coord(nb, 0.6180339887));
    CHECK(contains_coord(nb, 0.3819660113));
    CHECK(g.validate().ok);
    CHECK_THROWS_AS(make_cycle_rotation(0.0), DomainError);
    CHECK_THROWS_AS(make_cycle_rotation(1.0), DomainError);
}

TEST_CASE("rational rotation closes into cycles") {
    Graphing g = make_cycle_rotation(1.0 / 3);
    RootedBall b = g.ball({0, 0.1}, 2);
    CHECK(b.size() == 3);
    CHECK(b.edges.size() == 3);
}

TEST_CASE("half rotation is an involution") {
    Graphing g = make_cycle_rotation(0.5);
    auto nb = g.neighbors({0, 0.2});
    CHECK(nb.size() == 1);
    CHECK(contains_coord(nb, 0.7));
}

TEST_CASE("delete_edge records the exception") {
    Graphing g = make_cycle_rotation(A);
    Graphing gp = delete_edge(g, {0, 0.0}, {0, A});
    CHECK(gp.neighbors({0, 0.0}).size() == 1);
    CHECK(contains_coord(gp.neighbors({0, 0.0}), 1.0 - A));
    CHECK(contains_coord(gp.neighbors({0, A}), frac(2 * A)));
    CHECK(gp.validate().ok);
    CHECK_THROWS_AS(delete_edge(gp, {0, 0.0}, {0, A}), DomainError);   // second delete
    CHECK_THROWS_AS(delete_edge(g, {0, 0.0}, {0, 0.5}), DomainError);  // not an edge
}

TEST_CASE("finite graph decomposes into matchings") {
    Graphing k3 = make_finite_graph(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(k3.generators().size() == 3); // triangle needs 3 matchings
    CHECK(k3.degree_bound() == 2);
    CHECK(k3.validate().ok);

    Graphing single = make_finite_graph(2, {{0, 1}});
    CHECK(single.generators().size() == 1);
    CHECK(single.neighbors({0, 0.0}).size() == 1);

    Graphing empty = make_finite_graph(3, {});
    CHECK(empty.generators().empty());
    CHECK(empty.neighbors({0, 1.0}).empty());

    CHECK_THROWS_AS(make_finite_graph(3, {{0, 0}}), DomainError);         // loop
    CHECK_THROWS_AS(make_finite_graph(3, {{0, 1}, {1, 0}}), DomainError); // multi-edge
}

TEST_CASE("interval exchange neighbor arithmetic") {
    Graphing g = make_interval_exchange({{0.0, 0.4, 0.6}, {0.4, 1.0, -0.4}});
    CHECK(g.degree_bound() == 2);
    CHECK(g.validate().ok);
    auto nb = g.neighbors({0, 0.1});
    REQUIRE(nb.size() == 2);
    CHECK(contains_coord(nb, 0.7)); // forward image
    CHECK(contains_coord(nb, 0.5)); // preimage under the second piece
}

TEST_CASE("identity exchange is rejected") {
    CHECK_THROWS_AS(make_interval_exchange({{0.0, 1.0, 0.0}}), ValidationError);
}

TEST_CASE("partition violations are rejected") {
    CHECK_THROWS_AS(make_interval_exchange({{0.0, 0.5, 0.5}}), ValidationError); // sources miss [0.5,1)
    CHECK_THROWS_AS(make_interval_exchange({{0.0, 0.5, 0.2}, {0.5, 1.0, -0.5}}),
                    ValidationError); // images overlap
}

TEST_CASE("rotation as a 2-piece exchange matches the circle rotation") {
    Graphing rot = make_cycle_rotation(A);
    Graphing ex = make_interval_exchange({{0.0, 1.0 - A, A}, {1.0 - A, 1.0, A - 1.0}});
    CHECK(ex.validate().ok);
    Rng rng(64);
    for (int i = 0; i < 1000; ++i) {
        Point x = rot.space().sample_point(rng);
        auto n1 = rot.neighbors(x);
        auto n2 = ex.neighbors(x);
        REQUIRE(n1.size() == n2.size());
        for (std::size_t k = 0; k < n1.size(); ++k)
            CHECK(std::fabs(n1[k].coord - n2[k].coord) < 1e-9);
    }
}

TEST_CASE("weighted union keeps components apart") {
    Graphing u = make_weighted_union({{make_cycle_rotation(A), 0.5},
                                      {make_finite_graph(3, {{0, 1}, {1, 2}, {0, 2}}), 0.5}});
    CHECK(u.validate().ok);
    CHECK(u.space().parts().size() == 2);
    auto nb = u.neighbors({1, 0.0});
    REQUIRE(nb.size() == 2);
    for (const Point& p : nb) CHECK(p.part == 1);
    auto nc = u.neighbors({0, 0.25});
    for (const Point& p : nc) CHECK(p.part == 0);
}

TEST_CASE("edge deletion is invisible to ball statistics") {
    Graphing g = make_cycle_rotation(A);
    Graphing gp = delete_edge(g, {0, 0.0}, {0, A});
    BallStats s1 = bs_histogram(g, 2, 100000, 42);
    BallStats s2 = bs_histogram(gp, 2, 100000, 42);
    CHECK(local_equivalence_tv(s1, s2) == 0.0);
}

TEST_CASE("spec files load into validated graphings") {
    nlohmann::json doc = {{"family", "cycle-rotation"}, {"params", {{"alpha", A}}}};
    Graphing g = graphing_from_json(doc);
    CHECK(g.validate().ok);
    CHECK(g.neighbors({0, 0.25}).size() == 2);

    nlohmann::json with_del = doc;
    with_del["deleted_edges"] = nlohmann::json::array({nlohmann::json::array({0.0, A})});
    Graphing gp = graphing_from_json(with_del);
    CHECK(gp.neighbors({0, 0.0}).size() == 1);

    CHECK_THROWS_AS(graphing_from_json({{"family", "unknown"}}), ValidationError);
    CHECK_THROWS_AS(graphing_from_json({{"family", "cycle-rotation"}}), ValidationError);
}

TEST_CASE("spec hash is a stable fingerprint") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") != fnv1a_hex("b"));
}
