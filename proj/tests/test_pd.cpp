#include "doctest.h"

#include "khs/pd.hpp"

using namespace khs;

namespace {
const char* kTrefoil = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]";
}

TEST_CASE("parse smallest valid input") {
    auto d = parse_pd("PD[X[1,1,2,2]]");
    CHECK(d.num_crossings() == 1);
    CHECK(d.component_count == 1);
    CHECK(d.edge_count == 2);
}

TEST_CASE("parse trefoil and trace components") {
    auto d = parse_pd(kTrefoil);
    CHECK(d.num_crossings() == 3);
    CHECK(d.component_count == 1);
    CHECK(std::abs(d.writhe()) == 3);
    // all three crossings share the same sign
    CHECK((d.n_plus == 3 || d.n_minus == 3));
}

TEST_CASE("parse errors name the offender") {
    CHECK_THROWS_WITH_AS(parse_pd("PD[X[1,1,2,3]]"), doctest::Contains("appears once"), ParseError);
    CHECK_THROWS_AS(parse_pd("PD[X[1,1,2]]"), ParseError);
    CHECK_THROWS_AS(parse_pd("garbage"), ParseError);
    CHECK_THROWS_AS(parse_pd("{\"pd\": [[1,2,3]]}"), ParseError);
}

TEST_CASE("json form parses") {
    auto d = parse_pd(R"({"pd": [[1,4,2,5],[3,6,4,1],[5,2,6,3]], "name": "trefoil"})");
    CHECK(d.num_crossings() == 3);
    CHECK(d.name == "trefoil");
    auto u = parse_pd(R"({"pd": [], "loops": [1]})");
    CHECK(u.component_count == 1);
}

TEST_CASE("resolve circle counts") {
    SUBCASE("zero-crossing unknot") {
        auto u = PlanarDiagram::unknot();
        CHECK(resolve(u, 0).k() == 1);
    }
    SUBCASE("one-crossing unknot, positive kink") {
        auto d = parse_pd("PD[X[1,1,2,2]]");
        CHECK(d.n_plus == 1);
        CHECK(resolve(d, 0).k() == 2);
        CHECK(resolve(d, 1).k() == 1);
    }
    SUBCASE("trefoil by hand union-find") {
        auto d = parse_pd(kTrefoil);
        CHECK(resolve(d, 0b000).k() == 3);
        CHECK(resolve(d, 0b111).k() == 2);
    }
}

TEST_CASE("adjacent resolutions differ by one circle") {
    auto d = parse_pd(kTrefoil);
    for (uint64_t v = 0; v < 8; ++v)
        for (int t = 0; t < 3; ++t) {
            if ((v >> t) & 1) continue;
            int dk = resolve(d, v | (1u << t)).k() - resolve(d, v).k();
            CHECK(std::abs(dk) == 1);
        }
}

TEST_CASE("mirror") {
    auto d = parse_pd(kTrefoil);
    auto m = mirror(d);
    CHECK(m.n_plus == d.n_minus);
    CHECK(m.n_minus == d.n_plus);
    CHECK(m.component_count == d.component_count);
    auto mm = mirror(m);
    // involution up to tuple rotation: same signs and same resolved circle counts
    CHECK(mm.n_plus == d.n_plus);
    for (uint64_t v = 0; v < 8; ++v) CHECK(resolve(mm, v).k() == resolve(d, v).k());
    SUBCASE("0-crossing unknot is its own mirror") {
        auto u = PlanarDiagram::unknot();
        CHECK(mirror(u).same_diagram(u));
    }
}

TEST_CASE("disjoint union and connected sum") {
    auto u = PlanarDiagram::unknot();
    auto uu = disjoint_union(u, u);
    CHECK(uu.component_count == 2);
    CHECK(uu.num_crossings() == 0);

    auto t = parse_pd(kTrefoil);
    auto tt = connected_sum(t, 1, t, 1);
    CHECK(tt.num_crossings() == 6);
    CHECK(tt.component_count == 1);

    auto tu = disjoint_union(t, t);
    CHECK(tu.num_crossings() == 6);
    CHECK(tu.component_count == 2);

    CHECK_THROWS_AS(connected_sum(t, 99, t, 1), PreconditionError);
}

TEST_CASE("resolution is total over the cube") {
    auto d = parse_pd(kTrefoil);
    int count = 0;
    for (uint64_t v = 0; v < 8; ++v) { resolve(d, v); ++count; }
    CHECK(count == 8);
    CHECK_THROWS_AS(resolve(d, 8), PreconditionError);
}
