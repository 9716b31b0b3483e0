#include "doctest.h"

#include <set>

#include "khs/homology.hpp"

using namespace khs;

namespace {
const char* kTrefoil = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]"; // left-handed
const char* kFig8 = "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,2],X[2,7,3,8]]";
}

TEST_CASE("unknot homology") {
    auto u = PlanarDiagram::unknot();
    auto t = field_homology(build_complex<F2>(u, Flavor::Khovanov));
    CHECK(t.rank_at(0, 1) == 1);
    CHECK(t.rank_at(0, -1) == 1);
    CHECK(t.total_rank() == 2);
    auto z = integral_homology(build_complex<ZZ>(u, Flavor::Khovanov));
    CHECK(z.rank_at(0, 1) == 1);
    CHECK(z.rank_at(0, -1) == 1);
    for (const auto& [k, e] : z.rows) CHECK(e.torsion.empty());
}

TEST_CASE("trefoil homology over fields and Z") {
    auto d = parse_pd(kTrefoil);
    auto q = field_homology(build_complex<QQ>(d, Flavor::Khovanov));
    CHECK(q.total_rank() == 4);
    CHECK(q.rank_at(0, -1) == 1);
    CHECK(q.rank_at(0, -3) == 1);
    CHECK(q.rank_at(-2, -5) == 1);
    CHECK(q.rank_at(-3, -9) == 1);

    auto f2 = field_homology(build_complex<F2>(d, Flavor::Khovanov));
    CHECK(f2.total_rank() == 6);
    CHECK(f2.rank_at(-3, -7) == 1);
    CHECK(f2.rank_at(-2, -7) == 1);

    auto z = integral_homology(build_complex<ZZ>(d, Flavor::Khovanov));
    int torsion_summands = 0;
    for (const auto& [k, e] : z.rows) torsion_summands += int(e.torsion.size());
    CHECK(torsion_summands == 1);
    REQUIRE(z.rows.count({-2, -7}) == 1);
    CHECK(z.rows.at({-2, -7}).torsion == std::vector<mpz_class>{2});
    CHECK(z.rows.at({-2, -7}).rank == 0);

    SUBCASE("right trefoil has its Z/2 at (3,7)") {
        auto zr = integral_homology(build_complex<ZZ>(mirror(d), Flavor::Khovanov));
        REQUIRE(zr.rows.count({2, 7}) == 1);
        CHECK(zr.rows.at({2, 7}).torsion == std::vector<mpz_class>{2});
    }
}

TEST_CASE("universal coefficients consistency on the trefoil and figure-eight") {
    for (const char* pd : {kTrefoil, kFig8}) {
        auto d = parse_pd(pd);
        auto f2 = field_homology(build_complex<F2>(d, Flavor::Khovanov));
        auto z = integral_homology(build_complex<ZZ>(d, Flavor::Khovanov));
        auto two_torsion = [&](int i, int j) {
            auto it = z.rows.find({i, j});
            if (it == z.rows.end()) return 0;
            int n = 0;
            for (const auto& t : it->second.torsion)
                if (t % 2 == 0) ++n;
            return n;
        };
        std::set<std::pair<int, int>> keys;
        for (const auto& [k, e] : f2.rows) keys.insert(k);
        for (const auto& [k, e] : z.rows) keys.insert(k);
        for (auto [i, j] : keys)
            CHECK(f2.rank_at(i, j) == z.rank_at(i, j) + two_torsion(i, j) + two_torsion(i + 1, j));
    }
}

TEST_CASE("graded Euler characteristic matches the chain level") {
    auto d = parse_pd(kFig8);
    auto f2 = field_homology(build_complex<F2>(d, Flavor::Khovanov));
    auto f3 = field_homology(build_complex<Fp<3>>(d, Flavor::Khovanov));
    auto c = build_complex<QQ>(d, Flavor::Khovanov);
    std::map<int, int> chi_complex, chi_f2, chi_f3;
    for (const auto& g : c.gens) chi_complex[g.j] += (g.i % 2 == 0) ? 1 : -1;
    for (const auto& [k, e] : f2.rows) chi_f2[k.second] += (k.first % 2 == 0) ? e.rank : -e.rank;
    for (const auto& [k, e] : f3.rows) chi_f3[k.second] += (k.first % 2 == 0) ? e.rank : -e.rank;
    auto nz = [](std::map<int, int> m) {
        for (auto it = m.begin(); it != m.end();)
            it = it->second == 0 ? m.erase(it) : std::next(it);
        return m;
    };
    CHECK(nz(chi_complex) == nz(chi_f2));
    CHECK(nz(chi_complex) == nz(chi_f3));
}

TEST_CASE("BN homology has total dimension 2^components") {
    for (const char* pd : {kTrefoil, kFig8}) {
        auto d = parse_pd(pd);
        auto dims = homology_by_degree(build_complex<F2>(d, Flavor::BarNatan));
        CHECK(dims == std::map<int, int>{{0, 2}});
        auto dims3 = homology_by_degree(build_complex<Fp<3>>(d, Flavor::BarNatan));
        CHECK(dims3 == std::map<int, int>{{0, 2}});
    }
    auto uu = disjoint_union(PlanarDiagram::unknot(), parse_pd(kTrefoil));
    auto dims = homology_by_degree(build_complex<QQ>(uu, Flavor::BarNatan));
    int total = 0;
    for (auto& [i, n] : dims) total += n;
    CHECK(total == 4);
}

TEST_CASE("canonical blocks and class coordinates") {
    auto d = parse_pd(kTrefoil);
    KhovanovData<F2> kh(d);
    const auto& b = kh.block(0, -1);
    REQUIRE(b.rank() == 1);
    auto rep = kh.rep_vector(0, -1, 0);
    auto coords = kh.class_coords(0, -1, rep);
    REQUIRE(coords.size() == 1);
    CHECK(coords[0] == 1);
    // adding a coboundary does not change the class
    const auto& c = kh.complex();
    for (int g = 0; g < c.size(); ++g) {
        if (c.gens[size_t(g)].i != -1 || c.gens[size_t(g)].j != -1) continue;
        auto w = rep;
        sparse_add_scaled<F2>(w, c.delta[size_t(g)], 1);
        auto coords2 = kh.class_coords(0, -1, w);
        CHECK(coords2 == coords);
    }
}

TEST_CASE("filtration maps of the unknot") {
    auto fm = filtration_maps<F2>(PlanarDiagram::unknot());
    CHECK(fm.q_lo == -3);
    CHECK(fm.q_hi == 3);
    CHECK(rank(fm.levels.at(-1).istar) == 2);
    CHECK(rank(fm.levels.at(1).istar) == 1);
    CHECK(rank(fm.levels.at(3).istar) == 0);
}

TEST_CASE("rank of i_* is monotone and saturates") {
    for (const char* pd : {kTrefoil, kFig8}) {
        auto d = parse_pd(pd);
        auto fm = filtration_maps<Fp<3>>(d);
        CHECK(rank(fm.levels.at(fm.q_lo).istar) == 2);
        int prev = 2;
        for (int q = fm.q_lo; q <= fm.q_hi; q += 2) {
            int r = rank(fm.levels.at(q).istar);
            CHECK(r <= prev);
            prev = r;
        }
        CHECK(prev == 0);
    }
}

TEST_CASE("filtration maps reject links") {
    auto uu = disjoint_union(PlanarDiagram::unknot(), PlanarDiagram::unknot());
    CHECK_THROWS_AS(filtration_maps<F2>(uu), PreconditionError);
}

TEST_CASE("p_star lands in the right Khovanov group") {
    auto d = parse_pd(kTrefoil);
    auto fm = make_filtration_engine<F2>(d);
    auto tbl = fm.khovanov->table();
    for (int q = fm.q_lo; q <= fm.q_hi; q += 2) {
        auto p = pstar_canonical(*fm.engine, *fm.khovanov, q);
        CHECK(p.cols == tbl.rank_at(0, q));
    }
}
