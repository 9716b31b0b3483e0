#include "doctest.h"

#include "khs/complex.hpp"
#include "khs/cube.hpp"

using namespace khs;

TEST_CASE("standard signs anticommute") {
    CHECK(SignAssignment::standard(1).faces_anticommute());
    SUBCASE("N = 1 has both edges positive") {
        auto s = SignAssignment::standard(1);
        CHECK(s.sign(0, 0) == 1);
    }
    SUBCASE("N = 2 single face multiplies to -1") {
        auto s = SignAssignment::standard(2);
        CHECK(s.sign(0, 0) * s.sign(1, 1) * s.sign(0, 1) * s.sign(2, 0) == -1);
    }
    SUBCASE("N = 5 all faces") {
        CHECK(SignAssignment::standard(5).faces_anticommute());
    }
}

TEST_CASE("random gauged assignments stay valid") {
    for (uint64_t seed = 1; seed <= 4; ++seed)
        CHECK(SignAssignment::random(4, seed).faces_anticommute());
}

TEST_CASE("gauge transformation") {
    SUBCASE("identity gauge") {
        auto s = SignAssignment::standard(3);
        auto t = gauge_transform(s, s);
        for (auto v : t.t) CHECK(v == 1);
    }
    SUBCASE("recovers a random gauge up to sign") {
        auto s = SignAssignment::standard(4);
        auto r = SignAssignment::random(4, 42);
        auto t = gauge_transform(s, r);
        CHECK(t.t[0] == 1);
        // conjugating s by t gives r: already checked inside gauge_transform;
        // the only other gauge is -t, so t is determined by t(0)
        auto t2 = gauge_transform(s, r);
        CHECK(t.t == t2.t);
    }
    SUBCASE("any two valid assignments on the 2-cube are gauge-related") {
        // enumerate all 2^4 edge-sign choices, keep the anticommuting ones
        int valid = 0;
        for (int mask = 0; mask < 16; ++mask) {
            std::vector<int8_t> t(4, 1);
            SignAssignment cand{2, {}};
            // explicit table via gauge trick is not general enough; test directly:
            // edges: (0,i=0)->bit0, (0,i=1)->bit1, (1,i=1)->bit2, (2,i=0)->bit3
            auto sgn = [&](uint64_t u, int i) {
                if (u == 0 && i == 0) return (mask & 1) ? -1 : 1;
                if (u == 0 && i == 1) return (mask & 2) ? -1 : 1;
                if (u == 1 && i == 1) return (mask & 4) ? -1 : 1;
                return (mask & 8) ? -1 : 1; // u == 2, i == 0
            };
            int prod = sgn(0, 0) * sgn(1, 1) * sgn(0, 1) * sgn(2, 0);
            if (prod != -1) continue;
            ++valid;
            // reconstruct as gauge of standard: t(0)=1, propagate
            std::vector<int8_t> g(4, 1);
            auto std2 = SignAssignment::standard(2);
            g[1] = int8_t(sgn(0, 0) * std2.sign(0, 0));
            g[2] = int8_t(sgn(0, 1) * std2.sign(0, 1));
            g[3] = int8_t(g[1] * sgn(1, 1) * std2.sign(1, 1));
            auto back = SignAssignment::gauged(2, g);
            for (uint64_t u = 0; u < 4; ++u)
                for (int i = 0; i < 2; ++i) {
                    if ((u >> i) & 1) continue;
                    CHECK(back.sign(u, i) == sgn(u, i));
                }
        }
        CHECK(valid == 8); // half of all assignments on the square anticommute
    }
}

TEST_CASE("frobenius merge and split") {
    // single merge block: two circles -> one, positions 0,1 -> 0
    SUBCASE("khovanov merge") {
        auto t = frobenius_merge(Flavor::Khovanov, 0b01, 0, 1, 0); // x_- (x) x_+
        REQUIRE(t.size() == 1);
        CHECK(t[0].target_labeling == 0b1);
        CHECK(t[0].coeff == 1);
        CHECK(frobenius_merge(Flavor::Khovanov, 0b11, 0, 1, 0).empty()); // x_-x_- -> 0
    }
    SUBCASE("barnatan merge keeps x_-x_-") {
        auto t = frobenius_merge(Flavor::BarNatan, 0b11, 0, 1, 0);
        REQUIRE(t.size() == 1);
        CHECK(t[0].target_labeling == 0b1);
    }
    SUBCASE("khovanov split of x_+") {
        auto t = frobenius_split(Flavor::Khovanov, 0b0, 0, 0, 1);
        REQUIRE(t.size() == 2);
    }
    SUBCASE("barnatan split of x_+ has the -x_+x_+ term") {
        auto t = frobenius_split(Flavor::BarNatan, 0b0, 0, 0, 1);
        REQUIRE(t.size() == 3);
        int neg = 0;
        for (auto& term : t)
            if (term.coeff == -1) {
                ++neg;
                CHECK(term.target_labeling == 0); // x_+ x_+
            }
        CHECK(neg == 1);
    }
}

TEST_CASE("frobenius respects bystander circles") {
    // three circles, merge positions 0 and 2 into 1 (of the two-circle result)
    auto t = frobenius_merge(Flavor::Khovanov, 0b010, 0, 2, 1);
    // source: c0 = x_+, c1 = x_-, c2 = x_+; bystander c1 -> target position 0
    REQUIRE(t.size() == 1);
    CHECK(t[0].target_labeling == 0b01);
}

TEST_CASE("BN edge block minus Khovanov block raises j by exactly 2") {
    auto d = parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]");
    auto a = resolve(d, 0), b = resolve(d, 1);
    auto kh = edge_frobenius_block(Flavor::Khovanov, a, b);
    auto bn = edge_frobenius_block(Flavor::BarNatan, a, b);
    for (size_t l = 0; l < kh.size(); ++l) {
        // BN contains the Khovanov terms; extras change popcount by one less
        // (quantum degree +2 after the weight shift)
        for (const auto& term : kh[size_t(l)]) {
            bool found = false;
            for (const auto& bt : bn[size_t(l)])
                if (bt.target_labeling == term.target_labeling && bt.coeff == term.coeff)
                    found = true;
            CHECK(found);
        }
        for (const auto& bt : bn[size_t(l)]) {
            bool in_kh = false;
            for (const auto& term : kh[size_t(l)])
                if (bt.target_labeling == term.target_labeling) in_kh = true;
            if (!in_kh) {
                // Khovanov terms preserve j (deg -1, weight +1); BN extras raise it by 2
                int deg_src = a.k() - 2 * __builtin_popcountll(l);
                int deg_dst = b.k() - 2 * __builtin_popcountll(bt.target_labeling);
                CHECK(deg_dst + 1 - deg_src == 2);
            }
        }
    }
}
