#include "doctest.h"

#include <fstream>

#include "khs/refine.hpp"

using namespace khs;

namespace {
const char* kTrefoil = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]"; // left-handed, s = -2
const char* kFig8 = "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,2],X[2,7,3,8]]";
}

TEST_CASE("s invariants of the unknot") {
    auto u = PlanarDiagram::unknot();
    auto s2 = s_field<F2>(u);
    CHECK(s2.s_min == -1);
    CHECK(s2.s_max == 1);
    CHECK(s2.s == 0);
    auto s3 = s_field<Fp<3>>(u);
    CHECK(s3.s == 0);
    auto sq = s_field<QQ>(u);
    CHECK(sq.s == 0);
}

TEST_CASE("s invariants of the trefoils") {
    auto left = parse_pd(kTrefoil);
    for (int fcase = 0; fcase < 3; ++fcase) {
        SField s = fcase == 0 ? s_field<F2>(left) : fcase == 1 ? s_field<Fp<3>>(left) : s_field<QQ>(left);
        CHECK(s.s == -2);
        CHECK(s.s_min == -3);
        CHECK(s.s_max == -1);
    }
    auto right = mirror(left);
    CHECK(s_field<F2>(right).s == 2);
    CHECK(s_field<QQ>(right).s == 2);
    SUBCASE("figure-eight is slice-like") {
        CHECK(s_field<F2>(parse_pd(kFig8)).s == 0);
        CHECK(s_field<Fp<5>>(parse_pd(kFig8)).s == 0);
    }
    SUBCASE("non-knots rejected") {
        auto uu = disjoint_union(PlanarDiagram::unknot(), PlanarDiagram::unknot());
        CHECK_THROWS_AS(s_field<F2>(uu), PreconditionError);
    }
}

TEST_CASE("mirror identity for s_min/s_max") {
    for (const char* pd : {kTrefoil, kFig8}) {
        auto d = parse_pd(pd);
        auto s = s_field<F2>(d);
        auto sm = s_field<F2>(mirror(d));
        CHECK(sm.s_min == -s.s_max);
        CHECK(sm.s_max == -s.s_min);
    }
}

TEST_CASE("s^{Z,m}") {
    auto u = PlanarDiagram::unknot();
    auto r1 = s_integral(u, 1);
    CHECK(r1.lower == 0);
    CHECK(r1.upper == 0);
    auto r2 = s_integral(u, 2);
    CHECK(r2.lower == 0);
    CHECK(r2.upper == 0);
    CHECK_THROWS_AS(s_integral(u, 0), PreconditionError);

    auto t = parse_pd(kTrefoil);
    auto rt = s_integral(t, 1);
    // regression: matches s^Q for the trefoil (no 2-torsion obstruction here)
    CHECK(rt.lower == -2);
    CHECK(rt.upper == -2);
}

TEST_CASE("bockstein on the unknot is zero") {
    auto op = bockstein_sq1(PlanarDiagram::unknot());
    CHECK(op.degree == 1);
    CHECK(op.blocks.empty());
}

TEST_CASE("bockstein of the trefoil sits next to its torsion") {
    auto d = parse_pd(kTrefoil); // Z/2 at (-2,-7)
    auto op = bockstein_sq1(d);
    REQUIRE(op.blocks.count({-3, -7}) == 1);
    const auto& blk = op.blocks.at({-3, -7});
    CHECK(rank(blk) == 1);
    // everywhere else zero
    for (const auto& [key, m] : op.blocks)
        if (key != std::make_pair(-3, -7)) {
            Mat<F2> copy = m;
            CHECK(rank(std::move(copy)) == 0);
        }
}

TEST_CASE("Sq1 o Sq1 = 0") {
    for (const char* pd : {kTrefoil, kFig8}) {
        auto d = parse_pd(pd);
        KhovanovData<F2> kh(d);
        auto op = bockstein_sq1(d, kh, -100, 100);
        for (const auto& [key, m] : op.blocks) {
            auto next = op.block_at(key.first + 1, key.second);
            if (!next) continue;
            auto comp = mat_mul(m, *next);
            for (int r = 0; r < comp.rows; ++r)
                for (int c = 0; c < comp.cols; ++c) CHECK(comp.get(r, c) == 0);
        }
    }
}

TEST_CASE("operation export-load round trip and fingerprints") {
    auto d = parse_pd(kTrefoil);
    KhovanovData<F2> kh(d);
    auto op = bockstein_sq1(d, kh, -100, 100);
    op.fingerprint = export_basis<F2>(d, kh).fingerprint;
    auto text = operation_to_json(op);
    auto back = parse_operation<F2>(text, d, kh);
    CHECK(back.degree == op.degree);
    REQUIRE(back.blocks.size() == op.blocks.size());
    for (const auto& [key, m] : op.blocks) {
        REQUIRE(back.blocks.count(key) == 1);
        const auto& n = back.blocks.at(key);
        REQUIRE(n.rows == m.rows);
        REQUIRE(n.cols == m.cols);
        for (int r = 0; r < m.rows; ++r)
            for (int c = 0; c < m.cols; ++c) CHECK(m.get(r, c) == n.get(r, c));
    }

    SUBCASE("fingerprint is deterministic") {
        CHECK(export_basis<F2>(d).fingerprint == export_basis<F2>(d).fingerprint);
    }
    SUBCASE("fingerprint changes when the PD code is permuted") {
        auto rot = parse_pd("PD[X[3,6,4,1],X[5,2,6,3],X[1,4,2,5]]");
        CHECK(export_basis<F2>(rot).fingerprint != export_basis<F2>(d).fingerprint);
    }
    SUBCASE("wrong fingerprint is rejected with FingerprintError") {
        auto rot = parse_pd("PD[X[3,6,4,1],X[5,2,6,3],X[1,4,2,5]]");
        KhovanovData<F2> kh2(rot);
        CHECK_THROWS_AS(parse_operation<F2>(text, rot, kh2), FingerprintError);
    }
    SUBCASE("zero-operation file loads as zero") {
        std::string ztext = std::string("{\"schema\":1,\"degree\":2,\"field\":\"f2\",") +
                            "\"basis_fingerprint\":\"" + op.fingerprint + "\",\"blocks\":[]}";
        auto z = parse_operation<F2>(ztext, d, kh);
        CHECK(z.blocks.empty());
        CHECK(z.degree == 2);
    }
}

TEST_CASE("fullness for the zero operation reduces to ker p_*") {
    // alpha = 0: q is half-full iff q <= s_min
    for (const char* pd : {kTrefoil, kFig8}) {
        auto d = parse_pd(pd);
        auto s = s_field<F2>(d);
        OperationMatrix<F2> zero;
        zero.degree = 1;
        auto scan = fullness_scan<F2>(d, zero);
        for (const auto& [q, hf] : scan) {
            CHECK(hf.first == (q <= s.s_min));
            CHECK(hf.second == (q <= s.s_min - 2));
        }
    }
}

TEST_CASE("fullness monotonicity and full implies half-full") {
    auto d = parse_pd(kFig8);
    KhovanovData<F2> kh(d);
    auto sq1 = bockstein_sq1(d, kh, -100, 100);
    auto scan = fullness_scan<F2>(d, sq1);
    bool prev_half = false, prev_full = false; // scanning upward: q full => q-2 full
    for (const auto& [q, hf] : scan) {
        (void)q;
        if (hf.first) {} // placeholder to keep structure clear
        prev_half = hf.first;
        prev_full = hf.second;
    }
    // re-scan in decreasing q to check monotonicity
    int last_half_q = -1000, last_full_q = -1000;
    for (const auto& [q, hf] : scan) {
        if (hf.first) last_half_q = q;
        if (hf.second) last_full_q = q;
    }
    for (const auto& [q, hf] : scan) {
        if (q < last_half_q) CHECK(hf.first);
        if (q < last_full_q) CHECK(hf.second);
        if (hf.second) CHECK(hf.first);
    }
    (void)prev_half;
    (void)prev_full;
}

TEST_CASE("refined invariants, zero operation") {
    auto u = PlanarDiagram::unknot();
    RefinedOptions opt;
    opt.source = OpSource::Zero;
    auto r = refined_invariants<F2>(u, opt);
    CHECK(r.s.s == 0);
    CHECK(r.r_plus == 0);
    CHECK(r.s_plus == 0);
    CHECK(r.r_minus == 0);
    CHECK(r.s_minus == 0);

    auto t = parse_pd(kTrefoil);
    auto rt = refined_invariants<Fp<3>>(t, opt);
    CHECK(rt.s.s == -2);
    CHECK(rt.r_plus == -2);
    CHECK(rt.s_plus == -2);
    CHECK(rt.r_minus == -2);
    CHECK(rt.s_minus == -2);
}

TEST_CASE("refined invariants, Sq1 on small knots") {
    RefinedOptions opt;
    opt.source = OpSource::Sq1;
    for (const char* pd : {kTrefoil, kFig8}) {
        auto d = parse_pd(pd);
        auto r = refined_invariants<F2>(d, opt);
        // Lemma 4.2 sandwich
        CHECK((r.r_plus == r.s.s || r.r_plus == r.s.s + 2));
        CHECK((r.s_plus == r.s.s || r.s_plus == r.s.s + 2));
        CHECK((r.r_minus == r.s.s || r.r_minus == r.s.s - 2));
        CHECK((r.s_minus == r.s.s || r.s_minus == r.s.s - 2));
        // these knots have no Sq1 into the (0, s +- 1) slots
        CHECK(r.r_plus == r.s.s);
        CHECK(r.s_plus == r.s.s);
        CHECK(r.r_minus == r.s.s);
        CHECK(r.s_minus == r.s.s);
    }
}

TEST_CASE("witnesses are genuine") {
    auto d = parse_pd(kTrefoil);
    RefinedOptions opt;
    opt.source = OpSource::Sq1;
    auto r = refined_invariants<F2>(d, opt);
    REQUIRE(r.s_plus_witness.witness.size() == 2);
    // the two abar classes span H_0(C)
    Mat<F2> span(2, int(r.s_plus_witness.witness[0].abar.size()));
    for (int k = 0; k < 2; ++k)
        for (size_t c = 0; c < r.s_plus_witness.witness[size_t(k)].abar.size(); ++c)
            span.set(k, int(c), r.s_plus_witness.witness[size_t(k)].abar[c]);
    CHECK(rank(std::move(span)) == 2);
    // chains are cycles in the BN complex
    auto c = build_complex<F2>(d, Flavor::BarNatan);
    for (const auto& e : r.s_plus_witness.witness) {
        SparseVec<F2> dv;
        for (const auto& [g, coef] : e.chain) sparse_add_scaled<F2>(dv, c.delta[size_t(g)], coef);
        CHECK(dv.empty());
        // supported in F_q with q = s_plus - 3
        for (const auto& [g, coef] : e.chain) {
            (void)coef;
            CHECK(c.gens[size_t(g)].j >= r.s_plus - 3);
        }
    }
}
