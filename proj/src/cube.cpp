#include "khs/cube.hpp"

#include <algorithm>

namespace khs {

SignAssignment SignAssignment::random(int n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int8_t> t(size_t(1) << n);
    for (auto& v : t) v = (rng() & 1) ? int8_t(1) : int8_t(-1);
    return gauged(n, std::move(t));
}

bool SignAssignment::faces_anticommute() const {
    for (uint64_t u = 0; u < (uint64_t(1) << N); ++u)
        for (int i = 0; i < N; ++i) {
            if ((u >> i) & 1) continue;
            for (int j = i + 1; j < N; ++j) {
                if ((u >> j) & 1) continue;
                uint64_t ui = u | (uint64_t(1) << i), uj = u | (uint64_t(1) << j);
                int prod = sign(u, i) * sign(ui, j) * sign(u, j) * sign(uj, i);
                if (prod != -1) return false;
            }
        }
    return true;
}

GaugeTransformation gauge_transform(const SignAssignment& s1, const SignAssignment& s2) {
    if (s1.N != s2.N) throw PreconditionError("gauge_transform: cube dimensions differ");
    if (!s1.faces_anticommute() || !s2.faces_anticommute())
        throw PreconditionError("gauge_transform: input violates face anticommutativity");
    const int n = s1.N;
    GaugeTransformation g{n, std::vector<int8_t>(size_t(1) << n, 0)};
    // t(v)*s2 = s1-compatible chain map condition: s2(u,i) t(u|bit) = s1(u,i) t(u);
    // propagate from t(0)=+1 along increasing weight.
    g.t[0] = 1;
    for (uint64_t v = 1; v < (uint64_t(1) << n); ++v) {
        int i = __builtin_ctzll(v);
        uint64_t u = v & (v - 1); // clear lowest bit: predecessor
        g.t[size_t(v)] = int8_t(g.t[size_t(u)] * s1.sign(u, i) * s2.sign(u, i));
    }
    // consistency across every edge (redundant paths must agree)
    for (uint64_t u = 0; u < (uint64_t(1) << n); ++u)
        for (int i = 0; i < n; ++i) {
            if ((u >> i) & 1) continue;
            uint64_t v = u | (uint64_t(1) << i);
            if (g.t[size_t(v)] * s2.sign(u, i) != g.t[size_t(u)] * s1.sign(u, i))
                throw PreconditionError("gauge_transform: assignments are not gauge-related");
        }
    return g;
}

std::vector<FrobTerm> frobenius_merge(Flavor flavor, uint64_t labeling, int a, int b, int dst) {
    // remove bits a,b from the source labeling, insert the product label at dst
    bool xa = (labeling >> a) & 1, xb = (labeling >> b) & 1; // 1 = x_-
    int lo = std::min(a, b), hi = std::max(a, b);
    uint64_t rest = labeling;
    rest = (rest & ((uint64_t(1) << hi) - 1)) | ((rest >> (hi + 1)) << hi);
    rest = (rest & ((uint64_t(1) << lo) - 1)) | ((rest >> (lo + 1)) << lo);
    auto insert_at = [&](bool bit) {
        uint64_t low = rest & ((uint64_t(1) << dst) - 1);
        return low | (uint64_t(bit) << dst) | ((rest >> dst) << (dst + 1));
    };
    std::vector<FrobTerm> out;
    if (!xa && !xb) out.push_back({insert_at(false), 1});            // x+x+ -> x+
    else if (xa != xb) out.push_back({insert_at(true), 1});          // x+x- -> x-
    else if (flavor == Flavor::BarNatan) out.push_back({insert_at(true), 1}); // x-x- -> x-
    return out;
}

std::vector<FrobTerm> frobenius_split(Flavor flavor, uint64_t labeling, int src, int a, int b) {
    bool x = (labeling >> src) & 1;
    uint64_t rest = (labeling & ((uint64_t(1) << src) - 1)) | ((labeling >> (src + 1)) << src);
    int lo = std::min(a, b), hi = std::max(a, b);
    auto insert2 = [&](bool bit_lo_pos, bool bit_hi_pos) {
        uint64_t v = rest;
        uint64_t low = v & ((uint64_t(1) << lo) - 1);
        v = low | (uint64_t(bit_lo_pos) << lo) | ((v >> lo) << (lo + 1));
        low = v & ((uint64_t(1) << hi) - 1);
        v = low | (uint64_t(bit_hi_pos) << hi) | ((v >> hi) << (hi + 1));
        return v;
    };
    auto place = [&](bool la, bool lb) { // labels for circles at positions a,b
        return a == lo ? insert2(la, lb) : insert2(lb, la);
    };
    std::vector<FrobTerm> out;
    if (x) {
        out.push_back({place(true, true), 1}); // x- -> x-x-
    } else {
        out.push_back({place(false, true), 1}); // x+ -> x+x- + x-x+ (- x+x+ in BN)
        out.push_back({place(true, false), 1});
        if (flavor == Flavor::BarNatan) out.push_back({place(false, false), -1});
    }
    return out;
}

std::vector<std::vector<FrobTerm>> edge_frobenius_block(Flavor flavor, const ResolvedState& before,
                                                        const ResolvedState& after) {
    uint64_t diff = before.vertex ^ after.vertex;
    if (__builtin_popcountll(diff) != 1 || (before.vertex & diff))
        throw PreconditionError("edge_frobenius_block: states are not cube-adjacent");
    const int kb = before.k(), ka = after.k();
    if (ka != kb - 1 && ka != kb + 1)
        throw PreconditionError("edge_frobenius_block: circle counts do not differ by one");

    // match circles by canonical id
    std::vector<std::vector<FrobTerm>> rows(size_t(1) << kb);
    if (ka == kb - 1) {
        // merge: exactly two source circles land on the same target circle
        std::vector<int> tgt_of_src(size_t(kb), -1);
        for (int e = 1; e < int(before.circle_of_edge.size()); ++e) {
            if (before.circle_of_edge[size_t(e)] < 0) continue;
            tgt_of_src[size_t(before.circle_of_edge[size_t(e)])] = after.circle_of_edge[size_t(e)];
        }
        int a = -1, b = -1, dst = -1;
        for (int i = 0; i < kb && b < 0; ++i)
            for (int j = i + 1; j < kb; ++j)
                if (tgt_of_src[size_t(i)] == tgt_of_src[size_t(j)]) { a = i; b = j; dst = tgt_of_src[size_t(i)]; break; }
        if (a < 0 || dst < 0) throw PreconditionError("edge_frobenius_block: merge matching failed");
        for (uint64_t l = 0; l < (uint64_t(1) << kb); ++l)
            rows[size_t(l)] = frobenius_merge(flavor, l, a, b, dst);
    } else {
        std::vector<int> src_of_tgt(size_t(ka), -1);
        for (int e = 1; e < int(after.circle_of_edge.size()); ++e) {
            if (after.circle_of_edge[size_t(e)] < 0) continue;
            src_of_tgt[size_t(after.circle_of_edge[size_t(e)])] = before.circle_of_edge[size_t(e)];
        }
        int a = -1, b = -1, src = -1;
        for (int i = 0; i < ka && b < 0; ++i)
            for (int j = i + 1; j < ka; ++j)
                if (src_of_tgt[size_t(i)] == src_of_tgt[size_t(j)]) { a = i; b = j; src = src_of_tgt[size_t(i)]; break; }
        if (src < 0) throw PreconditionError("edge_frobenius_block: split matching failed");
        for (uint64_t l = 0; l < (uint64_t(1) << kb); ++l)
            rows[size_t(l)] = frobenius_split(flavor, l, src, a, b);
    }
    return rows;
}

} // namespace khs
