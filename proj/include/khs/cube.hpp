#pragma once

// Sign assignments on the resolution cube C(N), gauge transformations between
// them, and the Frobenius-algebra edge maps for the Khovanov and Bar-Natan
// complexes.

#include <cstdint>
#include <random>
#include <vector>

#include "khs/pd.hpp"

namespace khs {

enum class Flavor { Khovanov, BarNatan };

// An assignment of +-1 to each cube edge u -> u|bit(i), stored as an optional
// gauge over the standard assignment.  The standard assignment gives the edge
// flipping coordinate i the sign (-1)^(number of 1-bits of u below i).
struct SignAssignment {
    int N = 0;
    std::vector<int8_t> gauge; // empty = standard; else size 2^N, values +-1

    static SignAssignment standard(int n) { return SignAssignment{n, {}}; }
    static SignAssignment gauged(int n, std::vector<int8_t> t) { return SignAssignment{n, std::move(t)}; }
    static SignAssignment random(int n, uint64_t seed);

    int sign(uint64_t u, int i) const {
        int s = (__builtin_popcountll(u & ((uint64_t(1) << i) - 1)) & 1) ? -1 : 1;
        if (!gauge.empty()) s *= gauge[size_t(u)] * gauge[size_t(u | (uint64_t(1) << i))];
        return s;
    }

    // Every 2-face anticommutes.  Exhaustive; intended for small N.
    bool faces_anticommute() const;
};

// Vertex-wise +-1 relabeling carrying one sign assignment to another.
struct GaugeTransformation {
    int N = 0;
    std::vector<int8_t> t; // size 2^N
};

// The gauge transformation from s1 to s2 with value +1 at the zero vertex
// (the only other one is its negation).  Throws if either input has a
// non-anticommuting face.
GaugeTransformation gauge_transform(const SignAssignment& s1, const SignAssignment& s2);

// One labeled term of a Frobenius edge map.
struct FrobTerm {
    uint64_t target_labeling;
    int coeff; // +-1
};

// Edge map on circle labelings for a merge (two circles -> one) or split.
// Labelings are bit-vectors indexed by the sorted circle order, bit = 1 for
// x_-.  Positions refer to that order in the source/target states.  The
// Bar-Natan flavor adds the deformation terms x_-x_- -> x_- (merge) and
// -x_+x_+ (split).
std::vector<FrobTerm> frobenius_merge(Flavor flavor, uint64_t labeling, int src_pos_a,
                                      int src_pos_b, int dst_pos);
std::vector<FrobTerm> frobenius_split(Flavor flavor, uint64_t labeling, int src_pos,
                                      int dst_pos_a, int dst_pos_b);

// Matrix block of one cube edge on labelings, as sparse rows (row index =
// source labeling, entries (target labeling, coeff)).  `before` and `after`
// must be cube-adjacent resolved states of the same diagram.
std::vector<std::vector<FrobTerm>> edge_frobenius_block(Flavor flavor,
                                                        const ResolvedState& before,
                                                        const ResolvedState& after);

} // namespace khs
