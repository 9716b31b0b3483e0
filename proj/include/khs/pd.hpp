#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace khs {

// Error taxonomy mirrored by CLI exit codes.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FingerprintError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One crossing X[a,b,c,d]: the four incident edge labels listed
// counterclockwise starting from the incoming under-strand.
struct Crossing {
    std::array<int, 4> e;
    int operator[](int i) const { return e[size_t(i)]; }
};

// An oriented link diagram in PD notation.  Edge labels are 1..edge_count;
// labels listed in free_loops belong to crossing-free unknot components and
// appear in no crossing.  All derived data (orientations, signs, component
// count) is computed on construction and the diagram is immutable afterwards.
struct PlanarDiagram {
    std::vector<Crossing> crossings;
    std::vector<int> free_loops;
    int edge_count = 0;
    std::string name;

    // derived
    std::vector<int> sign;          // +1 / -1 per crossing
    std::vector<bool> over_in_is_d; // over-strand enters at slot d (else slot b)
    std::vector<bool> edge_points_in_at_first; // orientation bookkeeping, see pd.cpp
    int n_plus = 0, n_minus = 0;
    int component_count = 0;

    int num_crossings() const { return int(crossings.size()); }
    int writhe() const { return n_plus - n_minus; }

    bool same_diagram(const PlanarDiagram& o) const;

    // 0-crossing diagrams
    static PlanarDiagram empty_diagram();
    static PlanarDiagram unknot(); // one free loop, label 1
};

// Validates and computes all derived fields.  Throws ParseError with the
// offending crossing/edge named.
PlanarDiagram make_diagram(std::vector<Crossing> crossings, std::vector<int> free_loops = {},
                           std::string name = "");

// Accepts Knot-Atlas text `PD[X[1,4,2,5],...]` (with optional `U[k]` loop
// entries) or a JSON object {"pd": [[...],...], "loops": [...], "name": "..."}.
PlanarDiagram parse_pd(const std::string& text);

std::string to_pd_string(const PlanarDiagram& d);

// A vertex of the resolution cube together with its circle decomposition.
// Circles are identified canonically by the minimum edge label they contain.
struct ResolvedState {
    uint64_t vertex = 0;
    int weight = 0;
    std::vector<int> circle_ids;      // canonical ids, strictly increasing
    std::vector<int> circle_of_edge;  // edge label -> index into circle_ids
    int k() const { return int(circle_ids.size()); }
    int circle_index_of(int edge) const { return circle_of_edge[size_t(edge)]; }
};

// Replace each crossing by its 0- or 1-smoothing according to bits of v
// (bit t = crossing t).  0-smoothing of X[a,b,c,d] joins a~b and c~d,
// 1-smoothing joins a~d and b~c.
ResolvedState resolve(const PlanarDiagram& d, uint64_t v);

PlanarDiagram mirror(const PlanarDiagram& d);
PlanarDiagram disjoint_union(const PlanarDiagram& d1, const PlanarDiagram& d2);
// Splices edge e1 of d1 to edge e2 of d2 (orientation-respecting band sum).
PlanarDiagram connected_sum(const PlanarDiagram& d1, int e1, const PlanarDiagram& d2, int e2);

// name<TAB>PD[...] per line; '#' comments allowed.
struct CorpusEntry {
    std::string name;
    PlanarDiagram diagram;
};
std::vector<CorpusEntry> load_corpus(const std::string& path);

} // namespace khs
