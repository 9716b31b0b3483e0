#include "khs/pd.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace khs {

namespace {

// Union-find over edge labels.
struct UF {
    std::vector<int> p;
    explicit UF(int n) : p(size_t(n)) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[size_t(x)] != x) { p[size_t(x)] = p[size_t(p[size_t(x)])]; x = p[size_t(x)]; }
        return x;
    }
    void join(int a, int b) {
        a = find(a); b = find(b);
        if (a != b) p[size_t(std::max(a, b))] = std::min(a, b);
    }
};

// Slot layout per crossing X[a,b,c,d]: slot 0 = a (incoming under),
// slot 1 = b, slot 2 = c (outgoing under), slot 3 = d.  The strand pairing
// within a crossing is a<->c (under) and b<->d (over).

struct Occurrence {
    int crossing;
    int slot;
};

} // namespace

PlanarDiagram make_diagram(std::vector<Crossing> crossings, std::vector<int> free_loops,
                           std::string name) {
    PlanarDiagram d;
    d.crossings = std::move(crossings);
    d.free_loops = std::move(free_loops);
    d.name = std::move(name);
    const int N = d.num_crossings();
    if (N > 30)
        throw PreconditionError("diagram has " + std::to_string(N) + " crossings; limit is 30");

    int maxlab = 0;
    for (const auto& x : d.crossings)
        for (int s = 0; s < 4; ++s) {
            if (x[s] < 1) throw ParseError("edge label " + std::to_string(x[s]) + " is not positive");
            maxlab = std::max(maxlab, x[s]);
        }
    for (int l : d.free_loops) {
        if (l < 1) throw ParseError("free loop label " + std::to_string(l) + " is not positive");
        maxlab = std::max(maxlab, l);
    }
    d.edge_count = maxlab;

    std::sort(d.free_loops.begin(), d.free_loops.end());
    for (size_t i = 1; i < d.free_loops.size(); ++i)
        if (d.free_loops[i] == d.free_loops[i - 1])
            throw ParseError("free loop label " + std::to_string(d.free_loops[i]) + " repeated");

    // Every non-loop label in 1..edge_count must appear exactly twice.
    std::vector<std::vector<Occurrence>> occ(size_t(d.edge_count) + 1);
    for (int c = 0; c < N; ++c)
        for (int s = 0; s < 4; ++s)
            occ[size_t(d.crossings[size_t(c)][s])].push_back({c, s});
    for (int e = 1; e <= d.edge_count; ++e) {
        bool is_loop = std::binary_search(d.free_loops.begin(), d.free_loops.end(), e);
        size_t want = is_loop ? 0 : 2;
        if (occ[size_t(e)].size() != want) {
            std::string how = occ[size_t(e)].size() == 1 ? "once" : std::to_string(occ[size_t(e)].size()) + " times";
            throw ParseError("edge label " + std::to_string(e) + " appears " + how +
                             (is_loop ? " but is declared a free loop" : "; expected exactly twice"));
        }
    }

    // Orient edges.  Each slot carries a direction variable (strand points into
    // the crossing or out of it).  Constraints:
    //   slot a: in,  slot c: out,  slots b,d: exactly one in;
    //   the two occurrences of an edge: exactly one in (one head, one tail).
    // Propagation over a parity union-find; components never touched by an
    // under-strand get a deterministic canonical orientation.
    const int V = 4 * N;
    auto vid = [&](int c, int s) { return 4 * c + s; };
    std::vector<int> par(static_cast<size_t>(V));
    std::iota(par.begin(), par.end(), 0);
    std::vector<int> rel(static_cast<size_t>(V), 0); // parity to parent: 0 same, 1 opposite
    std::function<std::pair<int, int>(int)> find = [&](int x) -> std::pair<int, int> {
        if (par[size_t(x)] == x) return {x, 0};
        auto [r, pr] = find(par[size_t(x)]);
        par[size_t(x)] = r;
        rel[size_t(x)] ^= pr;
        return {r, rel[size_t(x)]};
    };
    auto unite = [&](int x, int y, int parity, const std::string& who) {
        auto [rx, px] = find(x);
        auto [ry, py] = find(y);
        if (rx == ry) {
            if ((px ^ py) != parity) throw ParseError("orientation inconsistency at " + who);
            return;
        }
        par[size_t(ry)] = rx;
        rel[size_t(ry)] = px ^ py ^ parity;
    };
    for (int c = 0; c < N; ++c)
        unite(vid(c, 1), vid(c, 3), 1, "crossing " + std::to_string(c + 1));
    for (int e = 1; e <= d.edge_count; ++e) {
        if (occ[size_t(e)].size() == 2)
            unite(vid(occ[size_t(e)][0].crossing, occ[size_t(e)][0].slot),
                  vid(occ[size_t(e)][1].crossing, occ[size_t(e)][1].slot), 1,
                  "edge " + std::to_string(e));
    }
    // value[slot]: 1 = points in, 0 = points out; -1 = unassigned
    std::vector<int> val(size_t(V), -1);
    auto assign = [&](int x, int v, const std::string& who) {
        auto [r, p] = find(x);
        int rv = v ^ p;
        if (val[size_t(r)] == -1) val[size_t(r)] = rv;
        else if (val[size_t(r)] != rv) throw ParseError("orientation inconsistency at " + who);
    };
    for (int c = 0; c < N; ++c) {
        assign(vid(c, 0), 1, "crossing " + std::to_string(c + 1));
        assign(vid(c, 2), 0, "crossing " + std::to_string(c + 1));
    }
    // components never forced (all-over strands): orient canonically
    for (int c = 0; c < N; ++c)
        for (int s : {1, 3}) {
            auto [r, p] = find(vid(c, s));
            if (val[size_t(r)] == -1) val[size_t(r)] = p ^ 1; // this slot points in
        }
    auto slot_in = [&](int c, int s) {
        auto [r, p] = find(vid(c, s));
        return (val[size_t(r)] ^ p) == 1;
    };

    // Crossing signs.  With the under-strand a->c, the crossing is positive
    // exactly when the over-strand runs d->b.  (Calibrated so that the
    // Knot-Atlas left trefoil PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]] has
    // writhe -3 and the positive kink X[1,1,2,2] has n_+ = 1.)
    d.sign.resize(size_t(N));
    d.over_in_is_d.resize(size_t(N));
    for (int c = 0; c < N; ++c) {
        bool d_in = slot_in(c, 3);
        if (d_in == slot_in(c, 1))
            throw ParseError("orientation inconsistency at crossing " + std::to_string(c + 1));
        d.over_in_is_d[size_t(c)] = d_in;
        d.sign[size_t(c)] = d_in ? +1 : -1;
        (d.sign[size_t(c)] > 0 ? d.n_plus : d.n_minus)++;
    }

    // Components: follow strands through crossings.
    d.edge_points_in_at_first.resize(size_t(d.edge_count) + 1, false);
    for (int e = 1; e <= d.edge_count; ++e)
        if (occ[size_t(e)].size() == 2)
            d.edge_points_in_at_first[size_t(e)] =
                slot_in(occ[size_t(e)][0].crossing, occ[size_t(e)][0].slot);
    std::vector<bool> seen(size_t(d.edge_count) + 1, false);
    int comps = int(d.free_loops.size());
    for (int e0 = 1; e0 <= d.edge_count; ++e0) {
        if (seen[size_t(e0)] || occ[size_t(e0)].empty()) continue;
        ++comps;
        int e = e0;
        while (!seen[size_t(e)]) {
            seen[size_t(e)] = true;
            // head of e = its incoming occurrence; strand exits at the paired slot
            Occurrence head = occ[size_t(e)][0];
            if (!slot_in(head.crossing, head.slot)) head = occ[size_t(e)][1];
            int out_slot = head.slot ^ 2; // a<->c, b<->d
            e = d.crossings[size_t(head.crossing)][out_slot];
        }
    }
    d.component_count = comps;
    return d;
}

bool PlanarDiagram::same_diagram(const PlanarDiagram& o) const {
    if (edge_count != o.edge_count || free_loops != o.free_loops) return false;
    if (crossings.size() != o.crossings.size()) return false;
    for (size_t i = 0; i < crossings.size(); ++i)
        if (crossings[i].e != o.crossings[i].e) return false;
    return true;
}

PlanarDiagram PlanarDiagram::empty_diagram() { return make_diagram({}, {}, "empty"); }
PlanarDiagram PlanarDiagram::unknot() { return make_diagram({}, {1}, "unknot"); }

namespace {

void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

int parse_int(const std::string& s, size_t& i) {
    skip_ws(s, i);
    size_t j = i;
    if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
    size_t k = j;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    if (k == j) throw ParseError("expected integer at position " + std::to_string(i));
    int v = std::stoi(s.substr(i, k - i));
    i = k;
    return v;
}

void expect(const std::string& s, size_t& i, char c) {
    skip_ws(s, i);
    if (i >= s.size() || s[i] != c)
        throw ParseError(std::string("expected '") + c + "' at position " + std::to_string(i));
    ++i;
}

PlanarDiagram parse_pd_text(const std::string& s) {
    size_t i = 0;
    skip_ws(s, i);
    if (s.compare(i, 3, "PD[") != 0) throw ParseError("PD text must start with PD[");
    i += 3;
    std::vector<Crossing> xs;
    std::vector<int> loops;
    skip_ws(s, i);
    if (i < s.size() && s[i] == ']') { ++i; return make_diagram({}, {}, ""); }
    for (;;) {
        skip_ws(s, i);
        if (i >= s.size()) throw ParseError("unterminated PD expression");
        if (s[i] == 'X') {
            ++i;
            // tolerate Xp/Xm annotations from KnotTheory exports
            if (i < s.size() && (s[i] == 'p' || s[i] == 'm')) ++i;
            expect(s, i, '[');
            Crossing x{};
            for (int t = 0; t < 4; ++t) {
                x.e[size_t(t)] = parse_int(s, i);
                if (t < 3) expect(s, i, ',');
            }
            expect(s, i, ']');
            xs.push_back(x);
        } else if (s[i] == 'U') {
            ++i;
            expect(s, i, '[');
            loops.push_back(parse_int(s, i));
            expect(s, i, ']');
        } else {
            throw ParseError(std::string("unexpected token '") + s[i] + "' in PD expression");
        }
        skip_ws(s, i);
        if (i < s.size() && s[i] == ',') { ++i; continue; }
        expect(s, i, ']');
        break;
    }
    return make_diagram(std::move(xs), std::move(loops), "");
}

PlanarDiagram parse_pd_json(const std::string& s) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(s);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON diagram: ") + e.what());
    }
    if (!j.is_object() || !j.contains("pd")) throw ParseError("JSON diagram must contain \"pd\"");
    std::vector<Crossing> xs;
    for (const auto& row : j["pd"]) {
        if (!row.is_array() || row.size() != 4) throw ParseError("each pd entry must be a 4-tuple");
        Crossing x{};
        for (int t = 0; t < 4; ++t) x.e[size_t(t)] = row[size_t(t)].get<int>();
        xs.push_back(x);
    }
    std::vector<int> loops;
    if (j.contains("loops"))
        for (const auto& l : j["loops"]) loops.push_back(l.get<int>());
    std::string name = j.value("name", "");
    return make_diagram(std::move(xs), std::move(loops), std::move(name));
}

} // namespace

PlanarDiagram parse_pd(const std::string& text) {
    size_t i = 0;
    skip_ws(text, i);
    if (i < text.size() && text[i] == '{') return parse_pd_json(text);
    return parse_pd_text(text);
}

std::string to_pd_string(const PlanarDiagram& d) {
    std::ostringstream os;
    os << "PD[";
    bool first = true;
    for (const auto& x : d.crossings) {
        if (!first) os << ",";
        first = false;
        os << "X[" << x[0] << "," << x[1] << "," << x[2] << "," << x[3] << "]";
    }
    for (int l : d.free_loops) {
        if (!first) os << ",";
        first = false;
        os << "U[" << l << "]";
    }
    os << "]";
    return os.str();
}

ResolvedState resolve(const PlanarDiagram& d, uint64_t v) {
    const int N = d.num_crossings();
    if (N < 64 && v >= (uint64_t(1) << N))
        throw PreconditionError("resolution vector has more bits than crossings");
    ResolvedState st;
    st.vertex = v;
    st.weight = int(__builtin_popcountll(v));
    UF uf(d.edge_count + 1);
    for (int c = 0; c < N; ++c) {
        const auto& x = d.crossings[size_t(c)];
        if ((v >> c) & 1) { uf.join(x[0], x[3]); uf.join(x[1], x[2]); }
        else              { uf.join(x[0], x[1]); uf.join(x[2], x[3]); }
    }
    // circles = classes of labels that occur in crossings, plus free loops
    std::vector<bool> used(size_t(d.edge_count) + 1, false);
    for (const auto& x : d.crossings)
        for (int s = 0; s < 4; ++s) used[size_t(x[s])] = true;
    std::map<int, std::vector<int>> classes;
    for (int e = 1; e <= d.edge_count; ++e)
        if (used[size_t(e)]) classes[uf.find(e)].push_back(e);
    for (int l : d.free_loops) classes[l].push_back(l);
    st.circle_of_edge.assign(size_t(d.edge_count) + 1, -1);
    for (const auto& [root, members] : classes) {
        (void)root;
        st.circle_ids.push_back(members.front()); // min label: classes keyed by min root
    }
    std::sort(st.circle_ids.begin(), st.circle_ids.end());
    for (const auto& [root, members] : classes) {
        int id = *std::min_element(members.begin(), members.end());
        int idx = int(std::lower_bound(st.circle_ids.begin(), st.circle_ids.end(), id) -
                      st.circle_ids.begin());
        for (int e : members) st.circle_of_edge[size_t(e)] = idx;
    }
    return st;
}

PlanarDiagram mirror(const PlanarDiagram& d) {
    // Swap over/under at every crossing.  The new incoming under-strand is the
    // old incoming over-strand, so each tuple is rotated to start there.
    std::vector<Crossing> xs;
    xs.reserve(d.crossings.size());
    for (int c = 0; c < d.num_crossings(); ++c) {
        const auto& x = d.crossings[size_t(c)];
        if (d.over_in_is_d[size_t(c)])
            xs.push_back({{x[3], x[0], x[1], x[2]}});
        else
            xs.push_back({{x[1], x[2], x[3], x[0]}});
    }
    return make_diagram(std::move(xs), d.free_loops,
                        d.name.empty() ? "" : "m" + d.name);
}

namespace {

Crossing shift_crossing(const Crossing& x, int off) {
    return {{x[0] + off, x[1] + off, x[2] + off, x[3] + off}};
}

} // namespace

PlanarDiagram disjoint_union(const PlanarDiagram& d1, const PlanarDiagram& d2) {
    std::vector<Crossing> xs = d1.crossings;
    for (const auto& x : d2.crossings) xs.push_back(shift_crossing(x, d1.edge_count));
    std::vector<int> loops = d1.free_loops;
    for (int l : d2.free_loops) loops.push_back(l + d1.edge_count);
    return make_diagram(std::move(xs), std::move(loops), "");
}

PlanarDiagram connected_sum(const PlanarDiagram& d1, int e1, const PlanarDiagram& d2, int e2) {
    if (e1 < 1 || e1 > d1.edge_count ||
        std::binary_search(d1.free_loops.begin(), d1.free_loops.end(), e1))
        throw PreconditionError("connected_sum: invalid edge label " + std::to_string(e1) +
                                " in first diagram");
    if (e2 < 1 || e2 > d2.edge_count ||
        std::binary_search(d2.free_loops.begin(), d2.free_loops.end(), e2))
        throw PreconditionError("connected_sum: invalid edge label " + std::to_string(e2) +
                                " in second diagram");
    if (d1.num_crossings() == 0 || d2.num_crossings() == 0)
        throw PreconditionError("connected_sum requires diagrams with crossings on both sides");
    // Splice by swapping the head occurrences of e1 and e2 (orientation-consistent).
    auto head_slot = [](const PlanarDiagram& src, int lbl) -> std::pair<int, int> {
        int hits = 0;
        for (int c = 0; c < src.num_crossings(); ++c)
            for (int s = 0; s < 4; ++s)
                if (src.crossings[size_t(c)][s] == lbl) {
                    bool in = (hits == 0) ? src.edge_points_in_at_first[size_t(lbl)]
                                          : !src.edge_points_in_at_first[size_t(lbl)];
                    ++hits;
                    if (in) return {c, s};
                }
        throw PreconditionError("connected_sum: internal head lookup failure");
    };
    auto [c1, s1] = head_slot(d1, e1);
    auto [c2, s2] = head_slot(d2, e2);
    int off = d1.edge_count;
    std::vector<Crossing> xs = d1.crossings;
    for (const auto& x : d2.crossings) xs.push_back(shift_crossing(x, off));
    std::swap(xs[size_t(c1)].e[size_t(s1)], xs[size_t(c2 + d1.num_crossings())].e[size_t(s2)]);
    std::vector<int> loops = d1.free_loops;
    for (int l : d2.free_loops) loops.push_back(l + off);
    return make_diagram(std::move(xs), std::move(loops), "");
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open corpus file " + path);
    std::vector<CorpusEntry> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError("corpus line " + std::to_string(lineno) + ": expected name<TAB>PD[...]");
        CorpusEntry e;
        e.name = line.substr(0, tab);
        e.diagram = parse_pd(line.substr(tab + 1));
        e.diagram.name = e.name;
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace khs
