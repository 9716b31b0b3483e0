#pragma once

// Template implementations for complex.hpp, included by the explicit
// instantiation unit and by nothing else.

#include <map>

#include "khs/complex.hpp"

namespace khs {

template <class R>
GradedComplex<R> build_complex(const PlanarDiagram& d, Flavor flavor,
                               const SignAssignment& signs) {
    const int N = d.num_crossings();
    if (signs.N != N) throw PreconditionError("build_complex: sign assignment has wrong order");
    GradedComplex<R> c;
    c.flavor = flavor;
    c.diagram = d;

    std::vector<ResolvedState> states;
    states.reserve(size_t(1) << N);
    for (uint64_t v = 0; v < (uint64_t(1) << N); ++v) states.push_back(resolve(d, v));

    c.vertex_offset.assign((size_t(1) << N) + 1, 0);
    for (uint64_t v = 0; v < (uint64_t(1) << N); ++v)
        c.vertex_offset[size_t(v) + 1] = c.vertex_offset[size_t(v)] + (size_t(1) << states[size_t(v)].k());
    c.gens.reserve(c.vertex_offset.back());
    for (uint64_t v = 0; v < (uint64_t(1) << N); ++v) {
        const auto& st = states[size_t(v)];
        int w = st.weight;
        for (uint64_t l = 0; l < (uint64_t(1) << st.k()); ++l) {
            int deg = st.k() - 2 * int(__builtin_popcountll(l));
            c.gens.push_back({v, l, w - d.n_minus, deg + w + d.n_plus - 2 * d.n_minus});
        }
    }

    c.delta.assign(c.gens.size(), {});
    for (uint64_t v = 0; v < (uint64_t(1) << N); ++v) {
        const auto& sv = states[size_t(v)];
        for (int t = 0; t < N; ++t) {
            if ((v >> t) & 1) continue;
            uint64_t u = v | (uint64_t(1) << t);
            auto block = edge_frobenius_block(flavor, sv, states[size_t(u)]);
            auto s = typename R::Elem(R::from_int(signs.sign(v, t)));
            for (uint64_t l = 0; l < (uint64_t(1) << sv.k()); ++l)
                for (const auto& term : block[size_t(l)])
                    c.delta[c.vertex_offset[size_t(v)] + size_t(l)].emplace_back(
                        int(c.vertex_offset[size_t(u)] + term.target_labeling),
                        R::mul(s, R::from_int(term.coeff)));
        }
    }
    // split terms within one edge block are pushed unordered
    for (auto& row : c.delta)
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    return c;
}

template <class R>
bool verify_d2(const GradedComplex<R>& c) {
    for (int g = 0; g < c.size(); ++g) {
        std::map<int, typename R::Elem> acc;
        for (const auto& [t1, c1] : c.delta[size_t(g)])
            for (const auto& [t2, c2] : c.delta[size_t(t1)]) {
                auto& slot = acc.try_emplace(t2, R::zero()).first->second;
                slot = R::add(slot, R::mul(c1, c2));
            }
        for (const auto& [t, v] : acc)
            if (!R::is_zero(v)) return false;
    }
    return true;
}

namespace detail {

template <class R>
GradedComplex<R> restrict_complex(const GradedComplex<R>& c, const std::vector<bool>& keep) {
    GradedComplex<R> out;
    out.flavor = c.flavor;
    out.diagram = c.diagram;
    std::vector<int> newidx(c.gens.size(), -1);
    for (int g = 0; g < c.size(); ++g)
        if (keep[size_t(g)]) {
            newidx[size_t(g)] = int(out.gens.size());
            out.gens.push_back(c.gens[size_t(g)]);
        }
    out.delta.assign(out.gens.size(), {});
    for (int g = 0; g < c.size(); ++g) {
        if (newidx[size_t(g)] < 0) continue;
        for (const auto& [t, v] : c.delta[size_t(g)])
            if (newidx[size_t(t)] >= 0)
                out.delta[size_t(newidx[size_t(g)])].emplace_back(newidx[size_t(t)], v);
    }
    return out;
}

} // namespace detail

template <class R>
GradedComplex<R> filtration_subcomplex(const GradedComplex<R>& c, int q) {
    std::vector<bool> keep(c.gens.size());
    for (int g = 0; g < c.size(); ++g) keep[size_t(g)] = c.gens[size_t(g)].j >= q;
    return detail::restrict_complex(c, keep);
}

template <class R>
GradedComplex<R> graded_quotient(const GradedComplex<R>& c, int q) {
    std::vector<bool> keep(c.gens.size());
    for (int g = 0; g < c.size(); ++g)
        keep[size_t(g)] = c.gens[size_t(g)].j >= q && c.gens[size_t(g)].j < q + 2;
    return detail::restrict_complex(c, keep);
}

template <class R>
std::vector<int> gauge_chain_map(const GradedComplex<R>& c, const GaugeTransformation& t) {
    std::vector<int> out(c.gens.size());
    for (int g = 0; g < c.size(); ++g) out[size_t(g)] = t.t[size_t(c.gens[size_t(g)].vertex)];
    return out;
}

} // namespace khs
