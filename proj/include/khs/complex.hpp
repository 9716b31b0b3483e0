#pragma once

// Bigraded filtered cochain complexes built from the cube of resolutions.
// Generators are enhanced states in a canonical order: vertices by increasing
// integer value (bit t = crossing t), then labelings by increasing integer
// value (bit = x_- on the circle in sorted-id order).  The order, and hence
// every matrix in the pipeline, is reproducible bit-for-bit.

#include <cstdint>
#include <vector>

#include "khs/cube.hpp"
#include "khs/linalg.hpp"
#include "khs/pd.hpp"

namespace khs {

template <class R>
using SparseVec = std::vector<std::pair<int, typename R::Elem>>; // sorted by index

template <class R>
void sparse_add_scaled(SparseVec<R>& dst, const SparseVec<R>& src, const typename R::Elem& c) {
    if (R::is_zero(c)) return;
    SparseVec<R> out;
    out.reserve(dst.size() + src.size());
    size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            auto v = R::mul(c, src[j].second);
            if (!R::is_zero(v)) out.emplace_back(src[j].first, v);
            ++j;
        } else {
            auto v = R::add(dst[i].second, R::mul(c, src[j].second));
            if (!R::is_zero(v)) out.emplace_back(dst[i].first, v);
            ++i; ++j;
        }
    }
    dst = std::move(out);
}

struct EnhancedState {
    uint64_t vertex;
    uint64_t labeling;
    int i; // homological grading |v| - n_minus
    int j; // quantum grading deg(labeling) + |v| + n_plus - 2 n_minus
};

template <class R>
struct GradedComplex {
    Flavor flavor = Flavor::Khovanov;
    PlanarDiagram diagram;
    std::vector<EnhancedState> gens;          // canonical order
    std::vector<SparseVec<R>> delta;          // per generator, sorted targets
    std::vector<size_t> vertex_offset;        // size 2^N + 1 (full complexes only)

    int size() const { return int(gens.size()); }
    int j_min() const {
        int m = 0; bool first = true;
        for (const auto& g : gens) { if (first || g.j < m) { m = g.j; first = false; } }
        return m;
    }
    int j_max() const {
        int m = 0; bool first = true;
        for (const auto& g : gens) { if (first || g.j > m) { m = g.j; first = false; } }
        return m;
    }
};

template <class R>
GradedComplex<R> build_complex(const PlanarDiagram& d, Flavor flavor,
                               const SignAssignment& signs);
template <class R>
GradedComplex<R> build_complex(const PlanarDiagram& d, Flavor flavor) {
    return build_complex<R>(d, flavor, SignAssignment::standard(d.num_crossings()));
}

// delta o delta == 0
template <class R>
bool verify_d2(const GradedComplex<R>& c);

// Subcomplex spanned by generators with j >= q (detached: indices renumbered).
template <class R>
GradedComplex<R> filtration_subcomplex(const GradedComplex<R>& c, int q);

// The quotient F_q / F_{q+2} with its induced differential.
template <class R>
GradedComplex<R> graded_quotient(const GradedComplex<R>& c, int q);

// Chain isomorphism v -> t(v) v between complexes built with gauge-related
// sign assignments; returns the diagonal signs in generator order.
template <class R>
std::vector<int> gauge_chain_map(const GradedComplex<R>& c, const GaugeTransformation& t);

} // namespace khs
