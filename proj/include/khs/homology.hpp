#pragma once

// Bigraded homology over fields and Z, canonical homology bases, and the
// filtration-level maps i_*, p_* of the Bar-Natan complex.
//
// Canonical basis contract: at each bigrading, cocycle representatives are the
// RREF basis of the cycle space reduced modulo the RREF basis of the boundary
// space and re-reduced to RREF, all against the canonical enhanced-state
// order.  Every exported matrix (operation files, p_*) refers to this basis.

#include <map>
#include <memory>

#include "khs/complex.hpp"
#include "khs/intmat.hpp"
#include "khs/reduce.hpp"

namespace khs {

// ---------------------------------------------------------------- tables

struct HomologyEntry {
    int rank = 0;                    // field rank, or free rank over Z
    std::vector<mpz_class> torsion;  // prime-power orders, ascending (Z only)
};

struct HomologyTable {
    std::string ring;
    bool integral = false;
    bool by_degree_only = false; // BN flavor: rows keyed (i, 0)
    std::map<std::pair<int, int>, HomologyEntry> rows;

    int rank_at(int i, int j) const {
        auto it = rows.find({i, j});
        return it == rows.end() ? 0 : it->second.rank;
    }
    int total_rank() const {
        int t = 0;
        for (const auto& [k, e] : rows) t += e.rank;
        return t;
    }
};

// ------------------------------------------------- matrix backend per field

template <class F>
struct MatrixFor {
    using M = Mat<F>;
    using Row = std::vector<typename F::Elem>;
    static Row make_row(int n) { return Row(size_t(n), F::zero()); }
    static void row_set(Row& r, int i, typename F::Elem v) { r[size_t(i)] = v; }
    static typename F::Elem row_get(const Row& r, int i) { return r[size_t(i)]; }
    static bool row_zero(const Row& r) {
        for (const auto& v : r)
            if (!F::is_zero(v)) return false;
        return true;
    }
};

template <>
struct MatrixFor<F2> {
    using M = BitMat;
    using Row = BitRow;
    static Row make_row(int n) { return BitRow(n); }
    static void row_set(Row& r, int i, uint8_t v) { r.set(i, v & 1); }
    static uint8_t row_get(const Row& r, int i) { return r.get(i) ? 1 : 0; }
    static bool row_zero(const Row& r) { return !r.any(); }
};

// Canonical homology data of one bigrading.
template <class F>
struct CanonicalBlock {
    using MX = typename MatrixFor<F>::M;
    std::vector<int> cols;   // original generator indices at (i,j), ascending
    MX reps;                 // canonical cocycle representatives, RREF rows over cols
    std::vector<int> rep_pivots;
    SubspaceT<MX> image;     // RREF basis of the coboundary space
    int rank() const { return reps.rows; }
};

// ------------------------------------------------------------ Khovanov side

template <class F>
class KhovanovData {
public:
    explicit KhovanovData(const PlanarDiagram& d);

    const GradedComplex<F>& complex() const { return c_; }
    const Reduction<F>& reduction() const { return red_; }
    HomologyTable table() const;

    // lazy canonical basis at (i,j)
    const CanonicalBlock<F>& block(int i, int j);

    // class of a cocycle (sparse over original generators, supported at (i,j))
    // in the canonical basis at (i,j)
    std::vector<typename F::Elem> class_coords(int i, int j, const SparseVec<F>& w);

    // canonical representative t at (i,j) as a sparse original-basis vector
    SparseVec<F> rep_vector(int i, int j, int t);

private:
    GradedComplex<F> c_;
    Reduction<F> red_;
    std::map<std::pair<int, int>, CanonicalBlock<F>> blocks_;
};

template <class F>
HomologyTable field_homology(const GradedComplex<F>& c);

HomologyTable integral_homology(const GradedComplex<ZZ>& c);

// total homology dimension by homological degree (any flavor, via reduction)
template <class F>
std::map<int, int> homology_by_degree(const GradedComplex<F>& c);

// ------------------------------------------------------------ Bar-Natan side

// Filtered Bar-Natan pipeline for a knot diagram: H_0(F_q), i_*, p_* per level,
// all computed on the filtered reduction of the BN complex.
template <class F>
class BarNatanEngine {
public:
    explicit BarNatanEngine(const PlanarDiagram& d);

    int j_min() const { return jmin_; }
    int j_max() const { return jmax_; }
    int h0_dim() const { return int(h0_classes_.rows); } // dim H_0(C), 2 for knots

    struct Level {
        int q = 0;
        int h0fq_dim = 0;
        Mat<F> istar; // rows: H_0(F_q) basis -> coords in the fixed H_0(C) basis
        Mat<F> pstar_surv; // rows -> coords over reduced survivors at (0,q)
        std::vector<int> surv0q; // survivor positions at (0, q), ascending
    };
    const Level& level(int q); // q odd, lazily computed

    // chain-level lift of the H_0(F_q) basis vector t (original generator basis)
    SparseVec<F> lift_h0fq(int q, int t);

    // associated-graded class of a reduced survivor: leading (j = j(surv)) part
    // of g(e_p) over original generators
    SparseVec<F> gr_class_of_survivor(int p) const;

    const Reduction<F>& reduction() const { return red_; }
    const GradedComplex<F>& complex() const { return c_; }

private:
    void compute_level(int q);

    GradedComplex<F> c_;
    Reduction<F> red_;
    int jmin_ = 0, jmax_ = 0;
    // reduced-complex bookkeeping
    std::vector<int> surv_i_, surv_j_;
    Mat<F> h0_classes_;           // fixed H_0(C) basis: canonical reps over i=0 survivors
    std::vector<int> h0_pivots_;
    Subspace<F> h0_image_;        // boundary space inside i=0 survivors
    std::vector<int> deg0_;       // survivor positions with i = 0 (ascending)
    std::vector<int> degm1_, degp1_;
    std::map<int, Level> levels_;
    std::map<int, Mat<F>> level_kernels_; // H_0(F_q) reps over deg0_ coords
};

// ------------------------------------------------ spec-level filtration maps

template <class F>
struct FiltrationMaps {
    int q_lo = 0, q_hi = 0; // odd scan bounds: [j_min - 2, j_max + 2]
    struct Entry {
        Mat<F> istar;  // H_0(F_q) -> H_0(C), canonical bases
        Mat<F> pstar;  // H_0(F_q) -> Kh^{0,q}, canonical bases
    };
    std::map<int, Entry> levels;
    std::shared_ptr<BarNatanEngine<F>> engine;   // chain-level access
    std::shared_ptr<KhovanovData<F>> khovanov;   // canonical Kh-side bases
};

// Engine + canonical-basis data with lazily computed levels.
template <class F>
FiltrationMaps<F> make_filtration_engine(const PlanarDiagram& d);

// Fully materialized i_*, p_* matrices over the whole scan range.
// Rejects links (component_count > 1).
template <class F>
FiltrationMaps<F> filtration_maps(const PlanarDiagram& d);

// p_* of one level expressed in the canonical Kh^{0,q} basis (helper shared
// with the fullness search).
template <class F>
Mat<F> pstar_canonical(BarNatanEngine<F>& bn, KhovanovData<F>& kh, int q);

} // namespace khs
