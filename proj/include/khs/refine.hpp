#pragma once

// The refined concordance invariants: s_min/s_max/s over a field, s^{Z,m},
// the Bockstein Sq^1, operation-matrix import/export against the canonical
// homology basis, the alpha-fullness search, and r_+- / s_+-.

#include <optional>

#include "khs/homology.hpp"

namespace khs {

// A stable cohomology operation of degree n as per-bigrading matrices in the
// canonical homology bases: block (i,j) maps Kh^{i,j} -> Kh^{i+n,j} (rows =
// domain basis).  Missing blocks are zero.
template <class F>
struct OperationMatrix {
    int degree = 1;
    std::map<std::pair<int, int>, Mat<F>> blocks;
    std::string fingerprint;

    const Mat<F>* block_at(int i, int j) const {
        auto it = blocks.find({i, j});
        return it == blocks.end() ? nullptr : &it->second;
    }
};

struct SField {
    int s_min = 0, s_max = 0, s = 0;
};

// s_min = max odd q with i_* surjective, s_max = max odd q with i_* nonzero,
// s = s_min + 1 = s_max - 1.
template <class F>
SField s_field(const PlanarDiagram& d);
template <class F>
SField s_field(BarNatanEngine<F>& engine);

struct SZResult {
    long m = 1;
    int lower = 0; // s^{Z,m}_min + 1
    int upper = 0; // s^{Z,m}_max - 1
};
SZResult s_integral(const PlanarDiagram& d, long m);

// Bockstein of 0 -> Z -> Z -> F2 -> 0 on the Khovanov complex.  Blocks are
// computed for every bigrading with j in [j_lo, j_hi] (defaults: everything).
OperationMatrix<F2> bockstein_sq1(const PlanarDiagram& d);
OperationMatrix<F2> bockstein_sq1(const PlanarDiagram& d, KhovanovData<F2>& kh, int j_lo,
                                  int j_hi);

// Canonical-basis manifest (JSON) plus its content fingerprint.
struct BasisManifest {
    std::string json_text;
    std::string fingerprint;
};
template <class F>
BasisManifest export_basis(const PlanarDiagram& d);
template <class F>
BasisManifest export_basis(const PlanarDiagram& d, KhovanovData<F>& kh);

// Validates dimensions and the basis fingerprint (FingerprintError on drift).
template <class F>
OperationMatrix<F> load_operation(const std::string& path, const PlanarDiagram& d);
template <class F>
OperationMatrix<F> parse_operation(const std::string& json_text, const PlanarDiagram& d,
                                   KhovanovData<F>& kh);
template <class F>
std::string operation_to_json(const OperationMatrix<F>& op);

// ------------------------------------------------------------ fullness search

template <class F>
struct FullnessResult {
    bool holds = false;
    struct Element {
        SparseVec<F> chain;                   // cycle in F_q, original generators
        std::vector<typename F::Elem> abar;   // class in the H_0(C) basis
        std::vector<typename F::Elem> ahat;   // class in the canonical Kh^{0,q} basis
        std::vector<typename F::Elem> atilde; // alpha-preimage in Kh^{-n,q} (may be zero)
    };
    std::vector<Element> witness; // one element for half-full, two for full
};

// q odd.  Half-full: i_*(V) != 0 for V = p_*^{-1}(im alpha); full: i_*(V) is
// all of H_0(C).
template <class F>
FullnessResult<F> is_half_full(FiltrationMaps<F>& fm, const OperationMatrix<F>& alpha, int q);
template <class F>
FullnessResult<F> is_full(FiltrationMaps<F>& fm, const OperationMatrix<F>& alpha, int q);

// ------------------------------------------------------------ refined values

enum class OpSource { Zero, Sq1, File };

struct RefinedOptions {
    OpSource source = OpSource::Zero;
    int zero_degree = 1;
    std::string op_path;        // OpSource::File
    std::string mirror_op_path; // required for OpSource::File
};

template <class F>
struct RefinedInvariants {
    SField s;
    int r_plus = 0, s_plus = 0, r_minus = 0, s_minus = 0;
    FullnessResult<F> r_plus_witness, s_plus_witness;   // at the extremal q
    FullnessResult<F> r_minus_witness, s_minus_witness; // on the mirror
};

// Only F2 supports OpSource::Sq1.
template <class F>
RefinedInvariants<F> refined_invariants(const PlanarDiagram& d, const RefinedOptions& opt);

// exhaustive per-q fullness scan (for property tests): q -> (half, full)
template <class F>
std::map<int, std::pair<bool, bool>> fullness_scan(const PlanarDiagram& d,
                                                   const OperationMatrix<F>& alpha);

} // namespace khs
