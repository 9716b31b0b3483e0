#pragma once

#include <algorithm>

#include "khs/homology.hpp"

namespace khs {

// ------------------------------------------------------------ KhovanovData

template <class F>
KhovanovData<F>::KhovanovData(const PlanarDiagram& d)
    : c_(build_complex<F>(d, Flavor::Khovanov)), red_(c_, false) {
    red_.run();
    if (!red_.reduced_is_zero())
        throw PreconditionError("khovanov reduction left a nonzero differential over a field");
}

template <class F>
HomologyTable KhovanovData<F>::table() const {
    HomologyTable t;
    t.ring = field_name<F>();
    for (int s : red_.survivors()) {
        auto key = std::make_pair(red_.ideg_of(s), red_.jdeg_of(s));
        t.rows[key].rank += 1;
    }
    return t;
}

template <class F>
const CanonicalBlock<F>& KhovanovData<F>::block(int i, int j) {
    auto it = blocks_.find({i, j});
    if (it != blocks_.end()) return it->second;

    using MF = MatrixFor<F>;
    using MX = typename MF::M;
    CanonicalBlock<F> b;
    std::vector<int> next_cols, prev_rows;
    std::vector<int> colpos(c_.gens.size(), -1);
    for (int g = 0; g < c_.size(); ++g) {
        const auto& gen = c_.gens[size_t(g)];
        if (gen.j != j) continue;
        if (gen.i == i) {
            colpos[size_t(g)] = int(b.cols.size());
            b.cols.push_back(g);
        } else if (gen.i == i + 1) {
            colpos[size_t(g)] = int(next_cols.size());
            next_cols.push_back(g);
        } else if (gen.i == i - 1) {
            prev_rows.push_back(g);
        }
    }

    // cycle space: kernel of the outgoing block
    MX out(int(b.cols.size()), int(next_cols.size()));
    for (size_t r = 0; r < b.cols.size(); ++r)
        for (const auto& [tgt, v] : c_.delta[size_t(b.cols[r])])
            out.set(int(r), colpos[size_t(tgt)], typename F::Elem(v));
    auto cycles = kernel(out);

    // boundary space: row space of the incoming block
    MX in(int(prev_rows.size()), int(b.cols.size()));
    for (size_t r = 0; r < prev_rows.size(); ++r)
        for (const auto& [tgt, v] : c_.delta[size_t(prev_rows[r])])
            in.set(int(r), colpos[size_t(tgt)], typename F::Elem(v));
    b.image = row_space(std::move(in));

    // canonical representatives: kernel RREF reduced mod boundaries, re-RREF'd
    MX reps(0, int(b.cols.size()));
    for (int r = 0; r < cycles.dim(); ++r) {
        auto row = cycles.basis.a[size_t(r)];
        reduce_by(b.image, row);
        reps.append_row(std::move(row));
    }
    auto canon = row_space(std::move(reps));
    b.reps = std::move(canon.basis);
    b.rep_pivots = std::move(canon.pivots);

    int expected = 0;
    for (int s : red_.survivors())
        if (red_.ideg_of(s) == i && red_.jdeg_of(s) == j) ++expected;
    if (b.rank() != expected)
        throw PreconditionError("canonical basis rank disagrees with reduction");
    return blocks_.emplace(std::make_pair(i, j), std::move(b)).first->second;
}

template <class F>
std::vector<typename F::Elem> KhovanovData<F>::class_coords(int i, int j, const SparseVec<F>& w) {
    using MF = MatrixFor<F>;
    const auto& b = block(i, j);
    auto row = MF::make_row(int(b.cols.size()));
    size_t ci = 0;
    for (const auto& [g, v] : w) {
        while (ci < b.cols.size() && b.cols[ci] < g) ++ci;
        if (ci == b.cols.size() || b.cols[ci] != g)
            throw PreconditionError("class_coords: vector not supported at the requested bigrading");
        MF::row_set(row, int(ci), v);
    }
    reduce_by(b.image, row);
    std::vector<typename F::Elem> coords(size_t(b.rank()), F::zero());
    for (int t = 0; t < b.rank(); ++t) {
        auto c = MF::row_get(row, b.rep_pivots[size_t(t)]);
        coords[size_t(t)] = c;
        if (!F::is_zero(c))
            for (int k = 0; k < int(b.cols.size()); ++k)
                MF::row_set(row, k,
                            F::sub(MF::row_get(row, k), F::mul(c, MF::row_get(b.reps.a[size_t(t)], k))));
    }
    if (!MF::row_zero(row))
        throw PreconditionError("class_coords: vector is not a cocycle at the requested bigrading");
    return coords;
}

template <class F>
SparseVec<F> KhovanovData<F>::rep_vector(int i, int j, int t) {
    using MF = MatrixFor<F>;
    const auto& b = block(i, j);
    SparseVec<F> out;
    for (size_t k = 0; k < b.cols.size(); ++k) {
        auto v = MF::row_get(b.reps.a[size_t(t)], int(k));
        if (!F::is_zero(v)) out.emplace_back(b.cols[k], v);
    }
    return out;
}

// ------------------------------------------------------------- plain tables

template <class F>
HomologyTable field_homology(const GradedComplex<F>& c) {
    Reduction<F> red(c, false);
    red.run();
    if (!red.reduced_is_zero())
        throw PreconditionError("field reduction left a nonzero differential");
    HomologyTable t;
    t.ring = field_name<F>();
    t.by_degree_only = (c.flavor == Flavor::BarNatan);
    for (int s : red.survivors()) {
        auto key = t.by_degree_only ? std::make_pair(red.ideg_of(s), 0)
                                    : std::make_pair(red.ideg_of(s), red.jdeg_of(s));
        t.rows[key].rank += 1;
    }
    return t;
}

inline HomologyTable integral_homology_impl(const GradedComplex<ZZ>& c) {
    Reduction<ZZ> red(c, false);
    red.run();
    const bool by_deg = (c.flavor == Flavor::BarNatan);
    // group survivors per block
    std::map<std::pair<int, int>, std::vector<int>> block; // key -> survivor positions
    const auto& surv = red.survivors();
    for (size_t p = 0; p < surv.size(); ++p) {
        auto key = by_deg ? std::make_pair(red.ideg_of(surv[p]), 0)
                          : std::make_pair(red.ideg_of(surv[p]), red.jdeg_of(surv[p]));
        block[key].push_back(int(p));
    }
    auto key_of = [&](int p) {
        return by_deg ? std::make_pair(red.ideg_of(surv[size_t(p)]), 0)
                      : std::make_pair(red.ideg_of(surv[size_t(p)]), red.jdeg_of(surv[size_t(p)]));
    };
    HomologyTable t;
    t.ring = "z";
    t.integral = true;
    t.by_degree_only = by_deg;
    for (const auto& [key, cols] : block) {
        std::vector<int> pos(surv.size(), -1);
        for (size_t k = 0; k < cols.size(); ++k) pos[size_t(cols[k])] = int(k);
        // incoming matrix from (i-1) block, outgoing to (i+1)
        auto prev_key = by_deg ? std::make_pair(key.first - 1, 0)
                               : std::make_pair(key.first - 1, key.second);
        Mat<ZZ> in(0, int(cols.size()));
        if (auto it = block.find(prev_key); it != block.end()) {
            for (int p : it->second) {
                std::vector<mpz_class> row(cols.size(), 0);
                for (const auto& [tgt, v] : red.reduced_delta()[size_t(p)])
                    if (key_of(tgt) == key) row[size_t(pos[size_t(tgt)])] = v;
                in.append_row(std::move(row));
            }
        }
        int rank_out = 0;
        {
            // outgoing block rank
            std::map<int, int> nextpos;
            std::vector<std::vector<mpz_class>> rows;
            for (int p : cols) {
                std::vector<std::pair<int, mpz_class>> ents;
                for (const auto& [tgt, v] : red.reduced_delta()[size_t(p)]) {
                    auto [it2, fresh] = nextpos.try_emplace(tgt, int(nextpos.size()));
                    ents.emplace_back(it2->second, v);
                }
                rows.push_back({});
                auto& rr = rows.back();
                for (auto& [cix, v] : ents) {
                    if (int(rr.size()) <= cix) rr.resize(size_t(cix) + 1, 0);
                    rr[size_t(cix)] = v;
                }
            }
            Mat<ZZ> out(0, int(nextpos.size()));
            for (auto& rr : rows) {
                rr.resize(nextpos.size(), 0);
                out.append_row(std::move(rr));
            }
            rank_out = int_rank(out);
        }
        auto snf_in = smith_normal_form(in);
        HomologyEntry e;
        e.rank = int(cols.size()) - rank_out - snf_in.rank;
        std::vector<mpz_class> tors;
        for (const auto& d : snf_in.diag)
            if (d > 1) tors.push_back(d);
        e.torsion = elementary_divisors(tors);
        if (e.rank != 0 || !e.torsion.empty()) t.rows[key] = std::move(e);
    }
    return t;
}

template <class F>
std::map<int, int> homology_by_degree(const GradedComplex<F>& c) {
    Reduction<F> red(c, false);
    red.run();
    if (!red.reduced_is_zero())
        throw PreconditionError("field reduction left a nonzero differential");
    std::map<int, int> dims;
    for (int s : red.survivors()) dims[red.ideg_of(s)] += 1;
    return dims;
}

// ----------------------------------------------------------- BarNatanEngine

template <class F>
BarNatanEngine<F>::BarNatanEngine(const PlanarDiagram& d)
    : c_(build_complex<F>(d, Flavor::BarNatan)), red_(c_, true) {
    if (d.component_count != 1)
        throw PreconditionError("filtration invariants require a knot (one component)");
    jmin_ = c_.j_min();
    jmax_ = c_.j_max();
    red_.run();
    const auto& surv = red_.survivors();
    surv_i_.resize(surv.size());
    surv_j_.resize(surv.size());
    for (size_t p = 0; p < surv.size(); ++p) {
        surv_i_[p] = red_.ideg_of(surv[p]);
        surv_j_[p] = red_.jdeg_of(surv[p]);
        if (surv_i_[p] == -1) degm1_.push_back(int(p));
        if (surv_i_[p] == 0) deg0_.push_back(int(p));
        if (surv_i_[p] == 1) degp1_.push_back(int(p));
    }
    // boundary space of the full complex over the i=0 survivor coordinates
    std::vector<int> degpos(surv_i_.size(), -1);
    for (size_t k = 0; k < deg0_.size(); ++k) degpos[size_t(deg0_[k])] = int(k);
    Mat<F> bnd(0, int(deg0_.size()));
    for (int p : degm1_) {
        std::vector<typename F::Elem> row(deg0_.size(), F::zero());
        bool any = false;
        for (const auto& [tgt, v] : red_.reduced_delta()[size_t(p)])
            if (degpos[size_t(tgt)] >= 0) {
                row[size_t(degpos[size_t(tgt)])] = v;
                any = true;
            }
        if (any) bnd.append_row(std::move(row));
    }
    h0_image_ = row_space(std::move(bnd));

    // fixed H_0(C) basis = canonical classes at the lowest level
    compute_level(jmin_ - 2);
    const auto& base = level_kernels_.at(jmin_ - 2);
    h0_classes_ = base;
    auto rs = row_space(h0_classes_);
    h0_classes_ = std::move(rs.basis);
    h0_pivots_ = std::move(rs.pivots);
}

// H_0(F_q) with canonical representatives over the i=0 survivor coordinates.
template <class F>
void BarNatanEngine<F>::compute_level(int q) {
    if (level_kernels_.count(q)) return;
    std::vector<int> pos0(surv_i_.size(), -1);
    std::vector<int> cols0;
    for (int p : deg0_)
        if (surv_j_[size_t(p)] >= q) {
            pos0[size_t(p)] = int(cols0.size());
            cols0.push_back(p);
        }
    std::vector<int> pos1;
    std::map<int, int> colmap1;
    Mat<F> out(0, 0);
    {
        std::vector<std::vector<std::pair<int, typename F::Elem>>> rows;
        for (int p : cols0) {
            rows.push_back({});
            for (const auto& [tgt, v] : red_.reduced_delta()[size_t(p)]) {
                auto [it, fresh] = colmap1.try_emplace(tgt, int(colmap1.size()));
                rows.back().emplace_back(it->second, v);
            }
        }
        out = Mat<F>(0, int(colmap1.size()));
        for (auto& r : rows) {
            std::vector<typename F::Elem> row(colmap1.size(), F::zero());
            for (auto& [cix, v] : r) row[size_t(cix)] = v;
            out.append_row(std::move(row));
        }
    }
    auto cycles = kernel(out);
    Mat<F> bnd(0, int(cols0.size()));
    for (int p : degm1_) {
        if (surv_j_[size_t(p)] < q) continue;
        std::vector<typename F::Elem> row(cols0.size(), F::zero());
        bool any = false;
        for (const auto& [tgt, v] : red_.reduced_delta()[size_t(p)])
            if (pos0[size_t(tgt)] >= 0) {
                row[size_t(pos0[size_t(tgt)])] = v;
                any = true;
            }
        if (any) bnd.append_row(std::move(row));
    }
    auto image = row_space(std::move(bnd));
    Mat<F> reps(0, int(cols0.size()));
    for (int r = 0; r < cycles.dim(); ++r) {
        auto row = cycles.basis.a[size_t(r)];
        reduce_by(image, row);
        reps.append_row(std::move(row));
    }
    auto canon = row_space(std::move(reps));
    // store reps in deg0_ coordinates (pad columns back to all of deg0_)
    Mat<F> full(canon.basis.rows, int(deg0_.size()));
    std::vector<int> degpos(surv_i_.size(), -1);
    for (size_t k = 0; k < deg0_.size(); ++k) degpos[size_t(deg0_[k])] = int(k);
    for (int r = 0; r < canon.basis.rows; ++r)
        for (size_t k = 0; k < cols0.size(); ++k)
            full.set(r, degpos[size_t(cols0[k])], canon.basis.get(r, int(k)));
    level_kernels_.emplace(q, std::move(full));
}

template <class F>
const typename BarNatanEngine<F>::Level& BarNatanEngine<F>::level(int q) {
    auto it = levels_.find(q);
    if (it != levels_.end()) return it->second;
    if (((q % 2) + 2) % 2 == 0) throw PreconditionError("filtration level q must be odd");
    compute_level(q);
    const auto& reps = level_kernels_.at(q);
    Level lv;
    lv.q = q;
    lv.h0fq_dim = reps.rows;
    // i_*: reduce against the boundary space of the full complex, then read off
    // coordinates at the H_0(C) pivot columns
    lv.istar = Mat<F>(reps.rows, h0_classes_.rows);
    for (int r = 0; r < reps.rows; ++r) {
        auto row = reps.a[size_t(r)];
        reduce_by(h0_image_, row);
        for (int t = 0; t < h0_classes_.rows; ++t) {
            auto cft = row[size_t(h0_pivots_[size_t(t)])];
            lv.istar.set(r, t, cft);
            if (!F::is_zero(cft))
                for (int k = 0; k < int(row.size()); ++k)
                    row[size_t(k)] = F::sub(row[size_t(k)], F::mul(cft, h0_classes_.get(t, k)));
        }
        for (const auto& v : row)
            if (!F::is_zero(v)) throw PreconditionError("istar: class outside H_0(C) span");
    }
    // p_*: leading (j = q) part over survivors at (0, q)
    for (int p : deg0_)
        if (surv_j_[size_t(p)] == q) lv.surv0q.push_back(p);
    std::vector<int> qpos(surv_i_.size(), -1);
    for (size_t k = 0; k < lv.surv0q.size(); ++k) qpos[size_t(lv.surv0q[k])] = int(k);
    lv.pstar_surv = Mat<F>(reps.rows, int(lv.surv0q.size()));
    for (int r = 0; r < reps.rows; ++r)
        for (size_t k = 0; k < deg0_.size(); ++k) {
            auto v = reps.get(r, int(k));
            if (!F::is_zero(v) && qpos[size_t(deg0_[k])] >= 0)
                lv.pstar_surv.set(r, qpos[size_t(deg0_[k])], v);
        }
    return levels_.emplace(q, std::move(lv)).first->second;
}

template <class F>
SparseVec<F> BarNatanEngine<F>::lift_h0fq(int q, int t) {
    const auto& reps = level_kernels_.at(q);
    SparseVec<F> w;
    for (size_t k = 0; k < deg0_.size(); ++k) {
        auto v = reps.get(t, int(k));
        if (!F::is_zero(v)) w.emplace_back(deg0_[k], v);
    }
    return red_.from_reduced(w);
}

template <class F>
SparseVec<F> BarNatanEngine<F>::gr_class_of_survivor(int p) const {
    SparseVec<F> w{{p, F::one()}};
    auto chain = red_.from_reduced(w);
    int j = surv_j_[size_t(p)];
    SparseVec<F> lead;
    for (const auto& [g, v] : chain)
        if (c_.gens[size_t(g)].j == j) lead.emplace_back(g, v);
    return lead;
}

// ------------------------------------------------------------ spec wrappers

template <class F>
Mat<F> pstar_canonical(BarNatanEngine<F>& bn, KhovanovData<F>& kh, int q) {
    const auto& lv = bn.level(q);
    // change of basis on Kh^{0,q}: rows = classes of the BN survivors' leading parts
    const auto& blk = kh.block(0, q);
    Mat<F> m(int(lv.surv0q.size()), blk.rank());
    for (size_t k = 0; k < lv.surv0q.size(); ++k) {
        auto coords = kh.class_coords(0, q, bn.gr_class_of_survivor(lv.surv0q[k]));
        for (int t = 0; t < blk.rank(); ++t) m.set(int(k), t, coords[size_t(t)]);
    }
    return mat_mul(lv.pstar_surv, m);
}

template <class F>
FiltrationMaps<F> make_filtration_engine(const PlanarDiagram& d) {
    if (d.component_count != 1)
        throw PreconditionError("filtration_maps: input must be a knot (one component)");
    FiltrationMaps<F> fm;
    fm.engine = std::make_shared<BarNatanEngine<F>>(d);
    fm.khovanov = std::make_shared<KhovanovData<F>>(d);
    fm.q_lo = fm.engine->j_min() - 2;
    fm.q_hi = fm.engine->j_max() + 2;
    return fm;
}

template <class F>
FiltrationMaps<F> filtration_maps(const PlanarDiagram& d) {
    auto fm = make_filtration_engine<F>(d);
    for (int q = fm.q_lo; q <= fm.q_hi; q += 2) {
        typename FiltrationMaps<F>::Entry e;
        e.istar = fm.engine->level(q).istar;
        e.pstar = pstar_canonical(*fm.engine, *fm.khovanov, q);
        fm.levels.emplace(q, std::move(e));
    }
    return fm;
}

} // namespace khs
