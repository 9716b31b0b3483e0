#pragma once

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "khs/refine.hpp"

namespace khs {

// ------------------------------------------------------------------ s over F

template <class F>
SField s_field(BarNatanEngine<F>& engine) {
    if (engine.h0_dim() != 2)
        throw PreconditionError("s invariants: H_0 of the Bar-Natan complex is not 2-dimensional");
    SField out;
    bool have_min = false, have_max = false;
    for (int q = engine.j_max() + 2; q >= engine.j_min() - 2; q -= 2) {
        int r = rank(engine.level(q).istar);
        if (!have_max && r >= 1) {
            out.s_max = q;
            have_max = true;
        }
        if (r == 2) {
            out.s_min = q;
            have_min = true;
            break;
        }
    }
    if (!have_min || !have_max)
        throw PreconditionError("s invariants: filtration scan exhausted unexpectedly");
    out.s = out.s_min + 1;
    if (out.s_max != out.s_min + 2)
        throw PreconditionError("s invariants: s_max != s_min + 2");
    return out;
}

template <class F>
SField s_field(const PlanarDiagram& d) {
    BarNatanEngine<F> engine(d);
    return s_field(engine);
}

// ------------------------------------------------------------------- s^{Z,m}

namespace detail {

// Does a group with the given invariant factors (ascending, 0 = Z, 1s absent)
// admit a surjection from Z/m (cyclic == true) or Z + Z/m?
inline bool quotient_of(const std::vector<mpz_class>& inv, long m, bool cyclic) {
    if (cyclic) {
        if (inv.empty()) return true;
        if (inv.size() > 1) return false;
        return inv[0] != 0 && mpz_class(m) % inv[0] == 0;
    }
    if (inv.size() > 2) return false;
    if (inv.size() < 2) return true; // Z covers any cyclic group
    return inv[0] != 0 && mpz_class(m) % inv[0] == 0;
}

} // namespace detail

inline SZResult s_integral_impl(const PlanarDiagram& d, long m) {
    if (d.component_count != 1)
        throw PreconditionError("s_integral: input must be a knot (one component)");
    if (m < 1)
        throw PreconditionError("s_integral: m must be a positive integer (m = 0 rejected)");
    auto c = build_complex<ZZ>(d, Flavor::BarNatan);
    Reduction<ZZ> red(c, true);
    red.run();
    const auto& surv = red.survivors();
    std::vector<int> deg0, degm1;
    for (size_t p = 0; p < surv.size(); ++p) {
        if (red.ideg_of(surv[p]) == 0) deg0.push_back(int(p));
        if (red.ideg_of(surv[p]) == -1) degm1.push_back(int(p));
    }
    std::vector<int> pos0(surv.size(), -1);
    for (size_t k = 0; k < deg0.size(); ++k) pos0[size_t(deg0[k])] = int(k);

    // cycle lattice of the full complex at degree 0
    std::map<int, int> colmap1;
    Mat<ZZ> out(0, 0);
    {
        std::vector<std::vector<std::pair<int, mpz_class>>> rows;
        for (int p : deg0) {
            rows.push_back({});
            for (const auto& [tgt, v] : red.reduced_delta()[size_t(p)]) {
                auto it = colmap1.try_emplace(tgt, int(colmap1.size())).first;
                rows.back().emplace_back(it->second, v);
            }
        }
        out = Mat<ZZ>(0, int(colmap1.size()));
        for (auto& r : rows) {
            std::vector<mpz_class> row(colmap1.size(), 0);
            for (auto& [cix, v] : r) row[size_t(cix)] = v;
            out.append_row(std::move(row));
        }
    }
    Mat<ZZ> cycles = integer_kernel_basis(out); // rows over deg0 coords

    // boundary relations in cycle-lattice coordinates
    std::vector<std::vector<mpz_class>> relations;
    for (int p : degm1) {
        std::vector<mpz_class> row(deg0.size(), 0);
        bool any = false;
        for (const auto& [tgt, v] : red.reduced_delta()[size_t(p)])
            if (pos0[size_t(tgt)] >= 0) {
                row[size_t(pos0[size_t(tgt)])] = v;
                any = true;
            }
        if (any) relations.push_back(lattice_coordinates(cycles, row));
    }

    auto quotient_invariants = [&](int q) {
        // relations + classes of cycles supported in F_q
        std::vector<int> keep; // deg0 positions with j >= q
        std::vector<int> mask(deg0.size(), 0);
        for (size_t k = 0; k < deg0.size(); ++k)
            if (red.jdeg_of(surv[size_t(deg0[k])]) >= q) mask[k] = 1;
        // kernel of the outgoing map restricted to F_q columns
        std::vector<int> sub; // indices into deg0
        for (size_t k = 0; k < deg0.size(); ++k)
            if (mask[k]) sub.push_back(int(k));
        Mat<ZZ> sub_out(0, out.cols);
        for (int k : sub) sub_out.append_row(out.a[size_t(k)]);
        Mat<ZZ> sub_ker = integer_kernel_basis(sub_out); // rows over sub coords
        Mat<ZZ> rel(0, cycles.rows);
        for (const auto& r : relations) {
            rel.append_row(r);
        }
        for (int r = 0; r < sub_ker.rows; ++r) {
            std::vector<mpz_class> full(deg0.size(), 0);
            for (int k = 0; k < sub_ker.cols; ++k) full[size_t(sub[size_t(k)])] = sub_ker.get(r, k);
            rel.append_row(lattice_coordinates(cycles, full));
        }
        return cokernel_invariants(rel, cycles.rows);
    };

    int jmin = c.j_min(), jmax = c.j_max();
    SZResult res;
    res.m = m;
    bool have_min = false, have_max = false;
    for (int q = jmax + 2; q >= jmin - 2; q -= 2) {
        auto inv = quotient_invariants(q);
        if (!have_max && detail::quotient_of(inv, m, false)) {
            res.upper = q - 1;
            have_max = true;
        }
        if (detail::quotient_of(inv, m, true)) {
            res.lower = q + 1;
            have_min = true;
            break;
        }
    }
    if (!have_min || !have_max)
        throw PreconditionError("s_integral: scan exhausted unexpectedly");
    return res;
}

// ------------------------------------------------------------------ Bockstein

inline OperationMatrix<F2> bockstein_sq1_impl(const PlanarDiagram& d, KhovanovData<F2>& kh,
                                              int j_lo, int j_hi) {
    OperationMatrix<F2> op;
    op.degree = 1;
    auto zc = build_complex<ZZ>(d, Flavor::Khovanov);
    auto table = kh.table();
    for (const auto& [key, entry] : table.rows) {
        auto [i, j] = key;
        if (j < j_lo || j > j_hi) continue;
        int target_rank = table.rank_at(i + 1, j);
        if (entry.rank == 0) continue;
        Mat<F2> block(entry.rank, target_rank);
        bool nonzero = false;
        for (int t = 0; t < entry.rank; ++t) {
            auto rep = kh.rep_vector(i, j, t);
            // integral lift with 0/1 coefficients, then half its differential
            std::map<int, mpz_class> dz;
            for (const auto& [g, v] : rep) {
                (void)v;
                for (const auto& [tgt, coeff] : zc.delta[size_t(g)]) {
                    auto& slot = dz.try_emplace(tgt, 0).first->second;
                    slot += coeff;
                }
            }
            SparseVec<F2> w;
            for (const auto& [g, v] : dz) {
                if (v % 2 != 0)
                    throw PreconditionError("bockstein: differential of an F2 cocycle lift is odd");
                mpz_class half = v / 2;
                if (half % 2 != 0) w.emplace_back(g, uint8_t(1));
            }
            if (target_rank == 0) {
                if (!w.empty()) {
                    // must be a coboundary; class_coords would reject otherwise
                    auto coords = kh.class_coords(i + 1, j, w);
                    (void)coords;
                }
                continue;
            }
            auto coords = kh.class_coords(i + 1, j, w);
            for (int u = 0; u < target_rank; ++u) {
                block.set(t, u, coords[size_t(u)]);
                if (coords[size_t(u)]) nonzero = true;
            }
        }
        if (nonzero && target_rank > 0) op.blocks.emplace(key, std::move(block));
    }
    return op;
}

// ------------------------------------------------------------- export / load

namespace detail {

inline uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string elem_to_string(uint8_t v) { return std::to_string(int(v)); }
inline std::string elem_to_string(uint32_t v) { return std::to_string(v); }
inline std::string elem_to_string(const mpq_class& v) { return v.get_str(); }
inline std::string elem_to_string(const mpz_class& v) { return v.get_str(); }

template <class F>
typename F::Elem elem_from_string(const std::string& s) {
    if constexpr (std::is_same_v<F, QQ>) return mpq_class(s);
    else return typename F::Elem(F::from_int(std::stol(s)));
}

} // namespace detail

template <class F>
BasisManifest export_basis(const PlanarDiagram& d, KhovanovData<F>& kh) {
    nlohmann::json out;
    out["schema"] = 1;
    out["field"] = field_name<F>();
    out["pd"] = to_pd_string(d);
    auto table = kh.table();
    nlohmann::json blocks = nlohmann::json::array();
    std::string digest = std::string(field_name<F>()) + "|" + to_pd_string(d);
    for (const auto& [key, entry] : table.rows) {
        auto [i, j] = key;
        nlohmann::json blk;
        blk["i"] = i;
        blk["j"] = j;
        blk["rank"] = entry.rank;
        nlohmann::json vectors = nlohmann::json::array();
        for (int t = 0; t < entry.rank; ++t) {
            nlohmann::json vec = nlohmann::json::array();
            digest += "|" + std::to_string(i) + "," + std::to_string(j) + ":";
            for (const auto& [g, v] : kh.rep_vector(i, j, t)) {
                vec.push_back({g, detail::elem_to_string(v)});
                digest += std::to_string(g) + "=" + detail::elem_to_string(v) + ";";
            }
            vectors.push_back(std::move(vec));
        }
        blk["vectors"] = std::move(vectors);
        blocks.push_back(std::move(blk));
    }
    out["blocks"] = std::move(blocks);
    BasisManifest m;
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(detail::fnv1a(digest)));
    m.fingerprint = buf;
    out["fingerprint"] = m.fingerprint;
    m.json_text = out.dump(2);
    return m;
}

template <class F>
BasisManifest export_basis(const PlanarDiagram& d) {
    KhovanovData<F> kh(d);
    return export_basis<F>(d, kh);
}

template <class F>
OperationMatrix<F> parse_operation(const std::string& json_text, const PlanarDiagram& d,
                                   KhovanovData<F>& kh) {
    nlohmann::json in;
    try {
        in = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("operation file: invalid JSON: ") + e.what());
    }
    OperationMatrix<F> op;
    if (!in.contains("degree") || !in.contains("blocks"))
        throw ParseError("operation file: missing degree/blocks");
    op.degree = in["degree"].get<int>();
    if (op.degree < 1) throw ParseError("operation file: degree must be >= 1");
    std::string want_field = in.value("field", "");
    if (want_field != field_name<F>())
        throw PreconditionError("operation file: field " + want_field + " does not match " +
                                field_name<F>());
    op.fingerprint = in.value("basis_fingerprint", "");
    auto manifest = export_basis<F>(d, kh);
    if (op.fingerprint != manifest.fingerprint)
        throw FingerprintError("operation file: basis fingerprint " + op.fingerprint +
                               " does not match diagram basis " + manifest.fingerprint);
    auto table = kh.table();
    for (const auto& blk : in["blocks"]) {
        int i = blk.at("i").get<int>(), j = blk.at("j").get<int>();
        int rows = blk.at("rows").get<int>(), cols = blk.at("cols").get<int>();
        if (rows != table.rank_at(i, j) || cols != table.rank_at(i + op.degree, j))
            throw PreconditionError("operation file: block (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") dimensions do not match homology");
        Mat<F> m(rows, cols);
        for (const auto& ent : blk.at("entries")) {
            int r = ent.at(0).get<int>(), c = ent.at(1).get<int>();
            if (r < 0 || r >= rows || c < 0 || c >= cols)
                throw ParseError("operation file: entry out of range");
            m.set(r, c, detail::elem_from_string<F>(ent.at(2).is_string()
                                                        ? ent.at(2).get<std::string>()
                                                        : std::to_string(ent.at(2).get<long>())));
        }
        op.blocks.emplace(std::make_pair(i, j), std::move(m));
    }
    return op;
}

template <class F>
OperationMatrix<F> load_operation(const std::string& path, const PlanarDiagram& d) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open operation file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    KhovanovData<F> kh(d);
    return parse_operation<F>(ss.str(), d, kh);
}

template <class F>
std::string operation_to_json(const OperationMatrix<F>& op) {
    nlohmann::json out;
    out["schema"] = 1;
    out["degree"] = op.degree;
    out["field"] = field_name<F>();
    out["basis_fingerprint"] = op.fingerprint;
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& [key, m] : op.blocks) {
        nlohmann::json blk;
        blk["i"] = key.first;
        blk["j"] = key.second;
        blk["rows"] = m.rows;
        blk["cols"] = m.cols;
        nlohmann::json entries = nlohmann::json::array();
        for (int r = 0; r < m.rows; ++r)
            for (int c = 0; c < m.cols; ++c)
                if (!F::is_zero(m.get(r, c)))
                    entries.push_back({r, c, detail::elem_to_string(m.get(r, c))});
        blk["entries"] = std::move(entries);
        blocks.push_back(std::move(blk));
    }
    out["blocks"] = std::move(blocks);
    return out.dump(2);
}

// ------------------------------------------------------------------ fullness

namespace detail {

template <class F>
FullnessResult<F> fullness(FiltrationMaps<F>& fm, const OperationMatrix<F>& alpha, int q,
                           bool want_full) {
    if (((q % 2) + 2) % 2 == 0) throw PreconditionError("fullness: q must be odd");
    FullnessResult<F> res;
    if (q < fm.q_lo || q > fm.q_hi) {
        if (q < fm.q_lo) {
            // below the complex everything is full iff it is full at q_lo
            q = fm.q_lo;
        } else {
            res.holds = false; // H_0(F_q) = 0 above the top level
            return res;
        }
    }
    auto& bn = *fm.engine;
    auto& kh = *fm.khovanov;
    const auto& lv = bn.level(q);
    Mat<F> pstar = pstar_canonical(bn, kh, q);
    // W = row space of the alpha block mapping into Kh^{0,q}
    Subspace<F> w;
    w.ambient = pstar.cols;
    w.basis = Mat<F>(0, pstar.cols);
    if (const Mat<F>* blk = alpha.block_at(-alpha.degree, q)) {
        Mat<F> rows = *blk;
        w = row_space(std::move(rows));
    }
    auto v = preimage(pstar, w);
    Mat<F> vim = mat_mul(v.basis, lv.istar);
    Mat<F> probe = vim;
    int r = rank(std::move(probe));
    res.holds = want_full ? (r >= bn.h0_dim()) : (r >= 1);
    if (!res.holds) return res;

    // witnesses: rows of V whose i_* images are independent
    std::vector<int> picks;
    Mat<F> acc(0, vim.cols);
    for (int row = 0; row < vim.rows && int(picks.size()) < (want_full ? 2 : 1); ++row) {
        Mat<F> trial = acc;
        trial.append_row(vim.a[size_t(row)]);
        if (rank(std::move(trial)) > acc.rows) {
            acc.append_row(vim.a[size_t(row)]);
            picks.push_back(row);
        }
    }
    for (int p : picks) {
        typename FullnessResult<F>::Element e;
        // chain lift: combination of the H_0(F_q) basis lifts
        for (int t = 0; t < lv.h0fq_dim; ++t) {
            auto coef = v.basis.get(p, t);
            if (!F::is_zero(coef)) sparse_add_scaled<F>(e.chain, bn.lift_h0fq(q, t), coef);
        }
        e.abar.assign(size_t(vim.cols), F::zero());
        for (int cix = 0; cix < vim.cols; ++cix) e.abar[size_t(cix)] = vim.get(p, cix);
        e.ahat.assign(size_t(pstar.cols), F::zero());
        for (int t = 0; t < lv.h0fq_dim; ++t) {
            auto coef = v.basis.get(p, t);
            if (F::is_zero(coef)) continue;
            for (int cix = 0; cix < pstar.cols; ++cix)
                e.ahat[size_t(cix)] = F::add(e.ahat[size_t(cix)], F::mul(coef, pstar.get(t, cix)));
        }
        if (const Mat<F>* blk = alpha.block_at(-alpha.degree, q)) {
            auto sol = solve(*blk, e.ahat);
            if (!sol)
                throw PreconditionError("fullness: ahat not in the image of alpha");
            e.atilde = *sol;
        } else {
            bool zero = true;
            for (const auto& vv : e.ahat)
                if (!F::is_zero(vv)) zero = false;
            if (!zero) throw PreconditionError("fullness: ahat nonzero for the zero operation");
        }
        res.witness.push_back(std::move(e));
    }
    return res;
}

} // namespace detail

template <class F>
FullnessResult<F> is_half_full(FiltrationMaps<F>& fm, const OperationMatrix<F>& alpha, int q) {
    return detail::fullness(fm, alpha, q, false);
}
template <class F>
FullnessResult<F> is_full(FiltrationMaps<F>& fm, const OperationMatrix<F>& alpha, int q) {
    return detail::fullness(fm, alpha, q, true);
}

// ------------------------------------------------------------ refined values

namespace detail {

template <class F>
OperationMatrix<F> operation_for(const PlanarDiagram& d, KhovanovData<F>& kh,
                                 const RefinedOptions& opt, bool mirror_side) {
    if (opt.source == OpSource::Zero) {
        OperationMatrix<F> z;
        z.degree = opt.zero_degree;
        return z;
    }
    if (opt.source == OpSource::Sq1) {
        if constexpr (std::is_same_v<F, F2>) {
            return bockstein_sq1(d, kh, d.num_crossings() ? -3 * d.num_crossings() - 3
                                                          : -3,
                                 3 * d.num_crossings() + 3);
        } else {
            throw PreconditionError("Sq1 is only defined over F2");
        }
    }
    const std::string& path = mirror_side ? opt.mirror_op_path : opt.op_path;
    if (path.empty())
        throw PreconditionError(mirror_side
                                    ? "refined invariants with an imported operation require a "
                                      "mirror operation file"
                                    : "refined invariants: no operation file given");
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open operation file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_operation<F>(ss.str(), d, kh);
}

// max q with the property, scanned downward from the Lemma 4.2 window
template <class F>
std::pair<int, FullnessResult<F>> scan_down(FiltrationMaps<F>& fm, const OperationMatrix<F>& op,
                                            int q_start, bool want_full) {
    for (int q = q_start; q >= fm.q_lo; q -= 2) {
        auto res = want_full ? is_full(fm, op, q) : is_half_full(fm, op, q);
        if (res.holds) return {q, std::move(res)};
    }
    throw PreconditionError("fullness scan exhausted: no admissible level found");
}

template <class F>
std::tuple<SField, int, int, FullnessResult<F>, FullnessResult<F>> one_side(
    const PlanarDiagram& d, const RefinedOptions& opt, bool mirror_side) {
    auto fm = make_filtration_engine<F>(d);
    auto s = s_field(*fm.engine);
    auto op = operation_for<F>(d, *fm.khovanov, opt, mirror_side);
    // Fullness is monotone (q full => q-2 full), and full forces rank i_* = 2,
    // so the extremal levels lie within the Lemma 4.2 window.
    auto [q_half, wh] = scan_down(fm, op, s.s + 1, false);
    auto [q_full, wf] = scan_down(fm, op, s.s - 1, true);
    int r_plus = q_half + 1;
    int s_plus = q_full + 3;
    if (r_plus != s.s && r_plus != s.s + 2)
        throw PreconditionError("refined invariants: r_+ outside {s, s+2}");
    if (s_plus != s.s && s_plus != s.s + 2)
        throw PreconditionError("refined invariants: s_+ outside {s, s+2}");
    return {s, r_plus, s_plus, std::move(wh), std::move(wf)};
}

} // namespace detail

template <class F>
RefinedInvariants<F> refined_invariants(const PlanarDiagram& d, const RefinedOptions& opt) {
    if (d.component_count != 1)
        throw PreconditionError("refined invariants require a knot (one component)");
    RefinedInvariants<F> out;
    auto [s, rp, sp, wh, wf] = detail::one_side<F>(d, opt, false);
    out.s = s;
    out.r_plus = rp;
    out.s_plus = sp;
    out.r_plus_witness = std::move(wh);
    out.s_plus_witness = std::move(wf);
    auto md = mirror(d);
    auto [ms, mrp, msp, mwh, mwf] = detail::one_side<F>(md, opt, true);
    if (ms.s != -s.s) throw PreconditionError("mirror s-invariant mismatch");
    out.r_minus = -mrp;
    out.s_minus = -msp;
    out.r_minus_witness = std::move(mwh);
    out.s_minus_witness = std::move(mwf);
    return out;
}

template <class F>
std::map<int, std::pair<bool, bool>> fullness_scan(const PlanarDiagram& d,
                                                   const OperationMatrix<F>& alpha) {
    auto fm = make_filtration_engine<F>(d);
    std::map<int, std::pair<bool, bool>> out;
    for (int q = fm.q_lo; q <= fm.q_hi; q += 2)
        out[q] = {is_half_full(fm, alpha, q).holds, is_full(fm, alpha, q).holds};
    return out;
}

} // namespace khs
