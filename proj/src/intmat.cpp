#include "khs/intmat.hpp"

#include <algorithm>

namespace khs {

namespace {

void row_addmul(Mat<ZZ>& m, int dst, int src, const mpz_class& c) {
    for (int j = 0; j < m.cols; ++j)
        if (m.get(src, j) != 0) m.a[size_t(dst)][size_t(j)] += c * m.get(src, j);
}

void col_addmul(Mat<ZZ>& m, int dst, int src, const mpz_class& c) {
    for (int i = 0; i < m.rows; ++i)
        if (m.get(i, src) != 0) m.a[size_t(i)][size_t(dst)] += c * m.get(i, src);
}

void swap_cols(Mat<ZZ>& m, int a, int b) {
    for (int i = 0; i < m.rows; ++i) std::swap(m.a[size_t(i)][size_t(a)], m.a[size_t(i)][size_t(b)]);
}

} // namespace

SmithResult smith_normal_form(const Mat<ZZ>& input, bool transforms) {
    Mat<ZZ> d = input;
    SmithResult res;
    res.with_transforms = transforms;
    if (transforms) {
        res.U = Mat<ZZ>::identity(d.rows);
        res.V = Mat<ZZ>::identity(d.cols);
    }
    const int nmin = std::min(d.rows, d.cols);
    for (int t = 0; t < nmin; ++t) {
        for (;;) {
            // smallest nonzero |entry| in the trailing block
            int pi = -1, pj = -1;
            mpz_class best;
            for (int i = t; i < d.rows; ++i)
                for (int j = t; j < d.cols; ++j) {
                    if (d.get(i, j) == 0) continue;
                    mpz_class v = abs(d.get(i, j));
                    if (pi < 0 || v < best) { best = v; pi = i; pj = j; }
                }
            if (pi < 0) { pi = -1; break; }
            if (pi != t) {
                std::swap(d.a[size_t(pi)], d.a[size_t(t)]);
                if (transforms) std::swap(res.U.a[size_t(pi)], res.U.a[size_t(t)]);
            }
            if (pj != t) {
                swap_cols(d, pj, t);
                if (transforms) swap_cols(res.V, pj, t);
            }
            bool clean = true;
            for (int i = t + 1; i < d.rows; ++i)
                if (d.get(i, t) != 0) {
                    mpz_class q = d.get(i, t) / d.get(t, t); // truncated
                    if (q != 0) {
                        row_addmul(d, i, t, -q);
                        if (transforms) row_addmul(res.U, i, t, -q);
                    }
                    if (d.get(i, t) != 0) clean = false;
                }
            for (int j = t + 1; j < d.cols; ++j)
                if (d.get(t, j) != 0) {
                    mpz_class q = d.get(t, j) / d.get(t, t);
                    if (q != 0) {
                        col_addmul(d, j, t, -q);
                        if (transforms) col_addmul(res.V, j, t, -q);
                    }
                    if (d.get(t, j) != 0) clean = false;
                }
            if (!clean) continue;
            // pivot divides the rest of the block?  If not, fold the offending
            // row in and keep reducing.
            int bi = -1, bj = -1;
            for (int i = t + 1; i < d.rows && bi < 0; ++i)
                for (int j = t + 1; j < d.cols; ++j)
                    if (d.get(i, j) % d.get(t, t) != 0) { bi = i; bj = j; break; }
            if (bi < 0) break;
            row_addmul(d, t, bi, 1);
            if (transforms) row_addmul(res.U, t, bi, 1);
        }
        if (d.get(t, t) == 0) break;
        if (d.get(t, t) < 0) {
            for (int j = 0; j < d.cols; ++j) d.a[size_t(t)][size_t(j)] = -d.get(t, j);
            if (transforms)
                for (int j = 0; j < res.U.cols; ++j) res.U.a[size_t(t)][size_t(j)] = -res.U.get(t, j);
        }
        res.diag.push_back(d.get(t, t));
    }
    res.rank = int(res.diag.size());
    return res;
}

int int_rank(const Mat<ZZ>& m) { return smith_normal_form(m).rank; }

Mat<ZZ> integer_kernel_basis(const Mat<ZZ>& m) {
    // x M = 0  <=>  (x U^{-1}) D = 0 with U M V = D, so the kernel lattice is
    // spanned by the rows of U past the rank.
    auto s = smith_normal_form(m, true);
    Mat<ZZ> k(0, m.rows);
    for (int t = s.rank; t < m.rows; ++t) k.append_row(s.U.a[size_t(t)]);
    return k;
}

std::vector<mpz_class> lattice_coordinates(const Mat<ZZ>& k, const std::vector<mpz_class>& z) {
    // Solve y K = z exactly.  K has independent rows, so solving over Q and
    // checking integrality suffices.
    Mat<QQ> kq(k.rows, k.cols);
    for (int i = 0; i < k.rows; ++i)
        for (int j = 0; j < k.cols; ++j) kq.set(i, j, mpq_class(k.get(i, j)));
    std::vector<mpq_class> zq(z.size());
    for (size_t i = 0; i < z.size(); ++i) zq[i] = mpq_class(z[i]);
    auto y = solve(kq, zq);
    if (!y) throw PreconditionError("lattice_coordinates: vector outside the lattice span");
    std::vector<mpz_class> out(y->size());
    for (size_t i = 0; i < y->size(); ++i) {
        if ((*y)[i].get_den() != 1)
            throw PreconditionError("lattice_coordinates: vector not in the integer lattice");
        out[i] = (*y)[i].get_num();
    }
    return out;
}

std::vector<mpz_class> cokernel_invariants(const Mat<ZZ>& rel, int ambient) {
    auto s = smith_normal_form(rel);
    std::vector<mpz_class> out;
    for (const auto& x : s.diag)
        if (x != 1) out.push_back(x);
    for (int i = s.rank; i < ambient; ++i) out.push_back(0);
    return out;
}

std::vector<mpz_class> elementary_divisors(const std::vector<mpz_class>& invariant_factors) {
    std::vector<mpz_class> out;
    for (mpz_class d : invariant_factors) {
        if (d <= 1) continue;
        for (mpz_class p = 2; p * p <= d; ++p) {
            if (d % p != 0) continue;
            mpz_class q = 1;
            while (d % p == 0) { q *= p; d /= p; }
            out.push_back(q);
        }
        if (d > 1) out.push_back(d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace khs
