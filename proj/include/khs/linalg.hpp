#pragma once

// Exact linear algebra over F2 (bit-packed), Fp (word-sized residues) and Q
// (GMP rationals).  Matrices use the row convention throughout: the matrix of
// a linear map f has row k equal to f(e_k), so the image is the row space and
// composition is matrix product in diagram order.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "khs/pd.hpp"

namespace khs {

// ---------------------------------------------------------------- field tags

struct F2 {
    using Elem = uint8_t;
    static constexpr const char* name = "f2";
    static constexpr uint32_t characteristic = 2;
    static Elem zero() { return 0; }
    static Elem one() { return 1; }
    static Elem from_int(long v) { return Elem(((v % 2) + 2) % 2); }
    static Elem add(Elem a, Elem b) { return a ^ b; }
    static Elem sub(Elem a, Elem b) { return a ^ b; }
    static Elem mul(Elem a, Elem b) { return a & b; }
    static Elem neg(Elem a) { return a; }
    static Elem inv(Elem a) { return a; }
    static bool is_zero(Elem a) { return a == 0; }
};

template <uint32_t P>
struct Fp {
    static_assert(P > 2 && P < (1u << 16), "Fp expects an odd prime below 2^16");
    using Elem = uint32_t;
    static constexpr uint32_t characteristic = P;
    static constexpr const char* name = nullptr; // use field_name<F>() helper
    static Elem zero() { return 0; }
    static Elem one() { return 1; }
    static Elem from_int(long v) { long r = v % long(P); return Elem(r < 0 ? r + long(P) : r); }
    static Elem add(Elem a, Elem b) { Elem s = a + b; return s >= P ? s - P : s; }
    static Elem sub(Elem a, Elem b) { return a >= b ? a - b : a + P - b; }
    static Elem mul(Elem a, Elem b) { return Elem((uint64_t(a) * b) % P); }
    static Elem neg(Elem a) { return a == 0 ? 0 : P - a; }
    static Elem inv(Elem a) {
        // Fermat: a^(P-2)
        uint64_t r = 1, x = a, e = P - 2;
        while (e) { if (e & 1) r = r * x % P; x = x * x % P; e >>= 1; }
        return Elem(r);
    }
    static bool is_zero(Elem a) { return a == 0; }
};

struct QQ {
    using Elem = mpq_class;
    static constexpr const char* name = "q";
    static constexpr uint32_t characteristic = 0;
    static Elem zero() { return mpq_class(0); }
    static Elem one() { return mpq_class(1); }
    static Elem from_int(long v) { return mpq_class(v); }
    static Elem add(const Elem& a, const Elem& b) { return a + b; }
    static Elem sub(const Elem& a, const Elem& b) { return a - b; }
    static Elem mul(const Elem& a, const Elem& b) { return a * b; }
    static Elem neg(const Elem& a) { return -a; }
    static Elem inv(const Elem& a) { return 1 / a; }
    static bool is_zero(const Elem& a) { return a == 0; }
};

// The integers, used as the coefficient ring of integral complexes.  Not a
// field: only +-1 are units.
struct ZZ {
    using Elem = mpz_class;
    static constexpr const char* name = "z";
    static constexpr uint32_t characteristic = 0;
    static Elem zero() { return mpz_class(0); }
    static Elem one() { return mpz_class(1); }
    static Elem from_int(long v) { return mpz_class(v); }
    static Elem add(const Elem& a, const Elem& b) { return a + b; }
    static Elem sub(const Elem& a, const Elem& b) { return a - b; }
    static Elem mul(const Elem& a, const Elem& b) { return a * b; }
    static Elem neg(const Elem& a) { return -a; }
    static Elem inv(const Elem& a) { return a; } // valid on units +-1 only
    static bool is_zero(const Elem& a) { return a == 0; }
};

template <class F> const char* field_name() { return F::name; }
template <> inline const char* field_name<Fp<3>>() { return "f3"; }
template <> inline const char* field_name<Fp<5>>() { return "f5"; }
template <> inline const char* field_name<Fp<7>>() { return "f7"; }
template <> inline const char* field_name<Fp<65521>>() { return "f65521"; }

template <class F> bool ring_is_unit(const typename F::Elem& a) { return !F::is_zero(a); }
template <> inline bool ring_is_unit<ZZ>(const mpz_class& a) { return a == 1 || a == -1; }

// --------------------------------------------------------------- dense rows

template <class F>
struct Mat {
    using Elem = typename F::Elem;
    int rows = 0, cols = 0;
    std::vector<std::vector<Elem>> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(size_t(r), std::vector<Elem>(size_t(c), F::zero())) {}
    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.a[size_t(i)][size_t(i)] = F::one();
        return m;
    }
    Elem get(int r, int c) const { return a[size_t(r)][size_t(c)]; }
    void set(int r, int c, Elem v) { a[size_t(r)][size_t(c)] = v; }
    void add_to(int r, int c, Elem v) {
        a[size_t(r)][size_t(c)] = F::add(a[size_t(r)][size_t(c)], v);
    }
    void append_row(std::vector<Elem> row) {
        a.push_back(std::move(row));
        ++rows;
    }
    bool is_zero_row(int r) const {
        for (const auto& v : a[size_t(r)])
            if (!F::is_zero(v)) return false;
        return true;
    }
};

// row ops live in free functions so the bit-packed F2 matrix can share them
template <class F>
void row_axpy(Mat<F>& m, int dst, int src, typename F::Elem c) {
    auto& d = m.a[size_t(dst)];
    const auto& s = m.a[size_t(src)];
    for (int j = 0; j < m.cols; ++j)
        if (!F::is_zero(s[size_t(j)])) d[size_t(j)] = F::add(d[size_t(j)], F::mul(c, s[size_t(j)]));
}

template <class F>
void row_scale(Mat<F>& m, int r, typename F::Elem c) {
    for (auto& v : m.a[size_t(r)]) v = F::mul(c, v);
}

// ------------------------------------------------------- bit-packed F2 rows

struct BitRow {
    std::vector<uint64_t> w;
    explicit BitRow(int bits = 0) : w(size_t((bits + 63) / 64), 0) {}
    bool get(int i) const { return (w[size_t(i >> 6)] >> (i & 63)) & 1; }
    void set(int i, bool v) {
        uint64_t m = uint64_t(1) << (i & 63);
        if (v) w[size_t(i >> 6)] |= m; else w[size_t(i >> 6)] &= ~m;
    }
    void flip(int i) { w[size_t(i >> 6)] ^= uint64_t(1) << (i & 63); }
    void operator^=(const BitRow& o) {
        for (size_t k = 0; k < w.size(); ++k) w[k] ^= o.w[k];
    }
    int first_set() const {
        for (size_t k = 0; k < w.size(); ++k)
            if (w[k]) return int(k * 64) + __builtin_ctzll(w[k]);
        return -1;
    }
    bool any() const {
        for (uint64_t x : w) if (x) return true;
        return false;
    }
};

struct BitMat {
    int rows = 0, cols = 0;
    std::vector<BitRow> a;
    BitMat() = default;
    BitMat(int r, int c) : rows(r), cols(c), a(size_t(r), BitRow(c)) {}
    static BitMat identity(int n) {
        BitMat m(n, n);
        for (int i = 0; i < n; ++i) m.a[size_t(i)].set(i, true);
        return m;
    }
    bool get(int r, int c) const { return a[size_t(r)].get(c); }
    void set(int r, int c, bool v) { a[size_t(r)].set(c, v); }
    void append_row(BitRow row) { a.push_back(std::move(row)); ++rows; }
};

// ------------------------------------------------------------ echelon forms

// In-place reduced row echelon form; returns pivot columns in order.
std::vector<int> rref(BitMat& m);

template <class F>
std::vector<int> rref(Mat<F>& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int sel = -1;
        for (int i = r; i < m.rows; ++i)
            if (!F::is_zero(m.get(i, c))) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(m.a[size_t(sel)], m.a[size_t(r)]);
        row_scale(m, r, F::inv(m.get(r, c)));
        for (int i = 0; i < m.rows; ++i)
            if (i != r && !F::is_zero(m.get(i, c)))
                row_axpy(m, i, r, F::neg(m.get(i, c)));
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// A linear subspace of F^n held as its unique RREF basis.
template <class M>
struct SubspaceT {
    int ambient = 0;
    M basis;                 // RREF rows, no zero rows
    std::vector<int> pivots; // pivot column per basis row
    int dim() const { return basis.rows; }
};

using SubspaceF2 = SubspaceT<BitMat>;
template <class F> using Subspace = SubspaceT<Mat<F>>;

SubspaceF2 row_space(BitMat m);
template <class F>
Subspace<F> row_space(Mat<F> m) {
    Subspace<F> s;
    s.ambient = m.cols;
    s.pivots = rref(m);
    Mat<F> b(0, m.cols);
    for (int r = 0; r < int(s.pivots.size()); ++r) b.append_row(std::move(m.a[size_t(r)]));
    s.basis = std::move(b);
    return s;
}

// Reduce v against the subspace basis; the remainder is the canonical coset
// representative (zero iff v lies in the subspace).
void reduce_by(const SubspaceF2& s, BitRow& v);
template <class F>
void reduce_by(const Subspace<F>& s, std::vector<typename F::Elem>& v) {
    for (int r = 0; r < s.dim(); ++r) {
        auto c = v[size_t(s.pivots[size_t(r)])];
        if (F::is_zero(c)) continue;
        for (int j = 0; j < s.ambient; ++j)
            if (!F::is_zero(s.basis.get(r, j)))
                v[size_t(j)] = F::sub(v[size_t(j)], F::mul(c, s.basis.get(r, j)));
    }
}

// Kernel of the row-convention map (x -> x M), as a canonical subspace of the
// domain.  Computed by eliminating an [M | I] augmentation.
SubspaceF2 kernel(const BitMat& m);
template <class F>
Subspace<F> kernel(const Mat<F>& m) {
    Mat<F> aug(m.rows, m.cols + m.rows);
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) aug.set(r, c, m.get(r, c));
        aug.set(r, m.cols + r, F::one());
    }
    rref(aug);
    Mat<F> ker(0, m.rows);
    for (int r = 0; r < aug.rows; ++r) {
        bool lead_in_m = false;
        for (int c = 0; c < m.cols; ++c)
            if (!F::is_zero(aug.get(r, c))) { lead_in_m = true; break; }
        if (lead_in_m) continue;
        std::vector<typename F::Elem> row(size_t(m.rows));
        for (int c = 0; c < m.rows; ++c) row[size_t(c)] = aug.get(r, m.cols + c);
        if (std::any_of(row.begin(), row.end(), [](const auto& v) { return !F::is_zero(v); }))
            ker.append_row(std::move(row));
    }
    return row_space(std::move(ker));
}

// Some x with x M = b (canonical: free variables zero); nullopt if unsolvable.
// Solved as the column system M^T x^T = b^T.
std::optional<BitRow> solve(const BitMat& m, const BitRow& b);
template <class F>
std::optional<std::vector<typename F::Elem>> solve(const Mat<F>& m,
                                                   const std::vector<typename F::Elem>& b) {
    if (int(b.size()) != m.cols) throw PreconditionError("solve: dimension mismatch");
    Mat<F> aug(m.cols, m.rows + 1);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) aug.set(c, r, m.get(r, c));
    for (int c = 0; c < m.cols; ++c) aug.set(c, m.rows, b[size_t(c)]);
    auto piv = rref(aug);
    std::vector<typename F::Elem> x(size_t(m.rows), F::zero());
    for (int i = 0; i < int(piv.size()); ++i) {
        if (piv[size_t(i)] == m.rows) return std::nullopt; // pivot in the b column
        x[size_t(piv[size_t(i)])] = aug.get(i, m.rows);
    }
    return x;
}

// {x : x M in W}, canonical.
SubspaceF2 preimage(const BitMat& m, const SubspaceF2& w);
template <class F>
Subspace<F> preimage(const Mat<F>& m, const Subspace<F>& w) {
    if (w.ambient != m.cols) throw PreconditionError("preimage: dimension mismatch");
    Mat<F> reduced = m;
    for (int r = 0; r < m.rows; ++r) reduce_by(w, reduced.a[size_t(r)]);
    return kernel(reduced);
}

int rank(BitMat m);
template <class F>
int rank(Mat<F> m) { return int(rref(m).size()); }

BitMat mat_mul(const BitMat& x, const BitMat& y);
template <class F>
Mat<F> mat_mul(const Mat<F>& x, const Mat<F>& y) {
    if (x.cols != y.rows) throw PreconditionError("mat_mul: dimension mismatch");
    Mat<F> z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            auto v = x.get(i, k);
            if (F::is_zero(v)) continue;
            for (int j = 0; j < y.cols; ++j)
                if (!F::is_zero(y.get(k, j)))
                    z.add_to(i, j, F::mul(v, y.get(k, j)));
        }
    return z;
}

// Invert a square matrix (throws if singular).
BitMat inverse(const BitMat& m);
template <class F>
Mat<F> inverse(const Mat<F>& m) {
    if (m.rows != m.cols) throw PreconditionError("inverse: matrix not square");
    Mat<F> aug(m.rows, 2 * m.cols);
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) aug.set(r, c, m.get(r, c));
        aug.set(r, m.cols + r, F::one());
    }
    auto piv = rref(aug);
    if (int(piv.size()) != m.rows || piv.back() >= m.cols)
        throw PreconditionError("inverse: singular matrix");
    Mat<F> inv(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) inv.set(r, c, aug.get(r, m.cols + c));
    return inv;
}

} // namespace khs
