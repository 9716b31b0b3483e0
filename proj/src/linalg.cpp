#include "khs/linalg.hpp"

namespace khs {

std::vector<int> rref(BitMat& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int sel = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.get(i, c)) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(m.a[size_t(sel)], m.a[size_t(r)]);
        for (int i = 0; i < m.rows; ++i)
            if (i != r && m.get(i, c)) m.a[size_t(i)] ^= m.a[size_t(r)];
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

SubspaceF2 row_space(BitMat m) {
    SubspaceF2 s;
    s.ambient = m.cols;
    s.pivots = rref(m);
    BitMat b(0, m.cols);
    for (int r = 0; r < int(s.pivots.size()); ++r) b.append_row(std::move(m.a[size_t(r)]));
    s.basis = std::move(b);
    return s;
}

void reduce_by(const SubspaceF2& s, BitRow& v) {
    for (int r = 0; r < s.dim(); ++r)
        if (v.get(s.pivots[size_t(r)])) v ^= s.basis.a[size_t(r)];
}

SubspaceF2 kernel(const BitMat& m) {
    BitMat aug(m.rows, m.cols + m.rows);
    for (int r = 0; r < m.rows; ++r) {
        for (size_t k = 0; k < m.a[size_t(r)].w.size(); ++k) aug.a[size_t(r)].w[k] = m.a[size_t(r)].w[k];
        // clear any spill past m.cols before placing the identity block
        if (m.cols % 64) {
            size_t last = size_t(m.cols / 64);
            aug.a[size_t(r)].w[last] &= (uint64_t(1) << (m.cols % 64)) - 1;
        }
        aug.a[size_t(r)].set(m.cols + r, true);
    }
    rref(aug);
    BitMat ker(0, m.rows);
    for (int r = 0; r < aug.rows; ++r) {
        int lead = aug.a[size_t(r)].first_set();
        if (lead < 0 || lead < m.cols) continue;
        BitRow row(m.rows);
        for (int c = 0; c < m.rows; ++c) row.set(c, aug.get(r, m.cols + c));
        ker.append_row(std::move(row));
    }
    return row_space(std::move(ker));
}

std::optional<BitRow> solve(const BitMat& m, const BitRow& b) {
    BitMat aug(m.cols, m.rows + 1);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c)
            if (m.get(r, c)) aug.set(c, r, true);
    for (int c = 0; c < m.cols; ++c)
        if (b.get(c)) aug.set(c, m.rows, true);
    auto piv = rref(aug);
    BitRow x(m.rows);
    for (int i = 0; i < int(piv.size()); ++i) {
        if (piv[size_t(i)] == m.rows) return std::nullopt;
        x.set(piv[size_t(i)], aug.get(i, m.rows));
    }
    return x;
}

SubspaceF2 preimage(const BitMat& m, const SubspaceF2& w) {
    if (w.ambient != m.cols) throw PreconditionError("preimage: dimension mismatch");
    BitMat reduced = m;
    for (int r = 0; r < m.rows; ++r) reduce_by(w, reduced.a[size_t(r)]);
    return kernel(reduced);
}

int rank(BitMat m) { return int(rref(m).size()); }

BitMat mat_mul(const BitMat& x, const BitMat& y) {
    if (x.cols != y.rows) throw PreconditionError("mat_mul: dimension mismatch");
    BitMat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k)
            if (x.get(i, k)) z.a[size_t(i)] ^= y.a[size_t(k)];
    return z;
}

BitMat inverse(const BitMat& m) {
    if (m.rows != m.cols) throw PreconditionError("inverse: matrix not square");
    BitMat aug(m.rows, 2 * m.cols);
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) aug.set(r, c, m.get(r, c));
        aug.set(r, m.cols + r, true);
    }
    auto piv = rref(aug);
    if (int(piv.size()) != m.rows || (!piv.empty() && piv.back() >= m.cols))
        throw PreconditionError("inverse: singular matrix");
    BitMat inv(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) inv.set(r, c, aug.get(r, m.cols + c));
    return inv;
}

} // namespace khs
