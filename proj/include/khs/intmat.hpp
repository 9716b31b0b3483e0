#pragma once

// Sparse integer matrices and Smith normal form with exact (GMP) arithmetic.
// Pivots are chosen with smallest absolute value to limit coefficient growth.

#include <utility>
#include <vector>

#include "khs/linalg.hpp"

namespace khs {

struct SparseIntMat {
    int rows = 0, cols = 0;
    std::vector<std::vector<std::pair<int, mpz_class>>> r; // per row: (col, value), sorted

    SparseIntMat() = default;
    SparseIntMat(int nr, int nc) : rows(nr), cols(nc), r(size_t(nr)) {}
    void add(int i, int j, mpz_class v) { r[size_t(i)].emplace_back(j, std::move(v)); }
    Mat<ZZ> dense() const {
        Mat<ZZ> m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (const auto& [j, v] : r[size_t(i)]) m.add_to(i, j, v);
        return m;
    }
};

struct SmithResult {
    std::vector<mpz_class> diag; // invariant factors d1 | d2 | ..., all positive
    int rank = 0;
    bool with_transforms = false;
    Mat<ZZ> U, V; // U * M * V = diag (when with_transforms)
};

SmithResult smith_normal_form(const Mat<ZZ>& m, bool transforms = false);
inline SmithResult smith_normal_form(const SparseIntMat& m, bool transforms = false) {
    return smith_normal_form(m.dense(), transforms);
}

int int_rank(const Mat<ZZ>& m);

// Basis of {x : x M = 0} as a full lattice basis (rows).
Mat<ZZ> integer_kernel_basis(const Mat<ZZ>& m);

// Unique integer solution of y K = z for K a lattice basis with independent
// rows; throws if z is not in the row lattice.
std::vector<mpz_class> lattice_coordinates(const Mat<ZZ>& k, const std::vector<mpz_class>& z);

// Invariant factors (ascending divisibility, 1s dropped, 0 denotes a free Z
// summand) of the cokernel Z^n / rowspan(rel).
std::vector<mpz_class> cokernel_invariants(const Mat<ZZ>& rel, int ambient);

// Split an invariant factor list into prime powers, ascending.
std::vector<mpz_class> elementary_divisors(const std::vector<mpz_class>& invariant_factors);

} // namespace khs
