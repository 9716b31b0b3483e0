#pragma once

// Cancellation-based reduction (discrete Morse / Gaussian elimination on the
// complex).  Cancelling a unit entry x -> y of the differential removes both
// generators and adds the correction  d(a) -= d(a)_y u^{-1} d(x)  to every
// other source a of y.  A replay log of the cancellations reconstructs the
// chain homotopy equivalence maps
//   to_reduced   (f: C -> C_red,  f = pi - pi d h - pi h d)
//   from_reduced (g: C_red -> C)
// In filtered mode only entries with equal quantum grading are cancelled, so
// f, g and the homotopy are filtered and every H_*(F_q) is preserved.

#include <map>

#include "khs/complex.hpp"

namespace khs {

template <class R>
class Reduction {
public:
    // ideg/jdeg/delta indexed by generator; delta rows sorted by target.
    Reduction(std::vector<int> ideg, std::vector<int> jdeg,
              const std::vector<SparseVec<R>>& delta, bool filtered);

    Reduction(const GradedComplex<R>& c, bool filtered)
        : Reduction(extract_i(c), extract_j(c), c.delta, filtered) {}

    void run();

    int original_size() const { return int(ideg_.size()); }
    const std::vector<int>& survivors() const { return survivors_; } // original indices, ascending
    int ideg_of(int orig) const { return ideg_[size_t(orig)]; }
    int jdeg_of(int orig) const { return jdeg_[size_t(orig)]; }

    // reduced differential in survivor-position indices
    const std::vector<SparseVec<R>>& reduced_delta() const { return reduced_delta_; }
    bool reduced_is_zero() const {
        for (const auto& r : reduced_delta_)
            if (!r.empty()) return false;
        return true;
    }

    // f applied to a vector over original indices; result over survivor positions
    SparseVec<R> to_reduced(SparseVec<R> v) const;
    // g applied to a vector over survivor positions; result over original indices
    SparseVec<R> from_reduced(const SparseVec<R>& w) const;

    int survivor_position(int orig) const; // -1 if cancelled

private:
    static std::vector<int> extract_i(const GradedComplex<R>& c) {
        std::vector<int> v(c.gens.size());
        for (size_t k = 0; k < c.gens.size(); ++k) v[k] = c.gens[k].i;
        return v;
    }
    static std::vector<int> extract_j(const GradedComplex<R>& c) {
        std::vector<int> v(c.gens.size());
        for (size_t k = 0; k < c.gens.size(); ++k) v[k] = c.gens[k].j;
        return v;
    }

    struct LogEntry {
        int x, y;
        typename R::Elem u;
        SparseVec<R> dx_rest;   // d(x) without the y term, at cancellation time
        SparseVec<R> y_sources; // (a, d(a)_y) for a != x, at cancellation time
    };

    void cancel(int x, int y);

    std::vector<int> ideg_, jdeg_;
    bool filtered_;
    std::vector<std::map<int, typename R::Elem>> out_, in_;
    std::vector<bool> alive_;
    std::vector<LogEntry> log_;
    std::vector<int> survivors_;
    std::vector<int> survivor_pos_;
    std::vector<SparseVec<R>> reduced_delta_;
    bool ran_ = false;
};

} // namespace khs
