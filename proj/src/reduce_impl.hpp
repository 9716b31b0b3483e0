#pragma once

#include "khs/reduce.hpp"

namespace khs {

template <class R>
Reduction<R>::Reduction(std::vector<int> ideg, std::vector<int> jdeg,
                        const std::vector<SparseVec<R>>& delta, bool filtered)
    : ideg_(std::move(ideg)), jdeg_(std::move(jdeg)), filtered_(filtered) {
    const size_t n = ideg_.size();
    out_.resize(n);
    in_.resize(n);
    alive_.assign(n, true);
    for (size_t g = 0; g < n; ++g)
        for (const auto& [t, v] : delta[g]) {
            out_[g].emplace(t, v);
            in_[size_t(t)].emplace(int(g), v);
        }
}

template <class R>
void Reduction<R>::cancel(int x, int y) {
    const auto u = out_[size_t(x)].at(y);
    LogEntry e;
    e.x = x;
    e.y = y;
    e.u = u;
    for (const auto& [t, v] : out_[size_t(x)])
        if (t != y) e.dx_rest.emplace_back(t, v);
    for (const auto& [a, v] : in_[size_t(y)])
        if (a != x) e.y_sources.emplace_back(a, v);

    // unlink x and y
    for (const auto& [t, v] : out_[size_t(x)]) in_[size_t(t)].erase(x);
    for (const auto& [a, v] : in_[size_t(x)]) out_[size_t(a)].erase(x);
    for (const auto& [t, v] : out_[size_t(y)]) in_[size_t(t)].erase(y);
    for (const auto& [a, v] : in_[size_t(y)]) out_[size_t(a)].erase(y);
    alive_[size_t(x)] = alive_[size_t(y)] = false;

    // d(a) -= d(a)_y u^{-1} d(x)   for every remaining source a of y
    const auto uinv = R::inv(u);
    for (const auto& [a, va] : e.y_sources) {
        auto coef = R::neg(R::mul(va, uinv));
        for (const auto& [b, vb] : e.dx_rest) {
            auto add = R::mul(coef, vb);
            auto it = out_[size_t(a)].find(b);
            if (it == out_[size_t(a)].end()) {
                out_[size_t(a)].emplace(b, add);
                in_[size_t(b)].emplace(a, add);
            } else {
                it->second = R::add(it->second, add);
                if (R::is_zero(it->second)) {
                    out_[size_t(a)].erase(it);
                    in_[size_t(b)].erase(a);
                } else {
                    in_[size_t(b)][a] = it->second;
                }
            }
        }
    }
    log_.push_back(std::move(e));
}

template <class R>
void Reduction<R>::run() {
    if (ran_) return;
    ran_ = true;
    const int n = int(ideg_.size());
    bool changed = true;
    while (changed) {
        changed = false;
        for (int x = 0; x < n; ++x) {
            if (!alive_[size_t(x)]) continue;
            // cheapest admissible unit entry in this row
            int best = -1;
            size_t best_cost = 0;
            for (const auto& [y, v] : out_[size_t(x)]) {
                if (!ring_is_unit<R>(v)) continue;
                if (filtered_ && jdeg_[size_t(x)] != jdeg_[size_t(y)]) continue;
                size_t cost = (in_[size_t(y)].size() - 1) * (out_[size_t(x)].size() - 1);
                if (best < 0 || cost < best_cost) { best = y; best_cost = cost; }
                if (cost == 0) break;
            }
            if (best >= 0) {
                cancel(x, best);
                changed = true;
            }
        }
    }
    survivor_pos_.assign(size_t(n), -1);
    for (int g = 0; g < n; ++g)
        if (alive_[size_t(g)]) {
            survivor_pos_[size_t(g)] = int(survivors_.size());
            survivors_.push_back(g);
        }
    reduced_delta_.assign(survivors_.size(), {});
    for (size_t p = 0; p < survivors_.size(); ++p)
        for (const auto& [t, v] : out_[size_t(survivors_[p])])
            reduced_delta_[p].emplace_back(survivor_pos_[size_t(t)], v);
}

template <class R>
int Reduction<R>::survivor_position(int orig) const {
    return survivor_pos_[size_t(orig)];
}

template <class R>
SparseVec<R> Reduction<R>::to_reduced(SparseVec<R> v) const {
    // forward replay: f(c) = pi(c - d h(c) - h d(c)); per step the basis maps
    // are x -> 0, y -> -u^{-1} (d(x) - u y), identity elsewhere.
    for (const auto& e : log_) {
        typename R::Elem cy = R::zero();
        SparseVec<R> next;
        next.reserve(v.size());
        for (const auto& [g, c] : v) {
            if (g == e.x) continue;
            if (g == e.y) { cy = c; continue; }
            next.emplace_back(g, c);
        }
        if (!R::is_zero(cy))
            sparse_add_scaled<R>(next, e.dx_rest, R::neg(R::mul(cy, R::inv(e.u))));
        v = std::move(next);
    }
    SparseVec<R> out;
    out.reserve(v.size());
    for (const auto& [g, c] : v) out.emplace_back(survivor_pos_[size_t(g)], c);
    return out;
}

template <class R>
SparseVec<R> Reduction<R>::from_reduced(const SparseVec<R>& w) const {
    SparseVec<R> v;
    v.reserve(w.size());
    for (const auto& [p, c] : w) v.emplace_back(survivors_[size_t(p)], c);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    // reverse replay: g(b) = b - h(d b); the y-coefficient of d(b) read off the
    // recorded column of y.
    for (auto it = log_.rbegin(); it != log_.rend(); ++it) {
        typename R::Elem acc = R::zero();
        size_t i = 0, k = 0;
        while (i < v.size() && k < it->y_sources.size()) {
            if (v[i].first < it->y_sources[k].first) ++i;
            else if (it->y_sources[k].first < v[i].first) ++k;
            else { acc = R::add(acc, R::mul(v[i].second, it->y_sources[k].second)); ++i; ++k; }
        }
        if (!R::is_zero(acc)) {
            SparseVec<R> xterm{{it->x, R::neg(R::mul(acc, R::inv(it->u)))}};
            sparse_add_scaled<R>(v, xterm, R::one());
        }
    }
    return v;
}

} // namespace khs
