#pragma once

#include <vector>

#include "btinv/core.hpp"
#include "btinv/oracle.hpp"
#include "btinv/sequence.hpp"
#include "btinv/stencil.hpp"

namespace btinv {

/// Naive reference in the O(k^3 n) cost class: stream the recurrence rows
/// with constant memory, but run a full k x k elimination from scratch at
/// every order instead of reusing the previous echelon work. Bit-identical
/// to invertibility_sequence.
template <class F>
InvertibilitySequence naive_sequence(const F& field, const Stencil<F>& s, long long n) {
    if (n < 1) throw std::invalid_argument("sequence length must be >= 1");
    const auto ns = normalize_stencil(s, field);
    const int k = ns.inner.k;

    InvertibilitySequence seq;
    seq.bits.resize(static_cast<std::size_t>(n));
    if (k == 0) {
        const bool inv = !field.is_zero(ns.inner.x(0));
        for (auto& b : seq.bits) b = inv ? 1 : 0;
        return seq;
    }

    for (long long i = 1; i <= std::min<long long>(k, n); ++i)
        seq.bits[static_cast<std::size_t>(i - 1)] = dense_invertible(field, ns, i) ? 1 : 0;
    if (n <= k) return seq;

    using Elem = typename F::Elem;
    const int m = 2 * k;
    // circular window of rows v_{i-k+1}..v_{i+k}, physical slot = logical mod 2k
    std::vector<std::vector<Elem>> win(static_cast<std::size_t>(m),
                                       std::vector<Elem>(k, field.zero()));
    auto slot = [&](long long logical) -> std::vector<Elem>& {
        return win[static_cast<std::size_t>(((logical % m) + m) % m)];
    };
    for (int i = 1; i <= k; ++i) slot(i)[i - 1] = field.one();

    const Elem inv_xk = field.invert(ns.inner.x(k));
    std::vector<Elem> taps;
    taps.reserve(static_cast<std::size_t>(m));
    for (int t = 1; t <= m; ++t) taps.push_back(field.neg(ns.inner.x(k - t)));

    for (long long i = 1; i <= n; ++i) {
        if (auto* c = field.counter()) c->set_phase(Phase::generate);
        std::vector<Elem> row(k);
        for (int j = 0; j < k; ++j) {
            Elem acc = field.zero();
            for (int t = 1; t <= m; ++t)
                acc = field.add(acc, field.mul(taps[t - 1], slot(i + k - t)[j]));
            row[j] = field.mul_as_div(acc, inv_xk);
        }
        slot(i + k) = std::move(row);

        if (i > k) {
            if (auto* c = field.counter()) c->set_phase(Phase::eliminate);
            std::vector<std::vector<Elem>> w;
            w.reserve(static_cast<std::size_t>(k));
            for (long long r = i + 1; r <= i + k; ++r) w.push_back(slot(r));
            seq.bits[static_cast<std::size_t>(i - 1)] =
                rank_of_rows(field, std::move(w)) == k ? 1 : 0;
        }
    }
    return seq;
}

} // namespace btinv
