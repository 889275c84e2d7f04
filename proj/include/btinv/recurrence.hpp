#pragma once

#include <stdexcept>
#include <vector>

#include "btinv/stencil.hpp"

namespace btinv {

/// From-scratch evaluation of the window recurrence (support/test path; the
/// hot path lives in SlidingState). Holds rows v_{-k+1}..v_{hi}, each of
/// length k:
///   v_{i,j} = [i == j]                                   for i <= k
///   v_{i,j} = -(x_{k-1} v_{i-1,j} + ... + x_{-k} v_{i-2k,j}) / x_k  for i > k
template <class F>
class RowHistory {
public:
    using Elem = typename F::Elem;

    RowHistory(const F& field, const NormalizedStencil<F>& ns, long long hi)
        : field_(field), k_(ns.inner.k) {
        if (k_ < 1) throw std::invalid_argument("row recurrence needs k >= 1");
        const auto& s = ns.inner;
        for (long long m = -k_ + 1; m <= k_; ++m) {
            std::vector<Elem> r(k_, field.zero());
            if (m >= 1) r[static_cast<std::size_t>(m - 1)] = field.one();
            rows_.push_back(std::move(r));
        }
        const Elem inv_xk = field.invert(s.x(k_));
        for (long long m = k_ + 1; m <= hi; ++m) {
            std::vector<Elem> r(k_);
            for (int j = 0; j < k_; ++j) {
                Elem acc = field.zero();
                for (int t = 1; t <= 2 * k_; ++t)
                    acc = field.add(acc, field.mul(s.x(k_ - t), row(m - t)[j]));
                r[j] = field.mul_as_div(field.neg(acc), inv_xk);
            }
            rows_.push_back(std::move(r));
        }
    }

    /// v_{i, 1..k}, valid for -k+1 <= i <= hi
    const std::vector<Elem>& row(long long i) const {
        return rows_.at(static_cast<std::size_t>(i + k_ - 1));
    }

private:
    F field_;
    int k_;
    std::vector<std::vector<Elem>> rows_;
};

} // namespace btinv
