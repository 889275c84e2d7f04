#pragma once

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <vector>

#include "btinv/oracle.hpp"
#include "btinv/recurrence.hpp"
#include "btinv/sequence.hpp"
#include "btinv/stencil.hpp"

namespace btinv {

inline constexpr int kNoPivot = -1;

/// Working set of the sliding-window algorithm: the 2k most recent recurrence
/// rows (circular), a k x k quasi-row-echelon buffer, pivot columns and row
/// ages. Holds exactly 3k^2 field elements regardless of n.
template <class F>
class SlidingState {
public:
    using Elem = typename F::Elem;

    SlidingState(const F& field, const NormalizedStencil<F>& stencil)
        : field_(field), k_(stencil.inner.k) {
        if (k_ < 1)
            throw std::invalid_argument("sliding state needs k >= 1; use the diagonal fast path");

        const auto& s = stencil.inner;
        inv_xk_ = field_.invert(s.x(k_)); // one-time; reused every row

        // negated recurrence coefficients: tap t multiplies row i - t,
        // t = 1..2k, coefficient -x_{k-t}
        taps_.reserve(2 * k_);
        for (int t = 1; t <= 2 * k_; ++t)
            taps_.push_back(field_.neg(s.x(k_ - t)));

        // logical rows -k+1..k, base case v_{i,j} = [i == j]
        wbuf_.assign(static_cast<std::size_t>(2 * k_ * k_), field_.zero());
        for (int i = 1; i <= k_; ++i)
            wrow(i)[i - 1] = field_.one();

        ybuf_.assign(static_cast<std::size_t>(k_ * k_), field_.zero());
        pivot_.resize(k_);
        age_.resize(k_);
        for (int r = 0; r < k_; ++r) {
            ybuf_[static_cast<std::size_t>(r * k_ + r)] = field_.one();
            pivot_[r] = r;
            age_[r] = r - k_; // ages stay unique once advances start at 1
        }
    }

    const F& field() const { return field_; }
    int k() const { return k_; }
    long long step() const { return step_; }
    int last_elim_passes() const { return last_elim_passes_; }

    /// Total field elements held; structurally 3k^2.
    std::size_t field_element_count() const { return wbuf_.size() + ybuf_.size(); }

    /// Next recurrence row (v_{step+k+1, 1..k}). Each element costs 2k
    /// multiplications plus one division.
    std::vector<Elem> row_recurrence() const {
        const long long m = step_ + k_ + 1;
        std::vector<Elem> row(k_);
        for (int j = 0; j < k_; ++j) {
            Elem acc = field_.zero();
            for (int t = 1; t <= 2 * k_; ++t)
                acc = field_.add(acc, field_.mul(taps_[t - 1], wrow(m - t)[j]));
            row[j] = field_.mul_as_div(acc, inv_xk_);
        }
        return row;
    }

    /// One step: produce the next recurrence row, rotate it into the echelon
    /// buffer, re-establish quasi-row-echelon form, and report whether the
    /// window matrix W_i (i = step after the call) is invertible.
    bool advance() {
        if (auto* c = field_.counter()) c->set_phase(Phase::generate);
        std::vector<Elem> row = row_recurrence();
        step_ += 1;
        const long long i = step_;

        Elem* w = wrow(i + k_); // overwrites v_{i-k}, no longer referenced
        for (int j = 0; j < k_; ++j) w[j] = row[j];

        // replace the oldest echelon row
        int cur = 0;
        for (int r = 1; r < k_; ++r)
            if (age_[r] < age_[cur]) cur = r;
        for (int j = 0; j < k_; ++j) ybuf_[static_cast<std::size_t>(cur * k_ + j)] = std::move(row[j]);
        age_[cur] = i;
        pivot_[cur] = first_nonzero(cur);

        if (auto* c = field_.counter()) c->set_phase(Phase::eliminate);
        last_elim_passes_ = 0;
        while (pivot_[cur] != kNoPivot) {
            int other = kNoPivot;
            for (int r = 0; r < k_; ++r)
                if (r != cur && pivot_[r] == pivot_[cur]) { other = r; break; }
            if (other == kNoPivot) break;

            // the newer row eliminates the older one
            const int victim = age_[other] > age_[cur] ? cur : other;
            const int winner = victim == cur ? other : cur;
            eliminate(victim, winner, pivot_[cur]);
            pivot_[victim] = first_nonzero(victim);
            cur = victim;
            ++last_elim_passes_;
            assert(last_elim_passes_ <= k_);
        }

        return std::none_of(pivot_.begin(), pivot_.end(),
                            [](int p) { return p == kNoPivot; });
    }

    const std::vector<Elem>& echelon_rows() const { return ybuf_; }
    const std::vector<int>& pivots() const { return pivot_; }
    const std::vector<long long>& ages() const { return age_; }

    /// ybuf row with the given age rank (0 = oldest).
    std::vector<Elem> echelon_row_by_age_rank(int rank) const {
        std::vector<int> order(k_);
        for (int r = 0; r < k_; ++r) order[r] = r;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return age_[a] < age_[b]; });
        const int r = order.at(rank);
        return {ybuf_.begin() + r * k_, ybuf_.begin() + (r + 1) * k_};
    }

private:
    Elem* wrow(long long logical) {
        const long long m = 2 * k_;
        return &wbuf_[static_cast<std::size_t>(((logical % m) + m) % m) * k_];
    }
    const Elem* wrow(long long logical) const {
        return const_cast<SlidingState*>(this)->wrow(logical);
    }

    int first_nonzero(int r) const {
        for (int j = 0; j < k_; ++j)
            if (!field_.is_zero(ybuf_[static_cast<std::size_t>(r * k_ + j)])) return j;
        return kNoPivot;
    }

    void eliminate(int victim, int winner, int col) {
        auto& vrow = ybuf_;
        const std::size_t v0 = static_cast<std::size_t>(victim * k_);
        const std::size_t w0 = static_cast<std::size_t>(winner * k_);
        const Elem factor = field_.div(vrow[v0 + col], vrow[w0 + col]);
        vrow[v0 + col] = field_.zero();
        for (int j = col + 1; j < k_; ++j)
            vrow[v0 + j] = field_.sub(vrow[v0 + j], field_.mul(factor, vrow[w0 + j]));
    }

    F field_;
    int k_;
    Elem inv_xk_;
    std::vector<Elem> taps_;   // -x_{k-1}, -x_{k-2}, ..., -x_{-k}
    std::vector<Elem> wbuf_;   // 2k x k circular, row-major
    std::vector<Elem> ybuf_;   // k x k, row-major
    std::vector<int> pivot_;   // first nonzero column per ybuf row, or kNoPivot
    std::vector<long long> age_;
    long long step_ = 0;
    int last_elim_passes_ = 0;
};

/// W_i rebuilt from scratch: rows v_{i+1..i+k}. Test/support path.
template <class F>
std::vector<std::vector<typename F::Elem>> w_matrix(const F& field,
                                                    const NormalizedStencil<F>& ns,
                                                    long long i) {
    const int k = ns.inner.k;
    if (k < 1) throw std::invalid_argument("w_matrix needs k >= 1");
    if (auto* c = field.counter()) c->set_phase(Phase::oracle);
    RowHistory<F> hist(field, ns, i + k);
    std::vector<std::vector<typename F::Elem>> rows;
    rows.reserve(k);
    for (long long m = i + 1; m <= i + k; ++m) rows.push_back(hist.row(m));
    return rows;
}

/// Full sequence for a normalized stencil: orders i <= k from the dense
/// oracle (the window theorem only covers i > k), orders i > k from the
/// sliding algorithm.
template <class F>
InvertibilitySequence invertibility_sequence_normalized(const F& field,
                                                        const NormalizedStencil<F>& ns,
                                                        long long n) {
    if (n < 1) throw std::invalid_argument("sequence length must be >= 1");
    InvertibilitySequence seq;
    seq.bits.resize(static_cast<std::size_t>(n));

    const int k = ns.inner.k;
    if (k == 0) {
        const bool inv = !field.is_zero(ns.inner.x(0));
        for (auto& b : seq.bits) b = inv ? 1 : 0;
        return seq;
    }

    for (long long i = 1; i <= std::min<long long>(k, n); ++i)
        seq.bits[static_cast<std::size_t>(i - 1)] = dense_invertible(field, ns, i) ? 1 : 0;

    if (n > k) {
        SlidingState<F> st(field, ns);
        for (long long i = 1; i <= n; ++i) {
            const bool bit = st.advance();
            if (i > k) seq.bits[static_cast<std::size_t>(i - 1)] = bit ? 1 : 0;
        }
    }
    return seq;
}

template <class F>
InvertibilitySequence invertibility_sequence(const F& field, const Stencil<F>& s,
                                             long long n) {
    return invertibility_sequence_normalized(field, normalize_stencil(s, field), n);
}

} // namespace btinv
