#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "btinv/recurrence.hpp"
#include "btinv/sequence.hpp"
#include "btinv/stencil.hpp"

namespace btinv {

template <class F>
struct DenseMatrix {
    using Elem = typename F::Elem;
    long long n = 0;
    std::vector<Elem> e; // row-major n x n

    Elem& at(long long r, long long c) { return e[static_cast<std::size_t>(r * n + c)]; }
    const Elem& at(long long r, long long c) const {
        return e[static_cast<std::size_t>(r * n + c)];
    }
};

/// Banded Toeplitz layout: entry (r, c) = x_{c-r} inside the band, else 0.
template <class F>
DenseMatrix<F> dense_matrix(const F& field, const NormalizedStencil<F>& ns, long long n) {
    if (n < 1) throw std::invalid_argument("matrix order must be >= 1");
    const int k = ns.inner.k;
    DenseMatrix<F> m;
    m.n = n;
    m.e.assign(static_cast<std::size_t>(n * n), field.zero());
    for (long long r = 0; r < n; ++r)
        for (long long c = std::max<long long>(0, r - k);
             c <= std::min<long long>(n - 1, r + k); ++c)
            m.at(r, c) = ns.inner.x(static_cast<int>(c - r));
    return m;
}

/// Rank by plain Gaussian elimination on a list of equal-length rows.
/// First-nonzero pivoting for exact fields; magnitude pivoting for approx.
template <class F>
long long rank_of_rows(const F& field,
                       std::vector<std::vector<typename F::Elem>> rows) {
    if (rows.empty()) return 0;
    const long long n = static_cast<long long>(rows.size());
    const long long w = static_cast<long long>(rows[0].size());
    long long rank = 0;
    for (long long col = 0; col < w && rank < n; ++col) {
        long long piv = -1;
        if constexpr (F::is_exact) {
            for (long long r = rank; r < n; ++r)
                if (!field.is_zero(rows[r][col])) { piv = r; break; }
        } else {
            double best = 0;
            for (long long r = rank; r < n; ++r) {
                const double mag = std::fabs(static_cast<double>(rows[r][col]));
                if (!field.is_zero(rows[r][col]) && mag > best) {
                    best = mag;
                    piv = r;
                }
            }
        }
        if (piv < 0) continue;
        std::swap(rows[static_cast<std::size_t>(piv)], rows[static_cast<std::size_t>(rank)]);
        for (long long r = rank + 1; r < n; ++r) {
            if (field.is_zero(rows[r][col])) continue;
            const auto factor = field.div(rows[r][col], rows[rank][col]);
            rows[r][col] = field.zero();
            for (long long c = col + 1; c < w; ++c)
                rows[r][c] = field.sub(rows[r][c], field.mul(factor, rows[rank][c]));
        }
        ++rank;
    }
    return rank;
}

template <class F>
long long dense_rank(const F& field, const DenseMatrix<F>& m) {
    std::vector<std::vector<typename F::Elem>> rows;
    rows.reserve(static_cast<std::size_t>(m.n));
    for (long long r = 0; r < m.n; ++r)
        rows.emplace_back(m.e.begin() + r * m.n, m.e.begin() + (r + 1) * m.n);
    return rank_of_rows(field, std::move(rows));
}

template <class F>
bool dense_invertible(const F& field, const NormalizedStencil<F>& ns, long long n) {
    if (auto* c = field.counter()) c->set_phase(Phase::oracle);
    return dense_rank(field, dense_matrix(field, ns, n)) == n;
}

/// Ground-truth sequence by full elimination at every order. O(n^4); small n.
template <class F>
InvertibilitySequence dense_sequence(const F& field, const Stencil<F>& s, long long n) {
    if (n < 1) throw std::invalid_argument("sequence length must be >= 1");
    const auto ns = normalize_stencil(s, field);
    InvertibilitySequence seq;
    seq.bits.reserve(static_cast<std::size_t>(n));
    if (ns.inner.k == 0) {
        const bool inv = !field.is_zero(ns.inner.x(0));
        seq.bits.assign(static_cast<std::size_t>(n), inv ? 1 : 0);
        return seq;
    }
    for (long long i = 1; i <= n; ++i)
        seq.bits.push_back(dense_invertible(field, ns, i) ? 1 : 0);
    return seq;
}

/// Three-term determinant recurrence for tridiagonal families:
/// D_i = x_0 D_{i-1} - x_1 x_{-1} D_{i-2}, D_0 = 1, D_{-1} = 0.
template <class F>
InvertibilitySequence tridiag_recurrence_sequence(const F& field,
                                                  const NormalizedStencil<F>& ns,
                                                  long long n) {
    if (ns.inner.k != 1) throw std::invalid_argument("tridiagonal oracle needs k = 1");
    if (auto* c = field.counter()) c->set_phase(Phase::oracle);
    const auto x0 = ns.inner.x(0);
    const auto offdiag = field.mul(ns.inner.x(1), ns.inner.x(-1));
    auto prev2 = field.zero(); // D_{-1}
    auto prev1 = field.one();  // D_0
    InvertibilitySequence seq;
    seq.bits.reserve(static_cast<std::size_t>(n));
    for (long long i = 1; i <= n; ++i) {
        auto d = field.sub(field.mul(x0, prev1), field.mul(offdiag, prev2));
        seq.bits.push_back(field.is_zero(d) ? 0 : 1);
        prev2 = std::move(prev1);
        prev1 = std::move(d);
    }
    return seq;
}

template <class F>
struct BlockCheckReport {
    using Mat = std::vector<std::vector<typename F::Elem>>;
    bool top_block_zero = false;
    Mat p_block;
    Mat q_times_w;
    bool match = false;

    bool ok() const { return top_block_zero && match; }
};

/// The block identity behind the window theorem: with B the n x k matrix of
/// recurrence rows v_1..v_n (its top k rows are the identity), M_n B has a
/// zero top (n-k) x k block, and its bottom block P equals Q W_n with Q lower
/// triangular built from -x_1..-x_k.
template <class F>
BlockCheckReport<F> theorem1_blocks(const F& field, const NormalizedStencil<F>& ns,
                                    long long n) {
    const int k = ns.inner.k;
    if (k < 1) throw std::invalid_argument("block check needs k >= 1");
    if (n <= k) throw std::invalid_argument("block check needs n > k");
    if (auto* c = field.counter()) c->set_phase(Phase::oracle);

    RowHistory<F> hist(field, ns, n + k);

    // product = M_n * B, using the band structure of M_n
    std::vector<std::vector<typename F::Elem>> product(
        static_cast<std::size_t>(n), std::vector<typename F::Elem>(k, field.zero()));
    for (long long r = 0; r < n; ++r)
        for (long long c = std::max<long long>(0, r - k);
             c <= std::min<long long>(n - 1, r + k); ++c) {
            const auto& coeff = ns.inner.x(static_cast<int>(c - r));
            const auto& vrow = hist.row(c + 1); // B row c (0-based) = v_{c+1}
            for (int j = 0; j < k; ++j)
                product[r][j] = field.add(product[r][j], field.mul(coeff, vrow[j]));
        }

    BlockCheckReport<F> rep;
    rep.top_block_zero = true;
    for (long long r = 0; r < n - k; ++r)
        for (int j = 0; j < k; ++j)
            if (!field.is_zero(product[r][j])) rep.top_block_zero = false;

    rep.p_block.assign(k, std::vector<typename F::Elem>(k, field.zero()));
    for (int r = 0; r < k; ++r) rep.p_block[r] = product[static_cast<std::size_t>(n - k + r)];

    // Q[r][c] = -x_{k-(r-c)} for c <= r
    rep.q_times_w.assign(k, std::vector<typename F::Elem>(k, field.zero()));
    for (int r = 0; r < k; ++r)
        for (int c = 0; c <= r; ++c) {
            const auto q = field.neg(ns.inner.x(k - (r - c)));
            const auto& wrow = hist.row(n + 1 + c); // W_n row c = v_{n+1+c}
            for (int j = 0; j < k; ++j)
                rep.q_times_w[r][j] =
                    field.add(rep.q_times_w[r][j], field.mul(q, wrow[j]));
        }

    rep.match = true;
    for (int r = 0; r < k; ++r)
        for (int j = 0; j < k; ++j)
            if (!field.eq(rep.p_block[r][j], rep.q_times_w[r][j])) rep.match = false;
    return rep;
}

} // namespace btinv
