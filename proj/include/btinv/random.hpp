#pragma once

#include <cstdint>
#include <random>

#include "btinv/field.hpp"
#include "btinv/stencil.hpp"

namespace btinv {

/// Random field element with small "nice" magnitudes for rationals/approx;
/// uniform residue for GF(p). Deterministic given the engine state.
template <class F>
typename F::Elem random_elem(const F& field, std::mt19937_64& rng) {
    if constexpr (std::is_same_v<F, PrimeField>) {
        return static_cast<typename F::Elem>(rng() % field.modulus());
    } else if constexpr (std::is_same_v<F, RationalField>) {
        const long num = static_cast<long>(rng() % 9) - 4; // -4..4
        const long den = static_cast<long>(rng() % 4) + 1; // 1..4
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    } else {
        const long num = static_cast<long>(rng() % 9) - 4;
        const long den = static_cast<long>(rng() % 4) + 1;
        return static_cast<double>(num) / static_cast<double>(den);
    }
}

template <class F>
typename F::Elem random_nonzero_elem(const F& field, std::mt19937_64& rng) {
    for (;;) {
        auto e = random_elem(field, rng);
        if (!field.is_zero(e)) return e;
    }
}

template <class F>
Stencil<F> random_stencil(const F& field, int k, std::mt19937_64& rng) {
    Stencil<F> s;
    s.k = k;
    s.coeffs.reserve(static_cast<std::size_t>(2 * k + 1));
    for (int j = -k; j <= k; ++j) s.coeffs.push_back(random_elem(field, rng));
    return s;
}

/// Random stencil with x_k forced nonzero (already normalized apart from the
/// trivial trim; keeps property tests on the generic path).
template <class F>
Stencil<F> random_stencil_nonzero_edge(const F& field, int k, std::mt19937_64& rng) {
    auto s = random_stencil(field, k, rng);
    s.coeffs.back() = random_nonzero_elem(field, rng);
    return s;
}

} // namespace btinv
