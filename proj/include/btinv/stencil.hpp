#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "btinv/field.hpp"

namespace btinv {

/// Band coefficients x_{-k}, ..., x_0, ..., x_k of a banded Toeplitz family.
template <class F>
struct Stencil {
    int k = 0;
    std::vector<typename F::Elem> coeffs; // size 2k+1, lowest index first

    /// coefficient x_j, j in [-k, k]
    const typename F::Elem& x(int j) const { return coeffs[static_cast<std::size_t>(j + k)]; }
};

/// Stencil with the guarantee x_k != 0 (or k = 0), plus a flag recording
/// whether the band was flipped to get there.
template <class F>
struct NormalizedStencil {
    Stencil<F> inner;
    bool reversed = false;
};

template <class F>
Stencil<F> parse_stencil(const std::string& text, const F& field) {
    std::vector<typename F::Elem> coeffs;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) {
        // trim surrounding whitespace
        auto b = tok.find_first_not_of(" \t");
        auto e = tok.find_last_not_of(" \t");
        if (b == std::string::npos)
            throw parse_error("empty stencil entry in '" + text + "'");
        coeffs.push_back(field.parse(tok.substr(b, e - b + 1)));
    }
    if (coeffs.empty())
        throw parse_error("empty stencil");
    if (coeffs.size() % 2 == 0)
        throw parse_error("stencil length must be odd, got " + std::to_string(coeffs.size()));
    return Stencil<F>{static_cast<int>(coeffs.size() / 2), std::move(coeffs)};
}

/// Stencil file: one data line `x_{-k},...,x_k`; `#` lines are comments.
template <class F>
Stencil<F> read_stencil_file(const std::string& path, const F& field) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open stencil file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        auto e = line.find_last_not_of(" \t\r");
        return parse_stencil(line.substr(b, e - b + 1), field);
    }
    throw parse_error("no stencil line in file: " + path);
}

/// x_j -> x_{-j}; the transposed matrix family.
template <class F>
Stencil<F> reverse_stencil(const Stencil<F>& s) {
    Stencil<F> r = s;
    std::reverse(r.coeffs.begin(), r.coeffs.end());
    return r;
}

/// Trim zero band edges to the minimal half-bandwidth, then flip the stencil
/// if only the lower edge is nonzero. Transposition preserves invertibility,
/// so the sequence is unchanged.
template <class F>
NormalizedStencil<F> normalize_stencil(const Stencil<F>& s, const F& field) {
    int ku = 0, kl = 0;
    for (int j = s.k; j >= 1; --j)
        if (!field.is_zero(s.x(j))) { ku = j; break; }
    for (int j = s.k; j >= 1; --j)
        if (!field.is_zero(s.x(-j))) { kl = j; break; }
    const int keff = std::max(ku, kl);

    Stencil<F> t;
    t.k = keff;
    t.coeffs.reserve(2 * keff + 1);
    for (int j = -keff; j <= keff; ++j)
        t.coeffs.push_back(s.x(j));

    bool rev = false;
    if (keff >= 1 && field.is_zero(t.x(keff))) {
        t = reverse_stencil(t);
        rev = true;
    }
    return NormalizedStencil<F>{std::move(t), rev};
}

} // namespace btinv
