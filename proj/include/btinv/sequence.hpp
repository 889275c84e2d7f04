#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace btinv {

/// Binary sequence: bit i (1-based) is 1 iff the i-th order matrix of the
/// family is invertible.
struct InvertibilitySequence {
    std::vector<std::uint8_t> bits;

    std::size_t size() const { return bits.size(); }
    bool at(std::size_t i) const { return bits.at(i - 1) != 0; } // 1-based

    bool operator==(const InvertibilitySequence&) const = default;

    std::string to_bit_string() const {
        std::string s;
        s.reserve(bits.size());
        for (auto b : bits) s.push_back(b ? '1' : '0');
        return s;
    }

    /// Run-length encoding: "<bit>x<len>" tokens, space separated.
    std::string to_runs_string() const {
        std::string s;
        std::size_t i = 0;
        while (i < bits.size()) {
            std::size_t j = i;
            while (j < bits.size() && bits[j] == bits[i]) ++j;
            if (!s.empty()) s.push_back(' ');
            s += (bits[i] ? '1' : '0');
            s += 'x';
            s += std::to_string(j - i);
            i = j;
        }
        return s;
    }

    std::vector<std::size_t> singular_orders() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (!bits[i]) out.push_back(i + 1);
        return out;
    }
};

} // namespace btinv
