#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace btinv {

enum class Phase { generate = 0, eliminate = 1, oracle = 2 };

constexpr std::string_view phase_name(Phase p) {
    switch (p) {
    case Phase::generate: return "generate";
    case Phase::eliminate: return "eliminate";
    case Phase::oracle: return "oracle";
    }
    return "?";
}

/// Tally of field operations, split by algorithm phase.
/// Counts only grow; reset() is the one way back to zero.
class OpCounter {
public:
    struct Counts {
        std::uint64_t mul = 0;
        std::uint64_t div = 0;
        std::uint64_t add = 0;
        std::uint64_t muldiv() const { return mul + div; }
    };

    void set_phase(Phase p) { phase_ = p; }
    Phase phase() const { return phase_; }

    void tally_mul() { counts_[idx()].mul++; }
    void tally_div() { counts_[idx()].div++; }
    void tally_add() { counts_[idx()].add++; }

    const Counts& counts(Phase p) const { return counts_[static_cast<int>(p)]; }
    Counts total() const {
        Counts t;
        for (const auto& c : counts_) {
            t.mul += c.mul;
            t.div += c.div;
            t.add += c.add;
        }
        return t;
    }

    void reset() { counts_ = {}; }

private:
    int idx() const { return static_cast<int>(phase_); }

    std::array<Counts, 3> counts_{};
    Phase phase_ = Phase::generate;
};

} // namespace btinv
