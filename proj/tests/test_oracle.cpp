#include <doctest.h>

#include <random>

#include "btinv/oracle.hpp"
#include "btinv/random.hpp"

using namespace btinv;

namespace {

template <class F>
NormalizedStencil<F> ns_of(const std::string& text, const F& field) {
    return normalize_stencil(parse_stencil(text, field), field);
}

} // namespace

TEST_CASE("dense matrix layout") {
    PrimeField f2(2);
    auto m = dense_matrix(f2, ns_of("1,1,1", f2), 2);
    CHECK(m.at(0, 0) == 1);
    CHECK(m.at(0, 1) == 1);
    CHECK(m.at(1, 0) == 1);
    CHECK(m.at(1, 1) == 1);

    RationalField q;
    auto d = dense_matrix(q, ns_of("0,5,0", q), 3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            CHECK(q.eq(d.at(r, c), r == c ? q.from_int(5) : q.zero()));

    // k = 2, n = 3: band clipped, rows are shifted windows of the stencil
    auto s = parse_stencil("1,2,3,4,5", q);
    auto ns = normalize_stencil(s, q);
    auto m3 = dense_matrix(q, ns, 3);
    const long expected[3][3] = {{3, 4, 5}, {2, 3, 4}, {1, 2, 3}};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            CHECK(q.eq(m3.at(r, c), q.from_int(expected[r][c])));
}

TEST_CASE("dense invertibility") {
    PrimeField f2(2);
    auto ns = ns_of("1,1,1", f2);
    CHECK(dense_invertible(f2, ns, 1));
    CHECK_FALSE(dense_invertible(f2, ns, 2));
    CHECK(dense_invertible(f2, ns, 3));

    CHECK(dense_sequence(f2, parse_stencil("1,1,1", f2), 5).to_bit_string() == "10110");

    RationalField q;
    CHECK(dense_sequence(q, parse_stencil("1,0,1", q), 4).to_bit_string() == "0101");
    CHECK(dense_sequence(q, parse_stencil("0,5,0", q), 2).to_bit_string() == "11");
    CHECK(dense_sequence(q, parse_stencil("0,0,0", q), 3).to_bit_string() == "000");
}

TEST_CASE("tridiagonal determinant recurrence") {
    PrimeField f2(2);
    CHECK(tridiag_recurrence_sequence(f2, ns_of("1,1,1", f2), 9).to_bit_string() ==
          "101101101");

    RationalField q;
    CHECK(tridiag_recurrence_sequence(q, ns_of("1,0,1", q), 6).to_bit_string() ==
          "010101");

    // x_{-1} = 0: triangular matrix, invertible iff x_0 != 0
    auto tri = NormalizedStencil<RationalField>{parse_stencil("0,1,1", q), false};
    CHECK(tridiag_recurrence_sequence(q, tri, 8).to_bit_string() == "11111111");

    CHECK_THROWS_AS(tridiag_recurrence_sequence(q, ns_of("1,1,1,1,1", q), 3),
                    std::invalid_argument);
}

TEST_CASE("dense agrees with tridiagonal recurrence") {
    std::mt19937_64 rng(11);
    PrimeField f2(2), f5(5);
    RationalField q;
    auto check_field = [&](const auto& field, int trials, long long n) {
        for (int t = 0; t < trials; ++t) {
            auto s = random_stencil_nonzero_edge(field, 1, rng);
            auto ns = normalize_stencil(s, field);
            REQUIRE(ns.inner.k == 1);
            CHECK(dense_sequence(field, s, n) ==
                  tridiag_recurrence_sequence(field, ns, n));
        }
    };
    check_field(f2, 10, 40);
    check_field(f5, 10, 40);
    check_field(q, 6, 25);
    // one long cross-check
    CHECK(dense_sequence(f5, parse_stencil("2,3,4", f5), 200) ==
          tridiag_recurrence_sequence(f5, ns_of("2,3,4", f5), 200));
}

TEST_CASE("block identity, worked example") {
    PrimeField f2(2);
    auto ns = ns_of("1,1,1", f2);
    auto rep = theorem1_blocks(f2, ns, 3);
    CHECK(rep.top_block_zero);
    REQUIRE(rep.p_block.size() == 1);
    CHECK(rep.p_block[0][0] == 1);
    CHECK(rep.q_times_w[0][0] == 1);
    CHECK(rep.match);

    CHECK_THROWS_AS(theorem1_blocks(f2, ns, 1), std::invalid_argument);
}

TEST_CASE("block identity on random instances") {
    std::mt19937_64 rng(13);
    PrimeField f7(7);
    RationalField q;
    auto run = [&](const auto& field, int trials) {
        for (int t = 0; t < trials; ++t) {
            const int k = 1 + static_cast<int>(rng() % 3);
            auto s = random_stencil_nonzero_edge(field, k, rng);
            auto ns = normalize_stencil(s, field);
            if (ns.inner.k < 1) continue;
            const long long n = ns.inner.k + 1 + static_cast<long long>(rng() % 10);
            auto rep = theorem1_blocks(field, ns, n);
            CHECK(rep.top_block_zero);
            CHECK(rep.match);
        }
    };
    run(f7, 50);
    run(q, 25);
}
