#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pgroup/oracle.hpp"

using namespace pgroup;

namespace {

// rank by counting the vectors in the row span
int brute_rank(const MatGFp& m) {
    std::set<std::vector<u8>> span;
    const int rows = m.rows, cols = m.cols, p = m.p;
    std::vector<int> c(rows, 0);
    for (;;) {
        std::vector<u8> v(cols, 0);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) v[j] = u8((v[j] + c[i] * m.at(i, j)) % p);
        span.insert(v);
        int i = 0;
        while (i < rows && ++c[i] == p) c[i++] = 0;
        if (i == rows) break;
    }
    int r = 0;
    while ((size_t(1) << r) < span.size()) ++r;  // p = 2 in these tests
    return r;
}

long gaussian_binomial(int n, int k, int p) {
    // number of k-dimensional subspaces of F_p^n
    long num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        long pn = 1, pk = 1;
        for (int t = 0; t < n - i; ++t) pn *= p;
        for (int t = 0; t < k - i; ++t) pk *= p;
        num *= (pn - 1);
        den *= (pk - 1);
    }
    return num / den;
}

}  // namespace

TEST_CASE("rref rank agrees with row-span counting") {
    std::mt19937 rng(1);
    std::uniform_int_distribution<int> bit(0, 1), dim(1, 5);
    for (int it = 0; it < 200; ++it) {
        MatGFp m(2, dim(rng), dim(rng));
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) m.at(i, j) = u8(bit(rng));
        auto rr = rref(m);
        REQUIRE(rr.rank == brute_rank(m));
        REQUIRE(rr.rank == int(rr.pivots.size()));
    }
}

TEST_CASE("nullspace is the right kernel of the expected dimension") {
    std::mt19937 rng(2);
    std::uniform_int_distribution<int> bit(0, 1), dim(1, 5);
    for (int it = 0; it < 200; ++it) {
        MatGFp m(2, dim(rng), dim(rng));
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) m.at(i, j) = u8(bit(rng));
        MatGFp ns = nullspace(m);
        REQUIRE(ns.rows == m.cols - rref(m).rank);
        for (int v = 0; v < ns.rows; ++v)
            for (int i = 0; i < m.rows; ++i) {
                int s = 0;
                for (int j = 0; j < m.cols; ++j) s += m.at(i, j) * ns.at(v, j);
                REQUIRE(s % 2 == 0);
            }
    }
}

TEST_CASE("enumerate_subspaces counts match the Gaussian binomials") {
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k <= n; ++k)
            REQUIRE(long(enumerate_subspaces(2, n, n - k).size()) == gaussian_binomial(n, k, 2));
    REQUIRE(long(enumerate_subspaces(3, 3, 1).size()) == gaussian_binomial(3, 2, 3));
}

TEST_CASE("smith_invariants on explicit matrices") {
    IntMat a(2, 2);
    a.at(0, 0) = 2;
    a.at(1, 1) = 4;
    REQUIRE(smith_invariants(a, 2) == AbelianInvariants{2, 4});
    IntMat b(2, 2);  // [[2,0],[1,2]], determinant 4, cyclic cokernel
    b.at(0, 0) = 2;
    b.at(1, 0) = 1;
    b.at(1, 1) = 2;
    REQUIRE(smith_invariants(b, 2) == AbelianInvariants{4});
    IntMat c(2, 2);
    c.at(0, 0) = 6;
    c.at(1, 1) = 10;  // only the 2-parts survive
    REQUIRE(smith_invariants(c, 2) == AbelianInvariants{2, 2});
    IntMat d(2, 2);
    d.at(0, 0) = 1;
    REQUIRE_THROWS_AS(smith_invariants(d, 2), std::domain_error);
}

TEST_CASE("smith_invariants vs known-form and counting oracles") {
    REQUIRE(oracle_suite_linalg() == "");
}

TEST_CASE("is_quotient vs exhaustive surjection search") {
    REQUIRE(oracle_suite_quotient() == "");
}

TEST_CASE("is_quotient basic laws") {
    REQUIRE(is_quotient({2, 4}, {2, 4}));
    REQUIRE(is_quotient({2, 4}, {4, 4}));
    REQUIRE(is_quotient({2}, {2, 2, 16}));
    REQUIRE_FALSE(is_quotient({4, 4}, {2, 4}));
    REQUIRE_FALSE(is_quotient({2, 2, 2}, {4, 4}));
    REQUIRE_FALSE(is_quotient({16}, {8, 8}));
}
