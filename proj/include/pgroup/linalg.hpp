#pragma once

// Exact linear algebra over GF(p) and integer Smith normal form.
// Everything here is dense; the matrices that show up (tail-relation
// systems, multiplicator subspaces, abelianized relation matrices) are
// tiny, at most a few hundred rows.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pgroup {

using std::size_t;
using u8 = std::uint8_t;
using cpp_int = boost::multiprecision::cpp_int;

// Dense matrix over GF(p), entries stored as residues in [0,p).
struct MatGFp {
    int p = 2;
    int rows = 0;
    int cols = 0;
    std::vector<u8> a;  // row-major

    MatGFp() = default;
    MatGFp(int p_, int r, int c) : p(p_), rows(r), cols(c), a(size_t(r) * c, 0) {}

    u8& at(int r, int c) { return a[size_t(r) * cols + c]; }
    u8 at(int r, int c) const { return a[size_t(r) * cols + c]; }

    static MatGFp identity(int p_, int n) {
        MatGFp m(p_, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    friend bool operator==(const MatGFp&, const MatGFp&) = default;
};

inline u8 gfp_inv(u8 x, int p) {
    // p is a small prime, x != 0
    for (int y = 1; y < p; ++y)
        if (int(x) * y % p == 1) return u8(y);
    throw std::invalid_argument("gfp_inv: not invertible");
}

struct RrefResult {
    MatGFp m;                 // reduced row-echelon form, zero rows dropped
    std::vector<int> pivots;  // pivot column of each surviving row
    int rank = 0;
};

// Unique reduced row-echelon form; row space preserved, zero rows removed.
inline RrefResult rref(MatGFp m) {
    const int p = m.p;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int pr = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(r, j));
        u8 inv = gfp_inv(m.at(r, c), p);
        for (int j = c; j < m.cols; ++j) m.at(r, j) = u8(int(m.at(r, j)) * inv % p);
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            int f = m.at(i, c);
            for (int j = c; j < m.cols; ++j)
                m.at(i, j) = u8(((int(m.at(i, j)) - f * m.at(r, j)) % p + p) % p);
        }
        pivots.push_back(c);
        ++r;
    }
    m.rows = r;
    m.a.resize(size_t(r) * m.cols);
    return RrefResult{std::move(m), std::move(pivots), r};
}

// Basis of the right kernel {v : M v = 0}, one basis vector per row.
inline MatGFp nullspace(const MatGFp& m0) {
    auto [m, pivots, rank] = rref(m0);
    const int p = m.p, n = m0.cols;
    std::vector<char> is_pivot(n, 0);
    for (int c : pivots) is_pivot[c] = 1;
    MatGFp basis(p, n - rank, n);
    int out = 0;
    for (int c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        basis.at(out, c) = 1;
        for (int i = 0; i < rank; ++i)
            basis.at(out, pivots[i]) = u8((p - m.at(i, c)) % p);
        ++out;
    }
    return basis;
}

// All subspaces of GF(p)^n of the given codimension, each as its unique
// RREF basis matrix (dimension n-codim rows). Count is the Gaussian
// binomial coefficient [n choose codim]_p.
inline std::vector<MatGFp> enumerate_subspaces(int p, int n, int codim) {
    if (codim < 0 || codim > n) throw std::invalid_argument("enumerate_subspaces: bad codim");
    const int k = n - codim;
    std::vector<MatGFp> out;
    std::vector<int> piv(k);
    std::iota(piv.begin(), piv.end(), 0);
    auto emit_all = [&](auto&& self, MatGFp& m, const std::vector<std::pair<int, int>>& free,
                        size_t idx) -> void {
        if (idx == free.size()) {
            out.push_back(m);
            return;
        }
        auto [r, c] = free[idx];
        for (int v = 0; v < p; ++v) {
            m.at(r, c) = u8(v);
            self(self, m, free, idx + 1);
        }
        m.at(r, c) = 0;
    };
    // iterate over pivot column choices
    while (true) {
        MatGFp m(p, k, n);
        std::vector<char> is_pivot(n, 0);
        for (int i = 0; i < k; ++i) { m.at(i, piv[i]) = 1; is_pivot[piv[i]] = 1; }
        std::vector<std::pair<int, int>> free;
        for (int i = 0; i < k; ++i)
            for (int c = piv[i] + 1; c < n; ++c)
                if (!is_pivot[c]) free.push_back({i, c});
        emit_all(emit_all, m, free, 0);
        // next combination
        int i = k - 1;
        while (i >= 0 && piv[i] == n - k + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
    if (k == 0) { out.clear(); out.push_back(MatGFp(p, 0, n)); }
    return out;
}

// Integer matrix with arbitrary-precision entries.
struct IntMat {
    int rows = 0;
    int cols = 0;
    std::vector<cpp_int> a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, 0) {}
    cpp_int& at(int r, int c) { return a[size_t(r) * cols + c]; }
    const cpp_int& at(int r, int c) const { return a[size_t(r) * cols + c]; }
};

// Sorted ascending list of cyclic orders (each > 1, a power of p).
using AbelianInvariants = std::vector<long>;

// Elementary divisors of the cokernel Z^cols / rowspan(M), restricted to
// their p-parts, unit factors dropped. Throws if the cokernel is infinite.
inline AbelianInvariants smith_invariants(IntMat m, long p) {
    const int R = m.rows, C = m.cols;
    int t = 0;
    while (t < R && t < C) {
        // locate a nonzero entry of minimal absolute value in the trailing block
        int pr = -1, pc = -1;
        cpp_int best = 0;
        for (int i = t; i < R; ++i)
            for (int j = t; j < C; ++j) {
                if (m.at(i, j) == 0) continue;
                cpp_int v = abs(m.at(i, j));
                if (pr < 0 || v < best) { best = v; pr = i; pc = j; }
            }
        if (pr < 0) break;
        if (pr != t)
            for (int j = 0; j < C; ++j) std::swap(m.at(pr, j), m.at(t, j));
        if (pc != t)
            for (int i = 0; i < R; ++i) std::swap(m.at(i, pc), m.at(i, t));
        bool again = false;
        for (int i = t + 1; i < R; ++i) {
            if (m.at(i, t) == 0) continue;
            cpp_int q = m.at(i, t) / m.at(t, t);
            for (int j = t; j < C; ++j) m.at(i, j) -= q * m.at(t, j);
            if (m.at(i, t) != 0) again = true;
        }
        for (int j = t + 1; j < C; ++j) {
            if (m.at(t, j) == 0) continue;
            cpp_int q = m.at(t, j) / m.at(t, t);
            for (int i = t; i < R; ++i) m.at(i, j) -= q * m.at(i, t);
            if (m.at(t, j) != 0) again = true;
        }
        if (again) continue;  // reduced entries survive, pick a new pivot
        ++t;
    }
    // t = rank; require full column rank so the cokernel is finite
    if (t < C) throw std::domain_error("smith_invariants: infinite cokernel (rank deficient)");
    std::vector<cpp_int> d;
    for (int i = 0; i < t; ++i) d.push_back(abs(m.at(i, i)));
    // enforce the divisibility chain d1 | d2 | ...
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t i = 0; i + 1 < d.size(); ++i)
            if (d[i + 1] % d[i] != 0) {
                cpp_int g = gcd(d[i], d[i + 1]);
                cpp_int l = d[i] / g * d[i + 1];
                d[i] = g;
                d[i + 1] = l;
                changed = true;
            }
    }
    AbelianInvariants inv;
    for (auto& v : d) {
        long pk = 1;
        while (v % p == 0) { pk *= p; v /= p; }
        if (pk > 1) inv.push_back(pk);
    }
    std::sort(inv.begin(), inv.end());
    return inv;
}

// True iff an abelian p-group with invariants A is a homomorphic image of
// one with invariants B.
inline bool is_quotient(AbelianInvariants A, AbelianInvariants B) {
    if (A.size() > B.size()) return false;
    std::sort(A.rbegin(), A.rend());
    std::sort(B.rbegin(), B.rend());
    A.resize(B.size(), 1);
    for (size_t i = 0; i < B.size(); ++i)
        if (B[i] % A[i] != 0) return false;
    return true;
}

inline std::string invariants_str(const AbelianInvariants& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + "]";
}

}  // namespace pgroup
