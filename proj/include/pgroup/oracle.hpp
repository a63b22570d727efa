#pragma once

// Brute-force reference implementations, kept deliberately independent of
// the production code paths: string-rewriting collection, group-axiom
// checks over full multiplication tables, invariant recovery by solution
// counting, explicit models of the order-8 groups, and random consistent
// presentations for property tests.

#include <random>

#include "descend.hpp"
#include "paper_groups.hpp"

namespace pgroup {

// Leftmost-first string rewriting with the two relation schemes
// x_a x_b -> x_b x_a [x_a,x_b] (a > b) and x_g^p -> tail. Slow but short.
inline Element naive_collect(const PcPresentation& P, std::vector<int> word,
                             long limit = 50'000'000) {
    const int p = P.p;
    auto splice_tail = [&](size_t pos, const Element& tail, std::vector<int>& w) {
        std::vector<int> t;
        for (int i = 0; i < P.ngens; ++i)
            for (int c = 0; c < tail.e[i]; ++c) t.push_back(i);
        w.insert(w.begin() + pos, t.begin(), t.end());
    };
    long steps = 0;
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t i = 0; i < word.size(); ++i) {
            if (++steps > limit) throw std::runtime_error("naive_collect: step limit");
            if (i + p <= word.size()) {
                bool run = true;
                for (int c = 1; c < p; ++c)
                    if (word[i + c] != word[i]) { run = false; break; }
                if (run) {
                    int g = word[i];
                    word.erase(word.begin() + i, word.begin() + i + p);
                    splice_tail(i, P.power[g], word);
                    changed = true;
                    break;
                }
            }
            if (i + 1 < word.size() && word[i] > word[i + 1]) {
                int a = word[i], b = word[i + 1];
                word[i] = b;
                word[i + 1] = a;
                splice_tail(i + 2, P.comm[a][b], word);
                changed = true;
                break;
            }
        }
    }
    Element r(P.ngens);
    for (int g : word) r.e[g]++;
    return r;
}

inline Element naive_multiply(const PcPresentation& P, const Element& a, const Element& b) {
    std::vector<int> word;
    for (const Element* x : {&a, &b})
        for (int i = 0; i < P.ngens; ++i)
            for (int c = 0; c < x->e[i]; ++c) word.push_back(i);
    return naive_collect(P, std::move(word));
}

// Description of the first disagreement, empty when the oracle passes.
// max_pairs > 0 subsamples the pairs (deterministically) on large groups.
inline std::string oracle_cayley(const PcPresentation& P, size_t max_pairs = 0) {
    Collector C(P);
    auto elems = detail::all_elements(P);
    std::vector<std::pair<size_t, size_t>> pairs;
    if (max_pairs == 0 || elems.size() * elems.size() <= max_pairs) {
        for (size_t i = 0; i < elems.size(); ++i)
            for (size_t j = 0; j < elems.size(); ++j) pairs.push_back({i, j});
    } else {
        std::mt19937 rng(std::uint32_t(elems.size() * 2654435761u));
        std::uniform_int_distribution<size_t> pick(0, elems.size() - 1);
        for (size_t t = 0; t < max_pairs; ++t) pairs.push_back({pick(rng), pick(rng)});
    }
    for (auto [i, j] : pairs) {
        Element fast = C.multiply(elems[i], elems[j]);
        Element slow = naive_multiply(P, elems[i], elems[j]);
        if (fast != slow) return "collection mismatch on " + serialize(P);
    }
    return "";
}

// Group axioms on the collector's full table: closure is structural, so
// check associativity, identity and inverses.
inline std::string oracle_group_axioms(const PcPresentation& P) {
    Collector C(P);
    auto elems = detail::all_elements(P);
    const size_t n = elems.size();
    std::map<Element, size_t> index;
    for (size_t i = 0; i < n; ++i) index[elems[i]] = i;
    std::vector<size_t> table(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            auto it = index.find(C.multiply(elems[i], elems[j]));
            if (it == index.end()) return "product escapes the element set";
            table[i * n + j] = it->second;
        }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                if (table[table[i * n + j] * n + k] != table[i * n + table[j * n + k]])
                    return "associativity fails";
    size_t id = index.at(P.identity());
    for (size_t i = 0; i < n; ++i) {
        if (table[id * n + i] != i || table[i * n + id] != i) return "identity fails";
        bool inv = false;
        for (size_t j = 0; j < n && !inv; ++j) inv = table[i * n + j] == id;
        if (!inv) return "inverse missing";
    }
    return "";
}

// Invariants of the cokernel of a square integer matrix by counting, for
// each m, the solutions w of M^T w = 0 over Z/2^m: the count is the order
// of Hom(coker, Z/2^m), which determines the invariants.
inline AbelianInvariants counting_invariants(const IntMat& M, int max_log = 9) {
    const int n = M.cols;
    if (M.rows != n || n > 3) throw std::invalid_argument("counting_invariants: need square, cols <= 3");
    std::vector<std::vector<long>> A(n, std::vector<long>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A[i][j] = M.at(i, j).convert_to<long>();
    std::vector<long> cnt(max_log + 1, 0);
    cnt[0] = 1;
    for (int m = 1; m <= max_log; ++m) {
        long mod = 1L << m;
        long total = 0, lim = 1;
        for (int i = 0; i < n; ++i) lim *= mod;
        std::vector<long> w(n, 0);
        for (long it = 0; it < lim; ++it) {
            long v = it;
            for (int i = 0; i < n; ++i) { w[i] = v % mod; v /= mod; }
            bool ok = true;
            for (int j = 0; j < n && ok; ++j) {
                long s = 0;
                for (int i = 0; i < n; ++i) s += ((A[j][i] % mod + mod) % mod) * w[i] % mod;
                ok = s % mod == 0;
            }
            if (ok) ++total;
        }
        cnt[m] = total;
    }
    AbelianInvariants inv;
    for (int m = max_log; m >= 1; --m) {
        // number of invariant factors >= 2^m
        long k = 0, ratio = cnt[m] / cnt[m - 1];
        while ((1L << k) < ratio) ++k;
        long have = 0;
        for (long v : inv) have += v >= (1L << m);
        for (long t = have; t < k; ++t) inv.push_back(1L << m);
    }
    std::sort(inv.begin(), inv.end());
    return inv;
}

// Random unimodular-conjugated diagonal matrix with known 2-power
// invariants; returns the matrix and the expected invariant list.
inline std::pair<IntMat, AbelianInvariants> random_smith_instance(std::mt19937& rng) {
    std::uniform_int_distribution<int> dim(1, 3);
    int n = dim(rng);
    IntMat M(n, n);
    AbelianInvariants want;
    int budget = 8;  // determinant at most 2^8 = 256
    for (int i = 0; i < n; ++i) {
        std::uniform_int_distribution<int> ex(0, std::min(3, budget));
        int e = ex(rng);
        budget -= e;
        M.at(i, i) = 1L << e;
        if (e > 0) want.push_back(1L << e);
    }
    std::sort(want.begin(), want.end());
    std::uniform_int_distribution<int> pick(0, n - 1), coef(-3, 3);
    for (int ops = 0; ops < 12; ++ops) {
        int a = pick(rng), b = pick(rng);
        if (a == b) continue;
        cpp_int c = coef(rng);
        if (ops % 2 == 0)
            for (int j = 0; j < n; ++j) M.at(a, j) += c * M.at(b, j);
        else
            for (int i = 0; i < n; ++i) M.at(i, a) += c * M.at(i, b);
    }
    return {std::move(M), std::move(want)};
}

// Explicit permutation models of the order-8 groups, multiplied by
// composition; compared generator-by-generator against the presentations.
namespace detail {

using Perm = std::vector<int>;

inline Perm pcompose(const Perm& f, const Perm& g) {  // apply f, then g
    Perm r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = g[f[i]];
    return r;
}

}  // namespace detail

// Check a generator map x_i -> perm extends to an isomorphism onto the
// generated permutation group.
inline bool oracle_perm_model(const PcPresentation& P, const std::vector<detail::Perm>& gens) {
    Collector C(P);
    auto elems = detail::all_elements(P);
    int deg = int(gens.at(0).size());
    detail::Perm id(deg);
    std::iota(id.begin(), id.end(), 0);
    auto eval = [&](const Element& a) {
        detail::Perm r = id;
        for (int i = 0; i < P.ngens; ++i)
            for (int c = 0; c < a.e[i]; ++c) r = detail::pcompose(r, gens[i]);
        return r;
    };
    std::set<detail::Perm> image;
    for (const auto& a : elems) image.insert(eval(a));
    if (image.size() != elems.size()) return false;  // not faithful
    for (const auto& a : elems)
        for (const auto& b : elems)
            if (eval(C.multiply(a, b)) != detail::pcompose(eval(a), eval(b))) return false;
    return true;
}

// Random consistent presentation of order <= 2^max_log: a random descent
// from a random elementary abelian root.
inline PresPtr random_presentation(std::mt19937& rng, int max_log = 6) {
    std::uniform_int_distribution<int> dd(1, 3);
    PresPtr G = make_pres(elementary_abelian(2, dd(rng)));
    for (;;) {
        auto cd = p_covering_group(G);
        if (cd.terminal()) return G;
        auto subs = allowable_subgroups(cd);
        std::vector<PcPresentation> kids;
        for (const auto& U : subs) {
            PcPresentation Q = detail::cover_quotient(cd, U);
            if (Q.ngens <= max_log) kids.push_back(std::move(Q));
        }
        if (kids.empty()) return G;
        std::uniform_int_distribution<size_t> pick(0, kids.size());
        size_t k = pick(rng);
        if (k == kids.size()) return G;  // stop here sometimes
        G = make_pres(std::move(kids[k]));
    }
}

// ---------------------------------------------------------------------------
// Suites, shared by the tests and the `oracle` command. Returns the first
// failure description, empty on success.
// ---------------------------------------------------------------------------

inline std::string oracle_suite_pcp() {
    std::vector<PcPresentation> named = {elementary_abelian(2, 1), elementary_abelian(2, 2),
                                         abelian_group({2, 4}),    abelian_group({2, 8}),
                                         dihedral8(),              quaternion8(),
                                         paper_H4(),               paper_H6()};
    for (const auto& P : named) {
        if (auto e = oracle_cayley(P); !e.empty()) return e;
        if (auto e = oracle_group_axioms(P); !e.empty()) return e + " on " + serialize(P);
    }
    {  // explicit models: D4 on the square, Q8 by quaternion multiplication
        using detail::Perm;
        using detail::pcompose;
        auto pinv = [](const Perm& f) {
            Perm r(f.size());
            for (size_t i = 0; i < f.size(); ++i) r[f[i]] = int(i);
            return r;
        };
        auto pcomm = [&](const Perm& a, const Perm& b) {
            return pcompose(pcompose(pcompose(pinv(a), pinv(b)), a), b);
        };
        Perm s1{0, 3, 2, 1}, s2{1, 0, 3, 2};  // two reflections of the square
        if (!oracle_perm_model(dihedral8(), {s1, s2, pcomm(s2, s1)}))
            return "dihedral model disagrees";
        // unit quaternions {1,-1,i,-i,j,-j,k,-k}, right multiplication by i and j
        auto qmul = [](int a, int b) {  // index/2 = axis (1,i,j,k), index%2 = sign
            static const int axis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
            static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
            int ax = axis[a / 2][b / 2];
            int sg = (a % 2) ^ (b % 2) ^ sign[a / 2][b / 2];
            return 2 * ax + sg;
        };
        Perm qi(8), qj(8);
        for (int a = 0; a < 8; ++a) {
            qi[a] = qmul(a, 2);
            qj[a] = qmul(a, 4);
        }
        if (!oracle_perm_model(quaternion8(), {qi, qj, pcomm(qj, qi)}))
            return "quaternion model disagrees";
    }
    std::mt19937 rng(20260824);
    for (int i = 0; i < 200; ++i) {
        auto G = random_presentation(rng);
        if (!is_consistent(*G)) return "random descent produced inconsistent presentation";
        if (auto e = oracle_cayley(*G, 512); !e.empty()) return e;
    }
    return "";
}

inline std::string oracle_suite_linalg() {
    std::mt19937 rng(20260824);
    for (int i = 0; i < 500; ++i) {
        auto [M, want] = random_smith_instance(rng);
        if (smith_invariants(M, 2) != want)
            return "smith mismatch, expected " + invariants_str(want);
        // largest cyclic factor is 2^3, so counts stabilize well before 2^5
        if (counting_invariants(M, 5) != want)
            return "counting oracle mismatch, expected " + invariants_str(want);
    }
    return "";
}

// is_quotient on invariant lists vs existence of an explicit surjection
// between the corresponding abelian groups.
inline std::string oracle_suite_quotient() {
    // all invariant lists with at most 3 factors and order <= 2^6
    std::vector<AbelianInvariants> lists{{}};
    for (size_t i = 0; i < lists.size(); ++i) {
        auto base = lists[i];
        if (base.size() >= 3) continue;
        long used = 1;
        for (long v : base) used *= v;
        for (long f = base.empty() ? 2 : base.back(); used * f <= 64; f *= 2)
            if (f >= 2) {
                auto next = base;
                next.push_back(f);
                lists.push_back(std::move(next));
            }
    }
    for (const auto& A : lists) {
        if (A.empty()) continue;
        for (const auto& B : lists) {
            if (B.empty()) continue;
            auto PA = make_pres(abelian_group(A));
            auto PB = make_pres(abelian_group(B));
            bool pred = is_quotient(A, B);
            bool real = !all_surjections(PB, PA, true).empty();
            if (pred != real)
                return "is_quotient(" + invariants_str(A) + ", " + invariants_str(B) +
                       ") = " + (pred ? "true" : "false") + " but surjections disagree";
        }
    }
    return "";
}

inline std::string oracle_suite_descend() {
    auto V2 = make_pres(elementary_abelian(2, 2));
    auto ds = immediate_descendants(V2, root_automorphisms(V2));
    std::vector<PresPtr> order8;
    for (const auto& D : ds)
        if (D.pres->ngens == 3) order8.push_back(D.pres);
    if (order8.size() != 3) return "order-8 descendants of [2,2]: expected 3";
    for (auto target : {abelian_group({2, 4}), dihedral8(), quaternion8()}) {
        int hits = 0;
        for (const auto& Q : order8) hits += is_isomorphic(Q, make_pres(target));
        if (hits != 1) return "order-8 descendants of [2,2] miss " + serialize(target);
    }
    auto C2 = make_pres(elementary_abelian(2, 1));
    auto d2 = immediate_descendants(C2, root_automorphisms(C2));
    if (d2.size() != 1 || !is_isomorphic(d2[0].pres, make_pres(abelian_group({4}))))
        return "descendants of [2]: expected exactly [4]";
    // descendant / P_c = parent, breadth-first to order 2^8
    std::deque<std::pair<PresPtr, AutSet>> work{{V2, root_automorphisms(V2)}};
    int seen = 0;
    while (!work.empty() && seen < 40) {
        auto [P, A] = std::move(work.front());
        work.pop_front();
        for (auto& D : immediate_descendants(P, A, 1 << 8)) {
            ++seen;
            auto series = lower_p_central_series(D.pres);
            auto Q = quotient_presentation(D.pres, series[p_class(P)]).first;
            if (!is_isomorphic(Q, P)) return "descendant class-quotient differs from parent";
            if (D.pres->ngens < 8) work.push_back({D.pres, std::move(D.auts)});
        }
    }
    return "";
}

}  // namespace pgroup
