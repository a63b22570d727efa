#pragma once

// Subgroup machinery inside a fixed pc group: canonical induced generating
// sequences, sifting, closures, characteristic series, quotient
// presentations, abelian quotient invariants, low-index subgroups,
// homomorphisms, preimages and surjection enumeration.

#include <array>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>

#include "linalg.hpp"
#include "presentation.hpp"

namespace pgroup {

using PresPtr = std::shared_ptr<const PcPresentation>;

inline PresPtr make_pres(PcPresentation P) {
    return std::make_shared<const PcPresentation>(std::move(P));
}

// A subgroup in canonical induced-generating-sequence form: members sorted
// by strictly increasing leading generator index, leading exponents 1, and
// zero entries at every other member's leading index. Two equal subgroups
// have identical sequences.
struct Subgroup {
    PresPtr G;
    std::vector<Element> gens;

    cpp_int order() const {
        cpp_int o = 1;
        for (size_t i = 0; i < gens.size(); ++i) o *= G->p;
        return o;
    }
    cpp_int index() const { return G->order() / order(); }
    int rank() const { return int(gens.size()); }

    std::string key() const {
        std::string k;
        for (const auto& g : gens) k.append(g.e.begin(), g.e.end());
        return k;
    }
    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.gens == b.gens;
    }
};

namespace detail {

// reduce g through seq (ascending leaders); returns the residue
inline Element sift_seq(Collector& C, const std::vector<Element>& seq, Element g) {
    const int p = C.pres().p;
    while (!g.is_identity()) {
        int l = g.leading();
        const Element* h = nullptr;
        for (const auto& m : seq)
            if (m.leading() == l) { h = &m; break; }
        if (!h) return g;
        g = C.multiply(C.power(*h, p - g.e[l]), g);
    }
    return g;
}

// normalize leading exponents to 1 and clear other leaders' coordinates
inline void canonicalize_seq(Collector& C, std::vector<Element>& seq) {
    const int p = C.pres().p;
    std::sort(seq.begin(), seq.end(),
              [](const Element& a, const Element& b) { return a.leading() < b.leading(); });
    for (auto& g : seq) {
        int l = g.leading();
        if (g.e[l] != 1) g = C.power(g, gfp_inv(g.e[l], p));
    }
    for (size_t i = 0; i < seq.size(); ++i) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t j = i + 1; j < seq.size(); ++j) {
                int lj = seq[j].leading();
                if (seq[i].e[lj]) {
                    seq[i] = C.multiply(C.power(seq[j], p - seq[i].e[lj]), seq[i]);
                    changed = true;
                    break;
                }
            }
        }
    }
}

}  // namespace detail

// Smallest subgroup containing gens; with conjugators supplied, smallest
// subgroup containing gens that is normalized by them (their normal
// closure when the conjugators generate the ambient group).
inline Subgroup subgroup_closure(PresPtr G, std::vector<Element> gens,
                                 std::span<const Element> conjugators = {}) {
    Collector C(*G);
    std::vector<Element> seq;
    std::deque<Element> work(gens.begin(), gens.end());
    while (!work.empty()) {
        Element g = detail::sift_seq(C, seq, std::move(work.front()));
        work.pop_front();
        if (g.is_identity()) continue;
        work.push_back(C.power(g, G->p));
        for (const auto& h : seq) {
            work.push_back(C.conjugate(g, h));
            work.push_back(C.conjugate(h, g));
            work.push_back(C.conjugate(g, C.inverse(h)));
            work.push_back(C.conjugate(h, C.inverse(g)));
        }
        for (const auto& x : conjugators) {
            work.push_back(C.conjugate(g, x));
            work.push_back(C.conjugate(g, C.inverse(x)));
        }
        seq.push_back(std::move(g));
        std::sort(seq.begin(), seq.end(),
                  [](const Element& a, const Element& b) { return a.leading() < b.leading(); });
    }
    detail::canonicalize_seq(C, seq);
    return Subgroup{std::move(G), std::move(seq)};
}

inline Subgroup whole_group(PresPtr G) {
    std::vector<Element> gens;
    for (int i = 0; i < G->ngens; ++i) gens.push_back(G->gen(i));
    return Subgroup{std::move(G), std::move(gens)};
}

inline Subgroup trivial_subgroup(PresPtr G) { return Subgroup{std::move(G), {}}; }

inline bool contains(const Subgroup& S, const Element& a) {
    Collector C(*S.G);
    return detail::sift_seq(C, S.gens, a).is_identity();
}

inline Subgroup normal_closure(PresPtr G, std::vector<Element> gens) {
    std::vector<Element> ambient;
    for (int i = 0; i < G->ngens; ++i) ambient.push_back(G->gen(i));
    return subgroup_closure(std::move(G), std::move(gens), ambient);
}

inline Subgroup derived_subgroup(const Subgroup& S) {
    Collector C(*S.G);
    std::vector<Element> comms;
    for (size_t i = 0; i < S.gens.size(); ++i)
        for (size_t j = i + 1; j < S.gens.size(); ++j)
            comms.push_back(C.commutator(S.gens[i], S.gens[j]));
    return subgroup_closure(S.G, std::move(comms), S.gens);
}

inline Subgroup derived_subgroup(PresPtr G) { return derived_subgroup(whole_group(std::move(G))); }

// P_0 = G down to the trivial subgroup; P_m = P_{m-1}^p [G, P_{m-1}].
inline std::vector<Subgroup> lower_p_central_series(PresPtr G) {
    std::vector<Subgroup> series{whole_group(G)};
    Collector C(*G);
    std::vector<Element> ambient;
    for (int i = 0; i < G->ngens; ++i) ambient.push_back(G->gen(i));
    while (!series.back().gens.empty()) {
        const Subgroup& prev = series.back();
        std::vector<Element> gens;
        for (const auto& h : prev.gens) {
            gens.push_back(C.power(h, G->p));
            for (const auto& x : ambient) gens.push_back(C.commutator(h, x));
        }
        series.push_back(subgroup_closure(G, std::move(gens), ambient));
    }
    return series;
}

inline int p_class(PresPtr G) { return int(lower_p_central_series(std::move(G)).size()) - 1; }

// exponents expressing a member of S in its IGS; nullopt if not a member
inline std::optional<std::vector<int>> express_in_igs(const Subgroup& S, Element g) {
    Collector C(*S.G);
    const int p = S.G->p;
    std::vector<int> expo(S.gens.size(), 0);
    for (size_t i = 0; i < S.gens.size(); ++i) {
        int l = S.gens[i].leading();
        expo[i] = g.e[l];
        if (expo[i]) g = C.multiply(C.power(S.gens[i], p - expo[i]), g);
    }
    if (!g.is_identity()) return std::nullopt;
    return expo;
}

// Invariants of S/S' from the abelianized relation matrix of the induced
// polycyclic sequence of S.
inline AbelianInvariants abelian_quotient_invariants(const Subgroup& S) {
    const int k = S.rank();
    if (k == 0) return {};
    Collector C(*S.G);
    const int p = S.G->p;
    std::vector<std::vector<int>> rows;
    for (int i = 0; i < k; ++i) {
        auto e = express_in_igs(S, C.power(S.gens[i], p));
        if (!e) throw std::logic_error("AQI: power escapes subgroup");
        std::vector<int> row(k, 0);
        for (int l = 0; l < k; ++l) row[l] = -(*e)[l];
        row[i] += p;
        rows.push_back(row);
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            auto e = express_in_igs(S, C.commutator(S.gens[j], S.gens[i]));
            if (!e) throw std::logic_error("AQI: commutator escapes subgroup");
            rows.push_back(*e);
        }
    IntMat M(int(rows.size()), k);
    for (size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < k; ++c) M.at(int(r), c) = rows[r][c];
    return smith_invariants(std::move(M), p);
}

inline AbelianInvariants abelian_invariants(PresPtr G) {
    return abelian_quotient_invariants(whole_group(std::move(G)));
}

// AQIs of the successive derived quotients G/G', G'/G'', ... down to the
// trivial subgroup.
inline std::vector<AbelianInvariants> derived_series_factors(PresPtr G) {
    std::vector<AbelianInvariants> out;
    Subgroup S = whole_group(std::move(G));
    while (!S.gens.empty()) {
        out.push_back(abelian_quotient_invariants(S));
        S = derived_subgroup(S);
    }
    return out;
}

struct Homomorphism {
    PresPtr src;
    PresPtr dst;
    std::vector<Element> images;  // one per source generator
};

inline Element apply(const Homomorphism& f, const Element& a) {
    Collector C(*f.dst);
    Element r = f.dst->identity();
    for (int i = 0; i < f.src->ngens; ++i)
        for (int t = 0; t < a.e[i]; ++t) r = C.multiply(std::move(r), f.images[i]);
    return r;
}

inline bool relations_hold(const PcPresentation& Q, const PcPresentation& T,
                           const std::vector<Element>& img) {
    Collector C(T);
    auto word_image = [&](const Element& w) {
        Element r = T.identity();
        for (int i = 0; i < Q.ngens; ++i)
            for (int t = 0; t < w.e[i]; ++t) r = C.multiply(std::move(r), img[i]);
        return r;
    };
    for (int i = 0; i < Q.ngens; ++i)
        if (C.power(img[i], Q.p) != word_image(Q.power[i])) return false;
    for (int j = 0; j < Q.ngens; ++j)
        for (int i = 0; i < j; ++i)
            if (C.commutator(img[j], img[i]) != word_image(Q.comm[j][i])) return false;
    return true;
}

inline Homomorphism make_homomorphism(PresPtr src, PresPtr dst, std::vector<Element> images) {
    if (int(images.size()) != src->ngens) throw std::invalid_argument("make_homomorphism: wrong image count");
    if (!relations_hold(*src, *dst, images))
        throw std::invalid_argument("make_homomorphism: a relation is not killed");
    return Homomorphism{std::move(src), std::move(dst), std::move(images)};
}

inline Subgroup image(const Homomorphism& f, const Subgroup& S) {
    std::vector<Element> gens;
    for (const auto& g : S.gens) gens.push_back(apply(f, g));
    return subgroup_closure(f.dst, std::move(gens));
}

// Direct product presentation, A's generators first. Used as a scratch
// group for kernel and preimage computations; weights are not monotone
// across the two blocks, which the collector does not care about.
namespace detail {

// product with A's generators first, B's after, regardless of weight.
// Collection-valid (the blocks commute and tails stay within their block)
// but not weight-sorted; used for the graph-subgroup trick in preimage.
inline PcPresentation block_product(const PcPresentation& A, const PcPresentation& B) {
    if (A.p != B.p) throw std::invalid_argument("direct_product: mixed primes");
    const int n = A.ngens + B.ngens;
    PcPresentation P{A.p, n, A.nmin};
    auto embedA = [&](const Element& e) {
        Element r(n);
        std::copy(e.e.begin(), e.e.end(), r.e.begin());
        return r;
    };
    auto embedB = [&](const Element& e) {
        Element r(n);
        std::copy(e.e.begin(), e.e.end(), r.e.begin() + A.ngens);
        return r;
    };
    for (int i = 0; i < A.ngens; ++i) {
        P.weight[i] = A.weight[i];
        P.power[i] = embedA(A.power[i]);
        for (int j = 0; j < i; ++j) P.comm[i][j] = embedA(A.comm[i][j]);
    }
    for (int i = 0; i < B.ngens; ++i) {
        P.weight[A.ngens + i] = B.weight[i];
        P.power[A.ngens + i] = embedB(B.power[i]);
        for (int j = 0; j < i; ++j) P.comm[A.ngens + i][A.ngens + j] = embedB(B.comm[i][j]);
    }
    return P;
}

}  // namespace detail

inline PcPresentation direct_product(const PcPresentation& A, const PcPresentation& B) {
    if (A.p != B.p) throw std::invalid_argument("direct_product: mixed primes");
    const int n = A.ngens + B.ngens;
    // merge the generators by weight (stable, A first) so the product keeps
    // the weight-sorted convention with the minimal generators in front
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        int wa = a < A.ngens ? A.weight[a] : B.weight[a - A.ngens];
        int wb = b < A.ngens ? A.weight[b] : B.weight[b - A.ngens];
        return wa < wb;
    });
    std::vector<int> pos(n);  // block index -> product index
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    PcPresentation P{A.p, n, A.nmin + B.nmin};
    auto embed = [&](const Element& e, int off) {
        Element r(n);
        for (size_t i = 0; i < e.e.size(); ++i) r.e[pos[int(i) + off]] = e.e[i];
        return r;
    };
    for (int i = 0; i < A.ngens; ++i) {
        P.weight[pos[i]] = A.weight[i];
        P.power[pos[i]] = embed(A.power[i], 0);
        for (int j = 0; j < i; ++j) {
            int a = pos[i], b = pos[j];
            P.comm[std::max(a, b)][std::min(a, b)] = embed(A.comm[i][j], 0);
        }
    }
    for (int i = 0; i < B.ngens; ++i) {
        P.weight[pos[A.ngens + i]] = B.weight[i];
        P.power[pos[A.ngens + i]] = embed(B.power[i], A.ngens);
        for (int j = 0; j < i; ++j) {
            int a = pos[A.ngens + i], b = pos[A.ngens + j];
            P.comm[std::max(a, b)][std::min(a, b)] = embed(B.comm[i][j], A.ngens);
        }
    }
    return P;
}

// {q : f(q) in T}, via the graph subgroup <(f(x_i), x_i)> of dst x src:
// members supported on the src block form an induced sequence of the
// kernel; sifting (t, 1) through the graph turns up a member (t^-1, u)
// with f(u) = t^-1, so u^-1 lifts t. Preimage = <kernel, lifts of IGS(T)>.
// Works for arbitrary (not necessarily normal) T inside the image of f.
inline Subgroup preimage(const Homomorphism& f, const Subgroup& T) {
    const PcPresentation& Q = *f.src;
    const PcPresentation& P = *f.dst;
    auto prod = make_pres(detail::block_product(P, Q));
    std::vector<Element> gens;
    for (int i = 0; i < Q.ngens; ++i) {
        Element g(prod->ngens);
        std::copy(f.images[i].e.begin(), f.images[i].e.end(), g.e.begin());
        g.e[P.ngens + i] = 1;
        gens.push_back(std::move(g));
    }
    Subgroup D = subgroup_closure(prod, std::move(gens));
    Collector CD(*prod);
    std::vector<Element> pre;
    for (const auto& m : D.gens)
        if (m.leading() >= P.ngens) {
            Element g(Q.ngens);
            std::copy(m.e.begin() + P.ngens, m.e.end(), g.e.begin());
            pre.push_back(std::move(g));
        }
    Collector C(Q);
    for (const auto& t : T.gens) {
        Element g(prod->ngens);
        std::copy(t.e.begin(), t.e.end(), g.e.begin());
        Element r = detail::sift_seq(CD, D.gens, std::move(g));
        if (!r.is_identity() && r.leading() < P.ngens)
            throw std::invalid_argument("preimage: subgroup generator outside the image");
        Element u(Q.ngens);
        std::copy(r.e.begin() + P.ngens, r.e.end(), u.e.begin());
        pre.push_back(C.inverse(u));
    }
    return subgroup_closure(f.src, std::move(pre));
}

inline Subgroup kernel(const Homomorphism& f) { return preimage(f, trivial_subgroup(f.dst)); }

inline bool is_normal(const Subgroup& N) {
    Collector C(*N.G);
    for (const auto& g : N.gens)
        for (int i = 0; i < N.G->ngens; ++i) {
            if (!contains(N, C.conjugate(g, N.G->gen(i)))) return false;
            if (!contains(N, C.conjugate(g, C.inverse(N.G->gen(i))))) return false;
        }
    return true;
}

// Presentation of G/N on the generators whose indices are not leaders of
// N, together with the canonical surjection.
inline std::pair<PresPtr, Homomorphism> quotient_presentation(PresPtr G, const Subgroup& N) {
    if (N.G.get() != G.get()) throw std::invalid_argument("quotient: subgroup of a different group");
    if (!is_normal(N)) throw std::invalid_argument("quotient: subgroup is not normal");
    const int n = G->ngens, p = G->p;
    std::vector<char> leader(n, 0);
    for (const auto& m : N.gens) leader[m.leading()] = 1;
    std::vector<int> kept, pos(n, -1);
    for (int i = 0; i < n; ++i)
        if (!leader[i]) { pos[i] = int(kept.size()); kept.push_back(i); }
    Collector C(*G);
    // canonical coset representative: clear coordinates at N's leaders
    auto reduce = [&](Element g) {
        for (const auto& m : N.gens) {
            int l = m.leading();
            if (g.e[l]) g = C.multiply(C.power(m, p - g.e[l]), g);
        }
        return g;
    };
    auto project = [&](const Element& g) {
        Element r(int(kept.size()));
        for (int i = 0; i < n; ++i)
            if (g.e[i]) {
                if (pos[i] < 0) throw std::logic_error("quotient: unreduced coordinate");
                r.e[pos[i]] = g.e[i];
            }
        return r;
    };
    int m = int(kept.size());
    int d = 0;
    for (int i : kept)
        if (i < G->nmin) ++d;
    if (d == 0 && m > 0) d = 1;  // quotient still needs at least one minimal generator
    PcPresentation Q{p, m, std::max(d, m == 0 ? 0 : 1)};
    for (int a = 0; a < m; ++a) {
        Q.weight[a] = G->weight[kept[a]];
        Q.power[a] = project(reduce(C.power(G->gen(kept[a]), p)));
        for (int b = 0; b < a; ++b)
            Q.comm[a][b] = project(reduce(C.commutator(G->gen(kept[a]), G->gen(kept[b]))));
    }
    for (int a = 1; a < m; ++a)
        if (Q.weight[a] < Q.weight[a - 1]) Q.weight[a] = Q.weight[a - 1];
    // definitions, where a relation pins down a generator
    for (int k = Q.nmin; k < m; ++k) {
        for (int i = 0; i < m && Q.def[k].kind == PcPresentation::Def::None; ++i) {
            const Element& t = Q.power[i];
            if (t.e[k] && t.leading() >= 0) {
                bool solvable = true;
                for (int u = k + 1; u < m; ++u)
                    if (t.e[u]) solvable = false;
                if (solvable) Q.def[k] = {PcPresentation::Def::Power, i, -1};
            }
        }
        for (int j = 0; j < m && Q.def[k].kind == PcPresentation::Def::None; ++j)
            for (int i = 0; i < j && Q.def[k].kind == PcPresentation::Def::None; ++i) {
                const Element& t = Q.comm[j][i];
                if (t.e[k]) {
                    bool solvable = true;
                    for (int u = k + 1; u < m; ++u)
                        if (t.e[u]) solvable = false;
                    if (solvable) Q.def[k] = {PcPresentation::Def::Comm, j, i};
                }
            }
    }
    auto Qp = make_pres(std::move(Q));
    std::vector<Element> images;
    for (int i = 0; i < n; ++i) images.push_back(project(reduce(G->gen(i))));
    Homomorphism f{std::move(G), Qp, std::move(images)};
    return {Qp, std::move(f)};
}

// All subgroups of index at most max_index (a p-power), canonical and
// deterministically ordered: descend through maximal subgroups.
inline std::vector<Subgroup> low_index_subgroups(PresPtr G, long max_index) {
    std::vector<Subgroup> out;
    std::map<std::string, cpp_int> seen;  // key -> index
    std::deque<Subgroup> frontier{whole_group(G)};
    seen[frontier.front().key()] = 1;
    out.push_back(frontier.front());
    Collector C(*G);
    while (!frontier.empty()) {
        Subgroup S = std::move(frontier.front());
        frontier.pop_front();
        if (S.index() * G->p > max_index) continue;
        // Frattini subgroup of S
        std::vector<Element> fr;
        for (const auto& h : S.gens) fr.push_back(C.power(h, G->p));
        for (size_t i = 0; i < S.gens.size(); ++i)
            for (size_t j = i + 1; j < S.gens.size(); ++j)
                fr.push_back(C.commutator(S.gens[i], S.gens[j]));
        Subgroup Phi = subgroup_closure(G, std::move(fr), S.gens);
        // generators of S modulo Phi
        std::vector<Element> basis;
        std::vector<Element> probe = Phi.gens;
        for (const auto& h : S.gens) {
            Element r = detail::sift_seq(C, probe, h);
            if (!r.is_identity()) {
                basis.push_back(h);
                probe.push_back(std::move(r));
                std::sort(probe.begin(), probe.end(),
                          [](const Element& a, const Element& b) { return a.leading() < b.leading(); });
            }
        }
        const int r = int(basis.size());
        if (r == 0) continue;
        for (const auto& hp : enumerate_subspaces(G->p, r, 1)) {
            std::vector<Element> gens = Phi.gens;
            for (int row = 0; row < hp.rows; ++row) {
                Element g = G->identity();
                for (int c = 0; c < r; ++c)
                    for (int t = 0; t < hp.at(row, c); ++t) g = C.multiply(std::move(g), basis[c]);
                gens.push_back(std::move(g));
            }
            Subgroup M = subgroup_closure(G, std::move(gens));
            auto k = M.key();
            if (seen.count(k)) continue;
            seen[k] = M.index();
            out.push_back(M);
            frontier.push_back(std::move(M));
        }
    }
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.gens.size() != b.gens.size()) return a.gens.size() > b.gens.size();
        return a.key() < b.key();
    });
    return out;
}

// ---------------------------------------------------------------------------
// Forced images and surjection enumeration
// ---------------------------------------------------------------------------

namespace detail {

// For k >= d pick a relation whose tail is supported in (low, k] with a
// unit coefficient at k, so the image of x_k is forced by the images of
// earlier generators.
struct ForcingPlan {
    struct Entry {
        bool is_power;
        int a, b;  // relation identifier
    };
    std::vector<Entry> entry;                  // index k - d
    std::vector<std::vector<int>> check_at;    // relations to verify once x_k imaged
    std::vector<std::array<int, 3>> relations; // (is_power, a, b) for check scheduling
};

inline const Element& plan_tail(const PcPresentation& Q, bool is_power, int a, int b) {
    return is_power ? Q.power[a] : Q.comm[a][b];
}

inline ForcingPlan make_forcing_plan(const PcPresentation& Q) {
    ForcingPlan plan;
    const int n = Q.ngens, d = Q.nmin;
    auto usable = [&](const Element& t, int k) {
        if (!t.e[k]) return false;
        for (int u = k + 1; u < n; ++u)
            if (t.e[u]) return false;
        return true;
    };
    for (int k = d; k < n; ++k) {
        std::optional<ForcingPlan::Entry> found;
        // prefer the recorded definition when it is usable
        const auto& def = Q.def[k];
        if (def.kind == PcPresentation::Def::Power && usable(Q.power[def.a], k))
            found = ForcingPlan::Entry{true, def.a, -1};
        else if (def.kind == PcPresentation::Def::Comm && usable(Q.comm[def.a][def.b], k))
            found = ForcingPlan::Entry{false, def.a, def.b};
        for (int i = 0; i < n && !found; ++i)
            if (usable(Q.power[i], k)) found = ForcingPlan::Entry{true, i, -1};
        for (int j = 0; j < n && !found; ++j)
            for (int i = 0; i < j && !found; ++i)
                if (usable(Q.comm[j][i], k)) found = ForcingPlan::Entry{false, j, i};
        if (!found)
            throw std::invalid_argument("no forcing relation for generator x" + std::to_string(k + 1));
        plan.entry.push_back(*found);
    }
    // schedule every relation at the point all participating generators are
    // imaged; the forcing relations themselves hold by construction
    plan.check_at.assign(n, {});
    auto schedule = [&](bool is_power, int a, int b) {
        for (int k = d; k < n; ++k) {
            const auto& e = plan.entry[k - d];
            if (e.is_power == is_power && e.a == a && e.b == b) return;  // used for forcing
        }
        const Element& t = plan_tail(Q, is_power, a, b);
        int ready = a;
        if (!is_power) ready = std::max(ready, b);
        for (int u = 0; u < n; ++u)
            if (t.e[u]) ready = std::max(ready, u);
        int id = int(plan.relations.size());
        plan.relations.push_back({is_power ? 1 : 0, a, b});
        plan.check_at[ready].push_back(id);
    };
    for (int i = 0; i < n; ++i) schedule(true, i, -1);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < j; ++i) schedule(false, j, i);
    return plan;
}

// Compute images of all generators from images of the d minimal ones,
// verifying non-forcing relations as soon as possible. Returns nullopt if
// some relation fails (the map is not a homomorphism).
inline std::optional<std::vector<Element>> force_images(const PcPresentation& Q,
                                                        const ForcingPlan& plan, Collector& C,
                                                        std::span<const Element> min_images,
                                                        bool verify = true) {
    const PcPresentation& T = C.pres();
    const int n = Q.ngens, d = Q.nmin, p = Q.p;
    std::vector<Element> img(n, T.identity());
    auto word_image_below = [&](const Element& w, int k) {
        Element r = T.identity();
        for (int i = 0; i < k; ++i)
            for (int t = 0; t < w.e[i]; ++t) r = C.multiply(std::move(r), img[i]);
        return r;
    };
    auto check_relation = [&](int id) {
        auto [is_power, a, b] = plan.relations[id];
        const Element& t = plan_tail(Q, is_power != 0, a, b);
        Element lhs = is_power ? C.power(img[a], p) : C.commutator(img[a], img[b]);
        return lhs == word_image_below(t, n);
    };
    for (int k = 0; k < n; ++k) {
        if (k < d) {
            img[k] = min_images[k];
        } else {
            const auto& e = plan.entry[k - d];
            const Element& t = plan_tail(Q, e.is_power, e.a, e.b);
            Element base = e.is_power ? C.power(img[e.a], p) : C.commutator(img[e.a], img[e.b]);
            Element prefix = word_image_below(t, k);
            Element v = C.multiply(C.inverse(std::move(prefix)), std::move(base));
            int c = t.e[k];
            if (c == 1) {
                img[k] = std::move(v);
            } else {
                long o = C.element_order(v);
                long cinv = 1;
                while ((cinv * c) % o != 1 % o) ++cinv;
                img[k] = C.power(v, cinv);
            }
        }
        if (verify)
            for (int id : plan.check_at[k])
                if (!check_relation(id)) return std::nullopt;
    }
    return img;
}

inline std::vector<Element> all_elements(const PcPresentation& P) {
    std::vector<Element> out;
    Element e(P.ngens);
    while (true) {
        out.push_back(e);
        int i = P.ngens - 1;
        while (i >= 0 && e.e[i] == P.p - 1) e.e[i--] = 0;
        if (i < 0) break;
        ++e.e[i];
    }
    return out;
}

}  // namespace detail

// All surjective homomorphisms Q -> P, enumerated by choosing images of
// the minimal generators in lexicographic order; non-minimal images are
// forced by the definition structure. With first_only set, stops at the
// first surjection found.
inline std::vector<Homomorphism> all_surjections(PresPtr Q, PresPtr P, bool first_only = false) {
    std::vector<Homomorphism> out;
    const int d = Q->nmin;
    auto plan = detail::make_forcing_plan(*Q);
    Collector C(*P);
    // Frattini-quotient coordinates in P for the surjectivity precheck
    Subgroup PhiP = subgroup_closure(P, [&] {
        std::vector<Element> g;
        for (int i = 0; i < P->ngens; ++i) {
            g.push_back(C.power(P->gen(i), P->p));
            for (int j = 0; j < i; ++j) g.push_back(C.commutator(P->gen(i), P->gen(j)));
        }
        return g;
    }());
    std::vector<char> leader(P->ngens, 0);
    for (const auto& m : PhiP.gens) leader[m.leading()] = 1;
    std::vector<int> free_pos;
    for (int i = 0; i < P->ngens; ++i)
        if (!leader[i]) free_pos.push_back(i);
    const int dP = int(free_pos.size());
    auto frat_vec = [&](const Element& g) {
        Element r = detail::sift_seq(C, PhiP.gens, g);
        std::vector<u8> v(dP);
        for (int i = 0; i < dP; ++i) v[i] = r.e[free_pos[i]];
        return v;
    };
    auto elems = detail::all_elements(*P);
    std::vector<std::vector<u8>> fvec;
    fvec.reserve(elems.size());
    for (const auto& e : elems) fvec.push_back(frat_vec(e));

    std::vector<Element> tuple(d, P->identity());
    std::vector<size_t> idx(d, 0);
    while (true) {
        // surjectivity precheck: Frattini-quotient vectors must have rank dP
        MatGFp m(P->p, d, dP);
        for (int i = 0; i < d; ++i)
            for (int c = 0; c < dP; ++c) m.at(i, c) = fvec[idx[i]][c];
        if (rref(std::move(m)).rank == dP) {
            for (int i = 0; i < d; ++i) tuple[i] = elems[idx[i]];
            auto img = detail::force_images(*Q, plan, C, tuple);
            if (img) {
                out.push_back(Homomorphism{Q, P, std::move(*img)});
                if (first_only) return out;
            }
        }
        int i = d - 1;
        while (i >= 0 && idx[i] + 1 == elems.size()) idx[i--] = 0;
        if (i < 0) break;
        ++idx[i];
    }
    return out;
}

inline bool has_quotient(PresPtr Q, PresPtr P) {
    if (Q->ngens < P->nmin) return false;
    return !all_surjections(std::move(Q), std::move(P), true).empty();
}

// multiset of element orders, a cheap isomorphism invariant
inline std::map<long, long> order_histogram(const PcPresentation& P) {
    Collector C(P);
    std::map<long, long> h;
    for (const auto& g : detail::all_elements(P)) ++h[C.element_order(g)];
    return h;
}

// Brute generator-image search behind cheap invariant prefilters; callers
// keep the orders at or below 2^8.
inline bool is_isomorphic(PresPtr Q, PresPtr P, cpp_int max_order = 256) {
    if (Q->order() != P->order()) return false;
    if (Q->order() > max_order) throw std::invalid_argument("is_isomorphic: order above brute-force limit");
    if (abelian_invariants(Q) != abelian_invariants(P)) return false;
    if (order_histogram(*Q) != order_histogram(*P)) return false;
    if (derived_series_factors(Q) != derived_series_factors(P)) return false;
    return has_quotient(std::move(Q), std::move(P));
}

}  // namespace pgroup
