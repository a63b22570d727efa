#pragma once

// p-covering group construction: append a central tail generator to every
// non-defining relation, harvest the consistency overlaps as GF(p)-linear
// relations among the tails, and eliminate the dependent ones.

#include "subgroup.hpp"

namespace pgroup {

struct CoverData {
    PresPtr parent;
    PresPtr cover;
    Subgroup multiplicator;  // the surviving tails, central elementary abelian
    Subgroup nucleus;        // P_c(cover), c = p-class of the parent
    // tail generator attached to each relation of the parent, -1 if the
    // relation is a definition or its tail was eliminated
    std::vector<int> power_tail;              // by generator index
    std::vector<std::vector<int>> comm_tail;  // comm_tail[j][i], i < j

    int multiplicator_rank() const { return multiplicator.rank(); }
    int step_max() const { return nucleus.rank(); }
    bool terminal() const { return nucleus.gens.empty(); }
};

inline CoverData p_covering_group(PresPtr Pp) {
    const PcPresentation& P = *Pp;
    const int n = P.ngens, d = P.nmin, p = P.p;
    const int c = P.pclass();
    for (int k = d; k < n; ++k)
        if (P.def[k].kind == PcPresentation::Def::None)
            throw std::invalid_argument("p_covering_group: generator x" + std::to_string(k + 1) +
                                        " has no definition");
    // which relations are definitions
    std::vector<int> power_def(n, -1);
    std::vector<std::vector<int>> comm_def(n);
    for (int j = 0; j < n; ++j) comm_def[j].assign(j, -1);
    for (int k = d; k < n; ++k) {
        const auto& df = P.def[k];
        if (df.kind == PcPresentation::Def::Power) {
            if (power_def[df.a] >= 0) throw std::invalid_argument("p_covering_group: shared definition");
            power_def[df.a] = k;
        } else {
            if (comm_def[df.a][df.b] >= 0) throw std::invalid_argument("p_covering_group: shared definition");
            comm_def[df.a][df.b] = k;
        }
    }
    // assign tentative tails: powers ascending, then commutators (j,i) lex
    std::vector<int> ptail(n, -1);
    std::vector<std::vector<int>> ctail(n);
    for (int j = 0; j < n; ++j) ctail[j].assign(j, -1);
    int m = 0;
    for (int i = 0; i < n; ++i)
        if (power_def[i] < 0) ptail[i] = m++;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (comm_def[j][i] < 0) ctail[j][i] = m++;

    auto build = [&](int keep, const std::vector<int>& tailpos) {
        // tailpos maps tentative tail index -> generator offset or -1
        PcPresentation C{p, n + keep, d};
        for (int i = 0; i < n; ++i) {
            C.weight[i] = P.weight[i];
            C.def[i] = P.def[i];
        }
        for (int t = 0; t < keep; ++t) C.weight[n + t] = c + 1;
        auto lift = [&](const Element& e, int tail) {
            Element r(n + keep);
            std::copy(e.e.begin(), e.e.end(), r.e.begin());
            if (tail >= 0 && tailpos[tail] >= 0) r.e[n + tailpos[tail]] = 1;
            return r;
        };
        for (int i = 0; i < n; ++i) {
            C.power[i] = lift(P.power[i], ptail[i]);
            for (int j = 0; j < i; ++j) C.comm[i][j] = lift(P.comm[i][j], ctail[i][j]);
        }
        return C;
    };

    std::vector<int> all(m);
    std::iota(all.begin(), all.end(), 0);
    PcPresentation tent = build(m, all);

    // harvest overlap equations; each reads off as a tail-span vector
    MatGFp eqs(p, 0, m);
    {
        Collector C(tent);
        auto push_eq = [&](const Element& lhs, const Element& rhs) {
            for (int i = 0; i < n; ++i)
                if (lhs.e[i] != rhs.e[i])
                    throw std::logic_error("p_covering_group: overlap difference escapes tails");
            bool nz = false;
            for (int t = 0; t < m; ++t)
                if (lhs.e[n + t] != rhs.e[n + t]) nz = true;
            if (!nz) return;
            eqs.a.resize(size_t(eqs.rows + 1) * m);
            for (int t = 0; t < m; ++t)
                eqs.a[size_t(eqs.rows) * m + t] =
                    u8(((int(lhs.e[n + t]) - rhs.e[n + t]) % p + p) % p);
            ++eqs.rows;
        };
        for (int k = 0; k < n; ++k) {
            Element xk = tent.gen(k);
            Element xkp = C.power(xk, p);
            // x_k^p . x_k = x_k . x_k^p
            push_eq(C.multiply(xkp, xk), C.multiply(xk, xkp));
            for (int i = 0; i < k; ++i) {
                Element xi = tent.gen(i);
                // (x_k^p) x_i = x_k^{p-1} (x_k x_i)
                push_eq(C.multiply(xkp, xi), C.multiply(C.power(xk, p - 1), C.multiply(xk, xi)));
                // x_k (x_i^p) = (x_k x_i) x_i^{p-1}
                push_eq(C.multiply(xk, C.power(xi, p)),
                        C.multiply(C.multiply(xk, xi), C.power(xi, p - 1)));
                for (int j = i + 1; j < k; ++j) {
                    Element xj = tent.gen(j);
                    // (x_k x_j) x_i = x_k (x_j x_i)
                    push_eq(C.multiply(C.multiply(xk, xj), xi), C.multiply(xk, C.multiply(xj, xi)));
                }
            }
        }
    }
    auto R = rref(std::move(eqs));

    // eliminate pivot tails by substitution, keep the rest
    std::vector<char> is_pivot(m, 0);
    for (int c2 : R.pivots) is_pivot[c2] = 1;
    std::vector<int> tailpos(m, -1);
    int keep = 0;
    for (int t = 0; t < m; ++t)
        if (!is_pivot[t]) tailpos[t] = keep++;
    PcPresentation cov = build(keep, tailpos);
    auto substitute = [&](Element& e, const Element& tentp) {
        // tentp carries the tentative tail coordinates of the relation
        std::vector<int> v(m, 0);
        for (int t = 0; t < m; ++t) v[t] = tentp.e[n + t];
        for (int r = 0; r < R.rank; ++r) {
            int piv = R.pivots[r];
            if (!v[piv]) continue;
            int f = v[piv];
            for (int t = 0; t < m; ++t)
                v[t] = ((v[t] - f * R.m.at(r, t)) % p + p) % p;
        }
        for (int t = 0; t < m; ++t)
            if (v[t]) {
                if (tailpos[t] < 0) throw std::logic_error("p_covering_group: pivot tail survived");
                e.e[n + tailpos[t]] = u8(v[t]);
            }
    };
    for (int i = 0; i < n; ++i) {
        if (ptail[i] >= 0) {
            cov.power[i] = Element(n + keep);
            std::copy(P.power[i].e.begin(), P.power[i].e.end(), cov.power[i].e.begin());
            substitute(cov.power[i], tent.power[i]);
        }
        for (int j = 0; j < i; ++j)
            if (ctail[i][j] >= 0) {
                cov.comm[i][j] = Element(n + keep);
                std::copy(P.comm[i][j].e.begin(), P.comm[i][j].e.end(), cov.comm[i][j].e.begin());
                substitute(cov.comm[i][j], tent.comm[i][j]);
            }
    }
    // definitions and tail map for surviving tails
    CoverData out;
    out.power_tail.assign(n, -1);
    out.comm_tail.resize(n);
    for (int j = 0; j < n; ++j) out.comm_tail[j].assign(j, -1);
    for (int i = 0; i < n; ++i) {
        if (ptail[i] >= 0 && tailpos[ptail[i]] >= 0 && cov.power[i].e[n + tailpos[ptail[i]]] == 1) {
            out.power_tail[i] = n + tailpos[ptail[i]];
            cov.def[n + tailpos[ptail[i]]] = {PcPresentation::Def::Power, i, -1};
        }
        for (int j = 0; j < i; ++j)
            if (ctail[i][j] >= 0 && tailpos[ctail[i][j]] >= 0 &&
                cov.comm[i][j].e[n + tailpos[ctail[i][j]]] == 1) {
                out.comm_tail[i][j] = n + tailpos[ctail[i][j]];
                cov.def[n + tailpos[ctail[i][j]]] = {PcPresentation::Def::Comm, i, j};
            }
    }
    for (int t = 0; t < keep; ++t)
        if (cov.def[n + t].kind == PcPresentation::Def::None)
            throw std::logic_error("p_covering_group: surviving tail without definition");
    cov.validate();

    out.parent = std::move(Pp);
    out.cover = make_pres(std::move(cov));
    std::vector<Element> tails;
    for (int t = 0; t < keep; ++t) tails.push_back(out.cover->gen(n + t));
    out.multiplicator = subgroup_closure(out.cover, std::move(tails));
    out.nucleus = lower_p_central_series(out.cover)[c];
    return out;
}

}  // namespace pgroup
