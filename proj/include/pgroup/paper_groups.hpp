#pragma once

// Named small 2-groups and the parameterized presentations of the four
// case studies, in the presentation text grammar.

#include <stdexcept>
#include <string>

#include "presentation.hpp"

namespace pgroup {

// Elementary abelian group of rank d.
inline PcPresentation elementary_abelian(int p, int d) {
    PcPresentation P(p, d, d);
    P.validate();
    return P;
}

// Abelian 2-group with the given invariants, e.g. {2,4} -> C2 x C4.
inline PcPresentation abelian_group(const AbelianInvariants& inv) {
    std::string hdr, rels;
    int n = 0, d = int(inv.size());
    // one generator chain per cyclic factor; x_{i}^2 walks down the chain
    std::vector<std::vector<int>> chains;
    for (long o : inv) {
        std::vector<int> chain;
        for (long v = o; v > 1; v /= 2) chain.push_back(n++);
        chains.push_back(chain);
    }
    // reorder so weights are nondecreasing: level-order over chains
    std::vector<int> pos(n, -1);
    int idx = 0;
    for (int lvl = 0;; ++lvl) {
        bool any = false;
        for (auto& ch : chains)
            if (lvl < int(ch.size())) { pos[ch[lvl]] = idx++; any = true; }
        if (!any) break;
    }
    std::string text = "p=2 n=" + std::to_string(n) + " d=" + std::to_string(d) + "\n";
    for (auto& ch : chains)
        for (size_t l = 0; l + 1 < ch.size(); ++l)
            text += "x" + std::to_string(pos[ch[l]] + 1) + "^2 = x" + std::to_string(pos[ch[l + 1]] + 1) + "\n";
    return parse_presentation(text);
}

inline PcPresentation dihedral8() {
    return parse_presentation("p=2 n=3 d=2\n[x2,x1] = x3\n");
}

inline PcPresentation quaternion8() {
    return parse_presentation("p=2 n=3 d=2\nx1^2 = x3\nx2^2 = x3\n[x2,x1] = x3\n");
}

// H4 and H6, the two surviving class-2 quotients in the -2379 case.
inline PcPresentation paper_H4() {
    return parse_presentation("p=2 n=4 d=2\nx1^2 = x4\n[x2,x1] = x3\n");
}
inline PcPresentation paper_H6() {
    return parse_presentation("p=2 n=5 d=2\nx1^2 = x4\nx2^2 = x5\n[x2,x1] = x3\n");
}

namespace detail {
inline std::string subst(std::string text, char key, int value) {
    std::string pat = std::string("$") + key;
    for (size_t pos; (pos = text.find(pat)) != std::string::npos;)
        text.replace(pos, 2, std::to_string(value));
    return text;
}
}  // namespace detail

// The final presentations printed for each field, parameterized by
// r,s,t in {0,1} (unused parameters ignored per case).
inline PcPresentation build_paper_group(const std::string& case_id, int r = 0, int s = 0, int t = 0) {
    auto check01 = [](int v, const char* name) {
        if (v != 0 && v != 1) throw std::invalid_argument(std::string("parameter ") + name + " must be 0 or 1");
    };
    check01(r, "r");
    check01(s, "s");
    check01(t, "t");
    std::string text;
    if (case_id == "-2379") {
        text =
            "p=2 n=11 d=2\n"
            "[x2,x1] = x3\n"
            "[x3,x1] = x6\n"
            "[x3,x2] = x7\n"
            "[x4,x2] = x8\n"
            "[x4,x3] = x10\n"
            "[x5,x1] = x6 x7 x8 x9 x10\n"
            "[x5,x3] = x10 x11\n"
            "[x5,x4] = x10 x11\n"
            "[x6,x1] = x9\n"
            "[x8,x1] = x10\n"
            "[x8,x2] = x10 x11\n"
            "[x9,x1] = x11\n"
            "x1^2 = x4\n"
            "x2^2 = x5\n"
            "x3^2 = x6 x8 x9 x10\n"
            "x4^2 = x7 x11^$r\n"
            "x5^2 = x6 x9 x10^$s x11^$t\n"
            "x6^2 = x9 x10 x11\n"
            "x7^2 = x10 x11\n"
            "x9^2 = x11\n";
    } else if (case_id == "-445") {
        text =
            "p=2 n=8 d=2\n"
            "[x2,x1] = x3\n"
            "[x3,x1] = x5\n"
            "[x3,x2] = x6\n"
            "[x4,x2] = x5 x6 x7 x8\n"
            "[x4,x3] = x7\n"
            "[x5,x1] = x7\n"
            "[x5,x2] = x8\n"
            "[x5,x3] = x8\n"
            "[x5,x4] = x8\n"
            "[x7,x1] = x8\n"
            "[x7,x2] = x8\n"
            "x1^2 = x4\n"
            "x2^2 = x5 x7\n"
            "x3^2 = x6 x7\n"
            "x4^2 = x8^$r\n"
            "x6^2 = x8\n";
    } else if (case_id == "-1015" || case_id == "-1595") {
        text =
            "p=2 n=9 d=2\n"
            "[x2,x1] = x3\n"
            "[x3,x1] = x5\n"
            "[x3,x2] = x8 x9^$q\n"
            "[x4,x2] = x5 x7 x8 x9^$r\n"
            "[x4,x3] = x7\n"
            "[x5,x1] = x7\n"
            "[x5,x2] = x9\n"
            "[x5,x3] = x9\n"
            "[x5,x4] = x9\n"
            "[x7,x1] = x9\n"
            "[x7,x2] = x9\n"
            "x1^2 = x4\n"
            "x2^2 = x5 x7\n"
            "x3^2 = x7 x8 x9^$q\n"
            "x4^2 = x6\n"
            "x6^2 = x8\n"
            "x8^2 = x9\n";
    } else {
        throw std::invalid_argument("unknown case id: " + case_id);
    }
    text = detail::subst(text, 'r', r);
    text = detail::subst(text, 's', s);
    text = detail::subst(text, 't', t);
    text = detail::subst(text, 'q', 1 - r);
    return parse_presentation(text);
}

}  // namespace pgroup
