#pragma once

// Power-commutator presentations of finite p-groups and normal-form
// arithmetic via collection from the left.
//
// A group of order p^n is given by generators x_1..x_n with relations
//   x_i^p = w_i          (power tails)
//   [x_j, x_i] = w_ji    (commutator tails, j > i)
// where every tail is a normal word in generators of index > j. Unlisted
// relations are trivial. Elements are kept in collected normal form
// x_1^{e_1} ... x_n^{e_n}.

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace pgroup {

// Exponent vector of a collected normal word. Index 0 is x_1.
struct Element {
    std::vector<u8> e;

    Element() = default;
    explicit Element(int n) : e(n, 0) {}

    bool is_identity() const {
        for (u8 v : e) if (v) return false;
        return true;
    }
    int leading() const {  // smallest index with nonzero exponent, -1 if identity
        for (size_t i = 0; i < e.size(); ++i) if (e[i]) return int(i);
        return -1;
    }
    friend bool operator==(const Element&, const Element&) = default;
    friend auto operator<=>(const Element& a, const Element& b) { return a.e <=> b.e; }
};

// Uncollected input word: sequence of (generator index, exponent) letters.
struct Word {
    std::vector<std::pair<int, int>> letters;  // 0-based generator index
};

class collection_overflow : public std::runtime_error {
public:
    collection_overflow() : std::runtime_error("collection step budget exceeded") {}
};

struct PcPresentation {
    struct Def {
        enum Kind { None, Power, Comm } kind = None;
        int a = -1, b = -1;  // Power: x_{k} := x_a^p;  Comm: x_k := [x_a, x_b], a > b
    };

    int p = 2;
    int ngens = 0;  // n
    int nmin = 0;   // d, the weight-1 generators x_1..x_d
    std::vector<int> weight;                 // size n
    std::vector<Element> power;              // power[i]: tail of x_i^p
    std::vector<std::vector<Element>> comm;  // comm[j][i], i < j: tail of [x_j, x_i]
    std::vector<Def> def;                    // size n; None for minimal generators

    PcPresentation() = default;
    PcPresentation(int p_, int n, int d) : p(p_), ngens(n), nmin(d) {
        weight.assign(n, 1);
        power.assign(n, Element(n));
        comm.resize(n);
        for (int j = 0; j < n; ++j) comm[j].assign(j, Element(n));
        def.assign(n, Def{});
    }

    Element identity() const { return Element(ngens); }
    Element gen(int i) const {
        Element g(ngens);
        g.e[i] = 1;
        return g;
    }
    cpp_int order() const {
        cpp_int o = 1;
        for (int i = 0; i < ngens; ++i) o *= p;
        return o;
    }
    int pclass() const {
        int c = 0;
        for (int w : weight) c = std::max(c, w);
        return c;
    }

    // structural sanity: entries reduced, tail support above j, weights sane
    void validate() const {
        auto check_tail = [&](const Element& t, int low, const char* what) {
            if (int(t.e.size()) != ngens) throw std::invalid_argument(std::string(what) + ": bad tail length");
            for (int k = 0; k <= low && k < ngens; ++k)
                if (t.e[k]) throw std::invalid_argument(std::string(what) + ": tail touches low generator");
            for (u8 v : t.e)
                if (v >= p) throw std::invalid_argument(std::string(what) + ": exponent out of range");
        };
        for (int i = 0; i < ngens; ++i) check_tail(power[i], i, "power");
        for (int j = 0; j < ngens; ++j)
            for (int i = 0; i < j; ++i) check_tail(comm[j][i], j, "comm");
        for (int i = 1; i < ngens; ++i)
            if (weight[i] < weight[i - 1]) throw std::invalid_argument("weights not nondecreasing");
    }
};

// Normal-form arithmetic on one presentation. Collection from the left:
// to multiply by x_g, conjugate the suffix of higher-index letters through
// x_g and recurse; tails only involve higher indices, so this terminates.
// A step budget guards against malformed input.
class Collector {
public:
    explicit Collector(const PcPresentation& P, long limit = 4'000'000'000'000'000'000L)
        : P_(P), limit_(limit) {}

    const PcPresentation& pres() const { return P_; }

    // a * x_g
    Element gen_mult(Element a, int g) {
        bump();
        const int n = P_.ngens, p = P_.p;
        bool clean = true;
        for (int j = g + 1; j < n; ++j)
            if (a.e[j]) { clean = false; break; }
        if (clean) {
            if (++a.e[g] == p) {
                a.e[g] = 0;
                a = multiply(std::move(a), P_.power[g]);
            }
            return a;
        }
        Element head = a;
        std::vector<std::pair<int, u8>> suffix;
        for (int j = g + 1; j < n; ++j)
            if (head.e[j]) {
                suffix.push_back({j, head.e[j]});
                head.e[j] = 0;
            }
        Element r = gen_mult(std::move(head), g);
        for (auto [j, ej] : suffix)
            for (int t = 0; t < ej; ++t) {
                r = gen_mult(std::move(r), j);
                const Element& tail = P_.comm[j][g];
                if (!tail.is_identity()) r = multiply(std::move(r), tail);
            }
        return r;
    }

    Element multiply(Element a, const Element& b) {
        const int n = P_.ngens;
        for (int i = 0; i < n; ++i)
            for (int t = 0; t < b.e[i]; ++t) a = gen_mult(std::move(a), i);
        return a;
    }

    // Forward substitution: the product is triangular in the exponents, so
    // the inverse can be read off coordinate by coordinate.
    Element inverse(const Element& a) {
        const int n = P_.ngens, p = P_.p;
        Element b(n);
        for (int k = 0; k < n; ++k) {
            Element c = multiply(a, b);
            b.e[k] = u8((p - c.e[k]) % p);
        }
        return b;
    }

    Element power(Element a, long k) {
        if (k < 0) { a = inverse(a); k = -k; }
        Element r = P_.identity();
        for (long t = 0; t < k; ++t) r = multiply(std::move(r), a);
        return r;
    }

    Element commutator(const Element& a, const Element& b) {
        Element r = inverse(a);
        r = multiply(std::move(r), inverse(b));
        r = multiply(std::move(r), a);
        return multiply(std::move(r), b);
    }

    Element conjugate(const Element& a, const Element& g) {
        Element r = inverse(g);
        r = multiply(std::move(r), a);
        return multiply(std::move(r), g);
    }

    Element collect(const Word& w) {
        Element acc = P_.identity();
        for (auto [g, e] : w.letters) {
            if (g < 0 || g >= P_.ngens) throw std::invalid_argument("collect: generator out of range");
            if (e >= 0) {
                for (int t = 0; t < e; ++t) acc = gen_mult(std::move(acc), g);
            } else {
                Element gi = inverse(P_.gen(g));
                for (int t = 0; t < -e; ++t) acc = multiply(std::move(acc), gi);
            }
        }
        return acc;
    }

    long element_order(Element a) {
        long ord = 1;
        while (!a.is_identity()) {
            a = power(a, P_.p);
            ord *= P_.p;
        }
        return ord;
    }

private:
    void bump() {
        if (++steps_ > limit_) throw collection_overflow();
    }
    const PcPresentation& P_;
    long steps_ = 0;
    long limit_;
};

// Convenience wrappers (fresh step budget per call).
inline Element multiply(const PcPresentation& P, const Element& a, const Element& b) {
    return Collector(P).multiply(a, b);
}
inline Element inverse(const PcPresentation& P, const Element& a) {
    return Collector(P).inverse(a);
}
inline Element commutator(const PcPresentation& P, const Element& a, const Element& b) {
    return Collector(P).commutator(a, b);
}
inline Element power(const PcPresentation& P, const Element& a, long k) {
    return Collector(P).power(a, k);
}
inline Element collect(const PcPresentation& P, const Word& w) {
    return Collector(P).collect(w);
}
inline long element_order(const PcPresentation& P, const Element& a) {
    return Collector(P).element_order(a);
}
inline cpp_int group_order(const PcPresentation& P) { return P.order(); }

// Overlap (associativity) checks. A consistent presentation defines a
// group of order exactly p^n. Overlaps involving a generator that is
// central with trivial power relation hold trivially and are skipped when
// skip_trivial is set (used when harvesting cover consistency equations).
inline bool is_consistent(const PcPresentation& P, int max_gen = -1) {
    const int n = max_gen < 0 ? P.ngens : max_gen;
    try {
        Collector C(P, 50'000'000);  // malformed input guard
        for (int i = 0; i < n; ++i) {
            Element xi = P.gen(i);
            // x_i^p * x_i == x_i * x_i^p
            Element lhs = C.multiply(P.power[i], xi);
            Element rhs = C.multiply(xi, P.power[i]);
            if (lhs != rhs) return false;
            for (int j = i + 1; j < n; ++j) {
                Element xj = P.gen(j);
                // (x_j^p) x_i == x_j^{p-1} (x_j x_i)
                lhs = C.multiply(P.power[j], xi);
                rhs = C.multiply(C.power(xj, P.p - 1), C.multiply(xj, xi));
                if (lhs != rhs) return false;
                // x_j (x_i^p) == (x_j x_i) x_i^{p-1}
                lhs = C.multiply(xj, P.power[i]);
                rhs = C.multiply(C.multiply(xj, xi), C.power(xi, P.p - 1));
                if (lhs != rhs) return false;
                for (int k = j + 1; k < n; ++k) {
                    Element xk = P.gen(k);
                    lhs = C.multiply(C.multiply(xk, xj), xi);
                    rhs = C.multiply(xk, C.multiply(xj, xi));
                    if (lhs != rhs) return false;
                }
            }
        }
    } catch (const collection_overflow&) {
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Presentation text grammar
//
//   p=2 n=11 d=2
//   x1^2 = x4
//   [x2,x1] = x3 ; [x3,x1] = x6
//
// Statements separated by ';' or newline; '#' starts a comment. Unlisted
// relations are trivial. A right-hand side is a product of powers
// "x4 x10^1" (or "1" for the identity). Exponents are nonnegative integer
// literals; parameterized presentations substitute digits before parsing.
// ---------------------------------------------------------------------------

namespace detail {

struct Cursor {
    const std::string& s;
    size_t i = 0;
    void skip_ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }
    std::optional<long> number() {
        skip_ws();
        size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) return std::nullopt;
        long v = std::stol(s.substr(i, j - i));
        i = j;
        return v;
    }
    std::optional<int> generator(int ngens) {
        skip_ws();
        if (i >= s.size() || s[i] != 'x') return std::nullopt;
        ++i;
        auto v = number();
        if (!v || *v < 1 || *v > ngens) throw std::invalid_argument("bad generator index in presentation");
        return int(*v) - 1;
    }
};

inline Element parse_word(const std::string& text, const PcPresentation& P) {
    Cursor c{text};
    Word w;
    c.skip_ws();
    if (c.i < text.size() && text[c.i] == '1' &&
        (c.i + 1 == text.size() || !std::isdigit(static_cast<unsigned char>(text[c.i + 1])))) {
        return P.identity();
    }
    while (true) {
        auto g = c.generator(P.ngens);
        if (!g) break;
        long e = 1;
        if (c.eat('^')) {
            auto v = c.number();
            if (!v) throw std::invalid_argument("missing exponent in word");
            e = *v;
        }
        w.letters.push_back({*g, int(e)});
    }
    c.skip_ws();
    if (c.i != text.size()) throw std::invalid_argument("trailing junk in word: " + text);
    return collect(P, w);
}

}  // namespace detail

inline PcPresentation parse_presentation(const std::string& text) {
    // split into statements
    std::vector<std::string> stmts;
    std::string cur;
    for (size_t i = 0; i <= text.size(); ++i) {
        char ch = i < text.size() ? text[i] : '\n';
        if (ch == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            ch = '\n';
        }
        if (ch == ';' || ch == '\n') {
            if (cur.find_first_not_of(" \t\r") != std::string::npos) stmts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (stmts.empty()) throw std::invalid_argument("empty presentation");

    // header: p=.. n=.. d=..
    long p = -1, n = -1, d = -1;
    {
        std::istringstream hs(stmts[0]);
        std::string tok;
        while (hs >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("bad header: " + stmts[0]);
            std::string key = tok.substr(0, eq);
            long val = std::stol(tok.substr(eq + 1));
            if (key == "p") p = val;
            else if (key == "n") n = val;
            else if (key == "d") d = val;
            else throw std::invalid_argument("unknown header key: " + key);
        }
        if (p < 2 || n < 1 || d < 1 || d > n) throw std::invalid_argument("bad header: " + stmts[0]);
    }
    PcPresentation P{int(p), int(n), int(d)};

    // first pass: record relation texts
    struct Rel {
        bool is_power = false;
        int a = -1, b = -1;  // power: x_a^p;  comm: [x_a, x_b]
        std::string rhs;

        Rel() = default;
        Rel(bool pw, int a_, int b_, std::string rhs_) : is_power(pw), a(a_), b(b_), rhs(std::move(rhs_)) {}
    };
    std::vector<Rel> rels;
    for (size_t s = 1; s < stmts.size(); ++s) {
        const std::string& st = stmts[s];
        detail::Cursor c{st};
        Rel r{};
        if (c.eat('[')) {
            auto a = c.generator(P.ngens);
            if (!a || !c.eat(',')) throw std::invalid_argument("bad commutator: " + st);
            auto b = c.generator(P.ngens);
            if (!b || !c.eat(']')) throw std::invalid_argument("bad commutator: " + st);
            if (*a <= *b) throw std::invalid_argument("commutator must be [xj,xi] with j > i: " + st);
            r = {false, *a, *b, ""};
        } else {
            auto a = c.generator(P.ngens);
            if (!a) throw std::invalid_argument("bad statement: " + st);
            if (!c.eat('^')) throw std::invalid_argument("expected ^p on power relation: " + st);
            auto e = c.number();
            if (!e || *e != p) throw std::invalid_argument("power relation exponent must equal p: " + st);
            r = {true, *a, -1, ""};
        }
        if (!c.eat('=')) throw std::invalid_argument("missing '=': " + st);
        r.rhs = st.substr(c.i);
        rels.push_back(r);
    }

    // second pass: tails (tails reference only higher generators, so the
    // identity-element parse below needs no relation ordering)
    for (const auto& r : rels) {
        Element tail = detail::parse_word(r.rhs, P);
        for (int k = 0; k <= r.a; ++k)
            if (tail.e[k])
                throw std::invalid_argument("tail uses generator x" + std::to_string(k + 1) +
                                            " not above the relation");
        if (r.is_power) P.power[r.a] = tail;
        else P.comm[r.a][r.b] = tail;
    }

    // weights and definitions: x_k (k >= d) must be definable from relations
    // whose right side is exactly x_k. Weight is the minimum achievable
    // (power: w_i + 1, commutator: w_j + w_i); among minimal choices a
    // commutator with weight-1 second entry is preferred.
    for (int k = int(d); k < n; ++k) {
        int best_w = -1;
        PcPresentation::Def best{};
        for (const auto& r : rels) {
            // candidate only if the relation RHS is the single letter x_k
            const Element& t = r.is_power ? P.power[r.a] : P.comm[r.a][r.b];
            if (t.leading() != k) continue;
            Element single = P.gen(k);
            if (t != single) continue;
            int w = r.is_power ? P.weight[r.a] + 1 : P.weight[r.a] + P.weight[r.b];
            bool pref = !r.is_power && P.weight[r.b] == 1;
            if (best_w < 0 || w < best_w || (w == best_w && pref && best.kind != PcPresentation::Def::Comm)) {
                best_w = w;
                best = r.is_power ? PcPresentation::Def{PcPresentation::Def::Power, r.a, -1}
                                  : PcPresentation::Def{PcPresentation::Def::Comm, r.a, r.b};
            }
        }
        if (best_w > 0) {
            P.weight[k] = best_w;
            P.def[k] = best;
        }
        // Inferred weights are heuristic (the exact values come from the
        // lower exponent-p central series); clamp to keep them monotone.
        if (k > 0 && P.weight[k] < P.weight[k - 1]) P.weight[k] = P.weight[k - 1];
    }
    P.validate();
    if (!is_consistent(P)) throw std::invalid_argument("inconsistent presentation");
    return P;
}

inline std::string serialize(const PcPresentation& P) {
    std::ostringstream os;
    os << "p=" << P.p << " n=" << P.ngens << " d=" << P.nmin << "\n";
    auto word = [&](const Element& t) {
        std::string s;
        for (int k = 0; k < P.ngens; ++k)
            if (t.e[k]) {
                if (!s.empty()) s += " ";
                s += "x" + std::to_string(k + 1);
                if (t.e[k] != 1) s += "^" + std::to_string(int(t.e[k]));
            }
        return s.empty() ? std::string("1") : s;
    };
    for (int i = 0; i < P.ngens; ++i)
        if (!P.power[i].is_identity())
            os << "x" << i + 1 << "^" << P.p << " = " << word(P.power[i]) << "\n";
    for (int j = 0; j < P.ngens; ++j)
        for (int i = 0; i < j; ++i)
            if (!P.comm[j][i].is_identity())
                os << "[x" << j + 1 << ",x" << i + 1 << "] = " << word(P.comm[j][i]) << "\n";
    return os.str();
}

}  // namespace pgroup
