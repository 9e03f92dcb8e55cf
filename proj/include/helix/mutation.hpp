/// @file mutation.hpp
/// Word calculus for the mutation functors and their class-level action on
/// the rank-2 lattice: parsing and normal forms, 2x2 integer K-matrices,
/// pole monodromy words, the double chain of tilted hearts, and the
/// tetravalent tilting exchange graph.
///
/// Word grammar (dot-separated tokens):
///   Phi<k>    mutation functor, index k (integer)
///   Phi<k>'   its inverse
///   [n]       shift by n
///   VdB, VdB' the tilting-bundle equivalence and its inverse
///   B<k>      class-group translation by k periods
///
/// A word lists functors in composition order: "VdB'.Phi0.VdB" applies VdB
/// first. K-matrices: Phi(i) acts by the reflection-style matrix of the
/// configured index family, a shift by n acts by (-1)^n, VdB and B act by
/// the identity (they define the basis identifications).

#pragma once

#include "helix/numeric.hpp"

#include <optional>
#include <set>
#include <stdexcept>

namespace helix {

struct WordError : std::invalid_argument {
    std::size_t offset;
    WordError(const std::string& what, std::size_t off)
        : std::invalid_argument(what + " at offset " + std::to_string(off)), offset(off) {}
};

struct Letter {
    enum Kind { Phi, PhiInv, Shift, VdB, VdBInv, Beta } kind;
    long arg = 0; // Phi/PhiInv index, Shift amount, Beta step

    bool operator==(const Letter&) const = default;
};

using FunctorWord = std::vector<Letter>;

inline FunctorWord parse_word(const std::string& text)
{
    FunctorWord w;
    std::size_t pos = 0;
    if (text.empty())
        return w;
    while (pos < text.size()) {
        std::size_t start = pos;
        std::size_t dot = text.find('.', pos);
        std::string tok = text.substr(pos, dot == std::string::npos ? std::string::npos
                                                                    : dot - pos);
        pos = dot == std::string::npos ? text.size() : dot + 1;
        if (tok.empty())
            throw WordError("empty token", start);

        auto parse_int = [&](const std::string& s, std::size_t off) -> long {
            try {
                std::size_t used = 0;
                long v = std::stol(s, &used);
                if (used != s.size())
                    throw std::invalid_argument("");
                return v;
            } catch (...) {
                throw WordError("bad integer '" + s + "'", off);
            }
        };

        if (tok.rfind("Phi", 0) == 0) {
            bool inv = tok.back() == '\'';
            std::string num = tok.substr(3, tok.size() - 3 - (inv ? 1 : 0));
            if (num.empty())
                throw WordError("Phi needs an index", start);
            w.push_back({inv ? Letter::PhiInv : Letter::Phi, parse_int(num, start)});
        } else if (tok == "VdB") {
            w.push_back({Letter::VdB, 0});
        } else if (tok == "VdB'") {
            w.push_back({Letter::VdBInv, 0});
        } else if (tok.front() == '[') {
            if (tok.back() != ']')
                throw WordError("unterminated shift", start);
            w.push_back({Letter::Shift, parse_int(tok.substr(1, tok.size() - 2), start)});
        } else if (tok.front() == 'B') {
            w.push_back({Letter::Beta, parse_int(tok.substr(1), start)});
        } else {
            throw WordError("unknown token '" + tok + "'", start);
        }
    }
    return w;
}

inline std::string format_word(const FunctorWord& w)
{
    if (w.empty())
        return "1";
    std::string out;
    for (const auto& l : w) {
        if (!out.empty())
            out += '.';
        switch (l.kind) {
        case Letter::Phi: out += "Phi" + std::to_string(l.arg); break;
        case Letter::PhiInv: out += "Phi" + std::to_string(l.arg) + "'"; break;
        case Letter::Shift: out += "[" + std::to_string(l.arg) + "]"; break;
        case Letter::VdB: out += "VdB"; break;
        case Letter::VdBInv: out += "VdB'"; break;
        case Letter::Beta: out += "B" + std::to_string(l.arg); break;
        }
    }
    return out;
}

/// Normal form: Beta letters vanish (they re-index by full periods, which is
/// trivial once indices are reduced mod N), shifts coalesce into a single
/// outermost letter, indices are reduced mod N, and adjacent inverse pairs
/// cancel until none remain.
inline FunctorWord reduce_word(const FunctorWord& w, long period)
{
    if (period < 1)
        throw std::invalid_argument("period must be >= 1");
    long shift = 0;
    FunctorWord stack;
    auto norm = [&](long i) { return ((i % period) + period) % period; };
    auto inverse_pair = [](const Letter& a, const Letter& b) {
        return (a.kind == Letter::Phi && b.kind == Letter::PhiInv && a.arg == b.arg) ||
               (a.kind == Letter::PhiInv && b.kind == Letter::Phi && a.arg == b.arg) ||
               (a.kind == Letter::VdB && b.kind == Letter::VdBInv) ||
               (a.kind == Letter::VdBInv && b.kind == Letter::VdB);
    };
    for (const auto& raw : w) {
        Letter l = raw;
        if (l.kind == Letter::Shift) {
            shift += l.arg;
            continue;
        }
        if (l.kind == Letter::Beta)
            continue;
        if (l.kind == Letter::Phi || l.kind == Letter::PhiInv)
            l.arg = norm(l.arg);
        if (!stack.empty() && inverse_pair(stack.back(), l))
            stack.pop_back();
        else
            stack.push_back(l);
    }
    FunctorWord out;
    if (shift != 0)
        out.push_back({Letter::Shift, shift});
    out.insert(out.end(), stack.begin(), stack.end());
    return out;
}

// ---------------------------------------------------------------------------
// K-theory action

struct KMatrix {
    std::array<std::array<Int, 2>, 2> a{{{Int(1), Int(0)}, {Int(0), Int(1)}}};

    static KMatrix identity() { return {}; }

    KMatrix operator*(const KMatrix& o) const
    {
        KMatrix r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.a[i][j] = a[i][0] * o.a[0][j] + a[i][1] * o.a[1][j];
        return r;
    }
    IntPair apply(const IntPair& v) const
    {
        return {a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]};
    }
    KMatrix scaled(int s) const
    {
        KMatrix r = *this;
        for (auto& row : r.a)
            for (auto& x : row)
                x *= s;
        return r;
    }
    Int det() const { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }
    bool operator==(const KMatrix&) const = default;
};

inline KMatrix kmat(long a00, long a01, long a10, long a11)
{
    KMatrix m;
    m.a = {{{Int(a00), Int(a01)}, {Int(a10), Int(a11)}}};
    return m;
}

/// Class-level mutation at the simple with basis class e_v: that class is
/// negated and the other simple class gains c copies of it.
inline KMatrix mutation_matrix(int vertex, long c)
{
    return vertex == 0 ? kmat(-1, c, 0, 1) : kmat(1, 0, c, -1);
}

/// Period, off-diagonal extension count, and the matrix family Phi(i) ->
/// R_{i mod period}, where R alternates between the two simple mutations.
struct MutationConfig {
    long period = 2;
    long ext_count = 2;

    KMatrix generator(long i) const
    {
        long idx = ((i % period) + period) % period;
        return mutation_matrix(static_cast<int>(idx % 2), ext_count);
    }
};

/// Bundled configuration for the affine A1 pair: two alternating simple
/// mutations with ext count 2.
inline MutationConfig config_preproj_a1() { return {2, 2}; }

inline KMatrix k_action(const FunctorWord& w, const MutationConfig& cfg)
{
    KMatrix m = KMatrix::identity();
    for (const auto& l : w) {
        KMatrix g = KMatrix::identity();
        switch (l.kind) {
        case Letter::Phi:
        case Letter::PhiInv:
            g = cfg.generator(l.arg); // involutive, so inverse == itself
            break;
        case Letter::Shift:
            if (l.arg % 2 != 0)
                g = KMatrix::identity().scaled(-1);
            break;
        case Letter::VdB:
        case Letter::VdBInv:
        case Letter::Beta:
            break;
        }
        m = m * g;
    }
    return m;
}

// ---------------------------------------------------------------------------
// Monodromy words

enum class Pole { North, South };

/// Anticlockwise monodromy around a pole: starting from the geometric side,
/// pass through the whole helix once and return. North traverses the
/// mutation chain upwards from index 0, south traverses it downwards from
/// the far basepoint.
inline FunctorWord monodromy(Pole pole, long period)
{
    if (period < 1)
        throw std::invalid_argument("period must be >= 1");
    FunctorWord w;
    w.push_back({Letter::VdBInv, 0});
    if (pole == Pole::North) {
        for (long i = period - 1; i >= 0; --i)
            w.push_back({Letter::Phi, i});
    } else {
        for (long i = 0; i < period; ++i)
            w.push_back({Letter::PhiInv, i});
    }
    w.push_back({Letter::VdB, 0});
    return w;
}

/// Loop around the i-th equatorial puncture: the two parallel mutation paths
/// bounding it, traversed in order. Both carry the same class-level matrix,
/// so the loop squares the reflection.
inline FunctorWord monodromy_equatorial(long i, long period)
{
    if (period < 1 || i < 0 || i >= period)
        throw std::invalid_argument("equatorial index out of range");
    return {{Letter::Phi, i}, {Letter::Phi, i}};
}

// ---------------------------------------------------------------------------
// Heart chains and the exchange graph

struct HeartLabel {
    enum Side { Upper, Lower } side;
    long position;      // 1-based along the chain
    long algebra_index; // reduced mod period
    FunctorWord word;   // shift-then-mutations defining the heart

    std::string text() const
    {
        std::string mut;
        for (const auto& l : word)
            if (l.kind == Letter::Phi || l.kind == Letter::PhiInv)
                mut += (l.kind == Letter::Phi ? "Phi" : "Phi'") + std::to_string(l.arg);
        return mut + "(fl" + std::to_string(algebra_index) + ")[1]";
    }
};

/// First p labels of the chosen chain of tilted hearts below the shifted
/// standard heart. Upper chain: [1]Phi0, [1]Phi0Phi1, ...; lower chain:
/// [1]Phi(-1), [1]Phi(-1)Phi(-2), ... with indices mod the period.
inline std::vector<HeartLabel> heart_chain(HeartLabel::Side side, long steps, long period)
{
    if (steps < 1)
        throw std::invalid_argument("steps must be >= 1");
    if (period < 1)
        throw std::invalid_argument("period must be >= 1");
    auto norm = [&](long i) { return ((i % period) + period) % period; };
    std::vector<HeartLabel> out;
    for (long p = 1; p <= steps; ++p) {
        HeartLabel h;
        h.side = side;
        h.position = p;
        h.word.push_back({Letter::Shift, 1});
        if (side == HeartLabel::Upper) {
            for (long j = 0; j < p; ++j)
                h.word.push_back({Letter::Phi, norm(j)});
            h.algebra_index = norm(p);
        } else {
            for (long j = 1; j <= p; ++j)
                h.word.push_back({Letter::Phi, norm(-j)});
            h.algebra_index = norm(-p);
        }
        out.push_back(std::move(h));
    }
    return out;
}

struct ChamberNode {
    long chamber = 0;
    long shift = 0;

    bool operator==(const ChamberNode&) const = default;
    auto operator<=>(const ChamberNode&) const = default;
};

/// The four mutation moves: left and right neighbour chambers at the same
/// shift, and the boundary crossings, which flip the chamber index and move
/// one shift up or down.
inline std::array<ChamberNode, 4> tilting_neighbors(const ChamberNode& n)
{
    return {ChamberNode{n.chamber - 1, n.shift}, ChamberNode{n.chamber + 1, n.shift},
            ChamberNode{-n.chamber, n.shift + 1}, ChamberNode{-n.chamber, n.shift - 1}};
}

struct ExchangeGraph {
    std::vector<ChamberNode> nodes;                      // sorted
    std::vector<std::pair<ChamberNode, ChamberNode>> edges; // endpoints in graph, a < b
    std::map<ChamberNode, long> depth;
};

inline ExchangeGraph exchange_graph(long radius)
{
    if (radius < 0)
        throw std::invalid_argument("radius must be >= 0");
    ExchangeGraph g;
    std::vector<ChamberNode> frontier = {ChamberNode{0, 0}};
    g.depth[ChamberNode{0, 0}] = 0;
    for (long d = 1; d <= radius; ++d) {
        std::vector<ChamberNode> next;
        for (const auto& n : frontier)
            for (const auto& nb : tilting_neighbors(n))
                if (g.depth.emplace(nb, d).second)
                    next.push_back(nb);
        frontier = std::move(next);
    }
    std::set<std::pair<ChamberNode, ChamberNode>> edges;
    for (const auto& [n, d] : g.depth) {
        g.nodes.push_back(n);
        for (const auto& nb : tilting_neighbors(n))
            if (g.depth.count(nb))
                edges.insert(n < nb ? std::make_pair(n, nb) : std::make_pair(nb, n));
    }
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

} // namespace helix
