/// @file cartan.hpp
/// Affine ADE Cartan matrices, the imaginary root delta, simple reflections
/// and exact enumeration of positive roots up to a height bound.
///
/// Node ordering convention (fixed, everything downstream depends on it):
///  - A~n (n >= 1): cycle 0-1-...-n-0; node 0 is the extended node.
///    A~1 is the double-bond case, C = [[2,-2],[-2,2]].
///  - D~n (n >= 4): fork ends first. Nodes 0,1 attach to internal node 4;
///    nodes 2,3 attach to internal node n; internal chain 4-5-...-n.
///    For D~4 the single internal node 4 is the centre, adjacent to 0..3.
///    Node 0 is the extended node.
///  - E~6: three arms of two nodes each around centre 6: tips 0,2,4,
///    middles 1,3,5, arms 0-1-6, 2-3-6, 4-5-6. Node 0 is the extended tip.
///  - E~7: path 0-1-2-3-4-5-6 with node 7 attached to path node 3.
///    Node 0 is the extended end.
///  - E~8: path 0-1-...-7 with node 8 attached to path node 5. Node 0 is
///    the extended end (the long-arm tip).

#pragma once

#include "helix/linalg.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace helix {

enum class AffineFamily { A, D, E };

struct AffineType {
    AffineFamily family;
    int rank; // the n of A~n / D~n / E~n

    bool operator==(const AffineType&) const = default;

    std::string name() const
    {
        static const char* letters = "ADE";
        return std::string(1, letters[static_cast<int>(family)]) +
               std::to_string(rank) + "t";
    }
};

/// Accepts the compact tags "A1t", "D4t", "E8t" (trailing t for affine).
inline std::optional<AffineType> parse_affine_type(const std::string& s)
{
    if (s.size() < 3 || s.back() != 't')
        return std::nullopt;
    char fam = s.front();
    int rank = 0;
    try {
        std::size_t used = 0;
        rank = std::stoi(s.substr(1, s.size() - 2), &used);
        if (used != s.size() - 2)
            return std::nullopt;
    } catch (...) {
        return std::nullopt;
    }
    switch (fam) {
    case 'A':
        if (rank >= 1)
            return AffineType{AffineFamily::A, rank};
        break;
    case 'D':
        if (rank >= 4)
            return AffineType{AffineFamily::D, rank};
        break;
    case 'E':
        if (rank >= 6 && rank <= 8)
            return AffineType{AffineFamily::E, rank};
        break;
    default:
        break;
    }
    return std::nullopt;
}

struct CartanMatrix {
    AffineType label;
    std::size_t size = 0;          // node count incl. extended node 0
    std::vector<IntVec> entries;   // size x size, symmetric

    const Int& at(std::size_t i, std::size_t j) const { return entries[i][j]; }
};

struct Root {
    IntVec coords;
    bool imaginary = false;

    bool positive() const
    {
        bool nonneg = true, nonzero = false;
        for (const auto& x : coords) {
            if (x < 0)
                nonneg = false;
            if (x != 0)
                nonzero = true;
        }
        return nonneg && nonzero;
    }
};

namespace detail {

inline std::vector<std::pair<int, int>> affine_edges(const AffineType& t)
{
    std::vector<std::pair<int, int>> e;
    const int n = t.rank;
    switch (t.family) {
    case AffineFamily::A:
        for (int i = 0; i < n; ++i)
            e.push_back({i, i + 1});
        if (n >= 2)
            e.push_back({n, 0});
        // A~1 carries a double bond instead of a 2-cycle; handled by caller.
        break;
    case AffineFamily::D:
        e.push_back({0, 4});
        e.push_back({1, 4});
        e.push_back({2, n});
        e.push_back({3, n});
        for (int i = 4; i < n; ++i)
            e.push_back({i, i + 1});
        break;
    case AffineFamily::E:
        if (n == 6) {
            e = {{0, 1}, {1, 6}, {2, 3}, {3, 6}, {4, 5}, {5, 6}};
        } else if (n == 7) {
            for (int i = 0; i < 6; ++i)
                e.push_back({i, i + 1});
            e.push_back({3, 7});
        } else {
            for (int i = 0; i < 7; ++i)
                e.push_back({i, i + 1});
            e.push_back({5, 8});
        }
        break;
    }
    return e;
}

} // namespace detail

inline CartanMatrix build_cartan(const AffineType& label)
{
    CartanMatrix c;
    c.label = label;
    c.size = static_cast<std::size_t>(label.rank) + 1;
    c.entries.assign(c.size, IntVec(c.size, 0));
    for (std::size_t i = 0; i < c.size; ++i)
        c.entries[i][i] = 2;
    if (label.family == AffineFamily::A && label.rank == 1) {
        c.entries[0][1] = c.entries[1][0] = -2;
        return c;
    }
    for (auto [i, j] : detail::affine_edges(label)) {
        c.entries[i][j] = -1;
        c.entries[j][i] = -1;
    }
    return c;
}

inline CartanMatrix build_cartan(const std::string& tag)
{
    auto t = parse_affine_type(tag);
    if (!t)
        throw std::invalid_argument("unsupported affine type: " + tag);
    return build_cartan(*t);
}

/// Primitive positive generator of the kernel (the imaginary root).
inline Root delta(const CartanMatrix& c)
{
    IntVec v = integer_kernel_primitive(c.entries);
    if (v.empty())
        throw std::invalid_argument("matrix is not of affine corank-1 type");
    return Root{std::move(v), true};
}

inline IntVec cartan_apply(const CartanMatrix& c, const IntVec& v)
{
    IntVec out(c.size, 0);
    for (std::size_t i = 0; i < c.size; ++i)
        for (std::size_t j = 0; j < c.size; ++j)
            if (c.entries[i][j] != 0)
                out[i] += c.entries[i][j] * v[j];
    return out;
}

inline Int norm_form(const CartanMatrix& c, const IntVec& v)
{
    IntVec cv = cartan_apply(c, v);
    Int q = 0;
    for (std::size_t i = 0; i < c.size; ++i)
        q += v[i] * cv[i];
    return q;
}

/// Simple reflection s_i(v) = v - (Cv)_i e_i; valid for symmetric C
/// including the -2 entries of A~1.
inline IntVec reflect(const CartanMatrix& c, std::size_t i, IntVec v)
{
    if (i >= c.size)
        throw std::out_of_range("reflection index out of range");
    if (v.size() != c.size)
        throw std::invalid_argument("vector length does not match matrix size");
    Int ci = 0;
    for (std::size_t j = 0; j < c.size; ++j)
        if (c.entries[i][j] != 0)
            ci += c.entries[i][j] * v[j];
    v[i] -= ci;
    return v;
}

/// All positive roots of height <= bound, lexicographically sorted.
/// Real roots come from the reflection orbit of the simple roots grown
/// breadth-first inside the height ball; imaginary roots are the k*delta.
inline std::vector<Root> enumerate_roots(const CartanMatrix& c, const Int& height_bound)
{
    if (height_bound < 1)
        throw std::invalid_argument("height bound must be >= 1");

    std::set<IntVec> seen;
    std::vector<IntVec> frontier;
    for (std::size_t i = 0; i < c.size; ++i) {
        IntVec e(c.size, 0);
        e[i] = 1;
        seen.insert(e);
        frontier.push_back(std::move(e));
    }
    while (!frontier.empty()) {
        std::vector<IntVec> next;
        for (const auto& v : frontier) {
            for (std::size_t i = 0; i < c.size; ++i) {
                IntVec w = reflect(c, i, v);
                bool nonneg = true, nonzero = false;
                Int h = 0;
                for (const auto& x : w) {
                    if (x < 0) { nonneg = false; break; }
                    if (x != 0) nonzero = true;
                    h += x;
                }
                if (!nonneg || !nonzero || h > height_bound)
                    continue;
                if (seen.insert(w).second)
                    next.push_back(std::move(w));
            }
        }
        frontier = std::move(next);
    }

    Root d = delta(c);
    Int dh = ivec_height(d.coords);
    std::set<IntVec> imaginary;
    for (Int k = 1; k * dh <= height_bound; ++k) {
        IntVec v(c.size);
        for (std::size_t i = 0; i < c.size; ++i)
            v[i] = k * d.coords[i];
        imaginary.insert(v);
        seen.erase(v); // the orbit never produces these, but keep the split clean
    }

    std::vector<Root> out;
    out.reserve(seen.size() + imaginary.size());
    for (const auto& v : seen)
        out.push_back(Root{v, false});
    for (const auto& v : imaginary)
        out.push_back(Root{v, true});
    std::sort(out.begin(), out.end(),
              [](const Root& a, const Root& b) { return a.coords < b.coords; });
    return out;
}

} // namespace helix
