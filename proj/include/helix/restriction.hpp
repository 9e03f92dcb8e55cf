/// @file restriction.hpp
/// Projection of an affine root system onto the two coordinates of a node
/// selection (0, i): restricted roots, delta-bar translation classes, and
/// the line arrangement with its accumulation directions.

#pragma once

#include "helix/cartan.hpp"

#include <map>
#include <set>

namespace helix {

struct NodeSelection {
    CartanMatrix parent;
    std::size_t node = 1; // paired with the extended node 0

    NodeSelection(CartanMatrix c, std::size_t i) : parent(std::move(c)), node(i)
    {
        if (node == 0 || node >= parent.size)
            throw std::invalid_argument("selection must pair node 0 with a distinct node");
    }
};

inline IntPair restrict_vector(const IntVec& v, const NodeSelection& sel)
{
    if (v.size() != sel.parent.size)
        throw std::invalid_argument("vector length does not match parent rank");
    return {v[0], v[sel.node]};
}

/// delta coefficient at the selected node; the geometric length of the
/// contracted fibre, always in 1..6 for affine ADE.
inline Int node_length(const CartanMatrix& c, std::size_t i)
{
    if (i >= c.size)
        throw std::out_of_range("node index out of range");
    return delta(c).coords[i];
}

inline IntPair delta_bar(const NodeSelection& sel)
{
    return restrict_vector(delta(sel.parent).coords, sel);
}

/// Images of the positive roots within the height bound, zero image
/// dropped, no sign closure. Multiplicity of each image is kept separately.
struct PositiveImages {
    std::vector<IntPair> images;           // sorted, deduplicated
    std::map<IntPair, long> multiplicity;  // roots per image
    std::vector<IntPair> real_images;      // images of real roots only
};

inline PositiveImages positive_restricted_images(const NodeSelection& sel, const Int& bound)
{
    PositiveImages out;
    std::set<IntPair> all, real;
    for (const auto& r : enumerate_roots(sel.parent, bound)) {
        IntPair p = restrict_vector(r.coords, sel);
        if (p[0] == 0 && p[1] == 0)
            continue;
        all.insert(p);
        if (!r.imaginary)
            real.insert(p);
        ++out.multiplicity[p];
    }
    out.images.assign(all.begin(), all.end());
    out.real_images.assign(real.begin(), real.end());
    return out;
}

/// Sign-symmetric restricted root set: v present iff -v present.
inline std::vector<IntPair> restricted_roots(const NodeSelection& sel, const Int& bound)
{
    std::set<IntPair> s;
    for (const auto& p : positive_restricted_images(sel, bound).images) {
        s.insert(p);
        s.insert({-p[0], -p[1]});
    }
    return {s.begin(), s.end()};
}

struct RootClasses {
    std::vector<IntPair> representatives; // canonical: min |a|+|b|, then lex
    bool imaginary_line_excluded = true;  // k*delta-bar tracked separately
    bool stable = false;                  // classes at bound == classes at 2*bound
    Int bound_used = 0;
};

namespace detail {

inline Int pair_abs_sum(const IntPair& p)
{
    Int a = p[0] < 0 ? Int(-p[0]) : p[0];
    Int b = p[1] < 0 ? Int(-p[1]) : p[1];
    return a + b;
}

/// Representative of u + Z*db among the nonzero translates: minimal |a|+|b|,
/// ties broken lexicographically greatest. The abs-sum is convex piecewise
/// linear in the step with kinks at -u0/db0 and -u1/db1, so scanning an
/// integer window around the kinks covers every minimizer.
inline IntPair class_representative(const IntPair& u, const IntPair& db)
{
    auto floor_div = [](const Int& a, const Int& b) {
        Int q = a / b, r = a % b;
        if (r != 0 && ((r < 0) != (b < 0)))
            --q;
        return q;
    };
    Int k1 = floor_div(-u[0], db[0]);
    Int k2 = floor_div(-u[1], db[1]);
    Int lo = (k1 < k2 ? k1 : k2) - 1;
    Int hi = (k1 > k2 ? k1 : k2) + 1;

    bool have = false;
    IntPair best{};
    Int best_sum = 0;
    for (Int k = lo; k <= hi; ++k) {
        IntPair cand{u[0] + k * db[0], u[1] + k * db[1]};
        if (cand[0] == 0 && cand[1] == 0)
            continue;
        Int s = pair_abs_sum(cand);
        if (!have || s < best_sum || (s == best_sum && cand > best)) {
            best = cand;
            best_sum = s;
            have = true;
        }
    }
    return best;
}

inline std::set<IntPair> class_reps_at(const NodeSelection& sel, const Int& bound)
{
    IntPair db = delta_bar(sel);
    std::set<IntPair> reps;
    for (const auto& u : positive_restricted_images(sel, bound).real_images)
        reps.insert(class_representative(u, db));
    return reps;
}

} // namespace detail

/// Partition of the real-root images by u ~ u + k*delta-bar. The bound is
/// self-certifying: classes are recomputed at the doubled bound and the
/// result is flagged unstable if the two sets differ.
inline RootClasses root_classes_mod_delta(const NodeSelection& sel, const Int& bound)
{
    if (bound < 1)
        throw std::invalid_argument("bound must be >= 1");
    auto reps = detail::class_reps_at(sel, bound);
    auto reps2 = detail::class_reps_at(sel, bound * 2);
    RootClasses out;
    out.representatives.assign(reps.begin(), reps.end());
    out.stable = (reps == reps2);
    out.bound_used = bound;
    return out;
}

struct Arrangement {
    std::vector<IntPair> lines;      // primitive directions, canonical sign, sorted
    IntPair accumulation_direction;  // +-delta-bar line
};

inline IntPair primitive_direction(IntPair p)
{
    Int g = int_gcd(p[0], p[1]);
    if (g != 0) {
        p[0] /= g;
        p[1] /= g;
    }
    if (p[0] < 0 || (p[0] == 0 && p[1] < 0)) {
        p[0] = -p[0];
        p[1] = -p[1];
    }
    return p;
}

inline Arrangement arrangement(const NodeSelection& sel, const Int& bound)
{
    Arrangement out;
    std::set<IntPair> dirs;
    for (const auto& p : positive_restricted_images(sel, bound).images)
        dirs.insert(primitive_direction(p));
    out.lines.assign(dirs.begin(), dirs.end());
    out.accumulation_direction = primitive_direction(delta_bar(sel));
    return out;
}

} // namespace helix
