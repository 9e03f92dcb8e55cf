/// @file quiver.hpp
/// Exact module calculus over the bundled two-vertex algebras: the affine
/// A1 preprojective algebra and the conifold quiver with its superpotential
/// relations. Hom spaces are solved directly; Ext groups come from the
/// standard projective presentation (arrows in degree one, relations in
/// degree two, and for the three-dimensional case the self-dual tail in
/// degree three).
///
/// Conventions: arrows act on the left, a path stores its arrows in
/// application order (first arrow first), and a relation is a signed sum of
/// parallel paths. The conifold potential is
///     W = a1 b1 a2 b2 - a1 b2 a2 b1,
/// differentiated cyclically; any convention with two arrows each way and
/// the degree-three duality holding would do, this one is fixed here.

#pragma once

#include "helix/linalg.hpp"

#include <map>
#include <optional>
#include <random>
#include <stdexcept>

namespace helix {

struct Arrow {
    int src;
    int dst;
    std::string label;
};

struct PathTerm {
    Rat coeff;
    std::vector<int> arrows; // arrow indices, first applied first
};

struct Relation {
    int src;
    int dst;
    std::vector<PathTerm> terms;
    std::string label;
};

struct Algebra {
    std::string name;
    int vertices = 2;
    std::vector<Arrow> arrows;
    std::vector<Relation> relations;
    int cy_dim = 2;
    // For superpotential algebras: relation index differentiating each arrow,
    // used by the degree-three tail of the presentation.
    std::vector<int> relation_for_arrow;

    int arrow_index(const std::string& label) const
    {
        for (std::size_t i = 0; i < arrows.size(); ++i)
            if (arrows[i].label == label)
                return static_cast<int>(i);
        throw std::invalid_argument("no arrow labelled " + label);
    }
};

inline Algebra preproj_a1()
{
    Algebra q;
    q.name = "preproj_A1";
    q.arrows = {{0, 1, "x"}, {0, 1, "y"}, {1, 0, "xs"}, {1, 0, "ys"}};
    q.cy_dim = 2;
    const int x = 0, y = 1, xs = 2, ys = 3;
    q.relations = {
        {0, 0, {{1, {x, xs}}, {1, {y, ys}}}, "r0"},
        {1, 1, {{1, {xs, x}}, {1, {ys, y}}}, "r1"},
    };
    return q;
}

inline Algebra conifold_nccr()
{
    Algebra q;
    q.name = "conifold_nccr";
    q.arrows = {{0, 1, "a1"}, {0, 1, "a2"}, {1, 0, "b1"}, {1, 0, "b2"}};
    q.cy_dim = 3;
    const int a1 = 0, a2 = 1, b1 = 2, b2 = 3;
    q.relations = {
        {1, 0, {{1, {b2, a2, b1}}, {-1, {b1, a2, b2}}}, "da1"},
        {1, 0, {{1, {b1, a1, b2}}, {-1, {b2, a1, b1}}}, "da2"},
        {0, 1, {{1, {a1, b2, a2}}, {-1, {a2, b2, a1}}}, "db1"},
        {0, 1, {{1, {a2, b1, a1}}, {-1, {a1, b1, a2}}}, "db2"},
    };
    q.relation_for_arrow = {0, 1, 2, 3};
    return q;
}

inline const Algebra& preset(const std::string& name)
{
    static const Algebra pa = preproj_a1();
    static const Algebra co = conifold_nccr();
    if (name == "preproj_A1")
        return pa;
    if (name == "conifold_nccr")
        return co;
    throw std::invalid_argument("unknown preset: " + name);
}

struct Representation {
    std::array<int, 2> dims{0, 0};
    std::vector<RatMatrix> maps; // one per arrow, shaped dims[dst] x dims[src]

    int total_dim() const { return dims[0] + dims[1]; }
    bool is_zero() const { return total_dim() == 0; }
    IntPair dim_class() const { return {dims[0], dims[1]}; }
};

inline Representation zero_rep(const Algebra& q)
{
    Representation r;
    r.maps.assign(q.arrows.size(), RatMatrix());
    return r;
}

inline Representation simple(const Algebra& q, int vertex)
{
    if (vertex != 0 && vertex != 1)
        throw std::invalid_argument("vertex must be 0 or 1");
    Representation r;
    r.dims[vertex] = 1;
    for (const auto& a : q.arrows)
        r.maps.push_back(RatMatrix(r.dims[a.dst], r.dims[a.src]));
    return r;
}

inline Representation direct_sum(const Algebra& q, const Representation& a,
                                 const Representation& b)
{
    Representation r;
    r.dims = {a.dims[0] + b.dims[0], a.dims[1] + b.dims[1]};
    for (std::size_t i = 0; i < q.arrows.size(); ++i) {
        const auto& ar = q.arrows[i];
        RatMatrix m(r.dims[ar.dst], r.dims[ar.src]);
        for (std::size_t p = 0; p < a.maps[i].rows(); ++p)
            for (std::size_t c = 0; c < a.maps[i].cols(); ++c)
                m(p, c) = a.maps[i](p, c);
        for (std::size_t p = 0; p < b.maps[i].rows(); ++p)
            for (std::size_t c = 0; c < b.maps[i].cols(); ++c)
                m(p + a.dims[ar.dst], c + a.dims[ar.src]) = b.maps[i](p, c);
        r.maps.push_back(std::move(m));
    }
    return r;
}

inline RatMatrix path_map(const Representation& m, const std::vector<int>& arrows_in_order)
{
    RatMatrix acc;
    bool first = true;
    for (int a : arrows_in_order) {
        acc = first ? m.maps[a] : m.maps[a] * acc;
        first = false;
    }
    return acc;
}

inline bool relations_hold(const Algebra& q, const Representation& m)
{
    for (const auto& r : q.relations) {
        RatMatrix sum(m.dims[r.dst], m.dims[r.src]);
        for (const auto& t : r.terms)
            sum = sum + path_map(m, t.arrows).scaled(t.coeff);
        if (!sum.is_zero())
            return false;
    }
    return true;
}

/// Smallest L with (arrow ideal)^L * M = 0, or nullopt if the action is not
/// nilpotent. Iterates U <- sum of arrow images of U.
inline std::optional<int> nilpotency_length(const Algebra& q, const Representation& m)
{
    std::array<std::vector<std::vector<Rat>>, 2> span;
    for (int v = 0; v < 2; ++v)
        for (int i = 0; i < m.dims[v]; ++i) {
            std::vector<Rat> e(m.dims[v]);
            e[i] = 1;
            span[v].push_back(std::move(e));
        }
    auto dim_of = [](const std::array<std::vector<std::vector<Rat>>, 2>& s) {
        return s[0].size() + s[1].size();
    };
    int steps = 0;
    while (dim_of(span) > 0) {
        std::array<std::vector<std::vector<Rat>>, 2> next;
        for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
            const auto& a = q.arrows[ai];
            for (const auto& vec : span[a.src]) {
                std::vector<Rat> img(m.dims[a.dst]);
                for (int r = 0; r < m.dims[a.dst]; ++r)
                    for (int c = 0; c < m.dims[a.src]; ++c)
                        if (m.maps[ai](r, c) != 0)
                            img[r] += m.maps[ai](r, c) * vec[c];
                next[a.dst].push_back(std::move(img));
            }
        }
        // reduce each vertex span to an independent set
        for (int v = 0; v < 2; ++v) {
            if (next[v].empty())
                continue;
            RatMatrix rows(next[v].size(), m.dims[v]);
            for (std::size_t i = 0; i < next[v].size(); ++i)
                for (int j = 0; j < m.dims[v]; ++j)
                    rows(i, j) = next[v][i][j];
            auto pivots = rref(rows);
            std::vector<std::vector<Rat>> basis;
            for (std::size_t i = 0; i < pivots.size(); ++i) {
                std::vector<Rat> row(m.dims[v]);
                for (int j = 0; j < m.dims[v]; ++j)
                    row[j] = rows(i, j);
                basis.push_back(std::move(row));
            }
            next[v] = std::move(basis);
        }
        std::size_t before = dim_of(span);
        span = std::move(next);
        ++steps;
        if (dim_of(span) >= before)
            return std::nullopt; // stopped shrinking away from zero
    }
    return steps;
}

struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline void validate(const Algebra& q, const Representation& m)
{
    if (m.maps.size() != q.arrows.size())
        throw ValidationError("arrow map count mismatch");
    for (std::size_t i = 0; i < q.arrows.size(); ++i) {
        const auto& a = q.arrows[i];
        if (m.maps[i].rows() != static_cast<std::size_t>(m.dims[a.dst]) ||
            m.maps[i].cols() != static_cast<std::size_t>(m.dims[a.src]))
            throw ValidationError("arrow map shape mismatch for " + a.label);
    }
    if (!relations_hold(q, m))
        throw ValidationError("relations do not vanish");
    if (!nilpotency_length(q, m))
        throw ValidationError("arrow action is not nilpotent (infinite length)");
}

/// Point-type module: one-dimensional at both vertices, supported on one
/// chart. Distinct parameters give hom-orthogonal modules.
inline Representation skyscraper(const Algebra& q, const Rat& param)
{
    Representation r;
    r.dims = {1, 1};
    for (const auto& a : q.arrows) {
        RatMatrix m(1, 1);
        r.maps.push_back(m);
    }
    bool first_forward = true;
    for (std::size_t i = 0; i < q.arrows.size(); ++i) {
        if (q.arrows[i].src == 0 && q.arrows[i].dst == 1) {
            r.maps[i](0, 0) = first_forward ? Rat(1) : param;
            first_forward = false;
        }
    }
    validate(q, r);
    return r;
}

// ---------------------------------------------------------------------------
// Hom and the presentation complex

struct HomSpace {
    int dim = 0;
    // basis element = pair of vertex maps (f0, f1)
    std::vector<std::array<RatMatrix, 2>> basis;
};

inline HomSpace hom(const Algebra& q, const Representation& m, const Representation& n)
{
    const int cols = m.dims[0] * n.dims[0] + m.dims[1] * n.dims[1];
    auto col_of = [&](int v, int r, int c) {
        int base = v == 0 ? 0 : m.dims[0] * n.dims[0];
        return base + r * m.dims[v] + c; // f_v entry (r, c): row in N_v, col in M_v
    };
    std::size_t rows = 0;
    for (const auto& a : q.arrows)
        rows += static_cast<std::size_t>(n.dims[a.dst]) * m.dims[a.src];
    RatMatrix sys(rows, cols);
    std::size_t row = 0;
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
        const auto& a = q.arrows[ai];
        for (int i = 0; i < n.dims[a.dst]; ++i)
            for (int j = 0; j < m.dims[a.src]; ++j) {
                // (f_dst * M_a - N_a * f_src)(i, j) = 0
                for (int k = 0; k < m.dims[a.dst]; ++k)
                    if (m.maps[ai](k, j) != 0)
                        sys(row, col_of(a.dst, i, k)) += m.maps[ai](k, j);
                for (int k = 0; k < n.dims[a.src]; ++k)
                    if (n.maps[ai](i, k) != 0)
                        sys(row, col_of(a.src, k, j)) -= n.maps[ai](i, k);
                ++row;
            }
    }
    HomSpace h;
    if (cols == 0)
        return h;
    auto kb = kernel_basis(std::move(sys));
    h.dim = static_cast<int>(kb.size());
    for (const auto& vec : kb) {
        std::array<RatMatrix, 2> f = {RatMatrix(n.dims[0], m.dims[0]),
                                      RatMatrix(n.dims[1], m.dims[1])};
        for (int v = 0; v < 2; ++v)
            for (int r = 0; r < n.dims[v]; ++r)
                for (int c = 0; c < m.dims[v]; ++c)
                    f[v](r, c) = vec[col_of(v, r, c)];
        h.basis.push_back(std::move(f));
    }
    return h;
}

namespace detail {

/// Coordinate layout for a sum of Hom_k(M_{src(s)}, N_{dst(s)}) slots.
struct SlotLayout {
    std::vector<std::pair<int, int>> slot_vertices; // (src vertex, dst vertex)
    std::vector<int> offsets;
    int total = 0;

    void build(const Representation& m, const Representation& n)
    {
        offsets.clear();
        total = 0;
        for (auto [sv, dv] : slot_vertices) {
            offsets.push_back(total);
            total += m.dims[sv] * n.dims[dv];
        }
    }
    int index(const Representation& m, int slot, int row, int col) const
    {
        return offsets[slot] + row * m.dims[slot_vertices[slot].first] + col;
    }
};

struct HomComplex {
    SlotLayout l0, l1, l2, l3;
    RatMatrix d0; // Hom(P0,N) -> Hom(P1,N)
    RatMatrix d1; // Hom(P1,N) -> Hom(P2,N)
    RatMatrix d2; // Hom(P2,N) -> Hom(P3,N); empty unless the algebra has the tail
    bool has_tail = false;
};

inline HomComplex build_hom_complex(const Algebra& q, const Representation& m,
                                    const Representation& n)
{
    HomComplex hc;
    for (int v = 0; v < 2; ++v)
        hc.l0.slot_vertices.push_back({v, v});
    for (const auto& a : q.arrows)
        hc.l1.slot_vertices.push_back({a.src, a.dst});
    for (const auto& r : q.relations)
        hc.l2.slot_vertices.push_back({r.src, r.dst});
    hc.has_tail = !q.relation_for_arrow.empty();
    if (hc.has_tail)
        for (int v = 0; v < 2; ++v)
            hc.l3.slot_vertices.push_back({v, v});
    hc.l0.build(m, n);
    hc.l1.build(m, n);
    hc.l2.build(m, n);
    hc.l3.build(m, n);

    // d0: f |-> per arrow a: f_{dst} M_a - N_a f_{src}
    hc.d0 = RatMatrix(hc.l1.total, hc.l0.total);
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
        const auto& a = q.arrows[ai];
        for (int i = 0; i < n.dims[a.dst]; ++i)
            for (int j = 0; j < m.dims[a.src]; ++j) {
                int out = hc.l1.index(m, static_cast<int>(ai), i, j);
                for (int k = 0; k < m.dims[a.dst]; ++k)
                    if (m.maps[ai](k, j) != 0)
                        hc.d0(out, hc.l0.index(m, a.dst, i, k)) += m.maps[ai](k, j);
                for (int k = 0; k < n.dims[a.src]; ++k)
                    if (n.maps[ai](i, k) != 0)
                        hc.d0(out, hc.l0.index(m, a.src, k, j)) -= n.maps[ai](i, k);
            }
    }

    // d1: g |-> per relation r: sum over terms and positions j:
    //   N(suffix) g_{a_j} M(prefix)
    hc.d1 = RatMatrix(hc.l2.total, hc.l1.total);
    for (std::size_t ri = 0; ri < q.relations.size(); ++ri) {
        const auto& rel = q.relations[ri];
        for (const auto& term : rel.terms) {
            for (std::size_t j = 0; j < term.arrows.size(); ++j) {
                int aj = term.arrows[j];
                std::vector<int> prefix(term.arrows.begin(), term.arrows.begin() + j);
                std::vector<int> suffix(term.arrows.begin() + j + 1, term.arrows.end());
                RatMatrix pm = prefix.empty()
                                   ? RatMatrix::identity(m.dims[q.arrows[aj].src])
                                   : path_map(m, prefix);
                RatMatrix sm = suffix.empty()
                                   ? RatMatrix::identity(n.dims[q.arrows[aj].dst])
                                   : path_map(n, suffix);
                // contribution to h_r(i, l): sum_{p, c} sm(i, p) g_{aj}(p, c) pm(c, l)
                for (int i = 0; i < n.dims[rel.dst]; ++i)
                    for (int l = 0; l < m.dims[rel.src]; ++l) {
                        int out = hc.l2.index(m, static_cast<int>(ri), i, l);
                        for (int p = 0; p < n.dims[q.arrows[aj].dst]; ++p) {
                            if (sm(i, p) == 0)
                                continue;
                            for (int c = 0; c < m.dims[q.arrows[aj].src]; ++c) {
                                if (pm(c, l) == 0)
                                    continue;
                                hc.d1(out, hc.l1.index(m, aj, p, c)) +=
                                    term.coeff * sm(i, p) * pm(c, l);
                            }
                        }
                    }
            }
        }
    }

    // d2 (tail): h |-> per vertex v:
    //   sum_{a: dst(a)=v} N_a h_{r_a} - sum_{a: src(a)=v} h_{r_a} M_a
    if (hc.has_tail) {
        hc.d2 = RatMatrix(hc.l3.total, hc.l2.total);
        for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
            const auto& a = q.arrows[ai];
            int ri = q.relation_for_arrow[ai];
            const auto& rel = q.relations[ri]; // src = a.dst, dst = a.src
            if (rel.src != a.dst || rel.dst != a.src)
                throw std::logic_error("relation_for_arrow slot mismatch");
            // term into vertex slot v = a.dst: (N_a h)(i, l), i in N_{a.dst}, l in M_{a.dst}
            for (int i = 0; i < n.dims[a.dst]; ++i)
                for (int l = 0; l < m.dims[a.dst]; ++l) {
                    int out = hc.l3.index(m, a.dst, i, l);
                    for (int p = 0; p < n.dims[a.src]; ++p)
                        if (n.maps[ai](i, p) != 0)
                            hc.d2(out, hc.l2.index(m, ri, p, l)) += n.maps[ai](i, p);
                }
            // term into vertex slot v = a.src: -(h M_a)(i, l), i in N_{a.src}, l in M_{a.src}
            for (int i = 0; i < n.dims[a.src]; ++i)
                for (int l = 0; l < m.dims[a.src]; ++l) {
                    int out = hc.l3.index(m, a.src, i, l);
                    for (int c = 0; c < m.dims[a.dst]; ++c)
                        if (m.maps[ai](c, l) != 0)
                            hc.d2(out, hc.l2.index(m, ri, i, c)) -= m.maps[ai](c, l);
                }
        }
    }
    return hc;
}

} // namespace detail

/// Ext dimensions straight from the presentation complex. Index 0 is hom.
struct ExtProfile {
    int ext0 = 0;
    int ext1 = 0;
    int ext2 = 0;
    int ext3 = 0; // meaningful only when the algebra has the tail
};

inline ExtProfile ext_profile(const Algebra& q, const Representation& m,
                              const Representation& n)
{
    auto hc = detail::build_hom_complex(q, m, n);
    std::size_t r0 = rank(hc.d0);
    std::size_t r1 = rank(hc.d1);
    ExtProfile e;
    e.ext0 = static_cast<int>(hc.l0.total - r0);
    e.ext1 = static_cast<int>((hc.l1.total - r1) - r0);
    if (hc.has_tail) {
        std::size_t r2 = rank(hc.d2);
        e.ext2 = static_cast<int>((hc.l2.total - r2) - r1);
        e.ext3 = static_cast<int>(hc.l3.total - r2);
    } else {
        e.ext2 = static_cast<int>(hc.l2.total - r1);
    }
    return e;
}

/// ext(M, N, k) for 1 <= k <= cy_dim. Middle degrees come from the
/// presentation complex; the top degree is Serre-dual to hom by definition
/// and cross-checked against the complex in the test suite.
inline int ext(const Algebra& q, const Representation& m, const Representation& n, int k)
{
    if (k < 1 || k > q.cy_dim)
        throw std::invalid_argument("ext degree out of range");
    if (k == q.cy_dim)
        return hom(q, n, m).dim;
    if (k == 1)
        return ext_profile(q, m, n).ext1;
    return ext_profile(q, m, n).ext2; // k == 2, cy_dim == 3
}

inline int euler_form(const Algebra& q, const Representation& m, const Representation& n)
{
    int chi = hom(q, m, n).dim;
    for (int k = 1, sign = -1; k <= q.cy_dim; ++k, sign = -sign)
        chi += sign * ext(q, m, n, k);
    return chi;
}

inline std::array<std::array<int, 2>, 2> euler_matrix(const Algebra& q)
{
    std::array<std::array<int, 2>, 2> e{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            e[i][j] = euler_form(q, simple(q, i), simple(q, j));
    return e;
}

inline bool is_brick(const Algebra& q, const Representation& m)
{
    if (m.is_zero())
        throw std::invalid_argument("zero module is not a brick candidate");
    return hom(q, m, m).dim == 1;
}

inline bool is_semibrick(const Algebra& q, const std::vector<Representation>& ms)
{
    for (const auto& m : ms)
        if (!is_brick(q, m))
            return false;
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = 0; j < ms.size(); ++j)
            if (i != j && hom(q, ms[i], ms[j]).dim != 0)
                return false;
    return true;
}

/// Module extension of A (top) by B (sub) along an Ext^1 cocycle given as
/// per-arrow blocks Hom(A_{src}, B_{dst}).
inline Representation extension_module(const Algebra& q, const Representation& a,
                                       const Representation& b,
                                       const std::vector<RatMatrix>& cocycle)
{
    Representation e;
    e.dims = {a.dims[0] + b.dims[0], a.dims[1] + b.dims[1]};
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
        const auto& ar = q.arrows[ai];
        RatMatrix m(e.dims[ar.dst], e.dims[ar.src]);
        for (std::size_t r = 0; r < b.maps[ai].rows(); ++r)
            for (std::size_t c = 0; c < b.maps[ai].cols(); ++c)
                m(r, c) = b.maps[ai](r, c);
        for (std::size_t r = 0; r < a.maps[ai].rows(); ++r)
            for (std::size_t c = 0; c < a.maps[ai].cols(); ++c)
                m(r + b.dims[ar.dst], c + b.dims[ar.src]) = a.maps[ai](r, c);
        for (std::size_t r = 0; r < cocycle[ai].rows(); ++r)
            for (std::size_t c = 0; c < cocycle[ai].cols(); ++c)
                m(r, c + b.dims[ar.src]) = cocycle[ai](r, c);
        e.maps.push_back(std::move(m));
    }
    validate(q, e);
    return e;
}

/// A cocycle representing a nonsplit class in Ext^1(A, B), if one exists.
inline std::optional<std::vector<RatMatrix>> nonsplit_extension_cocycle(
    const Algebra& q, const Representation& a, const Representation& b)
{
    auto hc = detail::build_hom_complex(q, a, b);
    auto cycles = kernel_basis(hc.d1);
    if (cycles.empty())
        return std::nullopt;
    // find a cycle outside im(d0)
    std::size_t base_rank = rank(hc.d0);
    for (const auto& z : cycles) {
        RatMatrix aug(hc.l1.total, hc.l0.total + 1);
        for (int i = 0; i < hc.l1.total; ++i) {
            for (int j = 0; j < hc.l0.total; ++j)
                aug(i, j) = hc.d0(i, j);
            aug(i, hc.l0.total) = z[i];
        }
        if (rank(std::move(aug)) > base_rank) {
            std::vector<RatMatrix> blocks;
            for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
                const auto& ar = q.arrows[ai];
                RatMatrix blk(b.dims[ar.dst], a.dims[ar.src]);
                for (int r = 0; r < b.dims[ar.dst]; ++r)
                    for (int c = 0; c < a.dims[ar.src]; ++c)
                        blk(r, c) = z[hc.l1.index(a, static_cast<int>(ai), r, c)];
                blocks.push_back(std::move(blk));
            }
            return blocks;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Submodules, quotients, torsion parts

/// Per-vertex subspace of a representation, stored as independent column
/// bases, closed under the arrow action.
struct Subspace {
    std::array<RatMatrix, 2> basis; // dims[v] x rank_v

    std::array<int, 2> dims() const
    {
        return {static_cast<int>(basis[0].cols()), static_cast<int>(basis[1].cols())};
    }
    int total() const { return dims()[0] + dims()[1]; }
};

namespace detail {

/// Independent spanning subset of the given column vectors.
inline RatMatrix column_reduce(int ambient, const std::vector<std::vector<Rat>>& cols)
{
    if (cols.empty())
        return RatMatrix(ambient, 0);
    RatMatrix rows(cols.size(), ambient);
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (int j = 0; j < ambient; ++j)
            rows(i, j) = cols[i][j];
    auto pivots = rref(rows);
    RatMatrix out(ambient, pivots.size());
    for (std::size_t k = 0; k < pivots.size(); ++k)
        for (int j = 0; j < ambient; ++j)
            out(j, k) = rows(k, j);
    return out;
}

inline std::vector<Rat> matvec(const RatMatrix& m, const std::vector<Rat>& v)
{
    std::vector<Rat> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0)
                out[i] += m(i, j) * v[j];
    return out;
}

} // namespace detail

/// Closes the given per-vertex column spans under all arrow maps.
inline Subspace saturate(const Algebra& q, const Representation& m,
                         std::array<std::vector<std::vector<Rat>>, 2> gen)
{
    while (true) {
        Subspace s;
        for (int v = 0; v < 2; ++v)
            s.basis[v] = detail::column_reduce(m.dims[v], gen[v]);
        bool grew = false;
        for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
            const auto& a = q.arrows[ai];
            for (std::size_t k = 0; k < s.basis[a.src].cols(); ++k) {
                std::vector<Rat> col(m.dims[a.src]);
                for (int j = 0; j < m.dims[a.src]; ++j)
                    col[j] = s.basis[a.src](j, k);
                auto img = detail::matvec(m.maps[ai], col);
                // test membership in current span
                RatMatrix aug(m.dims[a.dst], s.basis[a.dst].cols() + 1);
                for (int r = 0; r < m.dims[a.dst]; ++r) {
                    for (std::size_t c = 0; c < s.basis[a.dst].cols(); ++c)
                        aug(r, c) = s.basis[a.dst](r, c);
                    aug(r, s.basis[a.dst].cols()) = img[r];
                }
                if (rank(aug) > s.basis[a.dst].cols()) {
                    gen[a.dst].push_back(img);
                    grew = true;
                }
            }
        }
        if (!grew)
            return s;
    }
}

/// Quotient representation M / U together with the projection maps.
struct QuotientData {
    Representation rep;
    std::array<RatMatrix, 2> projection;          // q_v: M_v -> (M/U)_v
    std::array<std::vector<int>, 2> complement;   // unit-lift coordinates
};

inline QuotientData quotient(const Algebra& q, const Representation& m, const Subspace& u)
{
    QuotientData out;
    auto& comp = out.complement;
    for (int v = 0; v < 2; ++v) {
        const RatMatrix& b = u.basis[v];
        int d = m.dims[v];
        int r = static_cast<int>(b.cols());
        // choose complement unit vectors at the non-pivot rows of b
        RatMatrix bt(r, d);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < d; ++j)
                bt(i, j) = b(j, i);
        auto pivots = rref(bt);
        std::vector<bool> is_piv(d, false);
        for (auto p : pivots)
            is_piv[p] = true;
        for (int j = 0; j < d; ++j)
            if (!is_piv[j])
                comp[v].push_back(j);
        out.rep.dims[v] = static_cast<int>(comp[v].size());

        // full basis F = [u basis | complement units]; projection takes the
        // complement coordinates of the F-expansion. Invert F.
        RatMatrix f(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < r; ++j)
                f(i, j) = b(i, j);
        for (std::size_t k = 0; k < comp[v].size(); ++k)
            f(comp[v][k], r + static_cast<int>(k)) = 1;
        RatMatrix aug(d, 2 * d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j)
                aug(i, j) = f(i, j);
            aug(i, d + i) = 1;
        }
        auto piv = rref(aug);
        if (static_cast<int>(piv.size()) != d)
            throw std::logic_error("subspace basis not independent");
        RatMatrix finv(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                finv(i, j) = aug(i, d + j);
        RatMatrix proj(out.rep.dims[v], d);
        for (int k = 0; k < out.rep.dims[v]; ++k)
            for (int j = 0; j < d; ++j)
                proj(k, j) = finv(r + k, j);
        out.projection[v] = std::move(proj);
    }
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
        const auto& a = q.arrows[ai];
        // induced map: proj_dst * M_a * section_src, section = unit columns at comp
        RatMatrix section(m.dims[a.src], out.rep.dims[a.src]);
        for (int k = 0; k < out.rep.dims[a.src]; ++k)
            section(comp[a.src][k], k) = 1;
        out.rep.maps.push_back(out.projection[a.dst] * (m.maps[ai] * section));
    }
    return out;
}

struct TorsionPart {
    Subspace submodule;
    Representation sub_rep;
    Representation quotient_rep;
    bool bound_ok = true;
};

/// Largest submodule of M filtered by quotients of the generator modules:
/// the trace iteration pulls hom-images from the generators into successive
/// quotients until nothing new arrives.
inline TorsionPart torsion_part(const Algebra& q, const Representation& m,
                                const std::vector<Representation>& generators,
                                int dim_bound = 64)
{
    for (const auto& g : generators)
        if (g.is_zero())
            throw std::invalid_argument("zero generator");
    TorsionPart out;
    out.bound_ok = m.total_dim() <= dim_bound;
    std::array<std::vector<std::vector<Rat>>, 2> acc;
    Subspace u = saturate(q, m, acc);
    while (true) {
        auto qd = quotient(q, m, u);
        bool grew = false;
        for (const auto& g : generators) {
            auto hs = hom(q, g, qd.rep);
            for (const auto& f : hs.basis) {
                for (int v = 0; v < 2; ++v) {
                    // image columns of f_v, pulled back through the projection:
                    // preimage of span{f_v columns} is U_v + span{lifts}; a lift of
                    // a quotient basis vector is its unit complement coordinate.
                    for (std::size_t c = 0; c < f[v].cols(); ++c) {
                        std::vector<Rat> img(qd.rep.dims[v]);
                        bool nonzero = false;
                        for (int r = 0; r < qd.rep.dims[v]; ++r) {
                            img[r] = f[v](r, c);
                            if (img[r] != 0)
                                nonzero = true;
                        }
                        if (!nonzero)
                            continue;
                        // projection restricted to the complement coordinates is the
                        // identity, so a lift is sum img[r] * unit(complement[r]).
                        std::vector<Rat> lift(m.dims[v]);
                        for (int r = 0; r < qd.rep.dims[v]; ++r)
                            if (img[r] != 0)
                                lift[qd.complement[v][r]] += img[r];
                        acc[v].push_back(std::move(lift));
                        grew = true;
                    }
                }
            }
        }
        if (!grew)
            break;
        // new span = U + lifted images, closed under arrows
        for (int v = 0; v < 2; ++v)
            for (std::size_t c = 0; c < u.basis[v].cols(); ++c) {
                std::vector<Rat> col(m.dims[v]);
                for (int j = 0; j < m.dims[v]; ++j)
                    col[j] = u.basis[v](j, c);
                acc[v].push_back(std::move(col));
            }
        Subspace next = saturate(q, m, acc);
        if (next.total() == u.total())
            break;
        u = std::move(next);
        acc = {};
    }
    out.submodule = u;
    auto qd = quotient(q, m, u);
    out.quotient_rep = qd.rep;
    // induced representation on the submodule
    out.sub_rep.dims = u.dims();
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
        const auto& a = q.arrows[ai];
        RatMatrix img = m.maps[ai] * u.basis[a.src];
        // coordinates of img columns in the u.basis[a.dst] span
        RatMatrix sys(m.dims[a.dst], u.basis[a.dst].cols() + img.cols());
        for (int r = 0; r < m.dims[a.dst]; ++r) {
            for (std::size_t c = 0; c < u.basis[a.dst].cols(); ++c)
                sys(r, c) = u.basis[a.dst](r, c);
            for (std::size_t c = 0; c < img.cols(); ++c)
                sys(r, u.basis[a.dst].cols() + c) = img(r, c);
        }
        rref(sys);
        RatMatrix coords(u.basis[a.dst].cols(), img.cols());
        for (std::size_t r = 0; r < u.basis[a.dst].cols(); ++r)
            for (std::size_t c = 0; c < img.cols(); ++c)
                coords(r, c) = sys(r, u.basis[a.dst].cols() + c);
        out.sub_rep.maps.push_back(std::move(coords));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Random module generation for property tests

/// Random module satisfying the relations: the doubled half of the arrows is
/// solved for linearly given random values on the first half, quadratic
/// leftovers and nilpotency are handled by rejection.
inline std::optional<Representation> random_module(const Algebra& q,
                                                   std::array<int, 2> dims,
                                                   std::mt19937& rng, int attempts = 60)
{
    std::uniform_int_distribution<int> entry(-2, 2);
    std::uniform_int_distribution<int> comb(-1, 1);
    std::vector<int> forward, backward;
    for (std::size_t i = 0; i < q.arrows.size(); ++i)
        (q.arrows[i].src == 0 ? forward : backward).push_back(static_cast<int>(i));

    for (int it = 0; it < attempts; ++it) {
        Representation m;
        m.dims = dims;
        m.maps.assign(q.arrows.size(), RatMatrix());
        for (std::size_t ai = 0; ai < q.arrows.size(); ++ai)
            m.maps[ai] = RatMatrix(dims[q.arrows[ai].dst], dims[q.arrows[ai].src]);
        for (int ai : forward)
            for (std::size_t r = 0; r < m.maps[ai].rows(); ++r)
                for (std::size_t c = 0; c < m.maps[ai].cols(); ++c)
                    m.maps[ai](r, c) = entry(rng);

        // relations that are linear in the backward maps, as a system
        std::vector<int> linear_rels;
        for (std::size_t ri = 0; ri < q.relations.size(); ++ri) {
            int max_back_per_term = 0;
            for (const auto& t : q.relations[ri].terms) {
                int cnt = 0;
                for (int a : t.arrows)
                    if (q.arrows[a].src == 1)
                        ++cnt;
                max_back_per_term = std::max(max_back_per_term, cnt);
            }
            if (max_back_per_term <= 1)
                linear_rels.push_back(static_cast<int>(ri));
        }
        int unknowns = 0;
        std::vector<int> offs(q.arrows.size(), -1);
        for (int ai : backward) {
            offs[ai] = unknowns;
            unknowns += dims[q.arrows[ai].dst] * dims[q.arrows[ai].src];
        }
        std::size_t rows = 0;
        for (int ri : linear_rels)
            rows += static_cast<std::size_t>(dims[q.relations[ri].dst]) *
                    dims[q.relations[ri].src];
        RatMatrix sys(rows, unknowns);
        std::size_t row0 = 0;
        for (int ri : linear_rels) {
            const auto& rel = q.relations[ri];
            for (const auto& term : rel.terms) {
                int slot = -1;
                for (std::size_t j = 0; j < term.arrows.size(); ++j)
                    if (q.arrows[term.arrows[j]].src == 1)
                        slot = static_cast<int>(j);
                if (slot < 0)
                    continue; // constant term: impossible for admissible relations
                int aj = term.arrows[slot];
                std::vector<int> prefix(term.arrows.begin(), term.arrows.begin() + slot);
                std::vector<int> suffix(term.arrows.begin() + slot + 1, term.arrows.end());
                RatMatrix pm = prefix.empty()
                                   ? RatMatrix::identity(dims[q.arrows[aj].src])
                                   : path_map(m, prefix);
                RatMatrix sm = suffix.empty()
                                   ? RatMatrix::identity(dims[q.arrows[aj].dst])
                                   : path_map(m, suffix);
                for (int i = 0; i < dims[rel.dst]; ++i)
                    for (int l = 0; l < dims[rel.src]; ++l)
                        for (int p = 0; p < dims[q.arrows[aj].dst]; ++p)
                            for (int c2 = 0; c2 < dims[q.arrows[aj].src]; ++c2)
                                if (sm(i, p) != 0 && pm(c2, l) != 0)
                                    sys(row0 + i * dims[rel.src] + l,
                                        offs[aj] + p * dims[q.arrows[aj].src] + c2) +=
                                        term.coeff * sm(i, p) * pm(c2, l);
            }
            row0 += static_cast<std::size_t>(dims[rel.dst]) * dims[rel.src];
        }
        auto kb = unknowns ? kernel_basis(std::move(sys))
                           : std::vector<std::vector<Rat>>{};
        std::vector<Rat> sol(unknowns);
        for (const auto& v : kb) {
            int c = comb(rng);
            if (c == 0)
                continue;
            for (int i = 0; i < unknowns; ++i)
                sol[i] += Rat(c) * v[i];
        }
        for (int ai : backward)
            for (std::size_t r = 0; r < m.maps[ai].rows(); ++r)
                for (std::size_t c = 0; c < m.maps[ai].cols(); ++c)
                    m.maps[ai](r, c) =
                        sol[offs[ai] + static_cast<int>(r) * m.maps[ai].cols() + c];

        if (!relations_hold(q, m))
            continue;
        if (!nilpotency_length(q, m))
            continue;
        return m;
    }
    // deterministic fallback: backward maps zero always satisfies everything
    Representation m;
    m.dims = dims;
    for (std::size_t ai = 0; ai < q.arrows.size(); ++ai) {
        RatMatrix mm(dims[q.arrows[ai].dst], dims[q.arrows[ai].src]);
        if (q.arrows[ai].src == 0)
            for (std::size_t r = 0; r < mm.rows(); ++r)
                for (std::size_t c = 0; c < mm.cols(); ++c)
                    mm(r, c) = entry(rng);
        m.maps.push_back(std::move(mm));
    }
    if (relations_hold(q, m) && nilpotency_length(q, m))
        return m;
    return std::nullopt;
}

} // namespace helix
