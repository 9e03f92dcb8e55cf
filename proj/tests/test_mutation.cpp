#include "helix/mutation.hpp"
#include "helix/restriction.hpp"

#include <catch2/catch.hpp>

#include <random>

using namespace helix;

namespace {

FunctorWord random_word(std::mt19937& rng, long period, int max_len)
{
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> kind(0, 5);
    std::uniform_int_distribution<long> idx(-2 * period, 2 * period);
    std::uniform_int_distribution<long> small(-3, 3);
    FunctorWord w;
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
        switch (kind(rng)) {
        case 0: w.push_back({Letter::Phi, idx(rng)}); break;
        case 1: w.push_back({Letter::PhiInv, idx(rng)}); break;
        case 2: w.push_back({Letter::Shift, small(rng)}); break;
        case 3: w.push_back({Letter::VdB, 0}); break;
        case 4: w.push_back({Letter::VdBInv, 0}); break;
        default: w.push_back({Letter::Beta, small(rng)}); break;
        }
    }
    return w;
}

bool is_unipotent(const KMatrix& m)
{
    KMatrix d = m;
    d.a[0][0] -= 1;
    d.a[1][1] -= 1;
    return (d * d) == KMatrix{{{{Int(0), Int(0)}, {Int(0), Int(0)}}}};
}

} // namespace

TEST_CASE("word parsing")
{
    auto w = parse_word("Phi0.VdB");
    REQUIRE(w == FunctorWord{{Letter::Phi, 0}, {Letter::VdB, 0}});
    auto v = parse_word("[1].Phi2'.B1");
    REQUIRE(v == FunctorWord{{Letter::Shift, 1}, {Letter::PhiInv, 2}, {Letter::Beta, 1}});
    auto u = parse_word("B-1.VdB'.[-2].Phi-1");
    REQUIRE(u == FunctorWord{{Letter::Beta, -1},
                             {Letter::VdBInv, 0},
                             {Letter::Shift, -2},
                             {Letter::Phi, -1}});
    REQUIRE(parse_word("").empty());

    try {
        parse_word("Phi");
        FAIL("expected parse error");
    } catch (const WordError& e) {
        REQUIRE(e.offset == 0);
    }
    try {
        parse_word("Phi0.Xyz");
        FAIL("expected parse error");
    } catch (const WordError& e) {
        REQUIRE(e.offset == 5);
    }
    REQUIRE_THROWS_AS(parse_word("[1"), WordError);
}

TEST_CASE("word formatting round trip")
{
    std::mt19937 rng(3);
    for (int t = 0; t < 50; ++t) {
        auto w = random_word(rng, 3, 12);
        REQUIRE(parse_word(format_word(w) == "1" ? "" : format_word(w)) == w);
    }
}

TEST_CASE("reduction basics")
{
    REQUIRE(reduce_word(parse_word("Phi0.Phi0'"), 3).empty());
    REQUIRE(reduce_word(parse_word("Phi0'.Phi0"), 3).empty());
    REQUIRE(reduce_word(parse_word("VdB.VdB'"), 1).empty());
    // conjugation by the class-group translation re-indexes by full periods
    auto conj = parse_word("B-1.Phi5.B1");
    REQUIRE(reduce_word(conj, 5) == FunctorWord{{Letter::Phi, 0}});
    // shifts move outwards and coalesce
    auto sh = parse_word("[1].Phi2.[-1]");
    REQUIRE(reduce_word(sh, 5) == FunctorWord{{Letter::Phi, 2}});
    auto sh2 = parse_word("[1].Phi2.[2]");
    REQUIRE(reduce_word(sh2, 5) ==
            FunctorWord{{Letter::Shift, 3}, {Letter::Phi, 2}});
    // cancellation cascades through newly adjacent pairs
    auto casc = parse_word("Phi1.Phi0.Phi0'.Phi1'");
    REQUIRE(reduce_word(casc, 4).empty());
    REQUIRE_THROWS_AS(reduce_word({}, 0), std::invalid_argument);
}

TEST_CASE("reduction is idempotent and preserves the K-action")
{
    std::mt19937 rng(17);
    MutationConfig cfg = config_preproj_a1();
    for (int t = 0; t < 400; ++t) {
        auto w = random_word(rng, cfg.period, 20);
        auto r = reduce_word(w, cfg.period);
        REQUIRE(reduce_word(r, cfg.period) == r);
        REQUIRE(k_action(w, cfg) == k_action(r, cfg));
    }
}

TEST_CASE("generator matrices")
{
    MutationConfig cfg = config_preproj_a1();
    REQUIRE(k_action({}, cfg) == KMatrix::identity());
    REQUIRE(k_action(parse_word("Phi0"), cfg) == kmat(-1, 2, 0, 1));
    REQUIRE(k_action(parse_word("Phi1"), cfg) == kmat(1, 0, 2, -1));
    REQUIRE(k_action(parse_word("[1]"), cfg) == KMatrix::identity().scaled(-1));
    REQUIRE(k_action(parse_word("[2]"), cfg) == KMatrix::identity());
    REQUIRE(k_action(parse_word("VdB"), cfg) == KMatrix::identity());
    for (long i : {0L, 1L}) {
        auto r = cfg.generator(i);
        REQUIRE(r.det() == -1);
        REQUIRE(r * r == KMatrix::identity());
        REQUIRE(r.apply({1, 1}) == IntPair{1, 1}); // delta-bar fixed
    }
}

TEST_CASE("full-period composite")
{
    MutationConfig cfg = config_preproj_a1();
    auto m = k_action(parse_word("Phi1.Phi0"), cfg);
    REQUIRE(m == kmat(-1, 2, -2, 3));
    REQUIRE(m.det() == 1);
    REQUIRE(m.apply({1, 1}) == IntPair{1, 1});
    REQUIRE(m.apply({1, 0}) == IntPair{-1, -2});
    REQUIRE(is_unipotent(m));
    // (M - I) lands in Z * delta-bar on the basis
    for (auto v : {IntPair{1, 0}, IntPair{0, 1}}) {
        auto w = m.apply(v);
        IntPair d{w[0] - v[0], w[1] - v[1]};
        REQUIRE(d[0] == d[1]);
    }
}

TEST_CASE("generators preserve the restricted root set")
{
    MutationConfig cfg = config_preproj_a1();
    NodeSelection sel(build_cartan("A1t"), 1);
    const long bound = 20, safe = 10;
    auto all = restricted_roots(sel, bound);
    std::set<IntPair> root_set(all.begin(), all.end());
    for (long i : {0L, 1L}) {
        auto r = cfg.generator(i);
        for (const auto& v : restricted_roots(sel, safe))
            REQUIRE(root_set.count(r.apply(v)) == 1);
    }
}

TEST_CASE("monodromy words")
{
    REQUIRE(monodromy(Pole::North, 1) ==
            FunctorWord{{Letter::VdBInv, 0}, {Letter::Phi, 0}, {Letter::VdB, 0}});
    REQUIRE(monodromy(Pole::North, 2) ==
            FunctorWord{{Letter::VdBInv, 0}, {Letter::Phi, 1}, {Letter::Phi, 0},
                        {Letter::VdB, 0}});
    MutationConfig cfg = config_preproj_a1();
    auto north = k_action(monodromy(Pole::North, cfg.period), cfg);
    REQUIRE(is_unipotent(north));
    auto south = k_action(monodromy(Pole::South, cfg.period), cfg);
    REQUIRE(is_unipotent(south));
    REQUIRE(north * south == KMatrix::identity()); // opposite traversals
    REQUIRE_THROWS_AS(monodromy(Pole::North, 0), std::invalid_argument);
    REQUIRE(monodromy_equatorial(1, 2) ==
            FunctorWord{{Letter::Phi, 1}, {Letter::Phi, 1}});
    REQUIRE_THROWS_AS(monodromy_equatorial(2, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(monodromy_equatorial(-1, 2), std::invalid_argument);
}

TEST_CASE("heart chain labels")
{
    auto upper = heart_chain(HeartLabel::Upper, 2, 4);
    REQUIRE(upper.size() == 2);
    REQUIRE(upper[0].word == FunctorWord{{Letter::Shift, 1}, {Letter::Phi, 0}});
    REQUIRE(upper[0].algebra_index == 1);
    REQUIRE(upper[1].word ==
            FunctorWord{{Letter::Shift, 1}, {Letter::Phi, 0}, {Letter::Phi, 1}});
    REQUIRE(upper[1].algebra_index == 2);

    auto lower = heart_chain(HeartLabel::Lower, 2, 4);
    REQUIRE(lower[0].word == FunctorWord{{Letter::Shift, 1}, {Letter::Phi, 3}});
    REQUIRE(lower[0].algebra_index == 3);
    REQUIRE(lower[1].word ==
            FunctorWord{{Letter::Shift, 1}, {Letter::Phi, 3}, {Letter::Phi, 2}});

    // period one: only Phi0 with repeated indices
    auto triv = heart_chain(HeartLabel::Upper, 3, 1);
    for (const auto& h : triv)
        for (const auto& l : h.word)
            if (l.kind == Letter::Phi)
                REQUIRE(l.arg == 0);
    REQUIRE_THROWS_AS(heart_chain(HeartLabel::Upper, 0, 2), std::invalid_argument);
}

TEST_CASE("chain words send simple classes to restricted roots")
{
    MutationConfig cfg = config_preproj_a1();
    NodeSelection sel(build_cartan("A1t"), 1);
    auto roots = restricted_roots(sel, 40);
    std::set<IntPair> root_set(roots.begin(), roots.end());
    for (auto side : {HeartLabel::Upper, HeartLabel::Lower})
        for (const auto& h : heart_chain(side, 6, cfg.period)) {
            auto m = k_action(h.word, cfg);
            for (auto v : {IntPair{1, 0}, IntPair{0, 1}})
                REQUIRE(root_set.count(m.apply(v)) == 1);
        }
}

TEST_CASE("exchange graph is tetravalent and involutive")
{
    ChamberNode origin{0, 0};
    auto nb = tilting_neighbors(origin);
    std::set<ChamberNode> distinct(nb.begin(), nb.end());
    REQUIRE(distinct.size() == 4);
    // each move undoes: the graph is undirected
    for (const auto& n : nb) {
        auto back = tilting_neighbors(n);
        REQUIRE(std::count(back.begin(), back.end(), origin) >= 1);
    }
    // explicit round trip left then right
    ChamberNode right{1, 0};
    REQUIRE(tilting_neighbors(origin)[1] == right);
    REQUIRE(tilting_neighbors(right)[0] == origin);

    auto g = exchange_graph(5);
    REQUIRE_FALSE(g.nodes.empty());
    // connectivity by BFS over the edge list
    std::map<ChamberNode, std::vector<ChamberNode>> adj;
    for (const auto& [a, b] : g.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::set<ChamberNode> seen{origin};
    std::vector<ChamberNode> frontier{origin};
    while (!frontier.empty()) {
        std::vector<ChamberNode> next;
        for (const auto& n : frontier)
            for (const auto& m : adj[n])
                if (seen.insert(m).second)
                    next.push_back(m);
        frontier = std::move(next);
    }
    REQUIRE(seen.size() == g.nodes.size());
    // interior nodes have full degree four
    for (const auto& n : g.nodes)
        if (g.depth.at(n) < 5)
            REQUIRE(adj[n].size() == 4);
}
