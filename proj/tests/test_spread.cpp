#include "helix/spread.hpp"

#include <catch2/catch.hpp>

using namespace helix;

namespace {

ProfileSummand s_at(const Algebra& q, int degree, int vertex)
{
    return ProfileSummand::make(degree, simple(q, vertex));
}

ProfileSummand sky_at(const Algebra& q, int degree, int param, const std::string& marker)
{
    return ProfileSummand::make(degree, skyscraper(q, param), marker);
}

} // namespace

TEST_CASE("normalize shifts degrees to zero")
{
    const auto& q = preset("preproj_A1");
    CohomologyProfile p;
    p.summands.push_back(s_at(q, 3, 0));
    p.summands.push_back(s_at(q, 1, 1));
    auto [n, spread] = normalize(p);
    REQUIRE(spread == 2);
    REQUIRE(n.summands[0].degree == 2);
    REQUIRE(n.summands[1].degree == 0);

    CohomologyProfile single;
    single.summands.push_back(s_at(q, 0, 0));
    REQUIRE(normalize(single).second == 0);

    REQUIRE_THROWS_AS(normalize(CohomologyProfile{}), std::invalid_argument);
    CohomologyProfile zero;
    zero.summands.push_back(ProfileSummand::make(0, zero_rep(q)));
    REQUIRE_THROWS_AS(normalize(zero), std::invalid_argument);
}

TEST_CASE("self-extension check on adjacent-degree simples")
{
    const auto& co = preset("conifold_nccr");
    CohomologyProfile p;
    p.summands.push_back(s_at(co, 0, 0));
    p.summands.push_back(s_at(co, 1, 1));
    auto rep = check_selfext_nonneg(co, p);
    REQUIRE(rep.selfext_ok); // only hom(s0, s1) = 0 is in range
    REQUIRE(rep.spread == 1);
    REQUIRE(rep.top_class == IntPair{1, 0});
    REQUIRE(rep.bottom_class == IntPair{0, 1});
}

TEST_CASE("self-extension check catches the repeated simple")
{
    const auto& co = preset("conifold_nccr");
    CohomologyProfile p;
    p.summands.push_back(s_at(co, 0, 0));
    p.summands.push_back(s_at(co, 2, 0));
    auto rep = check_selfext_nonneg(co, p);
    REQUIRE_FALSE(rep.selfext_ok);
    REQUIRE(rep.witness.has_value());
    REQUIRE(rep.witness->shift == -2); // hom(s0, s0) at Hom(x, x[-2])
    REQUIRE(rep.witness->ext_degree == 0);
    REQUIRE(rep.witness->dim == 1);
}

TEST_CASE("single summands always pass")
{
    const auto& co = preset("conifold_nccr");
    CohomologyProfile p;
    p.summands.push_back(s_at(co, 0, 1));
    REQUIRE(check_selfext_nonneg(co, p).selfext_ok);
}

TEST_CASE("distinct simples at gap three fail through the extension group")
{
    // the two-simple profile over either preset cannot satisfy vanishing
    // negative self-extensions: ext^1 between distinct simples is two-
    // dimensional, and it enters at shift gap >= 2
    for (auto name : {"preproj_A1", "conifold_nccr"}) {
        const auto& q = preset(name);
        CohomologyProfile p;
        p.summands.push_back(s_at(q, 0, 1));
        p.summands.push_back(s_at(q, 3, 0));
        auto rep = check_selfext_nonneg(q, p);
        REQUIRE_FALSE(rep.selfext_ok);
        REQUIRE(rep.witness.has_value());
        REQUIRE(rep.witness->ext_degree == 1);
        REQUIRE(rep.witness->dim == 2);
    }
}

TEST_CASE("point-type profiles at any gap pass")
{
    for (auto name : {"preproj_A1", "conifold_nccr"}) {
        const auto& q = preset(name);
        CohomologyProfile p;
        p.summands.push_back(sky_at(q, 0, 0, "p"));
        p.summands.push_back(sky_at(q, 3, 1, "q"));
        auto rep = check_selfext_nonneg(q, p);
        REQUIRE(rep.selfext_ok);
        auto bb = hom_vanishing_bang_bang(q, p);
        REQUIRE(bb.has_value());
        REQUIRE(*bb);
    }
}

TEST_CASE("corner identity: Hom(x, x[-n]) equals hom(top, bottom)")
{
    const auto& q = preset("preproj_A1");
    CohomologyProfile p;
    p.summands.push_back(sky_at(q, 0, 0, "p"));
    p.summands.push_back(s_at(q, 1, 0));
    p.summands.push_back(sky_at(q, 3, 1, "q"));
    int n = p.spread();
    auto tops = p.at_degree(0);
    auto bots = p.at_degree(n);
    Representation tsum = tops[0]->module, bsum = bots[0]->module;
    for (std::size_t i = 1; i < tops.size(); ++i)
        tsum = direct_sum(q, tsum, tops[i]->module);
    for (std::size_t i = 1; i < bots.size(); ++i)
        bsum = direct_sum(q, bsum, bots[i]->module);
    REQUIRE(total_hom_at_shift(q, p, -n) == hom(q, tsum, bsum).dim);
}

TEST_CASE("bang-bang is not applicable below spread two")
{
    const auto& q = preset("preproj_A1");
    CohomologyProfile p;
    p.summands.push_back(s_at(q, 0, 0));
    REQUIRE_FALSE(hom_vanishing_bang_bang(q, p).has_value());
}

TEST_CASE("improvement interval")
{
    const auto& q = preset("preproj_A1");
    CohomologyProfile p;
    p.summands.push_back(s_at(q, 0, 1));
    p.summands.push_back(s_at(q, 1, 0));
    auto iv = improvement_interval(q, p);
    REQUIRE(iv.nonempty); // hom(s1, s0) = 0
    REQUIRE(iv.torsion_generators.size() == 1);
    REQUIRE(iv.torsionfree_generators.size() == 1);

    CohomologyProfile flat;
    flat.summands.push_back(s_at(q, 0, 0));
    REQUIRE_THROWS_AS(improvement_interval(q, flat), std::invalid_argument);

    // hom obstruction: s0 on both ends
    CohomologyProfile bad;
    bad.summands.push_back(s_at(q, 0, 0));
    bad.summands.push_back(s_at(q, 1, 0));
    REQUIRE_FALSE(improvement_interval(q, bad).nonempty);
}

TEST_CASE("regrade keeps torsion and lowers the free part")
{
    const auto& q = preset("preproj_A1");
    CohomologyProfile p;
    p.summands.push_back(s_at(q, 0, 1));
    p.summands.push_back(s_at(q, 2, 0));

    // torsion class containing everything: nothing moves
    auto all = tilt_regrade(q, p, {simple(q, 0), simple(q, 1)});
    REQUIRE(all.min_degree() == 0);
    REQUIRE(all.max_degree() == 2);

    // empty torsion class: everything moves down one
    auto none = tilt_regrade(q, p, {});
    REQUIRE(none.min_degree() == -1);
    REQUIRE(none.max_degree() == 1);

    // minimal class over the top: spread drops by one
    auto improved = tilt_regrade(q, p, {simple(q, 1)});
    REQUIRE(improved.min_degree() == 0);
    REQUIRE(improved.max_degree() == 1);
}

TEST_CASE("regrade splits a mixed summand")
{
    const auto& q = preset("preproj_A1");
    auto cocycle = nonsplit_extension_cocycle(q, simple(q, 1), simple(q, 0));
    REQUIRE(cocycle.has_value());
    auto e = extension_module(q, simple(q, 1), simple(q, 0), *cocycle);
    CohomologyProfile p;
    p.summands.push_back(ProfileSummand::make(1, e));
    auto out = tilt_regrade(q, p, {simple(q, 0)});
    REQUIRE(out.summands.size() == 2);
    // socle stays at degree one, top moves to degree zero
    std::map<int, IntPair> by_degree;
    for (const auto& s : out.summands)
        by_degree[s.degree] = s.module.dim_class();
    REQUIRE(by_degree.at(1) == IntPair{1, 0});
    REQUIRE(by_degree.at(0) == IntPair{0, 1});
}

TEST_CASE("guided walk flattens a point-type profile")
{
    const auto& q = preset("preproj_A1");
    MutationConfig cfg = config_preproj_a1();
    CohomologyProfile p;
    p.summands.push_back(sky_at(q, 0, 0, "p"));
    p.summands.push_back(sky_at(q, 3, 1, "q"));
    IntPair before = p.total_class();
    auto res = guided_walk(q, p, cfg);
    REQUIRE(res.status == WalkStatus::Done);
    REQUIRE(res.profile.spread() <= 1);
    REQUIRE(res.steps == 2);
    // the point tilts are not chain mutations: no letters, identity action
    REQUIRE(res.word.empty());
    REQUIRE(k_action(res.word, cfg).apply(before) == res.profile.total_class());
}

TEST_CASE("guided walk leaves flat profiles alone")
{
    const auto& q = preset("preproj_A1");
    MutationConfig cfg = config_preproj_a1();
    for (int d : {0, 1}) {
        CohomologyProfile p;
        p.summands.push_back(s_at(q, 0, 1));
        if (d == 1)
            p.summands.push_back(s_at(q, 1, 0));
        auto res = guided_walk(q, p, cfg);
        REQUIRE(res.status == WalkStatus::Done);
        REQUIRE(res.steps == 0);
        REQUIRE(res.word.empty());
    }
}

TEST_CASE("guided walk refuses profiles with negative self-extensions")
{
    const auto& q = preset("preproj_A1");
    MutationConfig cfg = config_preproj_a1();
    CohomologyProfile p;
    p.summands.push_back(s_at(q, 0, 1));
    p.summands.push_back(s_at(q, 3, 0));
    auto res = guided_walk(q, p, cfg);
    REQUIRE(res.status == WalkStatus::SelfextFailed);
}

TEST_CASE("walk class bookkeeping follows the emitted word")
{
    // three points stacked across degrees: several steps, classes tracked
    const auto& q = preset("conifold_nccr");
    MutationConfig cfg{1, 2};
    CohomologyProfile p;
    p.summands.push_back(sky_at(q, 0, 0, "p"));
    p.summands.push_back(sky_at(q, 2, 1, "q"));
    p.summands.push_back(sky_at(q, 4, 2, "r"));
    IntPair before = p.total_class();
    auto res = guided_walk(q, p, cfg);
    REQUIRE(res.status == WalkStatus::Done);
    REQUIRE(res.profile.spread() <= 1);
    REQUIRE(k_action(res.word, cfg).apply(before) == res.profile.total_class());
}

TEST_CASE("walk gathers markers into the torsion side as it descends")
{
    const auto& q = preset("preproj_A1");
    MutationConfig cfg = config_preproj_a1();
    CohomologyProfile p;
    p.summands.push_back(sky_at(q, 0, 0, "p"));
    p.summands.push_back(sky_at(q, 1, 1, "q"));
    p.summands.push_back(sky_at(q, 4, 2, "r"));
    IntPair before = p.total_class();
    auto res = guided_walk(q, p, cfg);
    REQUIRE(res.status == WalkStatus::Done);
    REQUIRE(res.profile.spread() <= 1);
    REQUIRE(res.steps == 3); // 4 -> 3 -> 2 -> 1 while q joins the top at step one
    REQUIRE(k_action(res.word, cfg).apply(before) == res.profile.total_class());
}

TEST_CASE("walk respects the step budget")
{
    const auto& q = preset("preproj_A1");
    MutationConfig cfg = config_preproj_a1();
    CohomologyProfile p;
    p.summands.push_back(sky_at(q, 0, 0, "p"));
    p.summands.push_back(sky_at(q, 3, 1, "q"));
    auto res = guided_walk(q, p, cfg, 1);
    REQUIRE(res.status == WalkStatus::MaxSteps);
    REQUIRE(res.steps == 1);
    REQUIRE(res.profile.spread() == 2); // partial progress is reported
}

TEST_CASE("collapse detection")
{
    const auto& q = preset("preproj_A1");

    CohomologyProfile good;
    good.summands.push_back(sky_at(q, 0, 0, "p"));
    good.summands.push_back(sky_at(q, 1, 1, "q"));
    auto ok = collapse_detect(q, good);
    REQUIRE(ok.valid);
    REQUIRE(ok.groups.size() == 2);

    CohomologyProfile bad;
    bad.summands.push_back(ProfileSummand::make(0, simple(q, 0), "p"));
    bad.summands.push_back(ProfileSummand::make(2, simple(q, 0), "p"));
    auto viol = collapse_detect(q, bad);
    REQUIRE_FALSE(viol.valid);
    REQUIRE(viol.violation.has_value());
    REQUIRE(viol.violation->marker == "p");
    REQUIRE(viol.violation->top_degree == 0);
    REQUIRE(viol.violation->bottom_degree == 2);
    REQUIRE(viol.violation->hom_dim == 1); // factors through the shared point

    CohomologyProfile single;
    single.summands.push_back(sky_at(q, 2, 0, "p"));
    REQUIRE(collapse_detect(q, single).valid);

    CohomologyProfile unmarked;
    unmarked.summands.push_back(s_at(q, 0, 0));
    REQUIRE_THROWS_AS(collapse_detect(q, unmarked), std::invalid_argument);
}
