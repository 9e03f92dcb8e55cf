// Walkthrough of the library surface on the length-two example: restrict
// the affine D4 system to the (extended, centre) pair, classify a charge,
// report its phase gap, and run the two-point profile through the spread
// toolkit. Build with the demos option and run without arguments.

#include "helix/spread.hpp"
#include "helix/stability.hpp"

#include <iostream>

int main()
{
    using namespace helix;

    NodeSelection sel(build_cartan("D4t"), 4);
    std::cout << "node length: " << node_length(sel.parent, sel.node) << "\n";
    auto db = delta_bar(sel);
    std::cout << "delta-bar: (" << db[0] << "," << db[1] << ")\n";

    auto classes = root_classes_mod_delta(sel, 30);
    std::cout << "translation classes (" << (classes.stable ? "stable" : "unstable")
              << "):";
    for (const auto& r : classes.representatives)
        std::cout << " (" << r[0] << "," << r[1] << ")";
    std::cout << "\n";

    auto z = parse_charge("-2+i,1+2i");
    std::cout << "charge tag: " << to_string(classify_charge(z).tag) << "\n";
    auto gap = find_phase_gap(z, sel, 60);
    if (std::holds_alternative<PhaseGap>(gap)) {
        auto g = std::get<PhaseGap>(gap);
        std::cout << "phase gap: (" << g.phi << ", " << g.phi + g.epsilon << ")\n";
    }

    const auto& q = preset("preproj_A1");
    CohomologyProfile p;
    p.summands.push_back(ProfileSummand::make(0, skyscraper(q, 0), "p"));
    p.summands.push_back(ProfileSummand::make(3, skyscraper(q, 1), "q"));
    auto walk = guided_walk(q, p, config_preproj_a1());
    std::cout << "walk: spread " << p.spread() << " -> " << walk.profile.spread()
              << " in " << walk.steps << " steps, word " << format_word(walk.word)
              << "\n";
    return 0;
}
