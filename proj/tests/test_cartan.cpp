#include "helix/cartan.hpp"

#include <catch2/catch.hpp>

#include <random>

using namespace helix;

namespace {

// Independent oracle: every nonnegative vector in the height ball, kept if
// it satisfies the norm condition (real) or is a multiple of delta.
std::vector<IntVec> brute_force_positive_roots(const CartanMatrix& c, long bound)
{
    const std::size_t m = c.size;
    std::vector<long> cur(m, 0);
    std::vector<IntVec> out;
    IntVec dv = delta(c).coords;
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
        if (i == m) {
            long total = 0;
            for (auto x : cur)
                total += x;
            if (total == 0)
                return;
            long q = 0;
            for (std::size_t r = 0; r < m; ++r) {
                long cv = 0;
                for (std::size_t s = 0; s < m; ++s)
                    cv += c.entries[r][s].convert_to<long>() * cur[s];
                q += cur[r] * cv;
            }
            bool real = q == 2;
            bool imaginary = false;
            long k = cur[0] / dv[0].convert_to<long>();
            if (k > 0) {
                imaginary = true;
                for (std::size_t r = 0; r < m; ++r)
                    if (cur[r] != k * dv[r].convert_to<long>())
                        imaginary = false;
            }
            if (real || imaginary) {
                IntVec v(m);
                for (std::size_t r = 0; r < m; ++r)
                    v[r] = cur[r];
                out.push_back(std::move(v));
            }
            return;
        }
        for (long x = 0; x <= left; ++x) {
            cur[i] = x;
            rec(i + 1, left - x);
        }
        cur[i] = 0;
    };
    rec(0, bound);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("affine type parsing")
{
    REQUIRE(parse_affine_type("A1t").has_value());
    REQUIRE(parse_affine_type("D4t").has_value());
    REQUIRE(parse_affine_type("E8t").has_value());
    REQUIRE_FALSE(parse_affine_type("E9t").has_value());
    REQUIRE_FALSE(parse_affine_type("D3t").has_value());
    REQUIRE_FALSE(parse_affine_type("A0t").has_value());
    REQUIRE_FALSE(parse_affine_type("B2t").has_value());
    REQUIRE_THROWS_AS(build_cartan("E9t"), std::invalid_argument);
}

TEST_CASE("A1t matrix is the double-bond case")
{
    auto c = build_cartan("A1t");
    REQUIRE(c.size == 2);
    REQUIRE(c.at(0, 0) == 2);
    REQUIRE(c.at(0, 1) == -2);
    REQUIRE(c.at(1, 0) == -2);
    REQUIRE(c.at(1, 1) == 2);
}

TEST_CASE("D4t centre row")
{
    auto c = build_cartan("D4t");
    REQUIRE(c.size == 5);
    for (int j = 0; j < 4; ++j)
        REQUIRE(c.at(4, j) == -1);
    REQUIRE(c.at(4, 4) == 2);
    // symmetry and corank checks for every bundled type
    for (auto tag : {"A1t", "A2t", "A5t", "D4t", "D6t", "E6t", "E7t", "E8t"}) {
        auto m = build_cartan(tag);
        for (std::size_t i = 0; i < m.size; ++i)
            for (std::size_t j = 0; j < m.size; ++j)
                REQUIRE(m.at(i, j) == m.at(j, i));
        REQUIRE_NOTHROW(delta(m));
    }
}

TEST_CASE("delta vectors")
{
    auto a1 = delta(build_cartan("A1t"));
    REQUIRE(a1.coords == IntVec{1, 1});
    auto d4 = delta(build_cartan("D4t"));
    REQUIRE(d4.coords == IntVec{1, 1, 1, 1, 2});
    auto e8 = delta(build_cartan("E8t"));
    Int mx = 0;
    for (const auto& x : e8.coords)
        mx = std::max(mx, x);
    REQUIRE(mx == 6);
    // delta is in the kernel
    for (auto tag : {"A3t", "D5t", "E6t", "E7t", "E8t"}) {
        auto c = build_cartan(tag);
        auto cd = cartan_apply(c, delta(c).coords);
        for (const auto& x : cd)
            REQUIRE(x == 0);
    }
}

TEST_CASE("delta requires corank one")
{
    // finite-type A2 block is nonsingular
    CartanMatrix c;
    c.label = {AffineFamily::A, 2};
    c.size = 2;
    c.entries = {{2, -1}, {-1, 2}};
    REQUIRE_THROWS_AS(delta(c), std::invalid_argument);
}

TEST_CASE("simple reflections")
{
    auto c = build_cartan("A1t");
    REQUIRE(reflect(c, 0, {1, 0}) == IntVec{-1, 0});
    REQUIRE(reflect(c, 1, {1, 0}) == IntVec{1, 2});
    REQUIRE_THROWS_AS(reflect(c, 2, {1, 0}), std::out_of_range);
    REQUIRE_THROWS_AS(reflect(c, 0, {1, 0, 0}), std::invalid_argument);

    std::mt19937 rng(7);
    std::uniform_int_distribution<long> d(-5, 5);
    for (auto tag : {"A1t", "D4t", "E6t"}) {
        auto m = build_cartan(tag);
        IntVec dv = delta(m).coords;
        for (std::size_t i = 0; i < m.size; ++i) {
            REQUIRE(reflect(m, i, dv) == dv); // delta is fixed
            IntVec v(m.size);
            for (auto& x : v)
                x = d(rng);
            REQUIRE(reflect(m, i, reflect(m, i, v)) == v); // involution
        }
    }
}

TEST_CASE("A1t root enumeration matches the closed form")
{
    auto c = build_cartan("A1t");
    auto roots = enumerate_roots(c, 5);
    std::set<IntVec> got;
    for (const auto& r : roots)
        got.insert(r.coords);
    std::set<IntVec> want;
    for (long a = 0; a <= 5; ++a)
        for (long b = 0; b <= 5; ++b) {
            if (a + b == 0 || a + b > 5)
                continue;
            if (std::labs(a - b) <= 1)
                want.insert(IntVec{a, b});
        }
    REQUIRE(got == want);

    auto small = enumerate_roots(c, 1);
    REQUIRE(small.size() == 2);
    REQUIRE(small[0].coords == IntVec{0, 1});
    REQUIRE(small[1].coords == IntVec{1, 0});
    REQUIRE_THROWS_AS(enumerate_roots(c, 0), std::invalid_argument);
}

TEST_CASE("root predicates and brute-force agreement")
{
    for (auto [tag, bound] : std::vector<std::pair<const char*, long>>{
             {"A1t", 14}, {"A3t", 10}, {"D4t", 12}}) {
        auto c = build_cartan(tag);
        auto roots = enumerate_roots(c, bound);
        std::vector<IntVec> got;
        for (const auto& r : roots) {
            got.push_back(r.coords);
            if (r.imaginary) {
                auto cv = cartan_apply(c, r.coords);
                for (const auto& x : cv)
                    REQUIRE(x == 0);
            } else {
                REQUIRE(norm_form(c, r.coords) == 2);
            }
        }
        REQUIRE(got == brute_force_positive_roots(c, bound));
    }
}

TEST_CASE("reflections preserve the enumerated set inside the ball")
{
    auto c = build_cartan("D4t");
    const long bound = 10;
    std::set<IntVec> all;
    for (const auto& r : enumerate_roots(c, bound))
        all.insert(r.coords);
    for (const auto& v : all)
        for (std::size_t i = 0; i < c.size; ++i) {
            IntVec w = reflect(c, i, v);
            bool positive = true;
            Int h = 0;
            for (const auto& x : w) {
                if (x < 0)
                    positive = false;
                h += x;
            }
            if (positive && h >= 1 && h <= bound)
                REQUIRE(all.count(w) == 1);
        }
}

TEST_CASE("A1t root counts per height")
{
    auto c = build_cartan("A1t");
    std::map<long, std::pair<int, int>> counts; // height -> (real, imaginary)
    for (const auto& r : enumerate_roots(c, 11)) {
        long h = ivec_height(r.coords).convert_to<long>();
        if (r.imaginary)
            counts[h].second++;
        else
            counts[h].first++;
    }
    for (long h = 1; h <= 11; ++h) {
        if (h % 2 == 1) {
            REQUIRE(counts[h].first == 2);
            REQUIRE(counts[h].second == 0);
        } else {
            REQUIRE(counts[h].first == 0);
            REQUIRE(counts[h].second == 1);
        }
    }
}
