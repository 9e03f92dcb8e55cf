/// @file stability.hpp
/// Central charges on the rank-2 lattice, phase multisets of restricted
/// roots, and the phase-gap search.
///
/// Phases follow Z(v) = m * exp(i*pi*phi) with m > 0 and phi normalised to
/// (0, 2]. A charge is degenerate when it kills the class of a nonzero
/// module, i.e. some nonzero vector of the positive quadrant.

#pragma once

#include "helix/restriction.hpp"

#include <cmath>
#include <variant>

namespace helix {

struct CentralCharge {
    GaussRat z0; // image of the class (1,0)
    GaussRat z1; // image of the class (0,1)

    GaussRat eval(const IntPair& v) const
    {
        Rat a(v[0]), b(v[1]);
        return {a * z0.re + b * z1.re, a * z0.im + b * z1.im};
    }
};

enum class ChargeClass { Degenerate, Discrete, DenseLine };

inline const char* to_string(ChargeClass c)
{
    switch (c) {
    case ChargeClass::Degenerate: return "degenerate";
    case ChargeClass::Discrete: return "discrete";
    case ChargeClass::DenseLine: return "dense_line";
    }
    return "?";
}

struct ChargeClassification {
    ChargeClass tag;
    std::optional<IntPair> killed_vector; // set iff degenerate
};

/// Degenerate: a nonzero nonnegative vector maps to 0 (in particular z0 = 0
/// or z1 = 0). Discrete: z0, z1 R-linearly independent, image a rank-2
/// lattice. DenseLine: R-dependent with no nonnegative vector killed, image
/// inside a single real line.
inline ChargeClassification classify_charge(const CentralCharge& z)
{
    if (z.z0.is_zero())
        return {ChargeClass::Degenerate, IntPair{1, 0}};
    if (z.z1.is_zero())
        return {ChargeClass::Degenerate, IntPair{0, 1}};
    Rat det = z.z0.re * z.z1.im - z.z0.im * z.z1.re;
    if (det != 0)
        return {ChargeClass::Discrete, std::nullopt};
    // R-dependent: the ratio z0/z1 is a real, hence rational, number.
    GaussRat q = z.z0 * z.z1.conj();
    Rat ratio = q.re / z.z1.norm2();
    if (ratio < 0) {
        Rat neg = -ratio;
        Int p = boost::multiprecision::numerator(neg);
        Int s = boost::multiprecision::denominator(neg);
        return {ChargeClass::Degenerate, IntPair{s, p}}; // s*z0 + p*z1 = 0
    }
    return {ChargeClass::DenseLine, std::nullopt};
}

/// Phase in (0, 2] of a nonzero complex value.
inline double phase_of(double re, double im)
{
    double phi = std::atan2(im, re) / M_PI; // (-1, 1]
    if (phi <= 0.0)
        phi += 2.0;
    return phi;
}

inline double phase_of(const GaussRat& v)
{
    return phase_of(to_double(v.re), to_double(v.im));
}

inline double circle_distance(double a, double b)
{
    double d = std::fmod(std::fabs(a - b), 2.0);
    return std::min(d, 2.0 - d);
}

struct PhaseSet {
    std::vector<std::pair<IntPair, double>> entries; // (root image, phase), sorted by phase
    std::array<double, 2> accumulation;              // phi(+delta-bar), phi(-delta-bar)
};

inline PhaseSet phases(const CentralCharge& z, const NodeSelection& sel, const Int& bound)
{
    auto cls = classify_charge(z);
    if (cls.tag == ChargeClass::Degenerate)
        throw std::invalid_argument(
            "degenerate central charge kills class (" + to_string((*cls.killed_vector)[0]) +
            "," + to_string((*cls.killed_vector)[1]) + ")");
    PhaseSet out;
    for (const auto& p : positive_restricted_images(sel, bound).images)
        out.entries.push_back({p, phase_of(z.eval(p))});
    std::sort(out.entries.begin(), out.entries.end(),
              [](const auto& a, const auto& b) {
                  return a.second != b.second ? a.second < b.second : a.first < b.first;
              });
    IntPair db = delta_bar(sel);
    out.accumulation[0] = phase_of(z.eval(db));
    out.accumulation[1] = phase_of(z.eval(IntPair{-db[0], -db[1]}));
    return out;
}

struct PhaseGap {
    double phi = 0.0;
    double epsilon = 0.0;
    Int bound_used = 0;
};
struct IntegerSpaced {};
struct GapUnstable {
    std::string reason;
};
using GapResult = std::variant<PhaseGap, IntegerSpaced, GapUnstable>;

namespace detail {

/// Sign-closed phase multiset: phases of images and their negatives.
inline std::vector<double> signed_phases(const CentralCharge& z, const NodeSelection& sel,
                                         const Int& bound)
{
    std::vector<double> ph;
    for (const auto& p : positive_restricted_images(sel, bound).images) {
        ph.push_back(phase_of(z.eval(p)));
        ph.push_back(phase_of(z.eval(IntPair{-p[0], -p[1]})));
    }
    std::sort(ph.begin(), ph.end());
    return ph;
}

} // namespace detail

/// Widest phase interval free of restricted-root phases that survives the
/// doubling check. Closed eta-balls around the accumulation phases of
/// +-delta-bar are cut out first, so no returned arc leans on an
/// accumulation point; candidate arcs are then tried widest first against
/// the phases at the doubled bound, and only if every candidate is invaded
/// does the search report instability.
inline GapResult find_phase_gap(const CentralCharge& z, const NodeSelection& sel,
                                const Int& bound, double eta = 1e-6)
{
    auto cls = classify_charge(z);
    if (cls.tag == ChargeClass::Degenerate)
        throw std::invalid_argument(
            "degenerate central charge kills class (" + to_string((*cls.killed_vector)[0]) +
            "," + to_string((*cls.killed_vector)[1]) + ")");
    if (cls.tag == ChargeClass::DenseLine)
        return IntegerSpaced{};

    IntPair db = delta_bar(sel);
    std::array<double, 2> acc = {phase_of(z.eval(db)),
                                 phase_of(z.eval(IntPair{-db[0], -db[1]}))};

    // Marker points: phases, plus the eta-ball edges of each accumulation
    // phase. Arcs starting at an accumulation marker are discarded.
    std::vector<std::pair<double, bool>> marks; // (position, blocked-on-the-right)
    for (double p : detail::signed_phases(z, sel, bound))
        marks.push_back({p, false});
    for (double a : acc) {
        double lo = a - eta, hi = a + eta;
        if (lo <= 0) lo += 2.0;
        if (hi > 2.0) hi -= 2.0;
        marks.push_back({a, true});
        marks.push_back({lo, true}); // arc ending at lo is fine; starting here is not
        marks.push_back({hi, false});
    }
    std::sort(marks.begin(), marks.end());

    std::vector<PhaseGap> candidates;
    const std::size_t n = marks.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (marks[i].second)
            continue; // the eta-ball [acc-eta, acc+eta] sits to the right
        double start = marks[i].first;
        double end = marks[(i + 1) % n].first + (i + 1 == n ? 2.0 : 0.0);
        if (end - start > 0)
            candidates.push_back({start, end - start, bound});
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const PhaseGap& a, const PhaseGap& b) { return a.epsilon > b.epsilon; });
    if (candidates.empty())
        return GapUnstable{"no positive arc after accumulation cuts"};

    auto doubled = detail::signed_phases(z, sel, bound * 2);
    for (const auto& cand : candidates) {
        bool invaded = false;
        for (double p : doubled) {
            for (double shift : {0.0, 2.0, -2.0}) {
                double q = p + shift;
                if (q > cand.phi && q < cand.phi + cand.epsilon)
                    invaded = true;
            }
            if (invaded)
                break;
        }
        if (!invaded)
            return cand;
    }
    return GapUnstable{"every arc invaded at the doubled bound"};
}

/// Exact collinearity test for Gaussian-rational charges: Z(u) and Z(v)
/// span the same real line iff the 2x2 determinant vanishes.
inline bool collinear_images(const CentralCharge& z, const IntPair& u, const IntPair& v)
{
    GaussRat a = z.eval(u), b = z.eval(v);
    return a.re * b.im - a.im * b.re == 0;
}

/// Parses "a+bi" with rational a, b; accepts "i", "-i", "3/2i", "-1+2i",
/// "2-i", plain "a".
inline GaussRat parse_gaussian(const std::string& s)
{
    if (s.empty())
        throw std::invalid_argument("empty complex literal");
    // Split at the last +/- that is not a leading sign and not inside "/".
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] == '+' || s[i] == '-')
            split = i;
    auto parse_part = [](std::string part, bool imaginary) -> Rat {
        if (imaginary) {
            if (part.empty() || part.back() != 'i')
                throw std::invalid_argument("imaginary part must end in i");
            part.pop_back();
            if (part.empty() || part == "+") part = "1";
            if (part == "-") part = "-1";
        }
        return parse_rational(part);
    };
    bool has_i = s.back() == 'i';
    if (split == std::string::npos)
        return has_i ? GaussRat{0, parse_part(s, true)} : GaussRat{parse_part(s, false), 0};
    if (!has_i)
        throw std::invalid_argument("two-part complex literal must end in i: " + s);
    std::string head = s.substr(0, split);
    std::string tail = s.substr(split); // keeps the sign
    return {parse_part(head, false), parse_part(tail, true)};
}

/// Parses "z0,z1".
inline CentralCharge parse_charge(const std::string& s)
{
    auto comma = s.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("charge literal must be \"z0,z1\"");
    return {parse_gaussian(s.substr(0, comma)), parse_gaussian(s.substr(comma + 1))};
}

} // namespace helix
