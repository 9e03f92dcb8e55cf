/// @file numeric.hpp
/// Exact scalar types shared by all helix modules: arbitrary-precision
/// integers, rationals, and Gaussian rationals (exact complex numbers).

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace helix {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using IntPair = std::array<Int, 2>;

inline std::string to_string(const Int& x) { return x.str(); }

inline std::string to_string(const Rat& x)
{
    Int n = boost::multiprecision::numerator(x);
    Int d = boost::multiprecision::denominator(x);
    if (d == 1)
        return n.str();
    return n.str() + "/" + d.str();
}

inline double to_double(const Rat& x) { return x.convert_to<double>(); }
inline double to_double(const Int& x) { return x.convert_to<double>(); }

/// Parses "p" or "p/q" with optional sign. Throws std::invalid_argument.
inline Rat parse_rational(std::string s)
{
    if (!s.empty() && s.front() == '+')
        s.erase(s.begin());
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

/// Exact element of Q(i).
struct GaussRat {
    Rat re;
    Rat im;

    bool is_zero() const { return re == 0 && im == 0; }

    GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
    GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
    GaussRat operator*(const GaussRat& o) const
    {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussRat operator*(const Rat& c) const { return {re * c, im * c}; }
    bool operator==(const GaussRat& o) const = default;

    GaussRat conj() const { return {re, -im}; }
    Rat norm2() const { return re * re + im * im; }
};

inline std::string to_string(const GaussRat& z)
{
    return to_string(z.re) + (z.im < 0 ? "-" : "+") +
           to_string(z.im < 0 ? Rat(-z.im) : z.im) + "i";
}

inline Int ivec_height(const IntVec& v)
{
    Int h = 0;
    for (const auto& x : v)
        h += x;
    return h;
}

inline Int int_gcd(Int a, Int b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace helix
