#ifndef LNE_NUMERIC_HPP
#define LNE_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

// Exact arithmetic used throughout the library. Divisor coefficients grow
// additively under iterated blowups, so all integer quantities that feed
// intersection numbers are arbitrary precision, and every metric quantity
// (edge lengths, distances, inner rates) is an exact rational. Floating
// point never appears in the computational core.

namespace lne {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline Int numerator(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denominator(const Rat& r) { return boost::multiprecision::denominator(r); }

// Renders "p/q" in lowest terms, or just "n" when the value is integral.
// Reports are compared textually, so this is the single formatting point.
std::string format_rational(const Rat& r);

// Parses the formats produced by format_rational. Throws std::invalid_argument
// on anything else.
Rat parse_rational(std::string_view text);

// FNV-1a over bytes; stable across platforms, used for report provenance.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace lne

#endif
