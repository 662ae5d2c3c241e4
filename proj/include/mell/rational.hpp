#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace mell {

// Exact scalar type used throughout the library. All cohomology dimensions
// are integer-valued rank differences, so no floating point is allowed on
// the main code paths.
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Parses "p" or "p/q" (optionally signed). Throws std::invalid_argument on
// malformed input or a zero denominator.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("bad rational literal: '" + text + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

// Small random nonzero rational, numerator in [-9,9]\{0}, denominator in [1,9].
// Used by the parameter-independence property tests.
inline Rational random_nonzero_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(1, 9);
    std::uniform_int_distribution<int> den(1, 9);
    std::uniform_int_distribution<int> coin(0, 1);
    int n = num(rng);
    if (coin(rng)) n = -n;
    Rational q(n, den(rng));
    q.canonicalize();  // two-argument mpq_class does not reduce
    return q;
}

}  // namespace mell
