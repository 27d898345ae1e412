// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "errors.hpp"

#include <gmpxx.h>

#include <charconv>
#include <cstdio>
#include <string>

namespace jetg {

/// Exact coefficient field used everywhere outside the flows module.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p/q", "p", or a plain integer token. Canonicalizes.
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            Rational q(text);
            q.canonicalize();
            return q;
        }
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        if (num.empty() || den.empty()) throw ParseError("bad rational: '" + text + "'");
        Rational q(num + "/" + den);
        if (q.get_den() == 0) throw ParseError("bad rational (zero denominator): '" + text + "'");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational: '" + text + "'");
    }
}

/// Canonical "p/q" form, q >= 1, gcd(p,q) = 1.
inline std::string format_rational(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double to_double(const Rational& q) { return q.get_d(); }

/// Shortest decimal that round-trips through a double.
inline std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

} // namespace jetg
