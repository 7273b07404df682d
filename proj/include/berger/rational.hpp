#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace berger::exact {

using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

// Parses "p/q" or a plain integer into an exact rational. Decimal strings are
// deliberately rejected: decimals belong to the numeric paths.
inline std::optional<Rational> parse_rational(const std::string& s) {
    if (s.empty()) return std::nullopt;
    const auto slash = s.find('/');
    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    try {
        if (slash == std::string::npos) {
            if (!is_int(s)) return std::nullopt;
            return Rational(boost::multiprecision::cpp_int(s));
        }
        const std::string num = s.substr(0, slash);
        const std::string den = s.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) return std::nullopt;
        boost::multiprecision::cpp_int d(den);
        if (d == 0) return std::nullopt;
        return Rational(boost::multiprecision::cpp_int(num), d);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline std::string to_string(const Rational& q) { return q.str(); }

}  // namespace berger::exact
