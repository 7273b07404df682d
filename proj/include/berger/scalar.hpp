#pragma once

#include <cmath>
#include <type_traits>

#include "berger/rational.hpp"

namespace berger {

// The frame tables are templated on the scalar: double for the numeric
// paths, exact::Rational for the certificate. Zero tests are exact for
// rationals and tolerance-based for floating point.
template <typename S>
struct scalar_traits {
    static bool near_zero(const S& x, double /*tol*/) { return x == S(0); }
    static S from_int(long n) { return S(n); }
};

template <>
struct scalar_traits<double> {
    static bool near_zero(double x, double tol) { return std::abs(x) <= tol; }
    static double from_int(long n) { return static_cast<double>(n); }
};

}  // namespace berger
