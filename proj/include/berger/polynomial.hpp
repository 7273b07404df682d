#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "berger/rational.hpp"

// Sparse multivariate polynomials over exact rationals for the submersion
// certificate. The variable set covers the unknowns of the adapted-frame
// analysis plus the directional-derivative symbols the chain eliminates.

namespace berger::exact {

enum class Var : int {
    sigma = 0,
    eps,
    t,  // shorthand for (a3)^2 in the elimination step
    kappa1,
    f2,
    a2,  // E3-component of e2
    a3,  // E3-component of e3
    R,   // 4 - 4 eps^2
    kappa2,
    d2_sigma,
    d3_sigma,
    d2_kappa1,
    d3_kappa1,
    d2_f2,
};
inline constexpr int kVarCount = 14;

const char* var_name(Var v);

class RationalPoly {
  public:
    using Exponents = std::array<std::uint8_t, kVarCount>;
    using TermMap = std::map<Exponents, Rational>;

    RationalPoly() = default;

    static RationalPoly constant(const Rational& c);
    static RationalPoly constant(long c) { return constant(Rational(c)); }
    static RationalPoly var(Var v, unsigned power = 1);

    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    void add_term(const Exponents& e, const Rational& c);

    RationalPoly operator-() const;
    RationalPoly& operator+=(const RationalPoly& o);
    RationalPoly& operator-=(const RationalPoly& o);
    friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
    friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
    friend bool operator==(const RationalPoly& a, const RationalPoly& b) {
        return a.terms_ == b.terms_;
    }

    RationalPoly scaled(const Rational& c) const;

    int degree(Var v) const;
    // Coefficient of v^k, with the v-exponent stripped.
    RationalPoly coeff(Var v, int k) const;
    RationalPoly substitute(Var v, const RationalPoly& repl) const;
    RationalPoly substitute(Var v, const Rational& value) const {
        return substitute(v, constant(value));
    }

    // True when the polynomial is a constant (or zero).
    bool is_constant() const;
    Rational constant_value() const;  // requires is_constant()

    std::string str() const;

  private:
    TermMap terms_;
};

RationalPoly pow(const RationalPoly& p, unsigned n);

// Exact long division in the variable v; the divisor's leading v-coefficient
// must be a nonzero rational constant. Throws if the remainder is nonzero.
RationalPoly divide_exact(const RationalPoly& num, const RationalPoly& div, Var v);

// Derivation defined by images of the variables, extended by the Leibniz rule.
using DerivationRules = std::array<RationalPoly, kVarCount>;
RationalPoly derive(const RationalPoly& p, const DerivationRules& rules);

// Canonical reduction modulo the adapted-frame relation set
//   kappa1 a3 = (sigma - eps) a2,   f2 a2 = (sigma + eps) a3,
//   a2^2 + a3^2 = 1,                R = 4 - 4 eps^2,   t = a3^2,
// valid on the locus a2 a3 != 0 (the reduction multiplies by powers of a2,
// a3, which are nonzero there). A polynomial is a consequence of the
// relations iff its reduction is zero.
RationalPoly normalize_mod_relations(const RationalPoly& p);
bool is_zero_mod_relations(const RationalPoly& p);

}  // namespace berger::exact
