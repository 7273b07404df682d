#pragma once

#include <optional>
#include <string>
#include <vector>

#include "berger/polynomial.hpp"
#include "berger/rational.hpp"

// Exact certificate that a Riemannian submersion from the Berger sphere to a
// surface is biharmonic only if it is harmonic: case exclusions, the
// identity chain of the adapted-frame analysis, and the degree-7 eliminant
// in sigma with its admissibility filter.

namespace berger::exact {

struct CaseExclusionReport {
    Rational epsilon;
    Rational R;  // 4 - 4 eps^2
    // Case I: a3^3 = 0, a2^3 = +-1. Forces sigma = -eps, f3 = -2 eps,
    // kappa1 = kappa2 = 0, and then (a2^3)^2 R = 0, i.e. R = 0.
    Rational case1_forced_value;  // the value forced to vanish (= R)
    bool case1_excluded = false;
    // Case II: a3^3 != 0, +-1. Forces (a3^3)^2 = -4 eps^2 / R.
    Rational case2_t;  // the forced (a3^3)^2
    bool case2_excluded = false;
    std::string case2_reason;  // "negative" or "greater_than_one"
    // kappa1 = 0 subcase inside Case II forces a2^3 = 0, a contradiction.
    bool kappa1_zero_subcase_excluded = false;
    bool all_excluded = false;
};

// eps must be nonzero with eps^2 != 1.
CaseExclusionReport case_exclusions(const Rational& eps);

struct ChainStep {
    std::string id;
    std::string description;
    bool derived_verified = false;  // the self-derived identity checks out
    bool printed_matches = false;   // the printed equation agrees with the derivation
    std::string status;             // "verified" or "mismatch"
    std::string residual;           // printed minus derived, when they disagree
    std::string note;
};

struct IdentityReport {
    bool symbolic = true;
    std::optional<Rational> epsilon;
    std::vector<ChainStep> steps;
    bool all_derived_verified = false;
    std::vector<std::string> mismatched_ids;
};

// Verifies the identity chain; eps == nullopt runs symbolically over Q(eps).
IdentityReport identity_chain(const std::optional<Rational>& eps);

struct RootRecord {
    double sigma_re = 0.0;
    double sigma_im = 0.0;
    bool real = false;
    double t = 0.0;          // induced (a3^3)^2, when computable
    bool t_consistent = false;  // the two t-formulas agree
    double kappa1_sq = 0.0;
    std::string excluded_by;
};

struct EliminationResult {
    bool symbolic = true;
    std::optional<Rational> epsilon;
    int degree = 0;
    Rational leading_coefficient;
    bool sigma7_coefficient_constant = false;  // independent of eps
    std::vector<std::string> coefficients;     // c0..c7 (eps-polynomials or rationals)
    std::string content_removed;               // factor divided out of the resultant
    bool routes_agree = false;                 // resultant route == identity-chain route
    std::vector<RootRecord> roots;             // numeric mode only
    std::vector<double> admissible_roots;      // expected empty
    std::string conclusion;                    // "biharmonic_iff_harmonic"
};

// Eliminates t between the two quadratic relations via the 4x4 Sylvester
// resultant, removes the content factor R^2 (sigma - eps)^5, and filters
// roots for admissibility. eps == nullopt keeps eps symbolic (no root
// filtering); rational eps must satisfy eps != 0, eps^2 != 1.
EliminationResult eliminate_and_bound(const std::optional<Rational>& eps);

}  // namespace berger::exact
