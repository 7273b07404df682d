#include "berger/polynomial.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace berger::exact {

const char* var_name(Var v) {
    static const char* names[kVarCount] = {"sigma",   "eps",      "t",        "kappa1",  "f2",
                                           "a2",      "a3",       "R",        "kappa2",  "e2_sigma",
                                           "e3_sigma", "e2_kappa1", "e3_kappa1", "e2_f2"};
    return names[static_cast<int>(v)];
}

RationalPoly RationalPoly::constant(const Rational& c) {
    RationalPoly p;
    if (c != 0) p.terms_.emplace(Exponents{}, c);
    return p;
}

RationalPoly RationalPoly::var(Var v, unsigned power) {
    RationalPoly p;
    if (power == 0) return constant(1);
    Exponents e{};
    e[static_cast<int>(v)] = static_cast<std::uint8_t>(power);
    p.terms_.emplace(e, Rational(1));
    return p;
}

void RationalPoly::add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

RationalPoly RationalPoly::operator-() const {
    RationalPoly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    RationalPoly out;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            RationalPoly::Exponents e;
            for (int i = 0; i < kVarCount; ++i) {
                const unsigned s = static_cast<unsigned>(ea[i]) + static_cast<unsigned>(eb[i]);
                if (s > 255u) throw std::overflow_error("RationalPoly: exponent overflow");
                e[i] = static_cast<std::uint8_t>(s);
            }
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

RationalPoly RationalPoly::scaled(const Rational& c) const {
    RationalPoly out;
    if (c == 0) return out;
    for (const auto& [e, coef] : terms_) out.terms_.emplace(e, coef * c);
    return out;
}

int RationalPoly::degree(Var v) const {
    int d = 0;
    const int idx = static_cast<int>(v);
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[idx]));
    return d;
}

RationalPoly RationalPoly::coeff(Var v, int k) const {
    RationalPoly out;
    const int idx = static_cast<int>(v);
    for (const auto& [e, c] : terms_) {
        if (static_cast<int>(e[idx]) != k) continue;
        Exponents stripped = e;
        stripped[idx] = 0;
        out.add_term(stripped, c);
    }
    return out;
}

RationalPoly RationalPoly::substitute(Var v, const RationalPoly& repl) const {
    const int idx = static_cast<int>(v);
    const int maxdeg = degree(v);
    std::vector<RationalPoly> powers(static_cast<std::size_t>(maxdeg) + 1);
    powers[0] = constant(1);
    for (int i = 1; i <= maxdeg; ++i) powers[static_cast<std::size_t>(i)] = powers[static_cast<std::size_t>(i - 1)] * repl;
    RationalPoly out;
    for (const auto& [e, c] : terms_) {
        Exponents stripped = e;
        const int k = stripped[idx];
        stripped[idx] = 0;
        RationalPoly mono;
        mono.terms_.emplace(stripped, c);
        out += mono * powers[static_cast<std::size_t>(k)];
    }
    return out;
}

bool RationalPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    return terms_.begin()->first == Exponents{};
}

Rational RationalPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw std::logic_error("RationalPoly: not a constant");
    return terms_.begin()->second;
}

std::string RationalPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool printed_coeff = false;
        if (mag != 1 || e == Exponents{}) {
            os << mag.str();
            printed_coeff = true;
        }
        for (int i = 0; i < kVarCount; ++i) {
            if (e[i] == 0) continue;
            if (printed_coeff) os << "*";
            printed_coeff = true;
            os << var_name(static_cast<Var>(i));
            if (e[i] > 1) os << "^" << static_cast<int>(e[i]);
        }
    }
    return os.str();
}

RationalPoly pow(const RationalPoly& p, unsigned n) {
    RationalPoly out = RationalPoly::constant(1);
    for (unsigned i = 0; i < n; ++i) out = out * p;
    return out;
}

RationalPoly divide_exact(const RationalPoly& num, const RationalPoly& div, Var v) {
    const int dd = div.degree(v);
    const RationalPoly lc = div.coeff(v, dd);
    if (!lc.is_constant() || lc.is_zero()) {
        throw std::invalid_argument("divide_exact: divisor leading coefficient must be a nonzero constant");
    }
    const Rational inv_lc = Rational(1) / lc.constant_value();
    RationalPoly work = num;
    RationalPoly quotient;
    while (!work.is_zero()) {
        const int nd = work.degree(v);
        if (nd < dd) break;
        const RationalPoly qc = work.coeff(v, nd).scaled(inv_lc);
        const RationalPoly qterm = qc * RationalPoly::var(v, static_cast<unsigned>(nd - dd));
        quotient += qterm;
        work -= qterm * div;
        if (work.degree(v) >= nd && !work.is_zero()) {
            throw std::logic_error("divide_exact: division failed to reduce degree");
        }
    }
    if (!work.is_zero()) throw std::logic_error("divide_exact: nonzero remainder");
    return quotient;
}

RationalPoly derive(const RationalPoly& p, const DerivationRules& rules) {
    RationalPoly out;
    for (const auto& [e, c] : p.terms()) {
        for (int i = 0; i < kVarCount; ++i) {
            if (e[i] == 0 || rules[i].is_zero()) continue;
            RationalPoly::Exponents reduced = e;
            reduced[i] = static_cast<std::uint8_t>(reduced[i] - 1);
            RationalPoly mono;
            mono.add_term(reduced, c * Rational(static_cast<int>(e[i])));
            out += mono * rules[i];
        }
    }
    return out;
}

RationalPoly normalize_mod_relations(const RationalPoly& p) {
    using P = RationalPoly;
    const P S = P::var(Var::sigma);
    const P E = P::var(Var::eps);
    const P A2 = P::var(Var::a2);
    const P A3 = P::var(Var::a3);

    P work = p.substitute(Var::t, A3 * A3)
                 .substitute(Var::R, P::constant(4) - P::constant(4) * E * E);

    // kappa1^k -> ((sigma - eps) a2 / a3)^k, cleared by a3^max.
    const int mk = work.degree(Var::kappa1);
    if (mk > 0) {
        const P ratio = (S - E) * A2;
        std::vector<P> rp(static_cast<std::size_t>(mk) + 1), a3p(static_cast<std::size_t>(mk) + 1);
        rp[0] = P::constant(1);
        a3p[0] = P::constant(1);
        for (int i = 1; i <= mk; ++i) {
            rp[static_cast<std::size_t>(i)] = rp[static_cast<std::size_t>(i - 1)] * ratio;
            a3p[static_cast<std::size_t>(i)] = a3p[static_cast<std::size_t>(i - 1)] * A3;
        }
        P cleared;
        for (const auto& [e, c] : work.terms()) {
            const int k = e[static_cast<int>(Var::kappa1)];
            P::Exponents stripped = e;
            stripped[static_cast<int>(Var::kappa1)] = 0;
            P mono;
            mono.add_term(stripped, c);
            cleared += mono * rp[static_cast<std::size_t>(k)] * a3p[static_cast<std::size_t>(mk - k)];
        }
        work = cleared;
    }

    // f2^k -> ((sigma + eps) a3 / a2)^k, cleared by a2^max.
    const int mf = work.degree(Var::f2);
    if (mf > 0) {
        const P ratio = (S + E) * A3;
        std::vector<P> rp(static_cast<std::size_t>(mf) + 1), a2p(static_cast<std::size_t>(mf) + 1);
        rp[0] = P::constant(1);
        a2p[0] = P::constant(1);
        for (int i = 1; i <= mf; ++i) {
            rp[static_cast<std::size_t>(i)] = rp[static_cast<std::size_t>(i - 1)] * ratio;
            a2p[static_cast<std::size_t>(i)] = a2p[static_cast<std::size_t>(i - 1)] * A2;
        }
        P cleared;
        for (const auto& [e, c] : work.terms()) {
            const int k = e[static_cast<int>(Var::f2)];
            P::Exponents stripped = e;
            stripped[static_cast<int>(Var::f2)] = 0;
            P mono;
            mono.add_term(stripped, c);
            cleared += mono * rp[static_cast<std::size_t>(k)] * a2p[static_cast<std::size_t>(mf - k)];
        }
        work = cleared;
    }

    // a2^(2m + r) -> (1 - a3^2)^m a2^r.
    const P one_minus = P::constant(1) - A3 * A3;
    P reduced;
    for (const auto& [e, c] : work.terms()) {
        const int k = e[static_cast<int>(Var::a2)];
        P::Exponents stripped = e;
        stripped[static_cast<int>(Var::a2)] = static_cast<std::uint8_t>(k % 2);
        P mono;
        mono.add_term(stripped, c);
        reduced += mono * pow(one_minus, static_cast<unsigned>(k / 2));
    }
    return reduced;
}

bool is_zero_mod_relations(const RationalPoly& p) { return normalize_mod_relations(p).is_zero(); }

}  // namespace berger::exact
