#pragma once

// Text rendering of series as "c*q^n +- ..." in ascending exponent order with
// a trailing O(q^T) marker, and the round-trip parser for the same format.
// Used by the CLI and by golden-test fixtures.

#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "qcong/errors.hpp"
#include "qcong/series.hpp"

namespace qcong {

namespace detail {

inline std::string q_power(long e) {
    if (e == 1) return "q";
    return "q^" + std::to_string(e);
}

inline mpz_class parse_mpz(const std::string& s0) {
    std::string s = s0;
    if (!s.empty() && s.front() == '+') s.erase(s.begin());
    if (s.empty()) throw ParseError("empty integer");
    mpz_class v;
    if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
        throw ParseError("bad integer '" + s0 + "'");
    return v;
}

inline mpq_class parse_mpq(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return mpq_class(parse_mpz(s));
    mpq_class v(parse_mpz(s.substr(0, slash)), parse_mpz(s.substr(slash + 1)));
    v.canonicalize();
    return v;
}

inline typename IntegerRing::Elem parse_elem(const IntegerRing&, const std::string& s) {
    return parse_mpz(s);
}

inline typename RationalRing::Elem parse_elem(const RationalRing&, const std::string& s) {
    return parse_mpq(s);
}

inline typename ResidueRing::Elem parse_elem(const ResidueRing& ring, const std::string& s) {
    mpz_class v = parse_mpz(s);
    return ring.from_mpz(v);
}

inline typename QuadExtRing::Elem parse_elem(const QuadExtRing& ring, const std::string& s0) {
    std::string s = s0;
    if (!s.empty() && s.front() == '(') {
        if (s.back() != ')') throw ParseError("unbalanced parentheses in '" + s0 + "'");
        s = s.substr(1, s.size() - 2);
    }
    const std::string key = "sqrt(";
    auto pos = s.find(key);
    if (pos == std::string::npos) return ring.from_rational(parse_mpq(s));
    auto close = s.find(')', pos);
    if (close == std::string::npos || close + 1 != s.size())
        throw ParseError("malformed radical in '" + s0 + "'");
    long rad = std::stol(s.substr(pos + key.size(), close - pos - key.size()));
    if (rad != ring.radicand)
        throw ParseError("radicand " + std::to_string(rad) + " does not match ring " +
                         ring.name());
    std::string pre = s.substr(0, pos);
    mpq_class x(0), y(1);
    if (pre.empty()) {
        // sqrt(r)
    } else if (pre == "-") {
        y = -1;
    } else {
        bool star = pre.back() == '*';
        if (star) pre.pop_back();
        // split off a trailing rational (after the last top-level + or -)
        std::size_t split = std::string::npos;
        for (std::size_t i = 1; i < pre.size(); ++i)
            if (pre[i] == '+' || pre[i] == '-') split = i;
        if (split == std::string::npos) {
            if (!star && !(pre == "+" )) throw ParseError("malformed coefficient '" + s0 + "'");
            y = star ? parse_mpq(pre) : mpq_class(1);
        } else {
            x = parse_mpq(pre.substr(0, split));
            std::string ypart = pre.substr(split); // includes sign
            if (ypart == "+") y = 1;
            else if (ypart == "-") y = -1;
            else if (star) y = parse_mpq(ypart);
            else throw ParseError("malformed coefficient '" + s0 + "'");
        }
    }
    return {x, y};
}

} // namespace detail

template <class R>
std::string Series<R>::to_string() const {
    std::string out;
    bool first = true;
    long e = val_;
    for (const Elem& c : coeffs_) {
        if (!ring_.is_zero(c)) {
            std::string token = ring_.to_string(c);
            const bool negative = !token.empty() && token[0] == '-';
            std::string mag = negative ? token.substr(1) : token;
            std::string term;
            if (e == 0) term = mag;
            else if (mag == "1") term = detail::q_power(e);
            else term = mag + "*" + detail::q_power(e);
            if (first) out += (negative ? "-" : "") + term;
            else out += (negative ? " - " : " + ") + term;
            first = false;
        }
        ++e;
    }
    if (!first) out += " + ";
    out += "O(q^" + std::to_string(trunc_) + ")";
    return out;
}

// Inverse of Series::to_string. Also tolerates the looser "3q + 5q^2" style
// (no '*') and a missing O-term, in which case trunc = max exponent + 1.
template <class R>
Series<R> parse_series(const std::string& text, R ring) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError("empty series text");

    struct Term { std::string body; bool negative; };
    std::vector<Term> terms;
    std::size_t start = 0;
    bool neg = false;
    if (s[0] == '-') { neg = true; start = 1; }
    else if (s[0] == '+') { start = 1; }
    int depth = 0;
    std::size_t i = start;
    for (; i <= s.size(); ++i) {
        // a sign right after '^' belongs to the exponent, not a new term
        if (i == s.size() ||
            ((s[i] == '+' || s[i] == '-') && depth == 0 && s[i - 1] != '^')) {
            if (i == start) throw ParseError("empty term in '" + text + "'");
            terms.push_back({s.substr(start, i - start), neg});
            if (i < s.size()) { neg = s[i] == '-'; start = i + 1; }
        } else if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
    }
    if (depth != 0) throw ParseError("unbalanced parentheses in '" + text + "'");

    std::map<long, typename R::Elem> coeffs;
    bool have_trunc = false;
    long trunc = 0;
    long max_exp = 0;
    bool any = false;
    for (const Term& t : terms) {
        const std::string& b = t.body;
        if (b.size() >= 2 && b[0] == 'O' && b[1] == '(') {
            if (t.negative || b.back() != ')') throw ParseError("malformed O-term '" + b + "'");
            std::string inner = b.substr(2, b.size() - 3);
            if (inner == "q") { trunc = 1; }
            else if (inner.rfind("q^", 0) == 0) trunc = std::stol(inner.substr(2));
            else throw ParseError("malformed O-term '" + b + "'");
            have_trunc = true;
            continue;
        }
        // locate the monomial 'q' at paren depth 0
        int d = 0;
        std::size_t qpos = std::string::npos;
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (b[k] == '(') ++d;
            else if (b[k] == ')') --d;
            else if (b[k] == 'q' && d == 0) { qpos = k; break; }
        }
        std::string coef;
        long exp = 0;
        if (qpos == std::string::npos) {
            coef = b;
        } else {
            coef = b.substr(0, qpos);
            if (!coef.empty() && coef.back() == '*') coef.pop_back();
            std::string rest = b.substr(qpos + 1);
            if (rest.empty()) exp = 1;
            else if (rest[0] == '^') {
                try { exp = std::stol(rest.substr(1)); }
                catch (...) { throw ParseError("bad exponent in '" + b + "'"); }
            } else throw ParseError("malformed monomial in '" + b + "'");
        }
        typename R::Elem c = coef.empty() ? ring.one() : detail::parse_elem(ring, coef);
        if (t.negative) c = ring.neg(c);
        auto it = coeffs.find(exp);
        if (it == coeffs.end()) coeffs.emplace(exp, c);
        else it->second = ring.add(it->second, c);
        max_exp = std::max(max_exp, exp);
        any = true;
    }
    if (!have_trunc) trunc = any ? max_exp + 1 : 1;
    if (coeffs.empty()) return Series<R>::zero(ring, trunc);
    const long val = coeffs.begin()->first;
    std::vector<typename R::Elem> vec(static_cast<std::size_t>(std::max<long>(0, trunc - val)),
                                      ring.zero());
    for (auto& [e2, c] : coeffs) {
        if (e2 >= trunc)
            throw ParseError("term q^" + std::to_string(e2) + " at or beyond O(q^" +
                             std::to_string(trunc) + ")");
        vec[static_cast<std::size_t>(e2 - val)] = c;
    }
    return Series<R>::from_coeffs(ring, val, std::move(vec), trunc);
}

} // namespace qcong
