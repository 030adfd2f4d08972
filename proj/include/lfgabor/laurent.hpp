#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfgabor/field.hpp"

namespace lfgabor {

/// A truncated formal Laurent series over GF(q): x = sum_{l >= v} c_l * pr^l,
/// where pr is the prime element. Canonical form: either coeffs is empty (the
/// zero element) or coeffs.front() != 0. Trailing zero coefficients are also
/// stripped, so equality of canonical forms is structural equality.
struct LocalFieldElement {
    int valuation = 0;                 // exponent of coeffs[0]
    std::vector<GFqElement> coeffs;    // coefficient of pr^(valuation + i)

    bool isZero() const { return coeffs.empty(); }

    GFqElement coeffAt(int exponent) const {
        const int i = exponent - valuation;
        if (i < 0 || i >= static_cast<int>(coeffs.size())) return {0};
        return coeffs[static_cast<std::size_t>(i)];
    }

    friend bool operator==(const LocalFieldElement&, const LocalFieldElement&) = default;
};

inline LocalFieldElement lf_canonicalize(LocalFieldElement x) {
    std::size_t lead = 0;
    while (lead < x.coeffs.size() && x.coeffs[lead].rep == 0) ++lead;
    if (lead == x.coeffs.size()) return {};
    std::size_t tail = x.coeffs.size();
    while (tail > lead && x.coeffs[tail - 1].rep == 0) --tail;
    LocalFieldElement out;
    out.valuation = x.valuation + static_cast<int>(lead);
    out.coeffs.assign(x.coeffs.begin() + static_cast<std::ptrdiff_t>(lead),
                      x.coeffs.begin() + static_cast<std::ptrdiff_t>(tail));
    return out;
}

/// Single-term element c * pr^k.
inline LocalFieldElement lf_monomial(GFqElement c, int k) {
    if (c.rep == 0) return {};
    return {k, {c}};
}

inline LocalFieldElement lf_add(const FieldParams& f, const LocalFieldElement& x,
                                const LocalFieldElement& y) {
    if (x.isZero()) return y;
    if (y.isZero()) return x;
    const int lo = std::min(x.valuation, y.valuation);
    const int hi = std::max(x.valuation + static_cast<int>(x.coeffs.size()),
                            y.valuation + static_cast<int>(y.coeffs.size()));
    LocalFieldElement out;
    out.valuation = lo;
    out.coeffs.resize(static_cast<std::size_t>(hi - lo));
    for (int e = lo; e < hi; ++e)
        out.coeffs[static_cast<std::size_t>(e - lo)] = f.add(x.coeffAt(e), y.coeffAt(e));
    return lf_canonicalize(out);
}

inline LocalFieldElement lf_neg(const FieldParams& f, const LocalFieldElement& x) {
    LocalFieldElement out = x;
    for (auto& c : out.coeffs) c = f.neg(c);
    return out;
}

inline LocalFieldElement lf_sub(const FieldParams& f, const LocalFieldElement& x,
                                const LocalFieldElement& y) {
    return lf_add(f, x, lf_neg(f, y));
}

/// Laurent-series product. When `precision` is given, coefficients at
/// exponents >= precision are discarded; that is the only place truncation
/// loss can occur.
inline LocalFieldElement lf_mul(const FieldParams& f, const LocalFieldElement& x,
                                const LocalFieldElement& y,
                                std::optional<int> precision = std::nullopt) {
    if (x.isZero() || y.isZero()) return {};
    const int v = x.valuation + y.valuation;
    int len = static_cast<int>(x.coeffs.size() + y.coeffs.size()) - 1;
    if (precision && v + len > *precision) len = *precision - v;
    if (len <= 0) return {};
    LocalFieldElement out;
    out.valuation = v;
    out.coeffs.assign(static_cast<std::size_t>(len), {0});
    for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
        if (x.coeffs[i].rep == 0) continue;
        for (std::size_t j = 0; j < y.coeffs.size(); ++j) {
            if (i + j >= static_cast<std::size_t>(len)) break;
            out.coeffs[i + j] = f.add(out.coeffs[i + j], f.mul(x.coeffs[i], y.coeffs[j]));
        }
    }
    return lf_canonicalize(out);
}

/// |x| = q^{-v}, |0| = 0.
inline double lf_abs(const FieldParams& f, const LocalFieldElement& x) {
    if (x.isZero()) return 0.0;
    return std::pow(static_cast<double>(f.q()), -static_cast<double>(x.valuation));
}

/// The coset enumeration u(n): base-q digits of n become GF(q) coefficients
/// at exponents -1, -2, ... (digit r at exponent -r-1).
inline LocalFieldElement u_of(const FieldParams& f, std::uint64_t n) {
    LocalFieldElement out;
    std::vector<GFqElement> digits;
    const int q = f.q();
    while (n > 0) {
        digits.push_back({static_cast<int>(n % static_cast<std::uint64_t>(q))});
        n /= static_cast<std::uint64_t>(q);
    }
    if (digits.empty()) return {};
    out.valuation = -static_cast<int>(digits.size());
    out.coeffs.assign(digits.rbegin(), digits.rend());
    return lf_canonicalize(out);
}

/// The index m with u(m) = u(l) + u(k): digitwise GF(q) addition of the
/// base-q digit strings, i.e. componentwise mod-p addition of base-p digits.
inline std::uint64_t u_index_add(const FieldParams& f, std::uint64_t l, std::uint64_t k) {
    const int q = f.q();
    std::uint64_t out = 0, place = 1;
    while (l > 0 || k > 0) {
        GFqElement d = f.add({static_cast<int>(l % q)}, {static_cast<int>(k % q)});
        out += static_cast<std::uint64_t>(d.rep) * place;
        place *= static_cast<std::uint64_t>(q);
        l /= q;
        k /= q;
    }
    return out;
}

inline std::uint64_t u_index_neg(const FieldParams& f, std::uint64_t k) {
    const int q = f.q();
    std::uint64_t out = 0, place = 1;
    while (k > 0) {
        GFqElement d = f.neg({static_cast<int>(k % q)});
        out += static_cast<std::uint64_t>(d.rep) * place;
        place *= static_cast<std::uint64_t>(q);
        k /= q;
    }
    return out;
}

inline std::uint64_t u_index_sub(const FieldParams& f, std::uint64_t l, std::uint64_t k) {
    return u_index_add(f, l, u_index_neg(f, k));
}

/// chi(x) = exp(2*pi*i*t/p) with t the zeta_0-coordinate of the pr^{-1}
/// coefficient. Trivial on the ring of integers, nontrivial one level up.
inline std::complex<double> chi(const FieldParams& f, const LocalFieldElement& x) {
    const int t = f.tau(x.coeffAt(-1));
    if (t == 0) return {1.0, 0.0};
    if (f.p() == 2) return {-1.0, 0.0};  // exact in characteristic 2
    const double ang = 2.0 * std::numbers::pi * t / f.p();
    return {std::cos(ang), std::sin(ang)};
}

inline std::complex<double> chi_pair(const FieldParams& f, const LocalFieldElement& xi,
                                     const LocalFieldElement& x) {
    return chi(f, lf_mul(f, xi, x));
}

// ---------------------------------------------------------------------------
// Textual element format: "c_v*p^v + c_{v+1}*p^{v+1} + ...".
// A coefficient is a base-p digit string in the zeta basis (constant
// coordinate first), optionally bracketed: "11" and "[1,1]" both mean
// zeta_0 + zeta_1. The zero element is "0".
// ---------------------------------------------------------------------------

inline std::string lf_format(const FieldParams& f, const LocalFieldElement& x) {
    if (x.isZero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
        if (x.coeffs[i].rep == 0) continue;
        if (!first) os << " + ";
        first = false;
        const std::vector<int> a = f.coords(x.coeffs[i]);
        if (f.c() == 1) {
            os << a[0];
        } else {
            os << '[';
            for (int j = 0; j < f.c(); ++j) os << (j ? "," : "") << a[j];
            os << ']';
        }
        os << "*p^" << (x.valuation + static_cast<int>(i));
    }
    return os.str();
}

namespace detail {
inline void skipSpace(const std::string& s, std::size_t& pos) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
}
}  // namespace detail

inline LocalFieldElement lf_parse(const FieldParams& f, const std::string& s) {
    std::size_t pos = 0;
    detail::skipSpace(s, pos);
    if (pos < s.size() && s[pos] == '0' && pos + 1 >= s.size()) return {};
    {
        // lone "0" possibly padded with spaces
        std::size_t end = pos;
        if (end < s.size() && s[end] == '0') {
            std::size_t after = end + 1;
            detail::skipSpace(s, after);
            if (after >= s.size()) return {};
        }
    }
    LocalFieldElement acc;
    bool any = false;
    while (pos < s.size()) {
        detail::skipSpace(s, pos);
        std::vector<int> coords;
        if (pos < s.size() && s[pos] == '[') {
            ++pos;
            while (true) {
                detail::skipSpace(s, pos);
                if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                    throw std::invalid_argument("element parse: expected digit in bracketed coefficient: " + s);
                coords.push_back(s[pos++] - '0');
                detail::skipSpace(s, pos);
                if (pos < s.size() && s[pos] == ',') { ++pos; continue; }
                if (pos < s.size() && s[pos] == ']') { ++pos; break; }
                throw std::invalid_argument("element parse: expected ',' or ']': " + s);
            }
        } else {
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                coords.push_back(s[pos++] - '0');
            if (coords.empty())
                throw std::invalid_argument("element parse: expected coefficient: " + s);
        }
        detail::skipSpace(s, pos);
        if (pos >= s.size() || s[pos] != '*')
            throw std::invalid_argument("element parse: expected '*p^': " + s);
        ++pos;
        detail::skipSpace(s, pos);
        if (pos + 1 >= s.size() || s[pos] != 'p' || s[pos + 1] != '^')
            throw std::invalid_argument("element parse: expected 'p^': " + s);
        pos += 2;
        detail::skipSpace(s, pos);
        bool negExp = false;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) negExp = (s[pos++] == '-');
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw std::invalid_argument("element parse: expected exponent: " + s);
        int expo = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            expo = expo * 10 + (s[pos++] - '0');
        if (negExp) expo = -expo;
        acc = lf_add(f, acc, lf_monomial(f.fromCoords(coords), expo));
        any = true;
        detail::skipSpace(s, pos);
        if (pos >= s.size()) break;
        if (s[pos] != '+')
            throw std::invalid_argument("element parse: expected '+' between terms: " + s);
        ++pos;
    }
    if (!any) throw std::invalid_argument("element parse: empty input");
    return acc;
}

}  // namespace lfgabor
