#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lfgabor {

/// An element of GF(q), q = p^c, stored as an integer in [0, q).
/// The base-p digits of `rep` are the coordinates in the basis
/// {zeta_0 = 1, zeta_1, ..., zeta_{c-1}}, least-significant digit first.
struct GFqElement {
    int rep = 0;

    friend bool operator==(const GFqElement&, const GFqElement&) = default;
};

/// Parameters of the residue field GF(q) = GF(p)[t]/(modulus).
///
/// The modulus is a monic irreducible polynomial of degree c over GF(p),
/// stored as its c non-leading coefficients (constant term first). When no
/// modulus is given, the lexicographically least irreducible one is used so
/// that runs are reproducible.
class FieldParams {
public:
    FieldParams(int p, int c, std::vector<int> modulus = {})
        : p_(p), c_(c) {
        if (p < 2 || !isPrime(p)) throw std::invalid_argument("field.p: must be a prime >= 2");
        if (c < 1) throw std::invalid_argument("field.c: extension degree must be >= 1");
        q_ = 1;
        for (int i = 0; i < c; ++i) {
            if (q_ > (1 << 20) / p) throw std::invalid_argument("field: q = p^c too large");
            q_ *= p;
        }
        if (modulus.empty()) {
            modulus_ = leastIrreducible(p, c);
        } else {
            if (static_cast<int>(modulus.size()) != c)
                throw std::invalid_argument("field.modulusPoly: expected exactly c coefficients");
            for (int a : modulus)
                if (a < 0 || a >= p) throw std::invalid_argument("field.modulusPoly: coefficient out of [0,p)");
            if (!irreducible(p, modulus))
                throw std::invalid_argument("field.modulusPoly: polynomial is reducible over GF(p)");
            modulus_ = std::move(modulus);
        }
        buildMulTable();
    }

    int p() const { return p_; }
    int c() const { return c_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    GFqElement zero() const { return {0}; }
    GFqElement one() const { return {1}; }

    GFqElement add(GFqElement x, GFqElement y) const {
        checkRep(x); checkRep(y);
        int r = 0, mul = 1;
        for (int i = 0; i < c_; ++i) {
            int a = (x.rep / mul) % p_, b = (y.rep / mul) % p_;
            r += ((a + b) % p_) * mul;
            mul *= p_;
        }
        return {r};
    }

    GFqElement neg(GFqElement x) const {
        checkRep(x);
        int r = 0, mul = 1;
        for (int i = 0; i < c_; ++i) {
            int a = (x.rep / mul) % p_;
            r += ((p_ - a) % p_) * mul;
            mul *= p_;
        }
        return {r};
    }

    GFqElement sub(GFqElement x, GFqElement y) const { return add(x, neg(y)); }

    GFqElement mul(GFqElement x, GFqElement y) const {
        checkRep(x); checkRep(y);
        return {mulTable_[static_cast<std::size_t>(x.rep) * q_ + y.rep]};
    }

    /// zeta_0-coordinate of x, the residue that feeds the character chi.
    int tau(GFqElement x) const {
        checkRep(x);
        return x.rep % p_;
    }

    /// Coordinates (a_0, ..., a_{c-1}) of x in the zeta basis.
    std::vector<int> coords(GFqElement x) const {
        checkRep(x);
        std::vector<int> out(c_);
        int v = x.rep;
        for (int i = 0; i < c_; ++i) { out[i] = v % p_; v /= p_; }
        return out;
    }

    GFqElement fromCoords(const std::vector<int>& a) const {
        if (static_cast<int>(a.size()) > c_)
            throw std::invalid_argument("GFqElement: too many coordinates");
        int r = 0, mul = 1;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] < 0 || a[i] >= p_) throw std::invalid_argument("GFqElement: coordinate out of [0,p)");
            r += a[i] * mul;
            mul *= p_;
        }
        return {r};
    }

    friend bool operator==(const FieldParams& a, const FieldParams& b) {
        return a.p_ == b.p_ && a.c_ == b.c_ && a.modulus_ == b.modulus_;
    }

    static bool isPrime(int n) {
        if (n < 2) return false;
        for (int d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    void checkRep(GFqElement x) const {
        if (x.rep < 0 || x.rep >= q_) throw std::invalid_argument("GFqElement out of range for this field");
    }

    // Polynomials over GF(p) as coefficient vectors, constant term first.
    static std::vector<int> polyMulMod(int p, const std::vector<int>& a, const std::vector<int>& b,
                                       const std::vector<int>& mod) {
        const int c = static_cast<int>(mod.size());
        std::vector<int> prod(2 * c - 1, 0);
        for (int i = 0; i < c; ++i)
            for (int j = 0; j < c; ++j)
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        // reduce: t^c = -mod
        for (int d = 2 * c - 2; d >= c; --d) {
            int coef = prod[d];
            if (coef == 0) continue;
            prod[d] = 0;
            for (int i = 0; i < c; ++i)
                prod[d - c + i] = ((prod[d - c + i] - coef * mod[i]) % p + p * p) % p;
        }
        prod.resize(c);
        return prod;
    }

    // Trial division by all monic polynomials of degree 1..deg/2.
    static bool irreducible(int p, const std::vector<int>& mod) {
        const int c = static_cast<int>(mod.size());
        if (c == 1) return true;
        std::vector<int> full(mod);
        full.push_back(1);  // monic degree-c polynomial
        for (int d = 1; 2 * d <= c; ++d) {
            int count = 1;
            for (int i = 0; i < d; ++i) count *= p;
            for (int n = 0; n < count; ++n) {
                std::vector<int> div(d + 1);
                int v = n;
                for (int i = 0; i < d; ++i) { div[i] = v % p; v /= p; }
                div[d] = 1;
                if (dividesExactly(p, full, div)) return false;
            }
        }
        return true;
    }

    static bool dividesExactly(int p, std::vector<int> num, const std::vector<int>& div) {
        int dn = static_cast<int>(num.size()) - 1;
        const int dd = static_cast<int>(div.size()) - 1;
        while (dn >= dd) {
            int coef = num[dn];  // divisor is monic
            if (coef != 0) {
                for (int i = 0; i <= dd; ++i)
                    num[dn - dd + i] = ((num[dn - dd + i] - coef * div[i]) % p + p) % p;
            }
            --dn;
        }
        for (int i = 0; i < dd; ++i)
            if (num[i] != 0) return false;
        return true;
    }

    static std::vector<int> leastIrreducible(int p, int c) {
        int count = 1;
        for (int i = 0; i < c; ++i) count *= p;
        for (int n = 0; n < count; ++n) {
            std::vector<int> mod(c);
            int v = n;
            for (int i = 0; i < c; ++i) { mod[i] = v % p; v /= p; }
            if (irreducible(p, mod)) return mod;
        }
        throw std::logic_error("no irreducible polynomial found");  // unreachable
    }

    void buildMulTable() {
        mulTable_.assign(static_cast<std::size_t>(q_) * q_, 0);
        for (int x = 0; x < q_; ++x) {
            std::vector<int> xa(c_);
            int v = x;
            for (int i = 0; i < c_; ++i) { xa[i] = v % p_; v /= p_; }
            for (int y = 0; y < q_; ++y) {
                std::vector<int> ya(c_);
                v = y;
                for (int i = 0; i < c_; ++i) { ya[i] = v % p_; v /= p_; }
                std::vector<int> r = polyMulMod(p_, xa, ya, modulus_);
                int rep = 0, mul = 1;
                for (int i = 0; i < c_; ++i) { rep += r[i] * mul; mul *= p_; }
                mulTable_[static_cast<std::size_t>(x) * q_ + y] = rep;
            }
        }
    }

    int p_, c_, q_;
    std::vector<int> modulus_;
    std::vector<int> mulTable_;
};

inline GFqElement gf_add(const FieldParams& f, GFqElement x, GFqElement y) { return f.add(x, y); }
inline GFqElement gf_mul(const FieldParams& f, GFqElement x, GFqElement y) { return f.mul(x, y); }

}  // namespace lfgabor
