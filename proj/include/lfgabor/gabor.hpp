#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfgabor/grid.hpp"
#include "lfgabor/transform.hpp"

namespace lfgabor {

/// One indicator term coeff * 1_k(x - h), 1_k the characteristic function of
/// B^k = pr^k * D (all x with valuation >= k).
struct WindowTerm {
    int k = 0;
    LocalFieldElement h;
    std::complex<double> coeff{1.0, 0.0};
};

/// An element of the test space: a finite sum of shifted indicator terms,
/// tagged with the domain it describes.
struct WindowSpec {
    Domain domain = Domain::time;
    std::vector<WindowTerm> terms;
};

/// Lattice parameters a = pr^s (translation step) and b = pr^t (modulation
/// step). Units are folded into the window, so |a| = q^{-s}, |b| = q^{-t}.
struct LatticeParams {
    int s = 0;
    int t = 0;
};

inline double latticeAbsA(const FieldParams& f, const LatticeParams& lat) {
    return std::pow(static_cast<double>(f.q()), -static_cast<double>(lat.s));
}

/// Renders a window spec on the grid. Each term must be exactly representable:
/// its scale within the resolution/support band and its shift on the sample
/// lattice of the tagged domain.
inline SampledFunction render_window(const WindowSpec& spec, const GridSpec& grid) {
    if (spec.terms.empty()) throw std::invalid_argument("window: must have at least one term");
    // time domain: support B^{-M}, resolution B^{N}; frequency swaps the roles
    const int supportExp = (spec.domain == Domain::time) ? grid.M() : grid.N();
    const int resolutionExp = (spec.domain == Domain::time) ? grid.N() : grid.M();
    SampledFunction out = SampledFunction::zeros(grid, spec.domain);
    for (std::size_t ti = 0; ti < spec.terms.size(); ++ti) {
        const WindowTerm& term = spec.terms[ti];
        if (term.k > resolutionExp)
            throw std::invalid_argument("window term " + std::to_string(ti) +
                                        ": scale k=" + std::to_string(term.k) +
                                        " is finer than the grid resolution");
        if (term.k < -supportExp)
            throw std::invalid_argument("window term " + std::to_string(ti) +
                                        ": scale k=" + std::to_string(term.k) +
                                        " lies outside the grid support");
        const auto jh = grid.indexOf(spec.domain, term.h);
        if (!jh)
            throw std::invalid_argument("window term " + std::to_string(ti) +
                                        ": shift is not a grid point");
        // cells inside h + B^k: offsets j' with u(j')*pr^res of valuation >= k
        const std::uint64_t count = grid.qpow(resolutionExp - term.k);
        for (std::uint64_t off = 0; off < count; ++off)
            out.values[grid.indexAdd(*jh, off)] += term.coeff;
    }
    return out;
}

/// f(x - y) for a grid point y; an exact cell permutation.
inline SampledFunction translate(const SampledFunction& f, const LocalFieldElement& y) {
    const auto j0 = f.grid.indexOf(f.domain, y);
    if (!j0) throw std::invalid_argument("translate: shift is not a grid point");
    SampledFunction out = SampledFunction::zeros(f.grid, f.domain);
    for (std::uint64_t j = 0; j < f.grid.size(); ++j)
        out.values[j] = f.values[f.grid.indexSub(j, *j0)];
    return out;
}

/// Pointwise multiplication by chi(u(m) * b * x_j).
inline SampledFunction modulate(const SampledFunction& f, std::uint64_t m,
                                const LocalFieldElement& b) {
    const FieldParams& fp = f.grid.field();
    const LocalFieldElement w = lf_mul(fp, b, u_of(fp, m));
    SampledFunction out = f;
    for (std::uint64_t j = 0; j < f.grid.size(); ++j)
        out.values[j] *= chi_pair(fp, w, f.grid.pointAt(f.domain, j));
    return out;
}

/// The Gabor system G(g, a, b) on the finite group, with index ranges that
/// enumerate each distinct translation and modulation coset exactly once:
/// n < q^{M+s} translations u(n)*pr^s, m < q^{N+t} modulations u(m)*pr^t.
class GaborSystem {
public:
    GaborSystem(SampledFunction window, LatticeParams lattice)
        : window_(std::move(window)), lattice_(lattice) {
        if (window_.domain != Domain::time)
            throw std::invalid_argument("gabor system: window must be rendered in the time domain");
        const GridSpec& g = window_.grid;
        if (lattice.s < -g.M() || lattice.s > g.N())
            throw std::invalid_argument("lattice.s: translation step must satisfy -M <= s <= N");
        if (lattice.t < -g.N() || lattice.t > g.M())
            throw std::invalid_argument("lattice.t: modulation step must satisfy -N <= t <= M");
        nCount_ = g.qpow(g.M() + lattice.s);
        mCount_ = g.qpow(g.N() + lattice.t);
    }

    const SampledFunction& window() const { return window_; }
    const GridSpec& grid() const { return window_.grid; }
    LatticeParams lattice() const { return lattice_; }
    std::uint64_t mCount() const { return mCount_; }
    std::uint64_t nCount() const { return nCount_; }

    /// Time-grid cell index of the translation u(n)*pr^s.
    std::uint64_t translationIndex(std::uint64_t n) const {
        return n * grid().qpow(grid().N() - lattice_.s);
    }

    /// Phase chi(u(m)*pr^t * x_j) as an exact digit pairing.
    std::complex<double> modulationPhase(std::uint64_t m, std::uint64_t j) const {
        // u(m)*pr^t * u(j)*pr^N: the pr^{-1} coefficient pairs digit r of m
        // with digit N+t-1-r of j
        const FieldParams& f = grid().field();
        const int q = f.q();
        int tacc = 0;
        const int shift = grid().N() + lattice_.t;
        std::uint64_t mm = m;
        for (int r = 0; mm > 0; ++r, mm /= static_cast<std::uint64_t>(q)) {
            const int pos = shift - 1 - r;
            if (pos < 0) break;
            const std::uint64_t dj = (j / grid().qpow(pos)) % static_cast<std::uint64_t>(q);
            const int dm = static_cast<int>(mm % static_cast<std::uint64_t>(q));
            tacc += f.tau(f.mul({dm}, {static_cast<int>(dj)}));
        }
        tacc %= f.p();
        if (tacc == 0) return {1.0, 0.0};
        if (f.p() == 2) return {-1.0, 0.0};
        const double ang = 2.0 * std::numbers::pi * tacc / f.p();
        return {std::cos(ang), std::sin(ang)};
    }

    /// Atom M_{u(m)b} T_{u(n)a} g: translation first, then modulation.
    SampledFunction atom(std::uint64_t m, std::uint64_t n) const {
        if (m >= mCount_ || n >= nCount_)
            throw std::out_of_range("gabor atom: (m,n) outside the declared ranges");
        const std::uint64_t j0 = translationIndex(n);
        SampledFunction out = SampledFunction::zeros(grid(), Domain::time);
        for (std::uint64_t j = 0; j < grid().size(); ++j)
            out.values[j] = modulationPhase(m, j) * window_.values[grid().indexSub(j, j0)];
        return out;
    }

private:
    SampledFunction window_;
    LatticeParams lattice_;
    std::uint64_t mCount_, nCount_;
};

/// Table of analysis coefficients <f, atom_{m,n}>, mCount x nCount, row-major
/// in m.
inline std::vector<std::complex<double>> analysis_coeffs(const SampledFunction& f,
                                                         const GaborSystem& sys) {
    checkSameShape(f, sys.window());
    std::vector<std::complex<double>> table(sys.mCount() * sys.nCount());
    for (std::uint64_t m = 0; m < sys.mCount(); ++m)
        for (std::uint64_t n = 0; n < sys.nCount(); ++n)
            table[m * sys.nCount() + n] = innerProduct(f, sys.atom(m, n));
    return table;
}

/// P(f) = sum over (m,n) of |<f, atom>|^2.
inline double frame_energy(const SampledFunction& f, const GaborSystem& sys) {
    double acc = 0.0;
    for (const auto& c : analysis_coeffs(f, sys)) acc += std::norm(c);
    return acc;
}

}  // namespace lfgabor
