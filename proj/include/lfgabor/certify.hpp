#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfgabor/gabor.hpp"
#include "lfgabor/grid.hpp"
#include "lfgabor/transform.hpp"

namespace lfgabor {

/// The frequency-side quantities behind the sufficient conditions.
///
/// Delta_k(xi) = sum_m |ghat(xi - b u(m)) * ghat(xi - b u(m) + a^{-1} u(k))|
/// Lambda_k(xi) = sum_m ghat(xi - b u(m)) * conj(ghat(xi - b u(m) + a^{-1} u(k)))
/// alpha_k = max Delta_k, beta = sum_{k>=1} alpha_k, gamma = min Delta_0,
/// delta_k = max |Lambda_k|, mu = sum_{k>=1} delta_k,
/// sigma = max_xi sum_{k>=1} |Lambda_k(xi)|.
///
/// xi runs over one fundamental domain of the b-lattice (q^{M-t} cells); the
/// essential sup/inf are exact extrema because everything is cell-constant.
/// The k-sum stops at kMax = q^{N-s} - 1: beyond it a^{-1}u(k) leaves the
/// support band, so every term vanishes.
struct FrameQuantities {
    std::map<int, std::vector<double>> deltaK;
    std::map<int, std::vector<std::complex<double>>> lambdaK;
    std::map<int, double> alphaK;
    double alpha0 = 0.0, beta = 0.0, gamma = 0.0, mu = 0.0, sigma = 0.0;
    int kMax = 0;
    std::uint64_t fundamentalDomainSize = 0;
};

namespace detail {

struct CertifyLayout {
    std::uint64_t fd;         // q^{M-t} fundamental-domain cells
    std::uint64_t mCount;     // q^{N+t} modulation-lattice translates
    std::uint64_t mStride;    // frequency index of b*u(1) = q^{M-t}
    std::uint64_t kCount;     // q^{N-s} lattice points incl. k = 0
    std::uint64_t kStride;    // frequency index of a^{-1}u(1) = q^{M+s}
};

inline CertifyLayout certifyLayout(const GridSpec& g, const LatticeParams& lat) {
    if (lat.s < -g.M() || lat.s > g.N())
        throw std::invalid_argument("lattice.s: translation step must satisfy -M <= s <= N");
    if (lat.t < -g.N() || lat.t > g.M())
        throw std::invalid_argument("lattice.t: modulation step must satisfy -N <= t <= M");
    CertifyLayout lay;
    lay.fd = g.qpow(g.M() - lat.t);
    lay.mCount = g.qpow(g.N() + lat.t);
    lay.mStride = g.qpow(g.M() - lat.t);
    lay.kCount = g.qpow(g.N() - lat.s);
    lay.kStride = g.qpow(g.M() + lat.s);
    return lay;
}

}  // namespace detail

inline void checkFrequencyWindow(const SampledFunction& gHat) {
    if (gHat.domain != Domain::frequency)
        throw std::invalid_argument("certify: expected the window in the frequency domain");
}

inline std::vector<double> compute_delta_k(const SampledFunction& gHat, const LatticeParams& lat,
                                           std::uint64_t k) {
    checkFrequencyWindow(gHat);
    const GridSpec& g = gHat.grid;
    const auto lay = detail::certifyLayout(g, lat);
    if (k >= lay.kCount) return std::vector<double>(lay.fd, 0.0);
    std::vector<double> out(lay.fd, 0.0);
    for (std::uint64_t i = 0; i < lay.fd; ++i) {
        double acc = 0.0;
        for (std::uint64_t m = 0; m < lay.mCount; ++m) {
            const std::uint64_t base = g.indexSub(i, m * lay.mStride);
            acc += std::abs(gHat.values[base] * gHat.values[g.indexAdd(base, k * lay.kStride)]);
        }
        out[i] = acc;
    }
    return out;
}

inline std::vector<std::complex<double>> compute_lambda_k(const SampledFunction& gHat,
                                                          const LatticeParams& lat,
                                                          std::uint64_t k) {
    checkFrequencyWindow(gHat);
    const GridSpec& g = gHat.grid;
    const auto lay = detail::certifyLayout(g, lat);
    if (k >= lay.kCount) return std::vector<std::complex<double>>(lay.fd, {0.0, 0.0});
    std::vector<std::complex<double>> out(lay.fd, {0.0, 0.0});
    for (std::uint64_t i = 0; i < lay.fd; ++i) {
        std::complex<double> acc{0.0, 0.0};
        for (std::uint64_t m = 0; m < lay.mCount; ++m) {
            const std::uint64_t base = g.indexSub(i, m * lay.mStride);
            acc += gHat.values[base] * std::conj(gHat.values[g.indexAdd(base, k * lay.kStride)]);
        }
        out[i] = acc;
    }
    return out;
}

inline FrameQuantities compute_frame_quantities(const SampledFunction& gHat,
                                                const LatticeParams& lat) {
    checkFrequencyWindow(gHat);
    const GridSpec& g = gHat.grid;
    const auto lay = detail::certifyLayout(g, lat);
    FrameQuantities fq;
    fq.kMax = static_cast<int>(lay.kCount) - 1;
    fq.fundamentalDomainSize = lay.fd;
    std::vector<double> absLambdaSum(lay.fd, 0.0);
    for (std::uint64_t k = 0; k < lay.kCount; ++k) {
        auto dk = compute_delta_k(gHat, lat, k);
        auto lk = compute_lambda_k(gHat, lat, k);
        const double alpha = *std::max_element(dk.begin(), dk.end());
        fq.alphaK[static_cast<int>(k)] = alpha;
        if (k == 0) {
            fq.alpha0 = alpha;
            fq.gamma = *std::min_element(dk.begin(), dk.end());
        } else {
            fq.beta += alpha;
            double dmax = 0.0;
            for (std::uint64_t i = 0; i < lay.fd; ++i) {
                const double a = std::abs(lk[i]);
                dmax = std::max(dmax, a);
                absLambdaSum[i] += a;
            }
            fq.mu += dmax;
        }
        fq.deltaK[static_cast<int>(k)] = std::move(dk);
        fq.lambdaK[static_cast<int>(k)] = std::move(lk);
    }
    fq.sigma = lay.fd ? *std::max_element(absLambdaSum.begin(), absLambdaSum.end()) : 0.0;
    return fq;
}

struct TheoremVerdict {
    bool applicable = false;
    double C = 0.0;
    double D = 0.0;
};

/// Per-theorem applicability and raw bounds (C_i, D_i). The frame bounds the
/// theorems certify are C_i/|a| and D_i/|a|.
struct CertificateReport {
    double absA = 1.0;  // normalization divisor
    FrameQuantities quantities;
    TheoremVerdict t21, t22, t23;
    std::string diagnostic;  // set when gamma = 0 (frequency coverage gap)
};

inline CertificateReport gate(const FrameQuantities& fq, const GridSpec& grid,
                              const LatticeParams& lat) {
    CertificateReport rep;
    rep.absA = latticeAbsA(grid.field(), lat);
    rep.quantities = fq;
    if (fq.gamma <= 0.0) {
        // name the first uncovered fundamental-domain cell
        const auto& d0 = fq.deltaK.at(0);
        for (std::uint64_t i = 0; i < d0.size(); ++i) {
            if (d0[i] <= 0.0) {
                rep.diagnostic = "frequency coverage gap: Delta_0 vanishes at cell " +
                                 std::to_string(i) + " (xi = " +
                                 lf_format(grid.field(), grid.pointAt(Domain::frequency, i)) + ")";
                break;
            }
        }
        return rep;
    }
    if (fq.beta < fq.gamma) {
        rep.t21 = {true, fq.gamma - fq.beta, fq.alpha0 + fq.beta};
    }
    if (fq.mu < fq.gamma) {
        rep.t22 = {true, fq.gamma - fq.mu, fq.alpha0 + fq.mu};
    }
    if (fq.sigma < fq.gamma) {
        rep.t23 = {true, fq.gamma - fq.sigma, fq.alpha0 + fq.sigma};
    }
    return rep;
}

/// The diagonal/cross split of the frame energy: P(f) = Q1 + Q2 with
/// Q1 the k = 0 term and Q2 the k >= 1 cross terms, both computed in the
/// frequency domain from the same quantities the gates use.
struct QDecomposition {
    double Q1 = 0.0;
    double Q2 = 0.0;
    double residualImag = 0.0;  // size of the imaginary part discarded from Q2
};

inline QDecomposition q_decomposition(const SampledFunction& f, const GaborSystem& sys,
                                      const FrameQuantities& fq) {
    checkSameShape(f, sys.window());
    const GridSpec& g = sys.grid();
    const LatticeParams lat = sys.lattice();
    const auto lay = detail::certifyLayout(g, lat);
    const SampledFunction fHat = fourier_fast(f);
    const double invA = 1.0 / latticeAbsA(g.field(), lat);
    const double w = g.cellMeasure(Domain::frequency);
    QDecomposition out;
    const auto& delta0 = fq.deltaK.at(0);
    double q1 = 0.0;
    for (std::uint64_t i = 0; i < g.size(); ++i)
        q1 += std::norm(fHat.values[i]) * delta0[i % lay.fd];
    out.Q1 = invA * w * q1;
    std::complex<double> q2{0.0, 0.0};
    for (std::uint64_t k = 1; k < lay.kCount; ++k) {
        const auto& lk = fq.lambdaK.at(static_cast<int>(k));
        for (std::uint64_t i = 0; i < g.size(); ++i)
            q2 += fHat.values[g.indexAdd(i, k * lay.kStride)] * std::conj(fHat.values[i]) *
                  lk[i % lay.fd];
    }
    q2 *= invA * w;
    out.Q2 = q2.real();
    out.residualImag = std::abs(q2.imag());
    return out;
}

inline QDecomposition q_decomposition(const SampledFunction& f, const GaborSystem& sys) {
    const SampledFunction gHat = fourier_fast(sys.window());
    return q_decomposition(f, sys, compute_frame_quantities(gHat, sys.lattice()));
}

}  // namespace lfgabor
