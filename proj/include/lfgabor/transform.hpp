#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "lfgabor/grid.hpp"

namespace lfgabor {

namespace detail {

/// q x q pairing kernel kappa[d][e] = exp(2*pi*i*tau(w_d * w_e)/p), the
/// character image of the pr^{-1} coefficient of u(d)*u(e)*pr^1... the digit
/// pairing every butterfly stage is built from.
inline std::vector<std::complex<double>> pairingKernel(const FieldParams& f) {
    const int q = f.q(), p = f.p();
    std::vector<std::complex<double>> kappa(static_cast<std::size_t>(q) * q);
    for (int d = 0; d < q; ++d)
        for (int e = 0; e < q; ++e) {
            const int t = f.tau(f.mul({d}, {e}));
            if (t == 0) {
                kappa[static_cast<std::size_t>(d) * q + e] = {1.0, 0.0};
            } else if (p == 2) {
                kappa[static_cast<std::size_t>(d) * q + e] = {-1.0, 0.0};
            } else {
                const double ang = 2.0 * std::numbers::pi * t / p;
                kappa[static_cast<std::size_t>(d) * q + e] = {std::cos(ang), std::sin(ang)};
            }
        }
    return kappa;
}

/// Full D x D pairing value chi(xi_i * x_j): product of kappa over digit
/// pairs (r, L-1-r).
inline std::complex<double> pairingValue(const GridSpec& g,
                                         const std::vector<std::complex<double>>& kappa,
                                         std::uint64_t i, std::uint64_t j) {
    const int q = g.field().q();
    const int L = g.M() + g.N();
    std::complex<double> acc{1.0, 0.0};
    // digit r of i pairs with digit L-1-r of j
    std::uint64_t jr = 0;  // j with digits reversed, built incrementally
    for (int r = 0; r < L; ++r) {
        jr = jr * static_cast<std::uint64_t>(q) + j % static_cast<std::uint64_t>(q);
        j /= static_cast<std::uint64_t>(q);
    }
    for (int r = 0; r < L; ++r) {
        const int di = static_cast<int>(i % static_cast<std::uint64_t>(q));
        const int dj = static_cast<int>(jr % static_cast<std::uint64_t>(q));
        acc *= kappa[static_cast<std::size_t>(di) * q + dj];
        i /= static_cast<std::uint64_t>(q);
        jr /= static_cast<std::uint64_t>(q);
    }
    return acc;
}

inline std::uint64_t digitReverse(std::uint64_t j, int q, int L) {
    std::uint64_t r = 0;
    for (int i = 0; i < L; ++i) {
        r = r * static_cast<std::uint64_t>(q) + j % static_cast<std::uint64_t>(q);
        j /= static_cast<std::uint64_t>(q);
    }
    return r;
}

/// Apply the Kronecker power of the q x q matrix `a` in place: L stages of
/// q-point kernels, fixed summation order within each kernel.
inline void kroneckerApply(std::vector<std::complex<double>>& z, int q, int L,
                           const std::vector<std::complex<double>>& a) {
    const std::uint64_t D = z.size();
    std::vector<std::complex<double>> bucket(static_cast<std::size_t>(q));
    std::uint64_t stride = 1;
    for (int pos = 0; pos < L; ++pos) {
        const std::uint64_t block = stride * static_cast<std::uint64_t>(q);
        for (std::uint64_t base = 0; base < D; base += block) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                for (int d = 0; d < q; ++d)
                    bucket[static_cast<std::size_t>(d)] =
                        z[base + off + stride * static_cast<std::uint64_t>(d)];
                for (int d = 0; d < q; ++d) {
                    std::complex<double> acc{0.0, 0.0};
                    for (int e = 0; e < q; ++e)
                        acc += a[static_cast<std::size_t>(d) * q + e] * bucket[static_cast<std::size_t>(e)];
                    z[base + off + stride * static_cast<std::uint64_t>(d)] = acc;
                }
            }
        }
        stride = block;
    }
}

}  // namespace detail

/// Reference transform: fhat(xi_i) = q^{-N} * sum_j f(x_j) * conj(chi(xi_i x_j)).
/// Exact on the finite model because integrands are cell-constant.
inline SampledFunction fourier_naive(const SampledFunction& f) {
    if (f.domain != Domain::time)
        throw std::invalid_argument("fourier_naive: expected a time-domain function");
    const GridSpec& g = f.grid;
    const std::uint64_t D = g.size();
    const auto kappa = detail::pairingKernel(g.field());
    SampledFunction out = SampledFunction::zeros(g, Domain::frequency);
    const double w = g.cellMeasure(Domain::time);
    for (std::uint64_t i = 0; i < D; ++i) {
        std::complex<double> acc{0.0, 0.0};
        for (std::uint64_t j = 0; j < D; ++j)
            acc += f.values[j] * std::conj(detail::pairingValue(g, kappa, i, j));
        out.values[i] = acc * w;
    }
    return out;
}

/// Fast transform: digit-reversal permutation followed by M+N stages of
/// q-point kernels. Same contract as fourier_naive, O(D log_q D * q).
inline SampledFunction fourier_fast(const SampledFunction& f) {
    if (f.domain != Domain::time)
        throw std::invalid_argument("fourier_fast: expected a time-domain function");
    const GridSpec& g = f.grid;
    const int q = g.field().q();
    const int L = g.M() + g.N();
    const auto kappa = detail::pairingKernel(g.field());
    std::vector<std::complex<double>> a(kappa.size());
    for (std::size_t i = 0; i < kappa.size(); ++i) a[i] = std::conj(kappa[i]);
    SampledFunction out = SampledFunction::zeros(g, Domain::frequency);
    for (std::uint64_t j = 0; j < g.size(); ++j)
        out.values[detail::digitReverse(j, q, L)] = f.values[j];
    detail::kroneckerApply(out.values, q, L, a);
    const double w = g.cellMeasure(Domain::time);
    for (auto& v : out.values) v *= w;
    return out;
}

/// Reference inverse: f(x_j) = q^{-M} * sum_i F(xi_i) * chi(xi_i x_j).
inline SampledFunction inverse_naive(const SampledFunction& F) {
    if (F.domain != Domain::frequency)
        throw std::invalid_argument("inverse_naive: expected a frequency-domain function");
    const GridSpec& g = F.grid;
    const std::uint64_t D = g.size();
    const auto kappa = detail::pairingKernel(g.field());
    SampledFunction out = SampledFunction::zeros(g, Domain::time);
    const double w = g.cellMeasure(Domain::frequency);
    for (std::uint64_t j = 0; j < D; ++j) {
        std::complex<double> acc{0.0, 0.0};
        for (std::uint64_t i = 0; i < D; ++i)
            acc += F.values[i] * detail::pairingValue(g, kappa, i, j);
        out.values[j] = acc * w;
    }
    return out;
}

/// Inverse transform; fourier then inverse is the identity (unitarity).
inline SampledFunction inverse_fourier(const SampledFunction& F) {
    if (F.domain != Domain::frequency)
        throw std::invalid_argument("inverse_fourier: expected a frequency-domain function");
    const GridSpec& g = F.grid;
    const int q = g.field().q();
    const int L = g.M() + g.N();
    const auto kappa = detail::pairingKernel(g.field());
    SampledFunction out = SampledFunction::zeros(g, Domain::time);
    for (std::uint64_t i = 0; i < g.size(); ++i)
        out.values[detail::digitReverse(i, q, L)] = F.values[i];
    detail::kroneckerApply(out.values, q, L, kappa);
    const double w = g.cellMeasure(Domain::frequency);
    for (auto& v : out.values) v *= w;
    out.domain = Domain::time;
    return out;
}

/// Periodization of a frequency-domain function over the lattice
/// {a^{-1} u(k)} with a = pr^s: values on one fundamental domain (the cells
/// with indices below q^{M+s}), each the finite sum over lattice translates.
struct PeriodizedFunction {
    GridSpec grid;
    int latticeStepExponent = 0;                // s, with a = pr^s
    std::vector<std::complex<double>> values;   // q^{M+s} fundamental-domain cells
};

inline PeriodizedFunction periodize(const SampledFunction& F, int s) {
    if (F.domain != Domain::frequency)
        throw std::invalid_argument("periodize: expected a frequency-domain function");
    const GridSpec& g = F.grid;
    if (s > g.N())
        throw std::invalid_argument("periodize: lattice coarser than grid support (empty sum)");
    if (s < -g.M())
        throw std::invalid_argument("periodize: lattice step below grid resolution");
    const std::uint64_t fd = g.qpow(g.M() + s);        // fundamental-domain size
    const std::uint64_t translates = g.qpow(g.N() - s); // lattice points on the grid
    PeriodizedFunction out{g, s, std::vector<std::complex<double>>(fd, {0.0, 0.0})};
    for (std::uint64_t i = 0; i < fd; ++i) {
        std::complex<double> acc{0.0, 0.0};
        for (std::uint64_t k = 0; k < translates; ++k)
            acc += F.values[g.indexAdd(i, k * fd)];
        out.values[i] = acc;
    }
    return out;
}

}  // namespace lfgabor
