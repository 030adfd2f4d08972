#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "lfgabor/certify.hpp"
#include "lfgabor/gabor.hpp"

namespace lfgabor {

/// Dense Hermitian matrix, row-major.
struct HermitianMatrix {
    std::size_t dim = 0;
    std::vector<std::complex<double>> a;

    std::complex<double>& at(std::size_t i, std::size_t j) { return a[i * dim + j]; }
    const std::complex<double>& at(std::size_t i, std::size_t j) const { return a[i * dim + j]; }
};

/// The frame operator S = sum_{m,n} |atom><atom| in the Haar-weighted inner
/// product, as a matrix acting on cell values: S[j][j'] = w * sum_a a_j conj(a_{j'}).
inline HermitianMatrix frame_operator(const GaborSystem& sys, unsigned workers = 1) {
    const std::uint64_t D = sys.grid().size();
    if (D > 1024) throw std::invalid_argument("oracle: frame operator limited to D <= 1024");
    const std::uint64_t atoms = sys.mCount() * sys.nCount();
    const double w = sys.grid().cellMeasure(Domain::time);
    const std::size_t dim = static_cast<std::size_t>(D);

    // fixed-size atom chunks so the reduction order (chunk index order) does
    // not depend on the worker count
    const std::uint64_t chunkSize = 64;
    const std::uint64_t chunks = (atoms + chunkSize - 1) / chunkSize;
    std::vector<HermitianMatrix> partial(static_cast<std::size_t>(chunks));
    const auto runChunk = [&](std::uint64_t chunk) {
        HermitianMatrix& S = partial[static_cast<std::size_t>(chunk)];
        S.dim = dim;
        S.a.assign(dim * dim, {0.0, 0.0});
        const std::uint64_t lo = chunk * chunkSize;
        const std::uint64_t hi = std::min(atoms, lo + chunkSize);
        for (std::uint64_t a = lo; a < hi; ++a) {
            const SampledFunction atom = sys.atom(a / sys.nCount(), a % sys.nCount());
            for (std::size_t i = 0; i < dim; ++i) {
                if (atom.values[i] == std::complex<double>{0.0, 0.0}) continue;
                const std::complex<double> ai = w * atom.values[i];
                for (std::size_t j = 0; j < dim; ++j)
                    S.at(i, j) += ai * std::conj(atom.values[j]);
            }
        }
    };
    if (workers <= 1 || chunks <= 1) {
        for (std::uint64_t chunk = 0; chunk < chunks; ++chunk) runChunk(chunk);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        const unsigned count = std::min<std::uint64_t>(workers, chunks);
        for (unsigned t = 0; t < count; ++t)
            pool.emplace_back([&] {
                for (std::uint64_t chunk = next.fetch_add(1); chunk < chunks;
                     chunk = next.fetch_add(1))
                    runChunk(chunk);
            });
        for (auto& th : pool) th.join();
    }
    HermitianMatrix S;
    S.dim = dim;
    S.a.assign(dim * dim, {0.0, 0.0});
    for (std::uint64_t chunk = 0; chunk < chunks; ++chunk)
        for (std::size_t i = 0; i < S.a.size(); ++i) S.a[i] += partial[static_cast<std::size_t>(chunk)].a[i];
    return S;
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi with complex rotations.
/// Deterministic, single-threaded; ascending order.
inline std::vector<double> jacobi_eigenvalues(HermitianMatrix A) {
    const std::size_t n = A.dim;
    if (n == 0) return {};
    double scale = 0.0;
    for (const auto& v : A.a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return std::vector<double>(n, 0.0);
    const double tol = 1e-15 * scale;
    const int maxSweeps = 80;
    for (int sweep = 0; sweep < maxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                off = std::max(off, std::abs(A.at(p, q)));
        if (off <= tol) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const std::complex<double> g = A.at(p, q);
                const double ag = std::abs(g);
                if (ag <= tol) continue;
                const std::complex<double> ph = g / ag;
                const double alpha = A.at(p, p).real();
                const double beta = A.at(q, q).real();
                const double tau = (beta - alpha) / (2.0 * ag);
                double t;
                if (tau >= 0.0)
                    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // unitary U: U(p,p)=c, U(p,q)=s, U(q,p)=-s*conj(ph), U(q,q)=c*conj(ph)
                for (std::size_t i = 0; i < n; ++i) {
                    const std::complex<double> aip = A.at(i, p), aiq = A.at(i, q);
                    A.at(i, p) = aip * c - aiq * s * std::conj(ph);
                    A.at(i, q) = aip * s + aiq * c * std::conj(ph);
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const std::complex<double> apj = A.at(p, j), aqj = A.at(q, j);
                    A.at(p, j) = c * apj - s * ph * aqj;
                    A.at(q, j) = s * apj + c * ph * aqj;
                }
                A.at(p, q) = {0.0, 0.0};
                A.at(q, p) = {0.0, 0.0};
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = A.at(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

struct OracleResult {
    double Amin = 0.0;
    double Bmax = 0.0;
    std::uint64_t dim = 0;
    bool isFrame = false;
};

inline std::pair<double, double> extreme_eigenvalues(const HermitianMatrix& S) {
    const auto ev = jacobi_eigenvalues(S);
    if (ev.empty()) return {0.0, 0.0};
    return {ev.front(), ev.back()};
}

inline OracleResult oracle_bounds(const GaborSystem& sys, unsigned workers = 1) {
    const HermitianMatrix S = frame_operator(sys, workers);
    const auto [amin, bmax] = extreme_eigenvalues(S);
    OracleResult r;
    r.Amin = amin;
    r.Bmax = bmax;
    r.dim = sys.grid().size();
    r.isFrame = amin > 1e-9 * bmax;  // relative singularity threshold
    return r;
}

struct CertificateVerdict {
    bool anyApplicable = false;
    bool bracketed = true;  // vacuously true when nothing is applicable
    std::vector<std::string> violations;
};

/// Checks every applicable theorem's claim C_i/|a| <= Amin, Bmax <= D_i/|a|
/// against the oracle, with 1e-8 slack.
inline CertificateVerdict check_certificate(const CertificateReport& rep, const OracleResult& res) {
    CertificateVerdict v;
    const double slack = 1e-8;
    const auto checkOne = [&](const char* name, const TheoremVerdict& tv) {
        if (!tv.applicable) return;
        v.anyApplicable = true;
        const double lo = tv.C / rep.absA;
        const double hi = tv.D / rep.absA;
        if (res.Amin < lo - slack) {
            v.bracketed = false;
            v.violations.push_back(std::string(name) + ": lower bound " + std::to_string(lo) +
                                   " exceeds oracle Amin " + std::to_string(res.Amin));
        }
        if (res.Bmax > hi + slack) {
            v.bracketed = false;
            v.violations.push_back(std::string(name) + ": upper bound " + std::to_string(hi) +
                                   " is below oracle Bmax " + std::to_string(res.Bmax));
        }
    };
    checkOne("theorem 2.1", rep.t21);
    checkOne("theorem 2.2", rep.t22);
    checkOne("theorem 2.3", rep.t23);
    return v;
}

/// Deterministic random window for property tests: 1-4 indicator terms with
/// scales and shifts valid on the grid, real or complex coefficients, in
/// either domain.
inline WindowSpec random_window(std::mt19937_64& rng, const GridSpec& grid) {
    WindowSpec spec;
    spec.domain = (rng() & 1) ? Domain::frequency : Domain::time;
    const int supportExp = (spec.domain == Domain::time) ? grid.M() : grid.N();
    const int resolutionExp = (spec.domain == Domain::time) ? grid.N() : grid.M();
    std::uniform_int_distribution<int> termCount(1, 4);
    std::uniform_int_distribution<int> kDist(std::max(-supportExp, -1),
                                             std::min(resolutionExp, 1));
    std::uniform_int_distribution<std::uint64_t> shiftDist(0, grid.size() - 1);
    std::uniform_real_distribution<double> coeffDist(-1.0, 1.0);
    const int count = termCount(rng);
    for (int i = 0; i < count; ++i) {
        WindowTerm term;
        term.k = kDist(rng);
        // bias the first term toward a centered indicator so that coverage
        // (gamma > 0) is reachable often enough to exercise the gates
        term.h = (i == 0) ? LocalFieldElement{}
                          : grid.pointAt(spec.domain, shiftDist(rng));
        const double re = coeffDist(rng);
        term.coeff = (rng() & 1) ? std::complex<double>{re, coeffDist(rng)}
                                 : std::complex<double>{re, 0.0};
        if (std::abs(term.coeff) < 0.05) term.coeff += 0.5;
        spec.terms.push_back(term);
    }
    return spec;
}

inline WindowSpec random_window(std::uint64_t seed, const GridSpec& grid) {
    std::mt19937_64 rng(seed);
    return random_window(rng, grid);
}

}  // namespace lfgabor
