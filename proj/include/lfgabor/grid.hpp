#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lfgabor/field.hpp"
#include "lfgabor/laurent.hpp"

namespace lfgabor {

enum class Domain { time, frequency };

inline const char* domainName(Domain d) { return d == Domain::time ? "time" : "frequency"; }

/// The finite quotient group the model lives on.
///
/// Time side: B^{-M}/B^{N}, sampled at x_j = u(j)*pr^N, cell measure q^{-N}.
/// Frequency side (dual group): B^{-N}/B^{M}, sampled at xi_i = u(i)*pr^M,
/// cell measure q^{-M}. Both have D = q^{M+N} cells, and the group operation
/// on cell indices is digitwise GF(q) addition (no carries).
class GridSpec {
public:
    GridSpec(FieldParams field, int M, int N)
        : field_(std::move(field)), M_(M), N_(N) {
        if (M < 0) throw std::invalid_argument("grid.M: must be >= 0");
        if (N < 0) throw std::invalid_argument("grid.N: must be >= 0");
        const int q = field_.q();
        size_ = 1;
        for (int i = 0; i < M + N; ++i) {
            if (size_ > (1u << 20) / static_cast<std::uint64_t>(q))
                throw std::invalid_argument("grid: D = q^(M+N) exceeds 2^20");
            size_ *= static_cast<std::uint64_t>(q);
        }
    }

    const FieldParams& field() const { return field_; }
    int M() const { return M_; }
    int N() const { return N_; }
    std::uint64_t size() const { return size_; }

    /// q^e for small nonnegative e, as an index stride.
    std::uint64_t qpow(int e) const {
        std::uint64_t r = 1;
        for (int i = 0; i < e; ++i) r *= static_cast<std::uint64_t>(field_.q());
        return r;
    }

    double cellMeasure(Domain d) const {
        const int e = (d == Domain::time) ? N_ : M_;
        return std::pow(static_cast<double>(field_.q()), -static_cast<double>(e));
    }

    std::uint64_t indexAdd(std::uint64_t i, std::uint64_t j) const { return u_index_add(field_, i, j); }
    std::uint64_t indexSub(std::uint64_t i, std::uint64_t j) const { return u_index_sub(field_, i, j); }
    std::uint64_t indexNeg(std::uint64_t i) const { return u_index_neg(field_, i); }

    /// The sample point of cell j: u(j)*pr^N (time) or u(j)*pr^M (frequency).
    LocalFieldElement pointAt(Domain d, std::uint64_t j) const {
        checkIndex(j);
        LocalFieldElement e = u_of(field_, j);
        e.valuation += (d == Domain::time) ? N_ : M_;
        return lf_canonicalize(e);
    }

    /// Cell index of a grid point, or nullopt when x does not lie on the
    /// sample lattice (digits outside the representable exponent band).
    std::optional<std::uint64_t> indexOf(Domain d, const LocalFieldElement& x) const {
        if (x.isZero()) return 0;
        const int shift = (d == Domain::time) ? N_ : M_;
        // x = u(j)*pr^shift requires digits at exponents [shift - (M+N), shift - 1]
        const int top = x.valuation + static_cast<int>(x.coeffs.size()) - 1;
        if (x.valuation < shift - (M_ + N_) || top > shift - 1) return std::nullopt;
        std::uint64_t j = 0;
        for (int e = top; e >= x.valuation; --e) {
            const int r = shift - 1 - e;  // digit position of exponent e
            j += static_cast<std::uint64_t>(x.coeffAt(e).rep) * qpow(r);
        }
        return j;
    }

    friend bool operator==(const GridSpec& a, const GridSpec& b) {
        return a.field_ == b.field_ && a.M_ == b.M_ && a.N_ == b.N_;
    }

private:
    void checkIndex(std::uint64_t j) const {
        if (j >= size_) throw std::out_of_range("grid: cell index out of range");
    }

    FieldParams field_;
    int M_, N_;
    std::uint64_t size_;
};

/// A complex-valued function on one side of the grid, one value per cell.
struct SampledFunction {
    GridSpec grid;
    Domain domain = Domain::time;
    std::vector<std::complex<double>> values;

    static SampledFunction zeros(const GridSpec& g, Domain d) {
        return {g, d, std::vector<std::complex<double>>(g.size(), {0.0, 0.0})};
    }
};

inline void checkSameShape(const SampledFunction& a, const SampledFunction& b) {
    if (!(a.grid == b.grid) || a.domain != b.domain)
        throw std::invalid_argument("sampled functions live on different grids/domains");
}

/// Haar-weighted inner product <f, g> = w * sum f_j conj(g_j).
inline std::complex<double> innerProduct(const SampledFunction& f, const SampledFunction& g) {
    checkSameShape(f, g);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < f.values.size(); ++j)
        acc += f.values[j] * std::conj(g.values[j]);
    return acc * f.grid.cellMeasure(f.domain);
}

inline double normSquared(const SampledFunction& f) {
    double acc = 0.0;
    for (const auto& v : f.values) acc += std::norm(v);
    return acc * f.grid.cellMeasure(f.domain);
}

}  // namespace lfgabor
