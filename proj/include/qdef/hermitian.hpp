// Copyright 2026 The qdef Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Certified Hermitian matrices, the Jacobi eigen-oracle, zero padding to a
 * power-of-two dimension and exact unitary exponentials.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "definiteness.hpp"
#include "error.hpp"
#include "matrix.hpp"

namespace qdef {

inline constexpr double kDefaultHermitianTol = 1e-10;
inline constexpr double kDefaultZeroTol = 1e-10;
inline constexpr int kMaxJacobiSweeps = 100;

class HermitianMatrix;
HermitianMatrix validate_hermitian(const CMatrix &entries, double atol);
HermitianMatrix pad_to_power_of_two(const HermitianMatrix &m);

/// Dense Hermitian matrix. Instances only come out of validate_hermitian (or
/// operations that preserve Hermiticity), so holding one is the certificate.
///
/// When original_dim() < dim() the trailing rows and columns are exactly zero.
class HermitianMatrix {
  public:
    std::size_t dim() const noexcept { return entries_.dim(); }
    std::size_t original_dim() const noexcept { return original_dim_; }
    bool is_padded() const noexcept { return original_dim_ < dim(); }
    const CMatrix &entries() const noexcept { return entries_; }
    Complex operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

    /// The original_dim() x original_dim() block, with padding stripped.
    HermitianMatrix leading_block() const {
        if (!is_padded()) {
            return *this;
        }
        CMatrix block(original_dim_);
        for (std::size_t i = 0; i < original_dim_; ++i) {
            for (std::size_t j = 0; j < original_dim_; ++j) {
                block(i, j) = entries_(i, j);
            }
        }
        return HermitianMatrix(std::move(block), original_dim_);
    }

    HermitianMatrix operator-() const { return HermitianMatrix(-entries_, original_dim_); }

    bool is_zero() const { return entries_.max_abs() == 0.0; }

    static HermitianMatrix diagonal(std::span<const double> values) {
        return HermitianMatrix(CMatrix::diagonal(values), values.size());
    }

  private:
    HermitianMatrix(CMatrix entries, std::size_t original_dim)
        : entries_(std::move(entries)), original_dim_(original_dim) {}

    friend HermitianMatrix validate_hermitian(const CMatrix &entries, double atol);
    friend HermitianMatrix pad_to_power_of_two(const HermitianMatrix &m);

    CMatrix entries_;
    std::size_t original_dim_ = 0;
};

/// Certifies `entries` as Hermitian: max |M - M^dagger| must not exceed
/// atol * max |M_ij|. The stored matrix is the exact Hermitian part
/// (M + M^dagger) / 2, so downstream traces and diagonals are exactly real.
inline HermitianMatrix validate_hermitian(const CMatrix &entries, double atol = kDefaultHermitianTol) {
    if (!(atol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "hermiticity tolerance must be positive");
    }
    const std::size_t n = entries.dim();
    if (n == 0) {
        throw Error(ErrorCode::NonSquare, "matrix is empty");
    }
    for (const auto &z : entries.data()) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw Error(ErrorCode::InvalidArgument, "matrix has non-finite entries");
        }
    }
    const double scale = entries.max_abs();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            worst = std::max(worst, std::abs(entries(i, j) - std::conj(entries(j, i))));
        }
    }
    if (worst > atol * scale) {
        std::ostringstream msg;
        msg << std::setprecision(3) << "max |M - M^dagger| = " << worst << " exceeds tolerance "
            << atol * scale;
        throw Error(ErrorCode::NotHermitian, msg.str());
    }
    CMatrix sym(n);
    for (std::size_t i = 0; i < n; ++i) {
        sym(i, i) = entries(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (entries(i, j) + std::conj(entries(j, i)));
            sym(i, j) = avg;
            sym(j, i) = std::conj(avg);
        }
    }
    return HermitianMatrix(std::move(sym), n);
}

inline HermitianMatrix validate_hermitian(const std::vector<std::vector<Complex>> &rows,
                                          double atol = kDefaultHermitianTol) {
    return validate_hermitian(CMatrix::from_rows(rows), atol);
}

/// Eigenvalues ascending; eigenvectors stored as the matching columns.
struct Spectrum {
    std::vector<double> eigenvalues;
    CMatrix eigenvectors;

    std::vector<Complex> eigenvector(std::size_t i) const {
        std::vector<Complex> v(eigenvectors.dim());
        for (std::size_t r = 0; r < v.size(); ++r) {
            v[r] = eigenvectors(r, i);
        }
        return v;
    }

    /// V diag(f(lambda)) V^dagger for a scalar map f.
    template <typename F> CMatrix reconstruct(F &&f) const {
        const std::size_t n = eigenvectors.dim();
        CMatrix out(n);
        for (std::size_t k = 0; k < n; ++k) {
            const Complex w = f(eigenvalues[k]);
            for (std::size_t i = 0; i < n; ++i) {
                const Complex vik = eigenvectors(i, k) * w;
                for (std::size_t j = 0; j < n; ++j) {
                    out(i, j) += vik * std::conj(eigenvectors(j, k));
                }
            }
        }
        return out;
    }
};

namespace detail {

// One complex Jacobi rotation J annihilating a(p, q): first a diagonal phase
// on column q makes a(p, q) real, then the classical real rotation follows.
// Applies a <- J^dagger a J and v <- v J.
inline void jacobi_rotate(CMatrix &a, CMatrix &v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    const Complex phase = apq / mag;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double theta = (aqq - app) / (2.0 * mag);
    double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) {
        t = -t;
    }
    const double cs = 1.0 / std::sqrt(t * t + 1.0);
    const double sn = t * cs;

    const Complex jqp = -sn * std::conj(phase);
    const Complex jqq = cs * std::conj(phase);
    const std::size_t n = a.dim();

    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * cs + akq * jqp;
        a(k, q) = akp * sn + akq * jqq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = cs * apk + std::conj(jqp) * aqk;
        a(q, k) = sn * apk + std::conj(jqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = app - t * mag;
    a(q, q) = aqq + t * mag;

    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = vkp * cs + vkq * jqp;
        v(k, q) = vkp * sn + vkq * jqq;
    }
}

} // namespace detail

/// Cyclic Jacobi diagonalization, fixed (p, q) sweep order. Throws
/// NoConvergence after kMaxJacobiSweeps sweeps.
inline Spectrum eigen_decompose(const HermitianMatrix &m) {
    CMatrix a = m.entries();
    const std::size_t n = a.dim();
    CMatrix v = CMatrix::identity(n);

    double fro2 = 0.0;
    for (const auto &z : a.data()) {
        fro2 += std::norm(z);
    }
    const double stop2 = fro2 * 1e-30;

    bool converged = false;
    for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
        double off2 = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off2 += std::norm(a(p, q));
            }
        }
        if (off2 <= stop2) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a(p, q) != Complex{}) {
                    detail::jacobi_rotate(a, v, p, q);
                }
            }
        }
    }
    if (!converged) {
        throw Error(ErrorCode::NoConvergence,
                    "Jacobi did not converge in " + std::to_string(kMaxJacobiSweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });
    Spectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors = CMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) {
            out.eigenvectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

/// Sign class from an explicit list of eigenvalues; |lambda| <= ztol counts as zero.
/// An all-zero spectrum is reported as PositiveSemiDefinite.
inline DefinitenessClass classify_eigenvalues(std::span<const double> eigenvalues,
                                              double ztol = kDefaultZeroTol) {
    bool any_pos = false;
    bool any_neg = false;
    bool any_zero = false;
    for (double l : eigenvalues) {
        if (l > ztol) {
            any_pos = true;
        } else if (l < -ztol) {
            any_neg = true;
        } else {
            any_zero = true;
        }
    }
    if (any_pos && any_neg) {
        return DefinitenessClass::Indefinite;
    }
    if (any_neg) {
        return any_zero ? DefinitenessClass::NegativeSemiDefinite
                        : DefinitenessClass::NegativeDefinite;
    }
    return any_zero ? DefinitenessClass::PositiveSemiDefinite : DefinitenessClass::PositiveDefinite;
}

/// Ground truth via the eigen-oracle. Padded null rows are excluded.
inline DefinitenessClass ground_truth_class(const HermitianMatrix &m, double ztol = kDefaultZeroTol) {
    const Spectrum s = eigen_decompose(m.leading_block());
    return classify_eigenvalues(s.eigenvalues, ztol);
}

inline std::size_t next_power_of_two(std::size_t d) {
    std::size_t n = 1;
    while (n < d) {
        n <<= 1;
    }
    return n;
}

inline unsigned log2_exact(std::size_t n) {
    unsigned m = 0;
    while ((std::size_t{1} << m) < n) {
        ++m;
    }
    if ((std::size_t{1} << m) != n) {
        throw Error(ErrorCode::DimensionMismatch, std::to_string(n) + " is not a power of two");
    }
    return m;
}

/// Embeds M into the next power-of-two dimension with zero rows and columns.
/// Returns M unchanged when its dimension is already a power of two.
inline HermitianMatrix pad_to_power_of_two(const HermitianMatrix &m) {
    const std::size_t d = m.dim();
    const std::size_t n = next_power_of_two(d);
    if (n == d) {
        return m;
    }
    CMatrix padded(n);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            padded(i, j) = m(i, j);
        }
    }
    return HermitianMatrix(std::move(padded), m.original_dim());
}

/// exp(i t M) from a precomputed spectrum.
inline CMatrix unitary_from_spectrum(const Spectrum &s, double t) {
    return s.reconstruct([t](double lambda) { return std::polar(1.0, lambda * t); });
}

/// U = V diag(exp(i lambda_j t)) V^dagger.
inline CMatrix matrix_exponential_unitary(const HermitianMatrix &m, double t) {
    return unitary_from_spectrum(eigen_decompose(m), t);
}

} // namespace qdef
