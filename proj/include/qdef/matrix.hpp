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

#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "error.hpp"

namespace qdef {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major.
class CMatrix {
  public:
    CMatrix() = default;
    explicit CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    static CMatrix identity(std::size_t dim) {
        CMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static CMatrix diagonal(std::span<const double> values) {
        CMatrix m(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            m(i, i) = values[i];
        }
        return m;
    }

    /// Builds from nested rows; throws NonSquare when the rows are ragged or
    /// their count differs from their length.
    static CMatrix from_rows(const std::vector<std::vector<Complex>> &rows) {
        const std::size_t dim = rows.size();
        CMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            if (rows[i].size() != dim) {
                throw Error(ErrorCode::NonSquare, "row " + std::to_string(i) + " has " +
                                                      std::to_string(rows[i].size()) +
                                                      " entries, expected " +
                                                      std::to_string(dim));
            }
            std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * dim);
        }
        return m;
    }

    std::size_t dim() const noexcept { return dim_; }

    Complex &operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const Complex &operator()(std::size_t i, std::size_t j) const {
        return data_[i * dim_ + j];
    }

    std::span<Complex> data() noexcept { return data_; }
    std::span<const Complex> data() const noexcept { return data_; }

    CMatrix adjoint() const {
        CMatrix out(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                out(j, i) = std::conj((*this)(i, j));
            }
        }
        return out;
    }

    CMatrix operator*(const CMatrix &rhs) const {
        assert(rhs.dim_ == dim_);
        CMatrix out(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t k = 0; k < dim_; ++k) {
                const Complex a = (*this)(i, k);
                if (a == Complex{}) {
                    continue;
                }
                for (std::size_t j = 0; j < dim_; ++j) {
                    out(i, j) += a * rhs(k, j);
                }
            }
        }
        return out;
    }

    std::vector<Complex> operator*(std::span<const Complex> v) const {
        assert(v.size() == dim_);
        std::vector<Complex> out(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            Complex acc{};
            for (std::size_t j = 0; j < dim_; ++j) {
                acc += (*this)(i, j) * v[j];
            }
            out[i] = acc;
        }
        return out;
    }

    CMatrix operator-() const {
        CMatrix out(*this);
        for (auto &z : out.data_) {
            z = -z;
        }
        return out;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto &z : data_) {
            m = std::max(m, std::abs(z));
        }
        return m;
    }

    bool operator==(const CMatrix &) const = default;

  private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// Largest entrywise modulus of a - b.
inline double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    assert(a.dim() == b.dim());
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    }
    return m;
}

inline double norm2(std::span<const Complex> v) {
    double acc = 0.0;
    for (const auto &z : v) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

inline Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    assert(a.size() == b.size());
    Complex acc{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

} // namespace qdef
