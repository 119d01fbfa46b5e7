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
 * Dense statevector over an n-qubit ancilla register and an m-qubit system
 * register, with the handful of gates the phase-estimation circuit needs.
 *
 * Layout: global index = x * 2^m + j, x the ancilla integer and j the system
 * index. Qubit q refers to bit q of the global index, so system qubits are
 * 0..m-1 and ancilla qubit k is global qubit m + k. Ancilla qubit n-1 is the
 * most significant bit of x.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "hermitian.hpp"
#include "matrix.hpp"
#include "qpe.hpp"

namespace qdef {

class Statevector {
  public:
    /// |0...0>_ancilla (x) |b>_system.
    Statevector(unsigned ancilla, std::span<const Complex> system_state)
        : ancilla_(ancilla), system_(log2_exact(system_state.size())),
          amps_(system_state.size() << ancilla) {
        std::copy(system_state.begin(), system_state.end(), amps_.begin());
    }

    unsigned ancilla_qubits() const noexcept { return ancilla_; }
    unsigned system_qubits() const noexcept { return system_; }
    unsigned total_qubits() const noexcept { return ancilla_ + system_; }
    std::size_t system_dim() const noexcept { return std::size_t{1} << system_; }

    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    std::span<Complex> amplitudes() noexcept { return amps_; }

    unsigned ancilla_qubit(unsigned k) const { return system_ + k; }

    double norm() const { return norm2(amps_); }

    void apply_hadamard(unsigned q) {
        check_qubit(q);
        const std::size_t stride = std::size_t{1} << q;
        const double r = std::numbers::sqrt2 / 2.0;
        for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
            for (std::size_t i = base; i < base + stride; ++i) {
                const Complex a = amps_[i];
                const Complex b = amps_[i + stride];
                amps_[i] = r * (a + b);
                amps_[i + stride] = r * (a - b);
            }
        }
    }

    /// diag(1, 1, 1, e^{i angle}) on (control, target).
    void apply_controlled_phase(unsigned control, unsigned target, double angle) {
        check_qubit(control);
        check_qubit(target);
        if (control == target) {
            throw Error(ErrorCode::InvalidArgument, "control and target must differ");
        }
        const std::size_t mask = (std::size_t{1} << control) | (std::size_t{1} << target);
        const Complex phase = std::polar(1.0, angle);
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if ((i & mask) == mask) {
                amps_[i] *= phase;
            }
        }
    }

    void apply_swap(unsigned a, unsigned b) {
        check_qubit(a);
        check_qubit(b);
        if (a == b) {
            return;
        }
        const std::size_t ma = std::size_t{1} << a;
        const std::size_t mb = std::size_t{1} << b;
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if ((i & ma) && !(i & mb)) {
                std::swap(amps_[i], amps_[(i ^ ma) | mb]);
            }
        }
    }

    /// Applies `u` to the system register on the branch where ancilla qubit
    /// `control` is |1>.
    void apply_controlled_system_unitary(unsigned control, const CMatrix &u) {
        if (control >= ancilla_) {
            throw Error(ErrorCode::InvalidArgument, "control must be an ancilla qubit");
        }
        const std::size_t block = system_dim();
        if (u.dim() != block) {
            throw Error(ErrorCode::DimensionMismatch, "system unitary has the wrong dimension");
        }
        std::vector<Complex> tmp(block);
        const std::size_t blocks = std::size_t{1} << ancilla_;
        for (std::size_t x = 0; x < blocks; ++x) {
            if (!((x >> control) & 1U)) {
                continue;
            }
            Complex *amp = amps_.data() + x * block;
            for (std::size_t i = 0; i < block; ++i) {
                Complex acc{};
                for (std::size_t j = 0; j < block; ++j) {
                    acc += u(i, j) * amp[j];
                }
                tmp[i] = acc;
            }
            std::copy(tmp.begin(), tmp.end(), amp);
        }
    }

  private:
    void check_qubit(unsigned q) const {
        if (q >= total_qubits()) {
            throw Error(ErrorCode::InvalidArgument, "qubit " + std::to_string(q) + " out of range");
        }
    }

    unsigned ancilla_;
    unsigned system_;
    std::vector<Complex> amps_;
};

/// Inverse QFT on ancilla qubits [first, first + count), gate by gate:
/// from the top qubit down, undo the controlled phases of the already
/// decoded qubits and apply H, then the bit-reversal swap network. Maps
/// 2^{-count/2} sum_x e^{2 pi i x y / 2^count} |x> to |y>.
inline void inverse_qft(Statevector &state, unsigned first, unsigned count) {
    if (first + count > state.ancilla_qubits()) {
        throw Error(ErrorCode::InvalidArgument, "ancilla range out of bounds");
    }
    const auto q = [&](unsigned k) { return state.ancilla_qubit(first + k); };
    for (unsigned j = count; j-- > 0;) {
        for (unsigned l = j + 1; l < count; ++l) {
            state.apply_controlled_phase(q(l), q(j),
                                         -2.0 * std::numbers::pi / std::ldexp(1.0, static_cast<int>(l - j + 1)));
        }
        state.apply_hadamard(q(j));
    }
    for (unsigned j = 0; j < count / 2; ++j) {
        state.apply_swap(q(j), q(count - 1 - j));
    }
}

inline void inverse_qft(Statevector &state) { inverse_qft(state, 0, state.ancilla_qubits()); }

/// Forward QFT, the exact gate-reversed adjoint of inverse_qft.
inline void qft(Statevector &state, unsigned first, unsigned count) {
    if (first + count > state.ancilla_qubits()) {
        throw Error(ErrorCode::InvalidArgument, "ancilla range out of bounds");
    }
    const auto q = [&](unsigned k) { return state.ancilla_qubit(first + k); };
    for (unsigned j = 0; j < count / 2; ++j) {
        state.apply_swap(q(j), q(count - 1 - j));
    }
    for (unsigned j = 0; j < count; ++j) {
        state.apply_hadamard(q(j));
        for (unsigned l = count; l-- > j + 1;) {
            state.apply_controlled_phase(q(l), q(j),
                                         2.0 * std::numbers::pi / std::ldexp(1.0, static_cast<int>(l - j + 1)));
        }
    }
}

inline void qft(Statevector &state) { qft(state, 0, state.ancilla_qubits()); }

/// U^{2^k} for U = exp(2 pi i M / C). The phase 2^k * lambda / C is reduced
/// mod 1 before exponentiation; scaling by 2^k is exact in floating point.
inline CMatrix controlled_power_unitary(const Spectrum &spectrum, double scale, unsigned k) {
    return spectrum.reconstruct([&](double lambda) {
        const double turns = std::ldexp(lambda / scale, static_cast<int>(k));
        return std::polar(1.0, 2.0 * std::numbers::pi * (turns - std::floor(turns)));
    });
}

/// Full phase-estimation circuit: Hadamards on the ancilla, controlled
/// U^{2^k} on ancilla qubit k for U = exp(+2 pi i M / C), inverse QFT.
/// Eigenphases are theta_i = lambda_i / C.
inline Statevector run_qpe_statevector(const Spectrum &spectrum, double scale, unsigned n,
                                       std::span<const Complex> b) {
    if (b.size() != spectrum.eigenvectors.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "initial vector length " + std::to_string(b.size()) +
                                                      " does not match matrix dimension " +
                                                      std::to_string(spectrum.eigenvectors.dim()));
    }
    if (!(scale > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "scale constant must be positive");
    }
    if (n < 1) {
        throw Error(ErrorCode::InvalidArgument, "need at least one ancilla qubit");
    }
    if (std::abs(norm2(b) - 1.0) > 1e-10) {
        throw Error(ErrorCode::InvalidArgument, "initial vector must be normalized");
    }
    Statevector state(n, b);
    for (unsigned k = 0; k < n; ++k) {
        state.apply_hadamard(state.ancilla_qubit(k));
    }
    for (unsigned k = 0; k < n; ++k) {
        state.apply_controlled_system_unitary(k, controlled_power_unitary(spectrum, scale, k));
    }
    inverse_qft(state);
    return state;
}

inline Statevector run_qpe_statevector(const HermitianMatrix &m, double scale, unsigned n,
                                       std::span<const Complex> b) {
    if (b.size() != m.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "initial vector does not match matrix dimension");
    }
    log2_exact(m.dim());
    return run_qpe_statevector(eigen_decompose(m), scale, n, b);
}

/// Outcome distribution of the ancilla register, system traced out.
inline AncillaDistribution ancilla_marginal(const Statevector &state) {
    AncillaDistribution d;
    d.n = state.ancilla_qubits();
    d.p.assign(std::size_t{1} << d.n, 0.0);
    const std::size_t block = state.system_dim();
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        d.p[i / block] += std::norm(amps[i]);
    }
    return d;
}

struct MsbMarginal {
    double p0 = 0.0;
    double p1 = 0.0;
};

/// Probabilities of reading 0 / 1 on ancilla qubit n-1.
inline MsbMarginal marginal_msb(const Statevector &state) {
    MsbMarginal out;
    const std::size_t half = state.amplitudes().size() / 2;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < half; ++i) {
        out.p0 += std::norm(amps[i]);
    }
    for (std::size_t i = half; i < amps.size(); ++i) {
        out.p1 += std::norm(amps[i]);
    }
    return out;
}

} // namespace qdef
