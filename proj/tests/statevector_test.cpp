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

#include "qdef/statevector.hpp"

#include <numbers>
#include <random>
#include <vector>

#include "gtest/gtest.h"

#include "oracles.hpp"
#include "qdef/bounds.hpp"
#include "qdef/classifier.hpp"

using namespace qdef;

namespace {

const std::vector<Complex> kOne = {1.0};

// Ancilla-only register (one-dimensional system) holding `v`.
Statevector ancilla_state(const std::vector<Complex> &v) {
    unsigned n = 0;
    while ((std::size_t{1} << n) < v.size()) {
        ++n;
    }
    Statevector s(n, kOne);
    std::copy(v.begin(), v.end(), s.amplitudes().begin());
    return s;
}

std::vector<Complex> amplitudes_of(const Statevector &s) {
    return {s.amplitudes().begin(), s.amplitudes().end()};
}

} // namespace

TEST(statevector, initial_layout) {
    const std::vector<Complex> b = {0.6, Complex(0.0, 0.8)};
    const Statevector s(3, b);
    EXPECT_EQ(s.ancilla_qubits(), 3u);
    EXPECT_EQ(s.system_qubits(), 1u);
    EXPECT_EQ(s.total_qubits(), 4u);
    EXPECT_EQ(s.ancilla_qubit(0), 1u);
    ASSERT_EQ(s.amplitudes().size(), 16u);
    EXPECT_EQ(s.amplitudes()[0], b[0]);
    EXPECT_EQ(s.amplitudes()[1], b[1]);
    EXPECT_NEAR(s.norm(), 1.0, 1e-15);
}

TEST(inverse_qft, one_qubit_is_hadamard) {
    auto s = ancilla_state({1.0, 0.0});
    inverse_qft(s);
    EXPECT_NEAR(std::abs(s.amplitudes()[0] - std::numbers::sqrt2 / 2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.amplitudes()[1] - std::numbers::sqrt2 / 2), 0.0, 1e-15);
    auto t = ancilla_state({0.0, 1.0});
    inverse_qft(t);
    EXPECT_NEAR(std::abs(t.amplitudes()[1] + std::numbers::sqrt2 / 2), 0.0, 1e-15);
}

TEST(inverse_qft, uniform_to_delta) {
    for (std::size_t size : {2u, 8u, 64u}) {
        std::vector<Complex> v(size, 1.0 / std::sqrt(static_cast<double>(size)));
        auto s = ancilla_state(v);
        inverse_qft(s);
        EXPECT_NEAR(std::norm(s.amplitudes()[0]), 1.0, 1e-12);
    }
}

TEST(inverse_qft, matches_dense_inverse_dft) {
    std::mt19937_64 rng(41);
    for (std::size_t size : {2u, 4u, 8u, 32u, 128u}) {
        const auto v = oracle::random_unit_vector(size, rng);
        auto s = ancilla_state(v);
        inverse_qft(s);
        const auto want = oracle::apply_inverse_dft(v);
        for (std::size_t i = 0; i < size; ++i) {
            ASSERT_LT(std::abs(s.amplitudes()[i] - want[i]), 1e-12) << "size " << size << " index " << i;
        }
    }
}

TEST(qft, round_trip_is_identity) {
    std::mt19937_64 rng(42);
    const auto b = oracle::random_unit_vector(4, rng);
    Statevector s(5, b);
    for (unsigned k = 0; k < 5; ++k) {
        s.apply_hadamard(s.ancilla_qubit(k));
    }
    s.apply_controlled_phase(s.ancilla_qubit(1), s.ancilla_qubit(3), 0.7);
    const auto before = amplitudes_of(s);
    qft(s);
    inverse_qft(s);
    for (std::size_t i = 0; i < before.size(); ++i) {
        ASSERT_LT(std::abs(s.amplitudes()[i] - before[i]), 1e-12);
    }
    inverse_qft(s, 1, 3);
    qft(s, 1, 3);
    for (std::size_t i = 0; i < before.size(); ++i) {
        ASSERT_LT(std::abs(s.amplitudes()[i] - before[i]), 1e-12);
    }
}

TEST(statevector, gate_argument_errors) {
    Statevector s(2, kOne);
    EXPECT_THROW(s.apply_hadamard(2), Error);
    EXPECT_THROW(s.apply_controlled_phase(0, 0, 1.0), Error);
    EXPECT_THROW(s.apply_swap(0, 5), Error);
    EXPECT_THROW(inverse_qft(s, 1, 2), Error);
}

TEST(marginal_msb, deltas_and_sum) {
    auto zero = ancilla_state({1.0, 0.0, 0.0, 0.0});
    EXPECT_EQ(marginal_msb(zero).p0, 1.0);
    EXPECT_EQ(marginal_msb(zero).p1, 0.0);
    auto top = ancilla_state({0.0, 0.0, 1.0, 0.0});
    EXPECT_EQ(marginal_msb(top).p0, 0.0);
    EXPECT_EQ(marginal_msb(top).p1, 1.0);
    std::mt19937_64 rng(43);
    const auto b = oracle::random_unit_vector(2, rng);
    Statevector s(4, b);
    for (unsigned k = 0; k < 4; ++k) {
        s.apply_hadamard(s.ancilla_qubit(k));
    }
    s.apply_controlled_phase(0, s.ancilla_qubit(3), 1.1);
    const auto m = marginal_msb(s);
    EXPECT_NEAR(m.p0 + m.p1, 1.0, 1e-12);
}

TEST(controlled_power_unitary, matches_taylor_powers) {
    std::mt19937_64 rng(44);
    const auto m = validate_hermitian(oracle::random_hermitian(4, rng));
    const double c = scale_constant(eigenvalue_bounds(m));
    const Spectrum spectrum = eigen_decompose(m);
    CMatrix power = oracle::expm_taylor(m.entries(), 2.0 * std::numbers::pi / c);
    for (unsigned k = 0; k < 6; ++k) {
        ASSERT_LT(max_abs_diff(controlled_power_unitary(spectrum, c, k), power), 1e-9) << "k " << k;
        power = power * power;
    }
}

TEST(run_qpe_statevector, exact_positive_phase) {
    const double c = 0.8;
    const auto m = HermitianMatrix::diagonal(std::vector<double>{0.25 * c, -0.25 * c});
    const std::vector<Complex> up = {1.0, 0.0};
    const auto s = run_qpe_statevector(m, c, 3, up);
    EXPECT_NEAR(marginal_msb(s).p0, 1.0, 1e-12);
    EXPECT_NEAR(ancilla_marginal(s).p[2], 1.0, 1e-12);
}

TEST(run_qpe_statevector, exact_negative_phase) {
    const double c = 0.8;
    const auto m = HermitianMatrix::diagonal(std::vector<double>{0.25 * c, -0.25 * c});
    const std::vector<Complex> down = {0.0, 1.0};
    const auto s = run_qpe_statevector(m, c, 3, down);
    EXPECT_NEAR(marginal_msb(s).p1, 1.0, 1e-12);
    EXPECT_NEAR(ancilla_marginal(s).p[6], 1.0, 1e-12);
}

TEST(run_qpe_statevector, argument_errors) {
    const auto m = HermitianMatrix::diagonal(std::vector<double>{0.1, 0.2});
    const std::vector<Complex> b = {1.0, 0.0};
    const std::vector<Complex> wrong = {1.0, 0.0, 0.0, 0.0};
    const std::vector<Complex> unnormalized = {1.0, 1.0};
    auto code = [](auto &&f) {
        try {
            f();
        } catch (const Error &e) {
            return e.code();
        }
        return ErrorCode::ParseError;
    };
    EXPECT_EQ(code([&] { run_qpe_statevector(m, 1.0, 3, wrong); }), ErrorCode::DimensionMismatch);
    EXPECT_EQ(code([&] { run_qpe_statevector(m, 0.0, 3, b); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code([&] { run_qpe_statevector(m, 1.0, 0, b); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code([&] { run_qpe_statevector(m, 1.0, 3, unnormalized); }), ErrorCode::InvalidArgument);
    const auto three = HermitianMatrix::diagonal(std::vector<double>{0.1, 0.2, 0.3});
    const std::vector<Complex> b3 = {1.0, 0.0, 0.0};
    EXPECT_EQ(code([&] { run_qpe_statevector(three, 1.0, 3, b3); }), ErrorCode::DimensionMismatch);
}

// Norm stays 1 after every stage of the circuit.
TEST(run_qpe_statevector, unit_norm_each_stage) {
    std::mt19937_64 rng(45);
    const auto m = validate_hermitian(oracle::random_hermitian(4, rng));
    const auto b = oracle::random_unit_vector(4, rng);
    const Spectrum spectrum = eigen_decompose(m);
    const double c = scale_constant(eigenvalue_bounds(m));
    const unsigned n = 6;
    Statevector s(n, b);
    for (unsigned k = 0; k < n; ++k) {
        s.apply_hadamard(s.ancilla_qubit(k));
        ASSERT_NEAR(s.norm(), 1.0, 1e-10);
    }
    for (unsigned k = 0; k < n; ++k) {
        s.apply_controlled_system_unitary(k, controlled_power_unitary(spectrum, c, k));
        ASSERT_NEAR(s.norm(), 1.0, 1e-10);
    }
    inverse_qft(s);
    ASSERT_NEAR(s.norm(), 1.0, 1e-10);
    const auto direct = run_qpe_statevector(spectrum, c, n, b);
    for (std::size_t i = 0; i < direct.amplitudes().size(); ++i) {
        ASSERT_EQ(direct.amplitudes()[i], s.amplitudes()[i]);
    }
}

TEST(run_qpe_statevector, matches_analytic_distribution) {
    std::mt19937_64 rng(46);
    for (int rep = 0; rep < 40; ++rep) {
        const unsigned n = 3 + static_cast<unsigned>(rep % 6);
        const auto m = validate_hermitian(oracle::random_hermitian(4, rng));
        const auto b = oracle::random_unit_vector(4, rng);
        const double c = scale_constant(eigenvalue_bounds(m));
        const auto sim = ancilla_marginal(run_qpe_statevector(m, c, n, b));
        const auto analytic = ensemble_distribution(phase_ensemble(eigen_decompose(m), c, b), n);
        ASSERT_LT(total_variation(sim, analytic), 1e-8) << "rep " << rep;
        const auto msb = marginal_msb(run_qpe_statevector(m, c, n, b));
        ASSERT_NEAR(msb.p0 - msb.p1, sigma_z_expectation(analytic), 1e-8);
    }
}

TEST(run_qpe_statevector, eigenvector_input_gives_single_phase) {
    std::mt19937_64 rng(47);
    const auto m = validate_hermitian(oracle::random_hermitian(2, rng));
    const Spectrum spectrum = eigen_decompose(m);
    const double c = scale_constant(eigenvalue_bounds(m));
    const auto v = spectrum.eigenvector(0);
    const auto sim = ancilla_marginal(run_qpe_statevector(m, c, 5, v));
    double direct_tv = 0.0;
    for (std::size_t x = 0; x < sim.p.size(); ++x) {
        direct_tv += std::abs(sim.p[x] - oracle::direct_phase_probability(
                                             spectrum.eigenvalues[0] / c, 5, static_cast<long long>(x)));
    }
    EXPECT_LT(direct_tv / 2.0, 1e-9);
}
