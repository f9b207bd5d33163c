// Copyright 2026 The EDSS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "edss/error.hpp"
#include "edss/tensor.hpp"

namespace edss {

struct DiscordResult {
    double value = 0.0;
    double theta = 0.0;  ///< Bloch polar angle of the optimal projector, [0, pi]
    double phi = 0.0;    ///< Bloch azimuth, [0, 2 pi)
    LogBase base = LogBase::two;
    double state_entropy = 0.0;     ///< S(rho)
    double measured_entropy = 0.0;  ///< S(Pi(rho)) at the optimum
    std::size_t refinement_steps = 0;
};

struct DiscordOptions {
    std::size_t grid_theta = 64;
    std::size_t grid_phi = 64;
    double angle_tolerance = 1e-6;
    std::size_t max_iterations = 100000;
};

namespace detail {

inline std::array<Vector, 2> measurement_basis(double theta, double phi) {
    Vector v0(2);
    Vector v1(2);
    const Complex e{std::cos(phi), std::sin(phi)};
    v0 << std::cos(theta / 2), e * std::sin(theta / 2);
    v1 << -std::conj(e) * std::sin(theta / 2), std::cos(theta / 2);
    return {v0, v1};
}

inline void require_two_qubits(const DensityMatrix &rho, const std::string &measured) {
    const auto &reg = rho.reg();
    if (reg.size() != 2 || reg.dim(0) != 2 || reg.dim(1) != 2) {
        throw ArgumentError("discord: only two-qubit states are supported");
    }
    (void)reg.index_of(measured);
}

} // namespace detail

/// Entropy of sum_j pi_j rho pi_j for the rank-1 projectors along Bloch direction (theta, phi).
inline double measured_entropy(const DensityMatrix &rho, const std::string &measured, double theta, double phi,
                               LogBase base = LogBase::two) {
    detail::require_two_qubits(rho, measured);
    require_unit_trace(rho, "discord");
    const std::vector<std::string> labels{measured};
    Matrix out = Matrix::Zero(4, 4);
    for (const auto &v : detail::measurement_basis(theta, phi)) {
        const Matrix p = embed(rho.reg(), labels, v * v.adjoint());
        out += p * rho.matrix() * p;
    }
    return shannon_entropy(eigvalsh(out), base);
}

/**
 * Relative entropy of discord with a rank-1 projective measurement on
 * `measured`: min over projectors of S(Pi(rho)), minus S(rho). A 64x64 grid
 * over the Bloch sphere seeds a compass search that halves its step down to
 * `angle_tolerance`.
 */
inline DiscordResult discord(const DensityMatrix &rho, const std::string &measured, LogBase base = LogBase::two,
                             const DiscordOptions &opt = {}) {
    detail::require_two_qubits(rho, measured);
    require_unit_trace(rho, "discord");
    constexpr double pi = std::numbers::pi;
    auto f = [&](double t, double p) { return measured_entropy(rho, measured, t, p, base); };

    double best_t = 0.0;
    double best_p = 0.0;
    double best = f(0.0, 0.0);
    const double dt = pi / static_cast<double>(opt.grid_theta - 1);
    const double dp = 2 * pi / static_cast<double>(opt.grid_phi);
    for (std::size_t i = 0; i < opt.grid_theta; ++i) {
        for (std::size_t j = 0; j < opt.grid_phi; ++j) {
            const double t = dt * static_cast<double>(i);
            const double p = dp * static_cast<double>(j);
            const double v = f(t, p);
            if (v < best) {
                best = v;
                best_t = t;
                best_p = p;
            }
        }
    }

    auto wrap = [&](double t, double p) {
        // reflect theta into [0, pi]; crossing a pole shifts phi by pi
        if (t < 0) {
            t = -t;
            p += pi;
        } else if (t > pi) {
            t = 2 * pi - t;
            p += pi;
        }
        p = std::fmod(p, 2 * pi);
        if (p < 0) {
            p += 2 * pi;
        }
        return std::array<double, 2>{t, p};
    };

    double step = dt;
    std::size_t iter = 0;
    while (step >= opt.angle_tolerance) {
        if (++iter > opt.max_iterations) {
            throw NumericError("discord: refinement did not converge; best so far " + std::to_string(best) +
                               " at theta=" + std::to_string(best_t) + ", phi=" + std::to_string(best_p));
        }
        bool improved = false;
        constexpr std::array<std::array<double, 2>, 4> moves{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
        for (const auto &m : moves) {
            const auto [t, p] = wrap(best_t + m[0] * step, best_p + m[1] * step);
            const double v = f(t, p);
            if (v < best - 1e-15) {
                best = v;
                best_t = t;
                best_p = p;
                improved = true;
                break;
            }
        }
        if (!improved) {
            step /= 2;
        }
    }

    DiscordResult r;
    r.base = base;
    r.theta = best_t;
    r.phi = best_p;
    r.measured_entropy = best;
    r.state_entropy = von_neumann_entropy(rho, base);
    r.value = best - r.state_entropy;
    r.refinement_steps = iter;
    return r;
}

/// Measured entropy on a regular (theta, phi) grid, row-major in theta.
inline std::vector<std::array<double, 3>> discord_landscape(const DensityMatrix &rho, const std::string &measured,
                                                            LogBase base, std::size_t grid_theta,
                                                            std::size_t grid_phi) {
    constexpr double pi = std::numbers::pi;
    std::vector<std::array<double, 3>> out;
    for (std::size_t i = 0; i < grid_theta; ++i) {
        for (std::size_t j = 0; j < grid_phi; ++j) {
            const double t = grid_theta > 1 ? pi * static_cast<double>(i) / static_cast<double>(grid_theta - 1) : 0.0;
            const double p = 2 * pi * static_cast<double>(j) / static_cast<double>(grid_phi);
            out.push_back({t, p, measured_entropy(rho, measured, t, p, base)});
        }
    }
    return out;
}

} // namespace edss
