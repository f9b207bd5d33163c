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

#include <cmath>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "edss/error.hpp"
#include "edss/states.hpp"
#include "edss/tensor.hpp"

namespace edss {

/**
 * Fit of a post-protocol network state onto
 *   P * Omega + sum_k w_k |phi+><phi+|_{C_k} (x) |0><0|_rest
 *             + sum_m r_m (x)_{pairs in matching m} |phi+><phi+|
 * with Omega diagonal. `p + q + r` is the trace of the fitted state.
 */
struct StateDecomposition {
    double incoherent_weight = 0.0;  ///< p: trace of the diagonal part
    RealVector omega;                ///< diagonal of P * Omega (unnormalized)
    std::vector<std::pair<NodePair, double>> pair_terms;
    std::vector<std::pair<std::vector<NodePair>, double>> matching_terms;
    double residual = 0.0;  ///< Frobenius norm of the misfit
    bool fits = false;

    [[nodiscard]] double p() const noexcept { return incoherent_weight; }

    [[nodiscard]] double q() const noexcept {
        double s = 0.0;
        for (const auto &t : pair_terms) {
            s += t.second;
        }
        return s;
    }

    [[nodiscard]] double r() const noexcept {
        double s = 0.0;
        for (const auto &t : matching_terms) {
            s += t.second;
        }
        return s;
    }

    [[nodiscard]] double omega_min() const { return omega.size() == 0 ? 0.0 : omega.minCoeff(); }
};

inline constexpr double kDecompositionResidual = 1e-8;

/**
 * Least-squares decomposition. The diagonal dictionary is complete on the
 * diagonal, so the fit reduces to the off-diagonal entries; Omega absorbs
 * whatever diagonal weight remains.
 */
inline StateDecomposition decompose_final_state(const DensityMatrix &rho, const Topology &topology) {
    require_unit_trace(rho, "decompose_final_state");
    const Register reg = topology.node_register();
    if (rho.reg() != reg) {
        throw ArgumentError("decompose_final_state: state must live on the topology's node register");
    }
    const Matrix bell = projector(phi_plus());
    std::vector<Matrix> terms;
    for (const auto &p : topology.pairs()) {
        terms.push_back(detail::pairs_term(reg, {p}, bell));
    }
    const auto matchings = topology.matchings();
    for (const auto &m : matchings) {
        terms.push_back(detail::pairs_term(reg, m, bell));
    }

    const auto d = static_cast<Eigen::Index>(reg.dimension());
    // upper-triangle entries touched by any coherent dictionary term
    std::map<std::pair<Eigen::Index, Eigen::Index>, Eigen::Index> row_of;
    for (const auto &t : terms) {
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = i + 1; j < d; ++j) {
                if (std::abs(t(i, j)) > 0.0) {
                    row_of.emplace(std::make_pair(i, j), static_cast<Eigen::Index>(row_of.size()));
                }
            }
        }
    }
    const auto rows = static_cast<Eigen::Index>(row_of.size());
    const auto cols = static_cast<Eigen::Index>(terms.size());
    Eigen::MatrixXd design = Eigen::MatrixXd::Zero(2 * rows, cols);
    Eigen::VectorXd target = Eigen::VectorXd::Zero(2 * rows);
    for (const auto &[ij, r] : row_of) {
        const Complex v = rho.matrix()(ij.first, ij.second);
        target[2 * r] = v.real();
        target[2 * r + 1] = v.imag();
        for (Eigen::Index c = 0; c < cols; ++c) {
            const Complex t = terms[static_cast<std::size_t>(c)](ij.first, ij.second);
            design(2 * r, c) = t.real();
            design(2 * r + 1, c) = t.imag();
        }
    }
    Eigen::VectorXd w = Eigen::VectorXd::Zero(cols);
    if (rows > 0 && cols > 0) {
        w = design.colPivHouseholderQr().solve(target);
    }

    // misfit: covered entries plus every off-diagonal entry outside the dictionary's support
    double upper_sq = rows > 0 ? (design * w - target).squaredNorm() : 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i + 1; j < d; ++j) {
            if (row_of.find({i, j}) == row_of.end()) {
                upper_sq += std::norm(rho.matrix()(i, j));
            }
        }
    }

    StateDecomposition out;
    out.omega = rho.matrix().diagonal().real();
    for (Eigen::Index c = 0; c < cols; ++c) {
        out.omega -= w[c] * terms[static_cast<std::size_t>(c)].diagonal().real();
    }
    out.incoherent_weight = out.omega.sum();
    std::size_t c = 0;
    for (const auto &p : topology.pairs()) {
        out.pair_terms.emplace_back(p, w[static_cast<Eigen::Index>(c++)]);
    }
    for (const auto &m : matchings) {
        out.matching_terms.emplace_back(m, w[static_cast<Eigen::Index>(c++)]);
    }
    out.residual = std::sqrt(2.0 * upper_sq);
    out.fits = out.residual <= kDecompositionResidual;
    return out;
}

/// Throws DecompositionError when the state does not fit the ansatz.
inline const StateDecomposition &require_fit(const StateDecomposition &d) {
    if (!d.fits) {
        throw DecompositionError("state does not fit the Bell-pair mixture ansatz (residual " +
                                 std::to_string(d.residual) + ")");
    }
    return d;
}

} // namespace edss
