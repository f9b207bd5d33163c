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

// Randomized property checks shared by the unit suite and the acceptance runner.
// Each returns how many cases ran and the first failure, if any.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "edss/discord.hpp"
#include "edss/metrics.hpp"
#include "edss/protocol.hpp"
#include "edss/states.hpp"
#include "edss/tensor.hpp"
#include "oracle.hpp"

namespace props {

struct Outcome {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;

    bool ok() const { return cases > 0 && failures == 0; }
    void fail(std::size_t k, const std::string &why) {
        if (failures++ == 0) first_failure = "case " + std::to_string(k) + ": " + why;
    }
};

using Rng = std::mt19937_64;

inline edss::Matrix random_density(std::size_t d, Rng &rng, std::size_t rank = 0) {
    std::normal_distribution<double> g;
    if (rank == 0) rank = d;
    edss::Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(rank));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = {g(rng), g(rng)};
    edss::Matrix rho = m * m.adjoint();
    return rho / rho.trace().real();
}

inline edss::Matrix random_unitary(std::size_t d, Rng &rng) {
    std::normal_distribution<double> g;
    edss::Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = {g(rng), g(rng)};
    Eigen::HouseholderQR<edss::Matrix> qr(m);
    return qr.householderQ();
}

/// Register of 1..max_sub subsystems named S0, S1, ...; dims 2, occasionally 3.
inline edss::Register random_register(Rng &rng, std::size_t min_sub, std::size_t max_sub, bool allow_qutrits) {
    std::uniform_int_distribution<std::size_t> n_dist(min_sub, max_sub);
    std::bernoulli_distribution trit(allow_qutrits ? 0.2 : 0.0);
    const auto n = n_dist(rng);
    std::vector<std::string> labels;
    std::vector<std::size_t> dims;
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) {
        labels.push_back("S" + std::to_string(k));
        dims.push_back(trit(rng) && total * 3 <= 64 ? 3 : 2);
        total *= dims.back();
    }
    return {labels, dims};
}

/// Random nonempty proper subset of the register labels (register has >= 2 subsystems).
inline std::vector<std::string> random_side(const edss::Register &reg, Rng &rng) {
    const std::size_t n = reg.size();
    std::uniform_int_distribution<std::uint64_t> d(1, (std::uint64_t{1} << n) - 2);
    const auto mask = d(rng);
    std::vector<std::string> side;
    for (std::size_t k = 0; k < n; ++k)
        if ((mask >> k) & 1) side.push_back(reg.label(k));
    return side;
}

inline std::vector<bool> side_mask(const edss::Register &reg, const std::vector<std::string> &side) {
    std::vector<bool> m(reg.size(), false);
    for (const auto &l : side) m[reg.index_of(l)] = true;
    return m;
}

inline std::string invariant_problem(const edss::DensityMatrix &rho) {
    auto why = edss::check_density_invariants(rho);
    if (!why.empty()) return why;
    if (std::abs(rho.trace() - 1.0) > 1e-10) return "trace " + std::to_string(rho.trace());
    return {};
}

/// Partial trace, unitary conjugation, CPHASE, renormalized projection and tensor products
/// each map states to states.
inline Outcome trace_hermiticity_positivity(std::size_t cases, std::uint64_t seed) {
    Outcome out{"trace/Hermiticity/positivity preservation", 0, 0, {}};
    Rng rng(seed);
    for (std::size_t k = 0; k < cases; ++k) {
        ++out.cases;
        const auto reg = random_register(rng, 2, 4, true);
        const edss::DensityMatrix rho(reg, random_density(reg.dimension(), rng, 1 + rng() % reg.dimension()));
        std::string why;
        try {
            switch (k % 5) {
            case 0: why = invariant_problem(edss::partial_trace(rho, random_side(reg, rng))); break;
            case 1: why = invariant_problem(edss::conjugate(rho, random_unitary(reg.dimension(), rng))); break;
            case 2: {
                // CPHASE needs two qubits; the generator keeps S0 a qubit only by chance
                std::vector<std::string> qubits;
                for (std::size_t i = 0; i < reg.size(); ++i)
                    if (reg.dim(i) == 2) qubits.push_back(reg.label(i));
                if (qubits.size() < 2) {
                    why = invariant_problem(edss::conjugate(rho, random_unitary(reg.dimension(), rng)));
                } else {
                    why = invariant_problem(edss::conjugate_diagonal(rho, edss::cphase_phases(reg, qubits[0], qubits[1])));
                }
                break;
            }
            case 3: {
                const auto &l = reg.label(rng() % reg.size());
                const auto d = reg.dim(reg.index_of(l));
                edss::Vector v = random_unitary(d, rng).col(0);
                why = invariant_problem(edss::project(rho, l, v, true).state);
                break;
            }
            case 4: {
                const edss::DensityMatrix other(edss::Register::qubits({"X"}), random_density(2, rng));
                why = invariant_problem(edss::kron(rho, other));
                break;
            }
            }
        } catch (const std::exception &e) {
            why = std::string("threw: ") + e.what();
        }
        if (!why.empty()) out.fail(k, why);
    }
    return out;
}

/// Transposing the same side twice is the identity, and the library transpose matches the oracle.
inline Outcome pt_involution(std::size_t cases, std::uint64_t seed) {
    Outcome out{"partial-transpose involution", 0, 0, {}};
    Rng rng(seed);
    for (std::size_t k = 0; k < cases; ++k) {
        ++out.cases;
        const auto reg = random_register(rng, 2, 4, true);
        const edss::DensityMatrix rho(reg, random_density(reg.dimension(), rng));
        const auto side = random_side(reg, rng);
        const edss::Matrix once = edss::partial_transpose(rho, side);
        // the transposed operator is Hermitian with unit trace, so it wraps without complaint
        const edss::Matrix twice = edss::partial_transpose(edss::DensityMatrix(reg, once), side);
        const double e1 = (twice - rho.matrix()).cwiseAbs().maxCoeff();
        const double e2 = oracle::max_diff(once, oracle::partial_transpose(oracle::from_eigen(rho.matrix()), reg.dims(),
                                                                        side_mask(reg, side)));
        if (e1 > 1e-14 || e2 > 1e-14) out.fail(k, "involution error " + std::to_string(e1) + ", oracle " + std::to_string(e2));
    }
    return out;
}

/// rho^{T_A} and rho^{T_B} are transposes of each other, so their spectra coincide.
inline Outcome complement_spectrum(std::size_t cases, std::uint64_t seed) {
    Outcome out{"complement-spectrum equality", 0, 0, {}};
    Rng rng(seed);
    for (std::size_t k = 0; k < cases; ++k) {
        ++out.cases;
        const auto reg = random_register(rng, 2, 4, true);
        const edss::DensityMatrix rho(reg, random_density(reg.dimension(), rng, 1 + rng() % 3));
        const auto bip = edss::Bipartition::of(reg, random_side(reg, rng));
        const auto a = edss::eigvalsh(edss::partial_transpose(rho, bip.side_a));
        const auto b = edss::eigvalsh(edss::partial_transpose(rho, bip.side_b));
        const double e = (a - b).cwiseAbs().maxCoeff();
        const double n = std::abs(edss::negativity(rho, bip) - edss::negativity(rho, bip.complement()));
        if (e > 1e-10 || n > 1e-10) out.fail(k, bip.name() + ": spectrum gap " + std::to_string(e));
    }
    return out;
}

/// Ring network states are invariant under cyclic relabeling of the nodes, and the
/// single-node spectra of the ring single-carrier final state coincide.
inline Outcome ring_cyclic_symmetry(std::size_t cases, std::uint64_t seed) {
    Outcome out{"ring cyclic symmetry", 0, 0, {}};
    Rng rng(seed);
    std::vector<oracle::Dense> network(7);
    std::vector<std::vector<double>> single_spectra(6);
    for (std::size_t n = 3; n <= 6; ++n) {
        network[n] = oracle::from_eigen(edss::network_state(edss::Topology::ring(n)).matrix());
    }
    for (std::size_t k = 0; k < cases; ++k) {
        ++out.cases;
        const std::size_t n = 3 + rng() % 4;
        const std::size_t shift = 1 + rng() % (n - 1);
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = (i + shift) % n;
        const double e = oracle::max_diff(oracle::permute(network[n], std::vector<std::size_t>(n, 2), perm), network[n]);
        if (e > 1e-12) out.fail(k, "N=" + std::to_string(n) + " shift " + std::to_string(shift) + ": " + std::to_string(e));
    }
    // one deterministic pass over the protocol output per N
    for (std::size_t n = 3; n <= 5; ++n) {
        ++out.cases;
        const auto topo = edss::Topology::ring(n);
        const auto trace = edss::run(edss::build_schedule(topo, edss::Variant::single_carrier),
                                     edss::initial_state(topo, edss::Variant::single_carrier), {false});
        const auto &rho = trace.final_state();
        std::vector<double> first;
        for (std::size_t q = 1; q <= n; ++q) {
            const auto ev = edss::negative_eigenvalues(rho, edss::Bipartition::of(rho.reg(), {edss::node_label(q)}));
            if (q == 1) first = ev;
            bool same = ev.size() == first.size();
            for (std::size_t i = 0; same && i < ev.size(); ++i) same = std::abs(ev[i] - first[i]) <= 1e-10;
            if (!same) out.fail(cases + n, "ring N=" + std::to_string(n) + " Q" + std::to_string(q) + " spectrum differs");
        }
    }
    return out;
}

/// Library kron, partial trace, partial transpose, spectrum and negativity agree with the
/// brute-force path on random states of up to four qubits.
inline Outcome oracle_equivalence(std::size_t cases, std::uint64_t seed) {
    Outcome out{"oracle equivalence on <= 4 qubits", 0, 0, {}};
    Rng rng(seed);
    for (std::size_t k = 0; k < cases; ++k) {
        ++out.cases;
        const auto reg = random_register(rng, 2, 4, false);
        const edss::DensityMatrix rho(reg, random_density(reg.dimension(), rng, 1 + rng() % reg.dimension()));
        const auto o = oracle::from_eigen(rho.matrix());
        const auto side = random_side(reg, rng);
        const auto mask = side_mask(reg, side);
        double worst = 0.0;
        std::string what;
        auto track = [&](double e, const char *name) {
            if (e > worst) worst = e, what = name;
        };

        const auto lib_pt = edss::partial_transpose(rho, side);
        const auto ora_pt = oracle::partial_transpose(o, reg.dims(), mask);
        track(oracle::max_diff(lib_pt, ora_pt), "partial transpose");

        std::vector<bool> keep(mask.size());
        for (std::size_t i = 0; i < mask.size(); ++i) keep[i] = !mask[i];
        track(oracle::max_diff(edss::partial_trace(rho, reg.complement(side)).matrix(),
                               oracle::partial_trace(o, reg.dims(), keep)),
              "partial trace");

        const auto lib_ev = edss::eigvalsh(lib_pt);
        const auto ora_ev = oracle::eigenvalues(ora_pt);
        for (std::size_t i = 0; i < ora_ev.size(); ++i) track(std::abs(lib_ev(static_cast<Eigen::Index>(i)) - ora_ev[i]), "spectrum");

        track(std::abs(edss::negativity(rho, edss::Bipartition::of(reg, side)) - oracle::negativity(o, reg.dims(), mask)),
              "negativity");

        const edss::Matrix small = random_density(2, rng);
        track(oracle::max_diff(edss::kron(rho.matrix(), small), oracle::kron(o, oracle::from_eigen(small))), "kron");

        if (worst > 1e-12) out.fail(k, std::string(what) + " differs by " + std::to_string(worst));
    }
    return out;
}

/// (A (x) B) (x) C equals A (x) (B (x) C) element-wise.
inline Outcome kron_associativity(std::size_t cases, std::uint64_t seed) {
    Outcome out{"kron associativity", 0, 0, {}};
    Rng rng(seed);
    for (std::size_t k = 0; k < cases; ++k) {
        ++out.cases;
        const auto a = random_density(2 + rng() % 2, rng);
        const auto b = random_density(2 + rng() % 2, rng);
        const auto c = random_density(2 + rng() % 2, rng);
        const double e = (edss::kron(edss::kron(a, b), c) - edss::kron(a, edss::kron(b, c))).cwiseAbs().maxCoeff();
        if (e > 1e-15) out.fail(k, "difference " + std::to_string(e));
    }
    return out;
}

/// Eigenvectors from eig_hermitian are orthonormal: max |V^H V - I| <= 1e-9.
inline Outcome eigenvector_orthonormality(std::size_t cases, std::uint64_t seed) {
    Outcome out{"eigenvector orthonormality", 0, 0, {}};
    Rng rng(seed);
    for (std::size_t k = 0; k < cases; ++k) {
        ++out.cases;
        const std::size_t d = 2 + rng() % 15;
        // low rank gives degenerate zero eigenvalues, the hard case for orthonormality
        const edss::Matrix h = random_density(d, rng, 1 + rng() % d);
        const auto e = edss::eig_hermitian(h);
        const auto n = static_cast<Eigen::Index>(d);
        const double err = (e.vectors.adjoint() * e.vectors - edss::Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
        if (err > 1e-9) out.fail(k, "d=" + std::to_string(d) + " error " + std::to_string(err));
    }
    return out;
}

/// Network states are mixtures of product terms, so every bipartition has zero negativity.
inline Outcome network_separability(std::size_t cases, std::uint64_t seed) {
    Outcome out{"network-state separability", 0, 0, {}};
    Rng rng(seed);
    for (std::size_t k = 0; k < cases; ++k) {
        ++out.cases;
        const std::size_t n = 2 + rng() % 4;
        std::vector<edss::NodePair> pairs;
        for (std::size_t a = 1; a <= n; ++a)
            for (std::size_t b = a + 1; b <= n; ++b)
                if (rng() % 2) pairs.push_back({a, b});
        if (pairs.empty()) pairs.push_back({1, n});
        const auto rho = edss::network_state(edss::Topology::custom(n, pairs));
        const auto bip = edss::Bipartition::of(rho.reg(), random_side(rho.reg(), rng));
        const double neg = edss::negativity(rho, bip);
        if (neg > 1e-10) out.fail(k, bip.name() + " negativity " + std::to_string(neg));
    }
    return out;
}

/// States diagonal in a product basis {|a_i>|b_j>} have zero discord.
inline Outcome classical_discord_zero(std::size_t cases, std::uint64_t seed) {
    Outcome out{"discord of classical-classical states", 0, 0, {}};
    Rng rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto reg = edss::Register::qubits({"A", "B"});
    for (std::size_t k = 0; k < cases; ++k) {
        ++out.cases;
        const edss::Matrix ua = random_unitary(2, rng);
        const edss::Matrix ub = random_unitary(2, rng);
        const edss::Matrix uab = edss::kron(ua, ub);
        edss::Vector p(4);
        for (int i = 0; i < 4; ++i) p(i) = u(rng);
        p /= p.sum();
        const edss::Matrix diag = p.asDiagonal();
        const edss::DensityMatrix rho(reg, uab * diag * uab.adjoint());
        const auto d = edss::discord(rho, k % 2 ? "A" : "B");
        if (std::abs(d.value) > 1e-8) out.fail(k, "discord " + std::to_string(d.value));
    }
    return out;
}

} // namespace props
