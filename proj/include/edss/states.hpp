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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "edss/register.hpp"
#include "edss/tensor.hpp"

namespace edss {

enum class KetLabel { zero, one, D, A, R, L };

/// Single-qubit pure state from the {0, 1, D, A, R, L} family.
struct Ket {
    KetLabel label;
    Vector amplitudes;
};

inline Ket ket(KetLabel label) {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i{0.0, 1.0};
    Vector v(2);
    switch (label) {
    case KetLabel::zero: v << 1.0, 0.0; break;
    case KetLabel::one: v << 0.0, 1.0; break;
    case KetLabel::D: v << s, s; break;
    case KetLabel::A: v << s, -s; break;
    case KetLabel::R: v << s, s * i; break;
    case KetLabel::L: v << s, -s * i; break;
    }
    return {label, std::move(v)};
}

inline Ket parse_ket(std::string_view name) {
    if (name == "0") return ket(KetLabel::zero);
    if (name == "1") return ket(KetLabel::one);
    if (name == "D") return ket(KetLabel::D);
    if (name == "A") return ket(KetLabel::A);
    if (name == "R") return ket(KetLabel::R);
    if (name == "L") return ket(KetLabel::L);
    throw ArgumentError("unknown ket '" + std::string(name) + "' (expected one of 0, 1, D, A, R, L)");
}

inline std::string to_string(KetLabel l) {
    switch (l) {
    case KetLabel::zero: return "0";
    case KetLabel::one: return "1";
    case KetLabel::D: return "D";
    case KetLabel::A: return "A";
    case KetLabel::R: return "R";
    case KetLabel::L: return "L";
    }
    return "?";
}

inline Matrix projector(const Vector &v) { return v * v.adjoint(); }

inline Matrix projector(KetLabel l) { return projector(ket(l).amplitudes); }

/// Bell state (|00> + |11>)/sqrt 2.
inline Vector phi_plus() {
    Vector v = Vector::Zero(4);
    v[0] = v[3] = 1.0 / std::sqrt(2.0);
    return v;
}

inline std::string node_label(std::size_t i) { return "Q" + std::to_string(i); }

/// Unordered node pair; nodes are 1-based.
struct NodePair {
    std::size_t a = 0;
    std::size_t b = 0;

    friend bool operator==(const NodePair &x, const NodePair &y) {
        return (x.a == y.a && x.b == y.b) || (x.a == y.b && x.b == y.a);
    }
};

enum class TopologyKind { linear, ring, star, custom, appendix_a };

inline std::string to_string(TopologyKind k) {
    switch (k) {
    case TopologyKind::linear: return "linear";
    case TopologyKind::ring: return "ring";
    case TopologyKind::star: return "star";
    case TopologyKind::custom: return "custom";
    case TopologyKind::appendix_a: return "appendixA";
    }
    return "?";
}

inline TopologyKind parse_topology_kind(std::string_view s) {
    if (s == "linear") return TopologyKind::linear;
    if (s == "ring") return TopologyKind::ring;
    if (s == "star") return TopologyKind::star;
    if (s == "custom") return TopologyKind::custom;
    if (s == "appendixA") return TopologyKind::appendix_a;
    throw ArgumentError("unknown topology kind '" + std::string(s) + "'");
}

/**
 * Node count plus the list of node pairs to entangle. For appendixA the pairs
 * are the ring links; the two perfect matchings are derived from N.
 */
class Topology {
  public:
    static Topology linear(std::size_t n) {
        require_nodes(n);
        std::vector<NodePair> pairs;
        for (std::size_t k = 1; k < n; ++k) {
            pairs.push_back({k, k + 1});
        }
        return {TopologyKind::linear, n, std::nullopt, std::move(pairs)};
    }

    /// Ring Q1-Q2-...-QN-Q1; N = 2 collapses to the single pair {Q1,Q2}.
    static Topology ring(std::size_t n) {
        require_nodes(n);
        if (n == 2) {
            return {TopologyKind::ring, n, std::nullopt, {{1, 2}}};
        }
        return {TopologyKind::ring, n, std::nullopt, ring_pairs(n)};
    }

    static Topology star(std::size_t n, std::size_t center = 1) {
        require_nodes(n);
        if (center < 1 || center > n) {
            throw ArgumentError("star: center " + std::to_string(center) + " is not a node");
        }
        std::vector<NodePair> pairs;
        for (std::size_t j = 1; j <= n; ++j) {
            if (j != center) {
                pairs.push_back({center, j});
            }
        }
        return {TopologyKind::star, n, center, std::move(pairs)};
    }

    static Topology custom(std::size_t n, std::vector<NodePair> pairs) {
        require_nodes(n);
        return {TopologyKind::custom, n, std::nullopt, std::move(pairs)};
    }

    static Topology appendix_a(std::size_t n) {
        if (n < 4 || n % 2 != 0) {
            throw ArgumentError("appendixA topology needs an even node count >= 4, got " + std::to_string(n));
        }
        return {TopologyKind::appendix_a, n, std::nullopt, ring_pairs(n)};
    }

    [[nodiscard]] TopologyKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t node_count() const noexcept { return nodes_; }
    [[nodiscard]] std::optional<std::size_t> center() const noexcept { return center_; }
    [[nodiscard]] const std::vector<NodePair> &pairs() const noexcept { return pairs_; }

    [[nodiscard]] std::vector<std::string> node_labels() const {
        std::vector<std::string> l;
        for (std::size_t i = 1; i <= nodes_; ++i) {
            l.push_back(node_label(i));
        }
        return l;
    }

    [[nodiscard]] Register node_register() const { return Register::qubits(node_labels()); }

    /// The two perfect matchings {Q1Q2, Q3Q4, ...} and {QNQ1, Q2Q3, ...} (appendixA only).
    [[nodiscard]] std::vector<std::vector<NodePair>> matchings() const {
        if (kind_ != TopologyKind::appendix_a) {
            return {};
        }
        std::vector<NodePair> odd_even;
        std::vector<NodePair> even_odd;
        for (std::size_t k = 1; k <= nodes_ / 2; ++k) {
            odd_even.push_back({2 * k - 1, 2 * k});
        }
        for (std::size_t j = 0; j < nodes_ / 2; ++j) {
            even_odd.push_back({j == 0 ? nodes_ : 2 * j, 2 * j + 1});
        }
        return {odd_even, even_odd};
    }

  private:
    Topology(TopologyKind kind, std::size_t n, std::optional<std::size_t> center, std::vector<NodePair> pairs)
        : kind_(kind), nodes_(n), center_(center), pairs_(std::move(pairs)) {
        for (std::size_t k = 0; k < pairs_.size(); ++k) {
            const auto &p = pairs_[k];
            if (p.a < 1 || p.a > nodes_ || p.b < 1 || p.b > nodes_ || p.a == p.b) {
                throw ArgumentError("topology: invalid pair {" + std::to_string(p.a) + "," + std::to_string(p.b) + "}");
            }
            for (std::size_t j = 0; j < k; ++j) {
                if (pairs_[j] == p) {
                    throw ArgumentError("topology: duplicate pair {" + std::to_string(p.a) + "," +
                                        std::to_string(p.b) + "}");
                }
            }
        }
    }

    static void require_nodes(std::size_t n) {
        if (n < 2) {
            throw ArgumentError("topology needs at least 2 nodes, got " + std::to_string(n));
        }
    }

    static std::vector<NodePair> ring_pairs(std::size_t n) {
        std::vector<NodePair> pairs;
        for (std::size_t k = 1; k <= n; ++k) {
            pairs.push_back({k, k == n ? 1 : k + 1});
        }
        return pairs;
    }

    TopologyKind kind_;
    std::size_t nodes_;
    std::optional<std::size_t> center_;
    std::vector<NodePair> pairs_;
};

/// The discordant two-qubit seed: 1/4(|00><00| + |11><11|) + 1/8(|DD><DD| + |AA><AA| + |RL><RL| + |LR><LR|).
inline Matrix pair_seed_matrix() {
    auto two = [](KetLabel x, KetLabel y) { return projector(kron(ket(x).amplitudes, ket(y).amplitudes)); };
    return 0.25 * (two(KetLabel::zero, KetLabel::zero) + two(KetLabel::one, KetLabel::one)) +
           0.125 * (two(KetLabel::D, KetLabel::D) + two(KetLabel::A, KetLabel::A) + two(KetLabel::R, KetLabel::L) +
                    two(KetLabel::L, KetLabel::R));
}

inline DensityMatrix pair_seed_state(const std::string &a = "A", const std::string &b = "B") {
    if (a == b) {
        throw ArgumentError("pair_seed_state: labels must differ");
    }
    return {Register::qubits(std::vector<std::string>{a, b}), pair_seed_matrix()};
}

/// 1/4 |D><D| + 3/4 |A><A|.
inline Matrix carrier_matrix() { return 0.25 * projector(KetLabel::D) + 0.75 * projector(KetLabel::A); }

inline DensityMatrix carrier_state(const std::string &label = "K") {
    return {Register::qubits(std::vector<std::string>{label}), carrier_matrix()};
}

inline std::vector<std::string> carrier_labels(std::size_t n) {
    std::vector<std::string> l;
    for (std::size_t i = 1; i <= n; ++i) {
        l.push_back("K" + std::to_string(i));
    }
    return l;
}

/// Product of `n` carrier states on K1..Kn.
inline DensityMatrix multi_carrier_state(std::size_t n) {
    if (n < 1) {
        throw ArgumentError("multi_carrier_state: need at least one carrier");
    }
    const auto labels = carrier_labels(n);
    DensityMatrix out = carrier_state(labels[0]);
    for (std::size_t i = 1; i < n; ++i) {
        out = kron(out, carrier_state(labels[i]));
    }
    return out;
}

namespace detail {

inline Matrix zero_projector() { return projector(KetLabel::zero); }

/// `pair_op` on each listed pair, |0><0| on every other node.
inline Matrix pairs_term(const Register &reg, const std::vector<NodePair> &pairs, const Matrix &pair_op) {
    std::vector<LocalFactor> factors;
    for (const auto &p : pairs) {
        factors.push_back({{p.a - 1, p.b - 1}, pair_op});
    }
    return product_operator(reg, factors, zero_projector());
}

} // namespace detail

/// Uniform mixture over the topology's pairs of (seed on the pair) x |0><0| elsewhere.
inline DensityMatrix network_state(const Topology &topology) {
    if (topology.kind() == TopologyKind::appendix_a) {
        throw ArgumentError("network_state: use appendix_a_state for the appendixA topology");
    }
    const auto &pairs = topology.pairs();
    if (pairs.empty()) {
        throw ArgumentError("network_state: topology has no pairs");
    }
    const Register reg = topology.node_register();
    const Matrix seed = pair_seed_matrix();
    Matrix acc = Matrix::Zero(static_cast<Eigen::Index>(reg.dimension()), static_cast<Eigen::Index>(reg.dimension()));
    for (const auto &p : pairs) {
        acc += detail::pairs_term(reg, {p}, seed);
    }
    return {reg, acc / static_cast<double>(pairs.size())};
}

/// Equal mixture of the two matching products of seeds (the bare two-term state).
inline DensityMatrix matching_mixture_state(std::size_t n) {
    const auto topo = Topology::appendix_a(n);
    const Register reg = topo.node_register();
    const Matrix seed = pair_seed_matrix();
    Matrix acc = Matrix::Zero(static_cast<Eigen::Index>(reg.dimension()), static_cast<Eigen::Index>(reg.dimension()));
    for (const auto &m : topo.matchings()) {
        acc += detail::pairs_term(reg, m, seed);
    }
    return {reg, acc / 2.0};
}

/// (N+2)-term mixture: both matching products plus the N ring terms, weight 1/(N+2) each.
inline DensityMatrix appendix_a_state(std::size_t n) {
    const auto topo = Topology::appendix_a(n);
    const Register reg = topo.node_register();
    const Matrix seed = pair_seed_matrix();
    Matrix acc = Matrix::Zero(static_cast<Eigen::Index>(reg.dimension()), static_cast<Eigen::Index>(reg.dimension()));
    for (const auto &m : topo.matchings()) {
        acc += detail::pairs_term(reg, m, seed);
    }
    for (const auto &p : topo.pairs()) {
        acc += detail::pairs_term(reg, {p}, seed);
    }
    return {reg, acc / static_cast<double>(n + 2)};
}

/// Network state for any topology kind.
inline DensityMatrix initial_network_state(const Topology &topology) {
    return topology.kind() == TopologyKind::appendix_a ? appendix_a_state(topology.node_count())
                                                       : network_state(topology);
}

} // namespace edss
