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
#include <string>
#include <utility>
#include <vector>

#include "edss/error.hpp"
#include "edss/register.hpp"
#include "edss/tensor.hpp"

namespace edss {

/// Split of a register into two complementary nonempty groups; the partial transpose acts on `side_a`.
struct Bipartition {
    std::vector<std::string> side_a;
    std::vector<std::string> side_b;

    static Bipartition of(const Register &reg, const std::vector<std::string> &side_a) {
        if (side_a.empty() || side_a.size() >= reg.size()) {
            throw ArgumentError("bipartition: side must be a proper nonempty subset of the register");
        }
        const auto pos = reg.positions(side_a);
        Bipartition b;
        for (auto p : pos) {
            b.side_a.push_back(reg.label(p));
        }
        b.side_b = reg.complement(b.side_a);
        return b;
    }

    /// Bipartition with explicit sides; together they must cover the register exactly.
    static Bipartition of(const Register &reg, const std::vector<std::string> &side_a,
                          const std::vector<std::string> &side_b) {
        auto b = of(reg, side_a);
        auto expected = b.side_b;
        auto given = side_b;
        std::sort(expected.begin(), expected.end());
        std::sort(given.begin(), given.end());
        if (expected != given) {
            throw ArgumentError("bipartition: sides do not cover the register");
        }
        b.side_b = side_b;
        return b;
    }

    [[nodiscard]] Bipartition complement() const { return {side_b, side_a}; }

    /// e.g. "Q1|Q2Q3Q4K"
    [[nodiscard]] std::string name() const {
        std::string s;
        for (const auto &l : side_a) {
            s += l;
        }
        s += '|';
        for (const auto &l : side_b) {
            s += l;
        }
        return s;
    }

    /// Same key for (A|B) and (B|A).
    [[nodiscard]] std::string canonical_key() const {
        auto join = [](std::vector<std::string> v) {
            std::sort(v.begin(), v.end());
            std::string s;
            for (const auto &l : v) {
                s += l + ',';
            }
            return s;
        };
        const auto a = join(side_a);
        const auto b = join(side_b);
        return std::min(a, b) + "|" + std::max(a, b);
    }
};

struct CutSpectrum {
    std::vector<double> negative_eigenvalues;  ///< ascending, each < -1e-10
    double negativity = 0.0;                   ///< (||rho^T_a||_1 - 1) / 2
};

inline CutSpectrum cut_spectrum(const DensityMatrix &rho, const Bipartition &bip) {
    require_unit_trace(rho, "negativity");
    const auto ev = eigvalsh(partial_transpose(rho, bip.side_a));
    CutSpectrum out;
    double trace_norm = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        trace_norm += std::abs(ev[i]);
        if (ev[i] < -tol::kNegative) {
            out.negative_eigenvalues.push_back(ev[i]);
        }
    }
    out.negativity = std::max(0.0, (trace_norm - 1.0) / 2.0);
    return out;
}

inline std::vector<double> negative_eigenvalues(const DensityMatrix &rho, const Bipartition &bip) {
    return cut_spectrum(rho, bip).negative_eigenvalues;
}

inline double negativity(const DensityMatrix &rho, const Bipartition &bip) { return cut_spectrum(rho, bip).negativity; }

enum class Family { nodes, all };

inline std::string to_string(Family f) { return f == Family::nodes ? "nodes" : "all"; }

inline Family parse_family(const std::string &s) {
    if (s == "nodes") return Family::nodes;
    if (s == "all") return Family::all;
    throw ArgumentError("unknown bipartition family '" + s + "' (expected nodes or all)");
}

namespace detail {

/// Subsets S of `items` with |S| <= n/2, where ties keep the half holding items[0].
inline std::vector<std::vector<std::string>> half_subsets(const std::vector<std::string> &items) {
    const auto n = items.size();
    std::vector<std::vector<std::string>> out;
    std::vector<std::size_t> idx;
    for (std::size_t k = 1; 2 * k <= n; ++k) {
        idx.resize(k);
        for (std::size_t i = 0; i < k; ++i) {
            idx[i] = i;
        }
        while (true) {
            if (!(2 * k == n && idx[0] != 0)) {
                std::vector<std::string> s;
                for (auto i : idx) {
                    s.push_back(items[i]);
                }
                out.push_back(std::move(s));
            }
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == n - k + i - 1) {
                --i;
            }
            if (i == 0) {
                break;
            }
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    return out;
}

} // namespace detail

/**
 * Every split of `nodes` into two groups (2^(N-1) - 1 of them). side_a is the
 * smaller group (ties: the group holding the first node); all other labels of
 * the register, carriers included, join side_b.
 */
inline std::vector<Bipartition> node_bipartitions(const Register &reg, const std::vector<std::string> &nodes) {
    if (nodes.size() < 2) {
        if (nodes.size() == 1 && reg.size() > 1) {
            return {Bipartition::of(reg, nodes)};
        }
        throw ArgumentError("node_bipartitions: need at least one node and one other subsystem");
    }
    std::vector<Bipartition> out;
    for (const auto &s : detail::half_subsets(nodes)) {
        out.push_back(Bipartition::of(reg, s));
    }
    return out;
}

inline std::vector<std::string> node_labels_of(const Register &reg) {
    std::vector<std::string> nodes;
    for (const auto &l : reg.labels()) {
        if (!is_carrier_label(l)) {
            nodes.push_back(l);
        }
    }
    return nodes;
}

inline std::vector<std::string> carrier_labels_of(const Register &reg) {
    std::vector<std::string> k;
    for (const auto &l : reg.labels()) {
        if (is_carrier_label(l)) {
            k.push_back(l);
        }
    }
    return k;
}

/// Every bipartition of the whole register, one per complementary pair.
inline std::vector<Bipartition> all_bipartitions(const Register &reg) {
    std::vector<Bipartition> out;
    for (const auto &s : detail::half_subsets(reg.labels())) {
        out.push_back(Bipartition::of(reg, s));
    }
    return out;
}

/// Each carrier alone versus the rest, plus all carriers jointly when there are several.
inline std::vector<Bipartition> carrier_cuts(const Register &reg) {
    const auto carriers = carrier_labels_of(reg);
    std::vector<Bipartition> out;
    if (carriers.empty() || carriers.size() == reg.size()) {
        return out;
    }
    for (const auto &k : carriers) {
        out.push_back(Bipartition::of(reg, {k}));
    }
    if (carriers.size() > 1) {
        out.push_back(Bipartition::of(reg, carriers));
    }
    return out;
}

struct BipartitionEntry {
    Bipartition bipartition;
    std::vector<double> negative_eigenvalues;
    double negativity = 0.0;  ///< -(sum of negative_eigenvalues)
};

struct Aggregates {
    double geometric_average = 0.0;  ///< exp(mean ln negativity); 0 if any entry is 0
    double total = 0.0;              ///< sum over the single-node cuts Q_j|rest
    double family_sum = 0.0;         ///< sum over every entry of the family
};

struct BipartitionReport {
    Family family = Family::nodes;
    std::vector<BipartitionEntry> entries;
    Aggregates aggregates;

    [[nodiscard]] const BipartitionEntry &at(const std::string &name) const {
        for (const auto &e : entries) {
            if (e.bipartition.name() == name) {
                return e;
            }
        }
        throw ArgumentError("report has no bipartition '" + name + "'");
    }
};

inline Aggregates aggregate(const std::vector<BipartitionEntry> &entries) {
    Aggregates a;
    if (entries.empty()) {
        return a;
    }
    double log_sum = 0.0;
    bool any_zero = false;
    for (const auto &e : entries) {
        a.family_sum += e.negativity;
        if (e.negativity <= 0.0) {
            any_zero = true;
        } else {
            log_sum += std::log(e.negativity);
        }
        const auto &side = e.bipartition.side_a;
        if (side.size() == 1 && !is_carrier_label(side.front())) {
            a.total += e.negativity;
        }
    }
    a.geometric_average = any_zero ? 0.0 : std::exp(log_sum / static_cast<double>(entries.size()));
    return a;
}

inline BipartitionEntry make_entry(const DensityMatrix &rho, const Bipartition &bip) {
    BipartitionEntry e{bip, negative_eigenvalues(rho, bip), 0.0};
    double s = 0.0;
    for (double v : e.negative_eigenvalues) {
        s += v;
    }
    e.negativity = -s;
    return e;
}

inline BipartitionReport bipartition_report(const DensityMatrix &rho, const std::vector<Bipartition> &cuts,
                                            Family family) {
    BipartitionReport r;
    r.family = family;
    r.entries.reserve(cuts.size());
    for (const auto &c : cuts) {
        r.entries.push_back(make_entry(rho, c));
    }
    r.aggregates = aggregate(r.entries);
    return r;
}

/// Report over the node family (carriers on side_b) or over every bipartition of the register.
inline BipartitionReport bipartition_report(const DensityMatrix &rho, Family family = Family::nodes) {
    const auto cuts = family == Family::nodes ? node_bipartitions(rho.reg(), node_labels_of(rho.reg()))
                                              : all_bipartitions(rho.reg());
    return bipartition_report(rho, cuts, family);
}

} // namespace edss
