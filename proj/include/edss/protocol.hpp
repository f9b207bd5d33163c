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
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "edss/error.hpp"
#include "edss/metrics.hpp"
#include "edss/register.hpp"
#include "edss/states.hpp"
#include "edss/tensor.hpp"

namespace edss {

enum class Variant { single_carrier, multi_carrier, star_qudit, relay };

inline std::string to_string(Variant v) {
    switch (v) {
    case Variant::single_carrier: return "single";
    case Variant::multi_carrier: return "multi";
    case Variant::star_qudit: return "qudit";
    case Variant::relay: return "relay";
    }
    return "?";
}

inline Variant parse_variant(std::string_view s) {
    if (s == "single") return Variant::single_carrier;
    if (s == "multi") return Variant::multi_carrier;
    if (s == "qudit") return Variant::star_qudit;
    if (s == "relay") return Variant::relay;
    throw ArgumentError("unknown variant '" + std::string(s) + "' (expected single, multi, qudit or relay)");
}

/// Diagonal of the controlled-phase gate: -1 where both node and carrier are |1>.
inline Vector cphase_phases(const Register &reg, const std::string &node, const std::string &carrier) {
    if (node == carrier) {
        throw ArgumentError("cphase: node and carrier labels coincide ('" + node + "')");
    }
    const auto pn = reg.index_of(node);
    const auto pk = reg.index_of(carrier);
    if (reg.dim(pn) != 2 || reg.dim(pk) != 2) {
        throw ArgumentError("cphase: both subsystems must be qubits");
    }
    const auto strides = reg.strides();
    const auto d = reg.dimension();
    Vector phases = Vector::Ones(static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
        if ((i / strides[pn]) % 2 == 1 && (i / strides[pk]) % 2 == 1) {
            phases[static_cast<Eigen::Index>(i)] = -1.0;
        }
    }
    return phases;
}

/// |0><0|_node (x) 1_carrier + |1><1|_node (x) sigma_z,carrier on the full register.
inline Matrix cphase_operator(const Register &reg, const std::string &node, const std::string &carrier) {
    return cphase_phases(reg, node, carrier).asDiagonal();
}

struct CPhaseStep {
    std::string node;
    std::string carrier;
};

struct ProjectStep {
    std::string carrier;
    KetLabel ket = KetLabel::A;
    bool renormalize = true;
};

struct TraceOutStep {
    std::string carrier;
};

struct InsertStep {
    DensityMatrix state;  ///< fresh single-carrier state; its label names the carrier
};

enum class StepRole { encoding, decoding, relay_handoff };

inline std::string to_string(StepRole r) {
    switch (r) {
    case StepRole::encoding: return "encoding";
    case StepRole::decoding: return "decoding";
    case StepRole::relay_handoff: return "relay-handoff";
    }
    return "?";
}

struct GateStep {
    std::variant<CPhaseStep, ProjectStep, TraceOutStep, InsertStep> action;
    StepRole role = StepRole::encoding;
    std::string produces;  ///< name of the state after this step
};

inline std::string describe(const GateStep &s) {
    struct Visitor {
        std::string operator()(const CPhaseStep &c) const { return "cphase(" + c.node + "," + c.carrier + ")"; }
        std::string operator()(const ProjectStep &p) const {
            return "project(" + p.carrier + "," + to_string(p.ket) + (p.renormalize ? ",renormalize)" : ")");
        }
        std::string operator()(const TraceOutStep &t) const { return "trace_out(" + t.carrier + ")"; }
        std::string operator()(const InsertStep &i) const {
            return "insert(" + (i.state.reg().empty() ? std::string("?") : i.state.reg().label(0)) + ")";
        }
    };
    return std::visit(Visitor{}, s.action);
}

struct ProtocolSchedule {
    Variant variant = Variant::single_carrier;
    std::vector<GateStep> steps;
};

/// Checks that every cphase/project/trace_out references a carrier present at that point.
inline void validate_schedule(const ProtocolSchedule &schedule, const Register &initial) {
    std::vector<std::string> present = initial.labels();
    auto has = [&](const std::string &l) { return std::find(present.begin(), present.end(), l) != present.end(); };
    for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
        const auto &step = schedule.steps[i];
        const auto fail = [&](const std::string &why) { throw ProtocolError(i + 1, describe(step) + ": " + why); };
        if (const auto *c = std::get_if<CPhaseStep>(&step.action)) {
            if (!has(c->node) || !has(c->carrier)) {
                fail("label not present in the register");
            }
            if (c->node == c->carrier) {
                fail("node and carrier coincide");
            }
        } else if (const auto *p = std::get_if<ProjectStep>(&step.action)) {
            if (!has(p->carrier)) {
                fail("carrier not present");
            }
        } else if (const auto *t = std::get_if<TraceOutStep>(&step.action)) {
            if (!has(t->carrier)) {
                fail("carrier not present");
            }
            present.erase(std::find(present.begin(), present.end(), t->carrier));
        } else if (const auto *ins = std::get_if<InsertStep>(&step.action)) {
            for (const auto &l : ins->state.reg().labels()) {
                if (has(l)) {
                    fail("carrier already present");
                }
                present.push_back(l);
            }
        }
    }
}

namespace detail {

inline std::string sequence_state_name(std::size_t step) {
    static constexpr std::array<const char *, 8> names{"beta_T",  "gamma_T", "delta_T", "eta_T",
                                                        "zeta_T",  "kappa_T", "chi_T",   "omega_T"};
    return step < names.size() ? names[step] : "state_" + std::to_string(step + 1);
}

inline std::string relay_carrier(std::size_t k) { return "K" + std::string(k, '\''); }

inline GateStep cphase(const std::string &node, const std::string &carrier, StepRole role) {
    return {CPhaseStep{node, carrier}, role, {}};
}

} // namespace detail

/// Carrier labels present at the start of a run.
inline std::vector<std::string> initial_carriers(const Topology &topology, Variant variant) {
    switch (variant) {
    case Variant::single_carrier:
    case Variant::relay: return {"K"};
    case Variant::multi_carrier:
    case Variant::star_qudit: return carrier_labels(topology.pairs().size());
    }
    return {};
}

/// Network state (x) every initial carrier in the mixed carrier state.
inline DensityMatrix initial_state(const Topology &topology, Variant variant) {
    DensityMatrix out = initial_network_state(topology);
    for (const auto &k : initial_carriers(topology, variant)) {
        out = kron(out, carrier_state(k));
    }
    return out;
}

/**
 * Gate sequence for a topology/variant pair.
 *
 * single: one cphase per node (star: center first, then leaves ascending).
 * multi / qudit: carrier K_k encodes at the first node of pair k and decodes at the second.
 * relay (ring, even N): pairs (Q1,Q2), (Q3,Q4), ... each woven by a fresh carrier;
 *   between pairs the carrier is projected on |A>, traced out and replaced.
 */
inline ProtocolSchedule build_schedule(const Topology &topology, Variant variant) {
    ProtocolSchedule s;
    s.variant = variant;
    const auto &pairs = topology.pairs();
    switch (variant) {
    case Variant::single_carrier: {
        std::vector<std::size_t> order;
        if (topology.kind() == TopologyKind::star) {
            order.push_back(*topology.center());
        }
        for (std::size_t q = 1; q <= topology.node_count(); ++q) {
            const bool in_pair = std::any_of(pairs.begin(), pairs.end(),
                                             [q](const NodePair &p) { return p.a == q || p.b == q; });
            if (in_pair && std::find(order.begin(), order.end(), q) == order.end()) {
                order.push_back(q);
            }
        }
        std::vector<std::size_t> visited;
        for (auto q : order) {
            // encoding if q is the first visited node of at least one of its pairs
            const bool encodes = std::any_of(pairs.begin(), pairs.end(), [&](const NodePair &p) {
                const auto other = p.a == q ? p.b : (p.b == q ? p.a : 0);
                return other != 0 && std::find(visited.begin(), visited.end(), other) == visited.end();
            });
            s.steps.push_back(detail::cphase(node_label(q), "K", encodes ? StepRole::encoding : StepRole::decoding));
            visited.push_back(q);
        }
        break;
    }
    case Variant::star_qudit:
        if (topology.kind() != TopologyKind::star) {
            throw ArgumentError("the qudit variant requires a star topology");
        }
        [[fallthrough]];
    case Variant::multi_carrier: {
        const auto carriers = carrier_labels(pairs.size());
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            s.steps.push_back(detail::cphase(node_label(pairs[k].a), carriers[k], StepRole::encoding));
            s.steps.push_back(detail::cphase(node_label(pairs[k].b), carriers[k], StepRole::decoding));
        }
        break;
    }
    case Variant::relay: {
        if (topology.kind() != TopologyKind::ring) {
            throw ArgumentError("the relay variant requires a ring topology");
        }
        const auto n = topology.node_count();
        if (n % 2 != 0) {
            throw ArgumentError("the relay variant weaves node pairs and needs an even node count");
        }
        for (std::size_t k = 0; 2 * k < n; ++k) {
            const auto carrier = detail::relay_carrier(k);
            if (k > 0) {
                s.steps.push_back({InsertStep{carrier_state(carrier)}, StepRole::relay_handoff, {}});
            }
            s.steps.push_back(detail::cphase(node_label(2 * k + 1), carrier, StepRole::encoding));
            s.steps.push_back(detail::cphase(node_label(2 * k + 2), carrier, StepRole::decoding));
            if (2 * (k + 1) < n) {
                s.steps.push_back({ProjectStep{carrier, KetLabel::A, true}, StepRole::relay_handoff, {}});
                s.steps.push_back({TraceOutStep{carrier}, StepRole::relay_handoff, {}});
            }
        }
        break;
    }
    }

    if (variant == Variant::relay && topology.node_count() == 4) {
        static constexpr std::array<const char *, 7> names{"beta_T",  "gamma_T", "gamma'_T", "gamma_N",
                                                            "gamma''_T", "delta_T", "eta_T"};
        for (std::size_t i = 0; i < s.steps.size(); ++i) {
            s.steps[i].produces = names[i];
        }
    } else {
        for (std::size_t i = 0; i < s.steps.size(); ++i) {
            s.steps[i].produces = detail::sequence_state_name(i);
        }
    }
    return s;
}

struct CarrierCutResult {
    Bipartition cut;
    double negativity = 0.0;
};

struct TraceEntry {
    std::string name;
    std::optional<std::size_t> step;  ///< 1-based index of the producing step; empty for the initial state
    std::string action;
    DensityMatrix state;
    double probability = 1.0;  ///< outcome probability for projection steps
    std::vector<CarrierCutResult> carrier_cuts;
};

struct ProtocolTrace {
    std::vector<TraceEntry> entries;

    [[nodiscard]] const DensityMatrix &final_state() const { return entries.back().state; }

    [[nodiscard]] const TraceEntry &at(const std::string &name) const {
        for (const auto &e : entries) {
            if (e.name == name) {
                return e;
            }
        }
        throw ArgumentError("trace has no state named '" + name + "'");
    }
};

struct RunOptions {
    bool carrier_cuts = true;
};

/// Negativity across every carrier-isolating cut; unnormalized states are scaled first.
inline std::vector<CarrierCutResult> carrier_cut_negativities(const DensityMatrix &state) {
    std::vector<CarrierCutResult> out;
    const auto cuts = carrier_cuts(state.reg());
    if (cuts.empty()) {
        return out;
    }
    const DensityMatrix unit = state.is_normalized() ? state : state.normalized();
    for (const auto &c : cuts) {
        out.push_back({c, negativity(unit, c)});
    }
    return out;
}

inline DensityMatrix apply_step(const DensityMatrix &state, const GateStep &step, double &probability) {
    probability = 1.0;
    if (const auto *c = std::get_if<CPhaseStep>(&step.action)) {
        return conjugate_diagonal(state, cphase_phases(state.reg(), c->node, c->carrier));
    }
    if (const auto *p = std::get_if<ProjectStep>(&step.action)) {
        auto r = project(state, p->carrier, ket(p->ket).amplitudes, p->renormalize);
        probability = r.probability;
        return std::move(r.state);
    }
    if (const auto *t = std::get_if<TraceOutStep>(&step.action)) {
        const std::vector<std::string> drop{t->carrier};
        return partial_trace(state, state.reg().complement(drop));
    }
    const auto &ins = std::get<InsertStep>(step.action);
    return kron(state, ins.state);
}

/// Executes the schedule, recording every intermediate state.
inline ProtocolTrace run(const ProtocolSchedule &schedule, const DensityMatrix &initial, const RunOptions &opt = {}) {
    validate_schedule(schedule, initial.reg());
    ProtocolTrace trace;
    auto record = [&](std::string name, std::optional<std::size_t> step, std::string action, DensityMatrix st,
                      double prob) {
        TraceEntry e{std::move(name), step, std::move(action), std::move(st), prob, {}};
        if (opt.carrier_cuts) {
            e.carrier_cuts = carrier_cut_negativities(e.state);
        }
        trace.entries.push_back(std::move(e));
    };
    record("alpha_T", std::nullopt, "initial", initial, 1.0);
    for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
        const auto &step = schedule.steps[i];
        try {
            double prob = 1.0;
            DensityMatrix next = apply_step(trace.entries.back().state, step, prob);
            record(step.produces.empty() ? detail::sequence_state_name(i) : step.produces, i + 1, describe(step),
                   std::move(next), prob);
        } catch (const ProtocolError &) {
            throw;
        } catch (const Error &e) {
            throw ProtocolError(i + 1, describe(step) + ": " + e.what());
        }
    }
    return trace;
}

/// Project each listed carrier on |A> (renormalized) and trace it out.
inline DensityMatrix post_select_carriers(const DensityMatrix &state, const std::vector<std::string> &carriers) {
    DensityMatrix out = state.is_normalized() ? state : state.normalized();
    for (const auto &k : carriers) {
        out = project(out, k, ket(KetLabel::A).amplitudes, true).state;
    }
    return partial_trace(out, out.reg().complement(carriers));
}

inline DensityMatrix post_select_carrier(const ProtocolTrace &trace, const std::string &carrier) {
    return post_select_carriers(trace.final_state(), {carrier});
}

} // namespace edss
