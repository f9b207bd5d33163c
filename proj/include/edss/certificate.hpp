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

#include <vector>

#include "edss/protocol.hpp"

namespace edss {

inline constexpr double kCarrierSeparability = 1e-10;

/**
 * Per recorded state: true iff every carrier-isolating cut (each carrier
 * alone, all carriers jointly) has negativity <= 1e-10. This is the PPT
 * criterion; it certifies zero negativity, which proves separability only for
 * 2x2 and 2x3 cuts.
 */
inline std::vector<bool> carrier_separability_certificate(const ProtocolTrace &trace) {
    std::vector<bool> out;
    out.reserve(trace.entries.size());
    for (const auto &e : trace.entries) {
        const auto cuts = e.carrier_cuts.empty() && !carrier_cuts(e.state.reg()).empty()
                              ? carrier_cut_negativities(e.state)
                              : e.carrier_cuts;
        bool ok = true;
        for (const auto &c : cuts) {
            ok = ok && c.negativity <= kCarrierSeparability;
        }
        out.push_back(ok);
    }
    return out;
}

} // namespace edss
