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
#include <cstddef>
#include <cstdlib>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "edss/error.hpp"

namespace edss {

inline constexpr std::size_t kDefaultMaxQubits = 12;
inline constexpr const char *kMaxQubitsEnv = "EDSS_MAX_QUBITS";

/// Dense size limit in qubits; EDSS_MAX_QUBITS overrides the default of 12.
inline std::size_t max_qubits() {
    if (const char *env = std::getenv(kMaxQubitsEnv); env != nullptr && *env != '\0') {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != nullptr && *end == '\0' && v > 0 && v < 31) {
            return static_cast<std::size_t>(v);
        }
        throw ArgumentError(std::string(kMaxQubitsEnv) + " must be an integer in [1, 30]");
    }
    return kDefaultMaxQubits;
}

inline std::size_t max_dimension() { return std::size_t{1} << max_qubits(); }

/**
 * Ordered list of labeled subsystems. The first label owns the most
 * significant digit of the flattened index.
 */
class Register {
  public:
    Register() = default;

    Register(std::vector<std::string> labels, std::vector<std::size_t> dims)
        : labels_(std::move(labels)), dims_(std::move(dims)) {
        if (labels_.size() != dims_.size()) {
            throw ArgumentError("register: label and dimension counts differ");
        }
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i].empty()) {
                throw ArgumentError("register: empty label");
            }
            if (dims_[i] < 1) {
                throw ArgumentError("register: subsystem '" + labels_[i] + "' has dimension 0");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (labels_[j] == labels_[i]) {
                    throw ArgumentError("register: duplicate label '" + labels_[i] + "'");
                }
            }
        }
    }

    static Register qubits(std::vector<std::string> labels) {
        std::vector<std::size_t> dims(labels.size(), 2);
        return {std::move(labels), std::move(dims)};
    }

    static Register qubits(std::initializer_list<std::string_view> labels) {
        std::vector<std::string> v;
        for (auto l : labels) {
            v.emplace_back(l);
        }
        return qubits(std::move(v));
    }

    [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
    [[nodiscard]] bool empty() const noexcept { return labels_.empty(); }
    [[nodiscard]] const std::vector<std::string> &labels() const noexcept { return labels_; }
    [[nodiscard]] const std::vector<std::size_t> &dims() const noexcept { return dims_; }
    [[nodiscard]] const std::string &label(std::size_t i) const { return labels_.at(i); }
    [[nodiscard]] std::size_t dim(std::size_t i) const { return dims_.at(i); }

    /// Product of subsystem dimensions (1 for the empty register).
    [[nodiscard]] std::size_t dimension() const noexcept {
        std::size_t d = 1;
        for (auto s : dims_) {
            d *= s;
        }
        return d;
    }

    [[nodiscard]] bool contains(std::string_view label) const noexcept {
        return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
    }

    [[nodiscard]] std::size_t index_of(std::string_view label) const {
        const auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) {
            throw ArgumentError("unknown subsystem label '" + std::string(label) + "'");
        }
        return static_cast<std::size_t>(it - labels_.begin());
    }

    /// Positions of `labels` in register order; throws on unknown or repeated labels.
    [[nodiscard]] std::vector<std::size_t> positions(std::span<const std::string> labels) const {
        std::vector<std::size_t> pos;
        pos.reserve(labels.size());
        for (const auto &l : labels) {
            const auto p = index_of(l);
            if (std::find(pos.begin(), pos.end(), p) != pos.end()) {
                throw ArgumentError("subsystem label '" + l + "' listed twice");
            }
            pos.push_back(p);
        }
        std::sort(pos.begin(), pos.end());
        return pos;
    }

    /// Stride of each subsystem digit in the flattened index.
    [[nodiscard]] std::vector<std::size_t> strides() const {
        std::vector<std::size_t> s(dims_.size(), 1);
        for (std::size_t i = dims_.size(); i-- > 1;) {
            s[i - 1] = s[i] * dims_[i];
        }
        return s;
    }

    /// Sub-register of the given positions, kept in register order.
    [[nodiscard]] Register select(std::span<const std::size_t> sorted_positions) const {
        std::vector<std::string> l;
        std::vector<std::size_t> d;
        for (auto p : sorted_positions) {
            l.push_back(labels_.at(p));
            d.push_back(dims_.at(p));
        }
        return {std::move(l), std::move(d)};
    }

    /// Labels not in `labels`, in register order.
    [[nodiscard]] std::vector<std::string> complement(std::span<const std::string> labels) const {
        std::vector<std::string> out;
        for (const auto &l : labels_) {
            if (std::find(labels.begin(), labels.end(), l) == labels.end()) {
                out.push_back(l);
            }
        }
        return out;
    }

    friend Register operator+(const Register &a, const Register &b) {
        auto l = a.labels_;
        auto d = a.dims_;
        l.insert(l.end(), b.labels_.begin(), b.labels_.end());
        d.insert(d.end(), b.dims_.begin(), b.dims_.end());
        return {std::move(l), std::move(d)};
    }

    friend bool operator==(const Register &, const Register &) = default;

  private:
    std::vector<std::string> labels_;
    std::vector<std::size_t> dims_;
};

/// Carriers are the subsystems whose label starts with 'K'.
inline bool is_carrier_label(std::string_view label) noexcept {
    return !label.empty() && label.front() == 'K';
}

} // namespace edss
