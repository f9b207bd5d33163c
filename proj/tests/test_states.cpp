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

#include <gtest/gtest.h>

#include "edss/states.hpp"
#include "support/oracle.hpp"

namespace {

using edss::Matrix;
using edss::Topology;

oracle::Dense zero_proj() {
    oracle::Dense z(2);
    z(0, 0) = 1.0;
    return z;
}

oracle::Dense seed_by_hand() {
    oracle::Dense s(4);
    s(0, 0) = s(3, 3) = 3.0 / 8;
    s(1, 1) = s(2, 2) = 1.0 / 8;
    s(0, 3) = s(3, 0) = 1.0 / 8;
    return s;
}

TEST(Kets, Normalized) {
    for (auto l : {edss::KetLabel::zero, edss::KetLabel::one, edss::KetLabel::D, edss::KetLabel::A, edss::KetLabel::R,
                   edss::KetLabel::L}) {
        EXPECT_NEAR(edss::ket(l).amplitudes.norm(), 1.0, 1e-15) << edss::to_string(l);
        EXPECT_EQ(edss::parse_ket(edss::to_string(l)).label, l);
    }
    EXPECT_THROW(edss::parse_ket("X"), edss::ArgumentError);
    EXPECT_NEAR(std::abs(edss::ket(edss::KetLabel::D).amplitudes.dot(edss::ket(edss::KetLabel::A).amplitudes)), 0.0,
                1e-15);
}

TEST(Seed, MatchesHandExpansion) {
    EXPECT_LT(oracle::max_diff(edss::pair_seed_matrix(), seed_by_hand()), 1e-15);
    EXPECT_NEAR(edss::pair_seed_state().trace(), 1.0, 1e-15);
}

TEST(Seed, PositivePartialTranspose) {
    const auto pt = oracle::partial_transpose(seed_by_hand(), {2, 2}, {true, false});
    EXPECT_GE(oracle::eigenvalues(pt).front(), -1e-15);
}

TEST(Carrier, Diagonal) {
    const Matrix c = edss::carrier_matrix();
    // 1/4|D><D| + 3/4|A><A| = 1/2 I - 1/4 X
    EXPECT_NEAR(c(0, 0).real(), 0.5, 1e-15);
    EXPECT_NEAR(c(0, 1).real(), -0.25, 1e-15);
    EXPECT_NEAR(c(1, 1).real(), 0.5, 1e-15);
}

TEST(Topology, Pairs) {
    EXPECT_EQ(Topology::ring(4).pairs().size(), 4u);
    EXPECT_EQ(Topology::ring(2).pairs().size(), 1u);
    EXPECT_EQ(Topology::linear(5).pairs().size(), 4u);
    const auto s = Topology::star(4, 2);
    ASSERT_EQ(s.pairs().size(), 3u);
    for (const auto &p : s.pairs()) EXPECT_EQ(p.a, 2u);
    EXPECT_EQ(edss::to_string(edss::parse_topology_kind("appendixA")), "appendixA");
}

TEST(Topology, Rejects) {
    EXPECT_THROW(Topology::ring(1), edss::ArgumentError);
    EXPECT_THROW(Topology::star(4, 5), edss::ArgumentError);
    EXPECT_THROW(Topology::custom(3, {{1, 1}}), edss::ArgumentError);
    EXPECT_THROW(Topology::custom(3, {{1, 2}, {2, 1}}), edss::ArgumentError);
    EXPECT_THROW(Topology::custom(3, {{1, 4}}), edss::ArgumentError);
    EXPECT_THROW(Topology::appendix_a(5), edss::ArgumentError);
    EXPECT_THROW(edss::parse_topology_kind("mesh"), edss::ArgumentError);
}

TEST(Topology, Matchings) {
    const auto m = Topology::appendix_a(4).matchings();
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m[0], (std::vector<edss::NodePair>{{1, 2}, {3, 4}}));
    EXPECT_EQ(m[1], (std::vector<edss::NodePair>{{4, 1}, {2, 3}}));
}

TEST(NetworkState, RingThreeByExplicitProducts) {
    const auto seed = seed_by_hand();
    const std::vector<std::size_t> dims{2, 2, 2};
    const auto t12 = oracle::kron(seed, zero_proj());
    const auto t23 = oracle::kron(zero_proj(), seed);
    // seed on (Q3, Q1): build on (Q3, Q1, Q2) and move to (Q1, Q2, Q3)
    const auto t31 = oracle::permute(oracle::kron(seed, zero_proj()), dims, {1, 2, 0});
    oracle::Dense expect(8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) expect(i, j) = (t12(i, j) + t23(i, j) + t31(i, j)) / 3.0;
    EXPECT_LT(oracle::max_diff(edss::network_state(Topology::ring(3)).matrix(), expect), 1e-15);
}

TEST(NetworkState, RingTwoIsTheSeed) {
    EXPECT_LT(oracle::max_diff(edss::network_state(Topology::ring(2)).matrix(), seed_by_hand()), 1e-15);
}

TEST(NetworkState, StarAndLinearNormalized) {
    for (std::size_t n = 2; n <= 6; ++n) {
        EXPECT_NEAR(edss::network_state(Topology::star(n)).trace(), 1.0, 1e-12);
        EXPECT_NEAR(edss::network_state(Topology::linear(n)).trace(), 1.0, 1e-12);
    }
    EXPECT_THROW(edss::network_state(Topology::appendix_a(4)), edss::ArgumentError);
}

TEST(NetworkState, TwoMatchingMixture) {
    const auto rho = edss::appendix_a_state(4);
    EXPECT_NEAR(rho.trace(), 1.0, 1e-14);
    EXPECT_EQ(edss::check_density_invariants(rho), "");
    // matching term: seed (x) seed on (Q1Q2)(Q3Q4)
    const auto m1 = oracle::kron(seed_by_hand(), seed_by_hand());
    const auto bare = edss::matching_mixture_state(4);
    const auto m2 = oracle::permute(m1, {2, 2, 2, 2}, {1, 2, 3, 0});
    oracle::Dense expect(16);
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) expect(i, j) = (m1(i, j) + m2(i, j)) / 2.0;
    EXPECT_LT(oracle::max_diff(bare.matrix(), expect), 1e-15);
}

TEST(MultiCarrier, Product) {
    const auto k = edss::multi_carrier_state(3);
    EXPECT_EQ(k.reg().labels(), (std::vector<std::string>{"K1", "K2", "K3"}));
    const auto c = oracle::from_eigen(edss::carrier_matrix());
    EXPECT_LT(oracle::max_diff(k.matrix(), oracle::kron(oracle::kron(c, c), c)), 1e-15);
    EXPECT_THROW(edss::multi_carrier_state(0), edss::ArgumentError);
}

} // namespace
