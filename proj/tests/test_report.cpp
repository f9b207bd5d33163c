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

#include <cstdlib>

#include <gtest/gtest.h>

#include "edss/commands.hpp"

namespace {

using edss::Json;

edss::RunConfig ring4(edss::Variant v) {
    edss::RunConfig c;
    c.topology = {edss::TopologyKind::ring, 4, std::nullopt, {}};
    c.variant = v;
    return c;
}

TEST(Config, ParsesAllFields) {
    const auto c = edss::parse_topology_config(R"({"kind":"star","nodes":5,"center":2,"variant":"qudit"})");
    EXPECT_EQ(c.topology.kind, edss::TopologyKind::star);
    EXPECT_EQ(c.topology.nodes, 5u);
    EXPECT_EQ(c.topology.center, 2u);
    EXPECT_EQ(c.variant, edss::Variant::star_qudit);
    const auto p = edss::parse_topology_config(R"({"kind":"custom","nodes":3,"pairs":[[1,2],[2,3]]})");
    EXPECT_EQ(p.topology.pairs, (std::vector<edss::NodePair>{{1, 2}, {2, 3}}));
    EXPECT_FALSE(p.variant.has_value());
}

TEST(Config, Rejects) {
    for (const char *bad : {R"({"kind":"ring","nodes":4,"colour":1})", R"({"nodes":4})", R"({"kind":"ring"})",
                            R"({"kind":"ring","nodes":"four"})", R"({"kind":"ring","nodes":1})",
                            R"({"kind":"custom","nodes":3,"pairs":[[1,2,3]]})", R"({"kind":"torus","nodes":4})",
                            R"([1,2])", R"({"kind":)", R"({"kind":"ring","nodes":4,"variant":"x"})"}) {
        EXPECT_THROW(edss::parse_topology_config(bad), edss::ArgumentError) << bad;
    }
}

TEST(Config, PairList) {
    EXPECT_EQ(edss::parse_pairs("1-2,3-4"), (std::vector<edss::NodePair>{{1, 2}, {3, 4}}));
    EXPECT_THROW(edss::parse_pairs("1-2,3"), edss::ArgumentError);
    EXPECT_THROW(edss::parse_pairs("1-x"), edss::ArgumentError);
    EXPECT_THROW(edss::parse_pairs(""), edss::ArgumentError);
}

TEST(Config, Consistency) {
    auto c = ring4(edss::Variant::star_qudit);
    EXPECT_THROW(edss::validate(c), edss::ArgumentError);
    c = ring4(edss::Variant::single_carrier);
    c.tolerance = 0.0;
    EXPECT_THROW(edss::validate(c), edss::ArgumentError);
    c = ring4(edss::Variant::single_carrier);
    c.topology.center = 1;
    EXPECT_THROW(edss::validate(c), edss::ArgumentError);
    c = ring4(edss::Variant::multi_carrier);
    c.decompose = true;
    EXPECT_THROW(edss::validate(c), edss::ArgumentError);
    EXPECT_NO_THROW(edss::validate(ring4(edss::Variant::relay)));
}

TEST(Simulate, RingSingleEntry) {
    const auto r = edss::cmd_simulate(ring4(edss::Variant::single_carrier));
    EXPECT_EQ(r.exit_status, 0);
    const auto &entries = r.document["final_state"]["bipartitions"]["entries"];
    ASSERT_EQ(entries.size(), 7u);
    EXPECT_EQ(entries[0]["bipartition"]["name"], "Q1|Q2Q3Q4K");
    ASSERT_EQ(entries[0]["negative_eigenvalues"].size(), 1u);
    EXPECT_NEAR(entries[0]["negative_eigenvalues"][0].get<double>(), -0.0175206, 1e-6);
    EXPECT_EQ(r.document["schema_version"], edss::kSchemaVersion);
    EXPECT_TRUE(r.document["carrier_certificate"]["all_zero_negativity"].get<bool>());
    EXPECT_FALSE(r.document.contains("timing"));
}

TEST(Simulate, RoundTripIsByteIdentical) {
    auto c = ring4(edss::Variant::multi_carrier);
    c.with_discord = true;
    const auto r = edss::cmd_simulate(c);
    EXPECT_EQ(edss::dump(Json::parse(r.text)), r.text);
}

TEST(Simulate, Deterministic) {
    auto c = ring4(edss::Variant::single_carrier);
    c.decompose = true;
    c.with_discord = true;
    EXPECT_EQ(edss::cmd_simulate(c).text, edss::cmd_simulate(c).text);
}

TEST(Simulate, CheckedConfigurations) {
    auto c = ring4(edss::Variant::single_carrier);
    c.check = true;
    const auto r = edss::cmd_simulate(c);
    EXPECT_EQ(r.exit_status, 0);
    EXPECT_EQ(r.document["golden_checks"].size(), 7u);
}

TEST(Simulate, Csv) {
    auto c = ring4(edss::Variant::single_carrier);
    c.format = edss::OutputFormat::csv;
    const auto text = edss::cmd_simulate(c).text;
    EXPECT_EQ(text.rfind("bipartition,negativity,negative_eigenvalues\n", 0), 0u);
    EXPECT_NE(text.find("Q1Q2|Q3Q4K,0.015625,-0.0078125;-0.0078125\n"), std::string::npos);
}

TEST(Simulate, TimingOnlyOnRequest) {
    auto c = ring4(edss::Variant::single_carrier);
    c.timing = true;
    EXPECT_TRUE(edss::cmd_simulate(c).document.contains("timing"));
}

TEST(Tables, RowsAndExitStatus) {
    const auto r = edss::cmd_tables();
    const auto &rows = r.document["rows"];
    std::size_t fails = 0;
    for (const auto &row : rows) {
        EXPECT_TRUE(row.contains("source"));
        if (row["status"] == "fail") ++fails;
    }
    EXPECT_EQ(r.document["summary"]["fail"].get<std::size_t>(), fails);
    EXPECT_EQ(r.exit_status, fails == 0 ? 0 : 1);
    EXPECT_EQ(edss::dump(Json::parse(r.text)), r.text);
}

TEST(Trend, CsvShape) {
    edss::TrendOptions o;
    o.max_nodes = 5;
    o.format = edss::OutputFormat::csv;
    const auto r = edss::cmd_trend(o);
    EXPECT_EQ(r.text.rfind("n,geometric_average,total\n3,", 0), 0u);
    EXPECT_NE(r.text.find("\n4,0.0184179497332,0.0700825214725\n"), std::string::npos);
    EXPECT_EQ(r.exit_status, 0);
}

TEST(Trend, TruncatesAtQubitLimit) {
    ::setenv("EDSS_MAX_QUBITS", "5", 1);
    edss::TrendOptions o;
    o.max_nodes = 6;
    const auto r = edss::cmd_trend(o);
    ::unsetenv("EDSS_MAX_QUBITS");
    EXPECT_TRUE(r.document["truncated"].get<bool>());
    EXPECT_EQ(r.document["series"].size(), 2u);
    EXPECT_THROW(edss::cmd_trend({2, 5}), edss::ArgumentError);
}

TEST(DiscordCommand, States) {
    edss::DiscordConfig c;
    auto r = edss::cmd_discord(c);
    EXPECT_EQ(r.exit_status, 0);
    EXPECT_NEAR(r.document["result"]["value"].get<double>(), 0.0612781, 1e-4);
    c.state = edss::DiscordInput::product;
    r = edss::cmd_discord(c);
    EXPECT_EQ(r.exit_status, 0);
    EXPECT_NEAR(r.document["result"]["value"].get<double>(), 0.0, 1e-8);
    c.state = edss::DiscordInput::seed;
    c.report_angles = true;
    r = edss::cmd_discord(c);
    EXPECT_LE(r.document["angles"]["reevaluation_error"].get<double>(), 1e-8);
    EXPECT_THROW(edss::parse_discord_input("bell"), edss::ArgumentError);
}

TEST(Numbers, TwelveSignificantDigits) {
    EXPECT_EQ(edss::format_number(0.0175206303681456), "0.0175206303681");
    EXPECT_EQ(edss::format_number(-0.03125), "-0.03125");
}

TEST(Lists, Comparison) {
    EXPECT_TRUE(edss::compare_lists({-0.1, -0.2}, {-0.2000001, -0.1}, 1e-6).pass);
    EXPECT_FALSE(edss::compare_lists({-0.1}, {-0.1, -0.2}, 1e-6).length_match);
}

} // namespace
