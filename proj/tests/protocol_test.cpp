// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <biochain/errors.hpp>
#include <biochain/protocol.hpp>
#include <biochain/scenario.hpp>
#include <biochain/synthbio.hpp>

#include "test_support.hpp"

namespace biochain::protocol {
namespace {

using contract::Address;
using contract::NodeRecord;

const Address kEc1 = Address::from_label("ec1");
const Address kEc2 = Address::from_label("ec2");
const Address kEc3 = Address::from_label("ec3");
const Address kAc = Address::from_label("ac1");
const Address kStranger = Address::from_label("stranger");

template <typename F>
void expect_code(ErrorCode expected, F&& f) {
    try {
        f();
        ADD_FAILURE() << "expected " << to_string(expected);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), expected) << e.what();
    }
}

ledger::Ledger make_ledger(std::vector<NodeRecord> ecs) {
    ledger::GenesisConfig config;
    config.creator = Address::from_label("creator");
    config.initial_ecs = std::move(ecs);
    config.code = ecc::to_json(ecc::LinearCode::hamming(3));
    return ledger::Ledger::genesis(config);
}

struct Fixture : ::testing::Test {
    ledger::Ledger ledger = make_ledger({NodeRecord{1, "ec1", kEc1, true, true}});
    SeededRandom witnesses{77};
    SeededRandom world{78};
    Protocol protocol{ledger, ecc::LinearCode::hamming(3), witnesses};

    std::vector<FeatureVector> templates(std::size_t m = 2) {
        std::vector<FeatureVector> out;
        for (std::size_t i = 1; i <= m; ++i) out.push_back(synthbio::generate_template(world, 7, i).bits);
        return out;
    }

    void register_ac() { protocol.register_node_flow(kEc1, NodeRecord{2, "ac1", kAc, true, false}); }
};

TEST_F(Fixture, EnrollStoresOneCommitmentPerModality) {
    register_ac();
    const auto bio = templates();
    const auto event = protocol.enroll_user(kEc1, "u1", bio);
    EXPECT_EQ(event.name, "SubjectEnrolled");
    const auto& record = ledger.state().subjects.at("u1");
    ASSERT_EQ(record.commitments.size(), 2U);
    for (const auto& c : record.commitments) EXPECT_TRUE(fcs::is_well_formed(c, 7));
    expect_code(ErrorCode::DuplicateSubject, [&] { protocol.enroll_user(kEc1, "u1", bio); });
    expect_code(ErrorCode::Unauthorized, [&] { protocol.enroll_user(kAc, "u2", bio); });
    std::vector<FeatureVector> short_vector{BitVector{6}};
    expect_code(ErrorCode::LengthMismatch, [&] { protocol.enroll_user(kEc1, "u3", short_vector); });
    expect_code(ErrorCode::InvalidParameter, [&] { protocol.enroll_user(kEc1, "u3", {}); });
}

TEST_F(Fixture, NoiselessGenuineAcceptedImpostorRejectedMostly) {
    register_ac();
    const auto bio = templates();
    protocol.enroll_user(kEc1, "u1", bio);
    for (std::size_t i = 1; i <= 2; ++i) {
        const auto outcome = protocol.authenticate_user(kAc, "u1", i, {bio[i - 1], i});
        EXPECT_TRUE(outcome.accepted);
        EXPECT_EQ(outcome.reason, AuthReason::Matched);
        EXPECT_EQ(outcome.subject_id, "u1");
        EXPECT_EQ(outcome.modality, i);
    }
    auto far = bio[0];
    far.flip(0);
    far.flip(3);
    const auto rejected = protocol.authenticate_user(kAc, "u1", 1, {far, 1});
    EXPECT_FALSE(rejected.accepted);
    EXPECT_EQ(rejected.reason, AuthReason::DigestMismatch);
    expect_code(ErrorCode::ModalityOutOfRange, [&] { (void)protocol.authenticate_user(kAc, "u1", 3, {bio[0], 3}); });
    expect_code(ErrorCode::ModalityOutOfRange, [&] { (void)protocol.authenticate_user(kAc, "u1", 0, {bio[0], 0}); });
    expect_code(ErrorCode::Unauthorized,
                [&] { (void)protocol.authenticate_user(kStranger, "u1", 1, {bio[0], 1}); });
}

TEST_F(Fixture, ReadsAddNoBlocksUnlessLogging) {
    register_ac();
    const auto bio = templates();
    protocol.enroll_user(kEc1, "u1", bio);
    const auto before = ledger.blocks().size();
    (void)protocol.authenticate_user(kAc, "u1", 1, {bio[0], 1});
    EXPECT_EQ(ledger.blocks().size(), before);

    protocol.set_log_auth_results(true);
    (void)protocol.authenticate_user(kAc, "u1", 2, {bio[1], 2});
    (void)protocol.authenticate_user(kAc, "nobody", 1, {bio[1], 1});
    ASSERT_EQ(ledger.blocks().size(), before + 2);
    const auto& receipt = ledger.blocks().back().receipts.front();
    EXPECT_TRUE(receipt.ok());
    EXPECT_GT(receipt.gas_used, 0U);
    ASSERT_EQ(ledger.state().auth_log.size(), 2U);
    EXPECT_TRUE(ledger.state().auth_log[0].outcome);
    EXPECT_EQ(ledger.state().auth_log[0].modality, 2U);
    EXPECT_FALSE(ledger.state().auth_log[1].outcome);
}

TEST_F(Fixture, ReenrollReplacesCommitments) {
    register_ac();
    const auto bio = templates();
    protocol.enroll_user(kEc1, "u1", bio);
    const auto old_record = ledger.state().subjects.at("u1");
    EXPECT_EQ(protocol.reenroll_user(kEc1, "u1", bio).name, "SubjectUpdated");
    const auto& fresh = ledger.state().subjects.at("u1");
    EXPECT_NE(fresh.commitments, old_record.commitments);
    EXPECT_TRUE(protocol.authenticate_user(kAc, "u1", 1, {bio[0], 1}).accepted);
    expect_code(ErrorCode::UnknownSubject, [&] { protocol.reenroll_user(kEc1, "u9", bio); });
}

TEST_F(Fixture, RevocationLeavesHistory) {
    register_ac();
    const auto bio = templates();
    protocol.enroll_user(kEc1, "u1", bio);
    const auto offset = ledger.state().subjects.at("u1").commitments[0].offset.to_string();
    expect_code(ErrorCode::Unauthorized, [&] { protocol.revoke_user(kAc, "u1"); });
    EXPECT_EQ(protocol.revoke_user(kEc1, "u1").name, "SubjectDeleted");
    const auto outcome = protocol.authenticate_user(kAc, "u1", 1, {bio[0], 1});
    EXPECT_FALSE(outcome.accepted);
    EXPECT_EQ(outcome.reason, AuthReason::UnknownSubject);
    std::string all;
    for (const auto& line : ledger.serialize()) all += line;
    EXPECT_NE(all.find("\"offset\":\"" + offset + "\""), std::string::npos);
    expect_code(ErrorCode::UnknownSubject, [&] { protocol.revoke_user(kEc1, "u1"); });
}

TEST_F(Fixture, RegistrationFlow) {
    register_ac();
    EXPECT_NO_THROW((void)ledger.call(kAc, "getNodes", {{"address", kAc.str()}}));
    expect_code(ErrorCode::DuplicateNode,
                [&] { protocol.register_node_flow(kEc1, NodeRecord{3, "again", kAc, true, false}); });
    expect_code(ErrorCode::Unauthorized, [&] { protocol.enroll_user(kAc, "u1", templates()); });
    EXPECT_EQ(protocol.delete_node(kEc1, kAc).name, "NodeDeleted");
    expect_code(ErrorCode::Unauthorized, [&] { (void)ledger.call(kAc, "getNodes", {{"address", kEc1.str()}}); });
}

TEST_F(Fixture, CustomExtractorIsUsed) {
    struct Inverting final : synthbio::FeatureExtractor {
        FeatureVector extract(const synthbio::BiometricTemplate& t) const override {
            auto out = t.bits;
            for (std::size_t i = 0; i < out.size(); ++i) out.flip(i);
            return out;
        }
    } inverting;
    register_ac();
    const auto bio = templates(1);
    protocol.enroll_user(kEc1, "u1", bio);
    protocol.set_feature_extractor(inverting);
    auto inverted = bio[0];
    for (std::size_t i = 0; i < inverted.size(); ++i) inverted.flip(i);
    EXPECT_TRUE(protocol.authenticate_user(kAc, "u1", 1, {inverted, 1}).accepted);
    EXPECT_FALSE(protocol.authenticate_user(kAc, "u1", 1, {bio[0], 1}).accepted);
}

struct ElectionFixture : ::testing::Test {
    ledger::Ledger ledger = make_ledger({NodeRecord{1, "ec1", kEc1, true, true}, NodeRecord{2, "ec2", kEc2, true, true},
                                         NodeRecord{3, "ec3", kEc3, true, true}});
    SeededRandom witnesses{5};
    Protocol protocol{ledger, ecc::LinearCode::hamming(3), witnesses};

    void SetUp() override { protocol.register_node_flow(kEc1, NodeRecord{4, "ac1", kAc, true, false}); }

    bool can_enroll() {
        std::vector<FeatureVector> bio{BitVector::from_string("1010101")};
        try {
            protocol.enroll_user(kAc, "probe", bio);
            return true;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::Unauthorized);
            return false;
        }
    }
};

TEST_F(ElectionFixture, YesYes) {
    const std::vector<std::pair<Address, bool>> votes{{kEc1, true}, {kEc2, true}};
    EXPECT_TRUE(protocol.election_flow(kAc, votes));
    EXPECT_TRUE(can_enroll());
}

TEST_F(ElectionFixture, NoYesNo) {
    const std::vector<std::pair<Address, bool>> votes{{kEc1, false}, {kEc2, true}, {kEc3, false}};
    EXPECT_FALSE(protocol.election_flow(kAc, votes));
    EXPECT_FALSE(can_enroll());
}

TEST_F(ElectionFixture, NonEcVoter) {
    const std::vector<std::pair<Address, bool>> votes{{kAc, true}};
    expect_code(ErrorCode::Unauthorized, [&] { (void)protocol.election_flow(kAc, votes); });
    EXPECT_EQ(ledger.blocks().back().receipts.front().error, "Unauthorized");
}

TEST(Protocol, CodeMustMatchDeployment) {
    auto ledger = make_ledger({NodeRecord{1, "ec1", kEc1, true, true}});
    SeededRandom r{1};
    expect_code(ErrorCode::LengthMismatch, [&] { Protocol p(ledger, ecc::LinearCode::hamming(4), r); });
}

nlohmann::json small_scenario() {
    return nlohmann::json::parse(R"({
      "code": "hamming:3", "flipProbability": 0.05, "modalities": 2, "users": 3, "seed": 11,
      "nodes": [{"name": "ec1", "role": "ec"}, {"name": "ac1", "role": "ac"}],
      "steps": [
        {"action": "register", "by": "ec1", "node": "ac1"},
        {"action": "enroll", "by": "ec1", "subjects": "all"},
        {"action": "authenticate", "by": "ac1", "subjects": "all", "trials": 20},
        {"action": "revoke", "by": "ac1", "subject": "u1", "expectError": "Unauthorized"},
        {"action": "revoke", "by": "ec1", "subject": "u1"}
      ]})");
}

TEST(Scenario, DeterministicAndReplayable) {
    const auto s = scenario::scenario_from_json(small_scenario());
    const auto a = scenario::run_scenario(s);
    const auto b = scenario::run_scenario(s);
    EXPECT_EQ(a.ledger_lines, b.ledger_lines);
    EXPECT_EQ(a.report, b.report);
    EXPECT_TRUE(ledger::verify_chain(a.ledger_lines));
    EXPECT_EQ(ledger::replay(a.ledger_lines), a.final_state);
    EXPECT_EQ(a.report.at("expectedErrors"), 1);
    EXPECT_EQ(a.report.at("enrollments"), 3);
    EXPECT_EQ(a.report.at("authentications").at("genuine").at("attempts"), 120);

    auto changed = s;
    changed.seed = 12;
    EXPECT_NE(scenario::run_scenario(changed).ledger_lines, a.ledger_lines);
}

TEST(Scenario, TrialCountDoesNotPerturbEnrollment) {
    auto doc = small_scenario();
    const auto a = scenario::run_scenario(scenario::scenario_from_json(doc));
    doc["steps"][2]["trials"] = 500;
    const auto b = scenario::run_scenario(scenario::scenario_from_json(doc));
    // Enrollment blocks (genesis, registration, three enrollments) are unchanged.
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(a.ledger_lines[i], b.ledger_lines[i]);
}

TEST(Scenario, NoiselessCompleteness) {
    auto doc = small_scenario();
    doc["flipProbability"] = 0.0;
    const auto result = scenario::run_scenario(scenario::scenario_from_json(doc));
    const auto& genuine = result.report.at("authentications").at("genuine");
    EXPECT_EQ(genuine.at("accepted"), genuine.at("attempts"));
}

TEST(Scenario, InvalidDocuments) {
    auto doc = small_scenario();
    doc["steps"].push_back({{"action", "teleport"}});
    const auto s = scenario::scenario_from_json(doc);
    try {
        (void)scenario::run_scenario(s);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ScenarioInvalid);
        EXPECT_NE(std::string{e.what()}.find("step 5"), std::string::npos) << e.what();
    }

    doc = small_scenario();
    doc["steps"][1]["by"] = "ac1";
    expect_code(ErrorCode::ScenarioInvalid, [&] { (void)scenario::run_scenario(scenario::scenario_from_json(doc)); });

    doc = small_scenario();
    doc["steps"][4]["expectError"] = "UnknownSubject";
    expect_code(ErrorCode::ScenarioInvalid, [&] { (void)scenario::run_scenario(scenario::scenario_from_json(doc)); });

    doc = small_scenario();
    doc["flipProbability"] = 0.7;
    expect_code(ErrorCode::ScenarioInvalid, [&] { (void)scenario::scenario_from_json(doc); });
    doc = small_scenario();
    doc.erase("code");
    expect_code(ErrorCode::ScenarioInvalid, [&] { (void)scenario::scenario_from_json(doc); });
    expect_code(ErrorCode::IoError, [] { (void)scenario::load_scenario("/nonexistent/scenario.json"); });
}

TEST(Scenario, DemoAcceptanceMatchesBinomialTail) {
    const auto s = scenario::load_scenario(BIOCHAIN_SCENARIO_DIR "/demo.json");
    EXPECT_EQ(s.users, 10U);
    EXPECT_EQ(s.modalities, 2U);
    const auto result = scenario::run_scenario(s);
    const double frr = testing::binomial_tail_above(7, 1, s.flip_probability);
    for (const auto& [modality, tally] : result.report.at("authentications").at("genuine").at("byModality").items()) {
        const double n = tally.at("attempts").get<double>();
        ASSERT_GE(n, 1000.0) << modality;
        const double rate = tally.at("accepted").get<double>() / n;
        EXPECT_NEAR(rate, 1.0 - frr, testing::three_sigma(frr, static_cast<std::size_t>(n))) << modality;
    }
    EXPECT_NEAR(result.report.at("analytic").at("frr").get<double>(), frr, 1e-12);
}

}  // namespace
}  // namespace biochain::protocol
