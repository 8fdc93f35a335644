// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#include <biochain/scenario.hpp>

#include <fstream>
#include <set>

#include <biochain/errors.hpp>
#include <biochain/protocol.hpp>
#include <biochain/random.hpp>
#include <biochain/synthbio.hpp>

namespace biochain::scenario {

using contract::Address;

namespace {

    [[noreturn]] void invalid(const std::string& message) { throw Error{ErrorCode::ScenarioInvalid, message}; }

    struct Tally {
        std::size_t attempts{0};
        std::size_t accepted{0};
    };

    nlohmann::json to_json(const std::map<std::size_t, Tally>& by_modality) {
        nlohmann::json out = nlohmann::json::object();
        std::size_t attempts = 0;
        std::size_t accepted = 0;
        nlohmann::json per = nlohmann::json::object();
        for (const auto& [modality, tally] : by_modality) {
            per[std::to_string(modality)] = {{"attempts", tally.attempts}, {"accepted", tally.accepted}};
            attempts += tally.attempts;
            accepted += tally.accepted;
        }
        out["attempts"] = attempts;
        out["accepted"] = accepted;
        out["byModality"] = std::move(per);
        return out;
    }

    class Runner {
      public:
        explicit Runner(const Scenario& scenario)
            : scenario_{scenario},
              code_{code_from_spec(scenario.code)},
              noise_{scenario.flip_probability},
              witness_rng_{derive_seed(scenario.seed, "witness")},
              template_rng_{derive_seed(scenario.seed, "template")},
              noise_rng_{derive_seed(scenario.seed, "noise")},
              impostor_rng_{derive_seed(scenario.seed, "impostor")} {
            for (const auto& node : scenario.nodes) {
                if (!nodes_.emplace(node.name, node).second) invalid("duplicate node name '" + node.name + "'");
            }
            for (std::size_t j = 1; j <= scenario.users; ++j) {
                const std::string id = "u" + std::to_string(j);
                user_ids_.push_back(id);
                auto& bank = templates_[id];
                for (std::size_t i = 1; i <= scenario.modalities; ++i) {
                    bank.push_back(synthbio::generate_template(template_rng_, code_.n(), i).bits);
                }
            }
        }

        ScenarioResult run() {
            ledger::GenesisConfig config;
            config.gas_table = scenario_.gas_table.value_or(ledger::GasTable::defaults());
            config.creator = Address::from_label(scenario_.creator);
            config.code = ecc::to_json(code_);
            for (const auto& node : scenario_.nodes) {
                if (node.enrollment) config.initial_ecs.push_back(record_for(node));
            }
            auto ledger = ledger::Ledger::genesis(config);
            protocol::Protocol protocol{ledger, code_, witness_rng_, scenario_.log_auth_results};

            for (std::size_t i = 0; i < scenario_.steps.size(); ++i) {
                run_step(protocol, i, scenario_.steps[i]);
            }

            ScenarioResult result;
            result.ledger_lines = ledger.serialize();
            result.final_state = ledger.state();
            result.templates = templates_;
            result.report = report(ledger);
            return result;
        }

      private:
        contract::NodeRecord record_for(const NodeSeed& node) const {
            return contract::NodeRecord{node.id, node.name, node.address, true, node.enrollment};
        }

        const NodeSeed& node(const nlohmann::json& step, const char* key) const {
            const auto name = step.at(key).get<std::string>();
            auto it = nodes_.find(name);
            if (it == nodes_.end()) invalid("unknown node '" + name + "'");
            return it->second;
        }

        std::vector<std::string> subjects(const nlohmann::json& step) const {
            const auto& value = step.at("subjects");
            if (value.is_string()) {
                if (value.get<std::string>() != "all") invalid("subjects must be \"all\" or a list of ids");
                return user_ids_;
            }
            return value.get<std::vector<std::string>>();
        }

        std::vector<FeatureVector> biometrics_of(const std::string& id) const {
            auto it = templates_.find(id);
            if (it == templates_.end()) invalid("unknown user '" + id + "'");
            return it->second;
        }

        void run_step(protocol::Protocol& protocol, std::size_t index, const nlohmann::json& step) {
            const std::string label = "step " + std::to_string(index);
            if (!step.is_object() || !step.contains("action") || !step.at("action").is_string()) {
                invalid(label + ": missing action");
            }
            const auto action = step.at("action").get<std::string>();
            const auto expected = step.contains("expectError")
                                      ? std::optional<std::string>{step.at("expectError").get<std::string>()}
                                      : std::nullopt;
            try {
                dispatch(protocol, action, step);
            } catch (const Error& e) {
                if (e.code() == ErrorCode::ScenarioInvalid) {
                    invalid(label + " (" + action + "): " + e.what());
                }
                if (expected && *expected == biochain::to_string(e.code())) {
                    ++expected_errors_;
                    return;
                }
                invalid(label + " (" + action + ") failed: " + e.what());
            } catch (const nlohmann::json::exception& e) {
                invalid(label + " (" + action + "): " + e.what());
            }
            if (expected) invalid(label + " (" + action + "): expected " + *expected + " but the step succeeded");
        }

        void dispatch(protocol::Protocol& protocol, const std::string& action, const nlohmann::json& step) {
            if (action == "register") {
                protocol.register_node_flow(node(step, "by").address, record_for(node(step, "node")));
            } else if (action == "enroll") {
                const auto& ec = node(step, "by").address;
                for (const auto& id : subjects(step)) {
                    protocol.enroll_user(ec, id, biometrics_of(id));
                    ++enrollments_;
                }
            } else if (action == "reenroll") {
                const auto id = step.at("subject").get<std::string>();
                protocol.reenroll_user(node(step, "by").address, id, biometrics_of(id));
            } else if (action == "authenticate") {
                authenticate(protocol, step);
            } else if (action == "elect") {
                std::vector<std::pair<Address, bool>> votes;
                for (const auto& vote : step.at("votes")) {
                    votes.emplace_back(node(vote, "by").address, vote.at("approve").get<bool>());
                }
                const bool elevated = protocol.election_flow(node(step, "candidate").address, votes);
                elections_.push_back({{"candidate", step.at("candidate")}, {"elevated", elevated}});
            } else if (action == "revoke") {
                protocol.revoke_user(node(step, "by").address, step.at("subject").get<std::string>());
            } else if (action == "delete-node") {
                protocol.delete_node(node(step, "by").address, node(step, "node").address);
            } else {
                invalid("unknown action '" + action + "'");
            }
        }

        void authenticate(protocol::Protocol& protocol, const nlohmann::json& step) {
            const auto& ac = node(step, "by").address;
            const auto mode = step.value("mode", std::string{"genuine"});
            if (mode != "genuine" && mode != "impostor") invalid("mode must be genuine or impostor");
            const auto trials = step.value("trials", std::size_t{1});

            std::vector<std::size_t> modalities;
            if (!step.contains("modalities") || step.at("modalities") == "all") {
                for (std::size_t i = 1; i <= scenario_.modalities; ++i) modalities.push_back(i);
            } else {
                modalities = step.at("modalities").get<std::vector<std::size_t>>();
            }

            // A step may override the scenario-wide logging flag.
            const bool log = step.value("logAuthResults", scenario_.log_auth_results);
            protocol.set_log_auth_results(log);

            auto& tallies = mode == "genuine" ? genuine_ : impostor_;
            for (const auto& id : subjects(step)) {
                const auto bank = biometrics_of(id);
                for (auto i : modalities) {
                    if (i == 0 || i > bank.size()) invalid("modality " + std::to_string(i) + " out of range");
                    for (std::size_t trial = 0; trial < trials; ++trial) {
                        synthbio::BiometricTemplate acquisition =
                            mode == "genuine"
                                ? synthbio::acquire({bank[i - 1], i}, noise_, noise_rng_)
                                : synthbio::generate_template(impostor_rng_, code_.n(), i);
                        const auto outcome = protocol.authenticate_user(ac, id, i, acquisition);
                        ++reasons_[std::string{protocol::to_string(outcome.reason)}];
                        if (outcome.reason == protocol::AuthReason::UnknownSubject) continue;
                        auto& tally = tallies[i];
                        ++tally.attempts;
                        if (outcome.accepted) ++tally.accepted;
                    }
                }
            }
            protocol.set_log_auth_results(scenario_.log_auth_results);
        }

        nlohmann::json report(const ledger::Ledger& ledger) const {
            nlohmann::json gas = nlohmann::json::object();
            nlohmann::json events = nlohmann::json::array();
            std::uint64_t total = 0;
            std::size_t reverted = 0;
            for (const auto& block : ledger.blocks()) {
                const auto& tx = block.transactions.front();
                const auto& receipt = block.receipts.front();
                auto& row = gas[tx.function];
                if (row.is_null()) row = {{"calls", 0}, {"totalGas", 0}};
                row["calls"] = row.value("calls", 0) + 1;
                row["totalGas"] = row.value("totalGas", std::uint64_t{0}) + receipt.gas_used;
                total += receipt.gas_used;
                if (receipt.event) events.push_back(receipt.event->name);
                if (!receipt.ok()) ++reverted;
            }
            const auto rates = synthbio::analytic_error_rates(code_, noise_);
            nlohmann::json reasons(reasons_);
            return {
                {"scenario",
                 {{"code", ecc::to_json(code_)},
                  {"flipProbability", scenario_.flip_probability},
                  {"modalities", scenario_.modalities},
                  {"users", scenario_.users},
                  {"seed", scenario_.seed},
                  {"logAuthResults", scenario_.log_auth_results}}},
                {"enrollments", enrollments_},
                {"authentications", {{"genuine", to_json(genuine_)}, {"impostor", to_json(impostor_)}}},
                {"outcomes", reasons},
                {"analytic", {{"frr", rates.frr}, {"far", rates.far}, {"farExact", rates.far_exact}}},
                {"elections", elections_},
                {"gas", {{"byFunction", gas}, {"total", total}}},
                {"events", events},
                {"revertedTransactions", reverted},
                {"expectedErrors", expected_errors_},
                {"blocks", ledger.blocks().size()},
                {"headHash", ledger.blocks().back().block_hash},
            };
        }

        const Scenario& scenario_;
        ecc::LinearCode code_;
        synthbio::NoiseModel noise_;
        SeededRandom witness_rng_;
        SeededRandom template_rng_;
        SeededRandom noise_rng_;
        SeededRandom impostor_rng_;
        std::map<std::string, NodeSeed> nodes_;
        std::vector<std::string> user_ids_;
        std::map<std::string, std::vector<BitVector>> templates_;
        std::map<std::size_t, Tally> genuine_;
        std::map<std::size_t, Tally> impostor_;
        std::map<std::string, std::size_t> reasons_;
        nlohmann::json elections_ = nlohmann::json::array();
        std::size_t enrollments_{0};
        std::size_t expected_errors_{0};
    };

}  // namespace

ecc::LinearCode code_from_spec(const nlohmann::json& spec) {
    if (spec.is_string()) return ecc::parse_code_spec(spec.get<std::string>());
    return ecc::code_from_json(spec);
}

Scenario scenario_from_json(const nlohmann::json& document) {
    try {
        Scenario s;
        s.code = document.at("code");
        s.flip_probability = document.value("flipProbability", 0.0);
        s.modalities = document.value("modalities", std::size_t{2});
        s.users = document.value("users", std::size_t{0});
        s.creator = document.value("creator", std::string{"creator"});
        s.log_auth_results = document.value("logAuthResults", false);
        s.seed = document.value("seed", std::uint64_t{0});
        if (document.contains("gasTable")) s.gas_table = ledger::gas_table_from_json(document.at("gasTable"));
        if (s.modalities == 0) invalid("modalities must be >= 1");

        std::int64_t next_id = 1;
        for (const auto& node : document.at("nodes")) {
            NodeSeed seed;
            seed.name = node.at("name").get<std::string>();
            const auto role = node.value("role", std::string{"ac"});
            if (role != "ec" && role != "ac") invalid("node role must be ec or ac");
            seed.enrollment = role == "ec";
            seed.id = node.value("id", next_id);
            next_id = seed.id + 1;
            seed.address = node.contains("address")
                               ? contract::Address::parse(node.at("address").get<std::string>())
                               : contract::Address::from_label(seed.name);
            s.nodes.push_back(std::move(seed));
        }
        for (const auto& step : document.at("steps")) s.steps.push_back(step);

        // Validate the code and noise parameters up front.
        (void)code_from_spec(s.code);
        (void)synthbio::NoiseModel{s.flip_probability};
        return s;
    } catch (const nlohmann::json::exception& e) {
        invalid(e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ScenarioInvalid) throw;
        invalid(e.what());
    }
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in{path};
    if (!in) throw Error{ErrorCode::IoError, "cannot read " + path.string()};
    try {
        return scenario_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        invalid(e.what());
    }
}

ScenarioResult run_scenario(const Scenario& scenario) {
    try {
        return Runner{scenario}.run();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ScenarioInvalid) throw;
        invalid(e.what());
    }
}

}  // namespace biochain::scenario
