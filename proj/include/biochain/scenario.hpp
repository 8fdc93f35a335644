// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <biochain/bits.hpp>
#include <biochain/contract.hpp>
#include <biochain/ecc.hpp>
#include <biochain/ledger.hpp>

namespace biochain::scenario {

struct NodeSeed {
    std::string name;
    contract::Address address;
    std::int64_t id{0};
    bool enrollment{false};  // initial EC; otherwise an AC awaiting registration
};

//! A batch run: who exists, which code, and an ordered list of protocol
//! actions. Users are "u1".."uN"; their templates come from the seed.
//!
//! Step objects (all take an optional "expectError": "<ErrorCode>"):
//!   {"action": "register",     "by": EC, "node": NAME}
//!   {"action": "enroll",       "by": EC, "subjects": "all" | [ids]}
//!   {"action": "reenroll",     "by": EC, "subject": ID}
//!   {"action": "authenticate", "by": NODE, "subjects": "all" | [ids],
//!    "modalities": "all" | [i], "mode": "genuine" | "impostor", "trials": N,
//!    "logAuthResults": bool (overrides the scenario flag for this step)}
//!   {"action": "elect",        "candidate": NAME, "votes": [{"by": EC, "approve": bool}]}
//!   {"action": "revoke",       "by": EC, "subject": ID}
//!   {"action": "delete-node",  "by": EC, "node": NAME}
struct Scenario {
    nlohmann::json code;  // "hamming:3" style string or a code description
    double flip_probability{0.0};
    std::size_t modalities{2};
    std::size_t users{0};
    std::string creator{"creator"};
    std::vector<NodeSeed> nodes;
    std::vector<nlohmann::json> steps;
    bool log_auth_results{false};
    std::uint64_t seed{0};
    std::optional<ledger::GasTable> gas_table;
};

//! Throws ScenarioInvalid.
Scenario scenario_from_json(const nlohmann::json& document);
Scenario load_scenario(const std::filesystem::path& path);

struct ScenarioResult {
    std::vector<std::string> ledger_lines;
    nlohmann::json report;
    contract::ContractState final_state;
    //! Reference templates per user and modality. Test data only: never
    //! written to the ledger or the report.
    std::map<std::string, std::vector<BitVector>> templates;
};

//! Pure function of the scenario. Throws ScenarioInvalid naming the step.
ScenarioResult run_scenario(const Scenario& scenario);

ecc::LinearCode code_from_spec(const nlohmann::json& spec);

}  // namespace biochain::scenario
