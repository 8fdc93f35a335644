// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

// Operator CLI. Stateful subcommands (deploy, register-node, enroll,
// authenticate, revoke, elect) load a JSONL ledger, replay it, append the
// new transactions and write it back.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <biochain/contract.hpp>
#include <biochain/ecc.hpp>
#include <biochain/errors.hpp>
#include <biochain/hash.hpp>
#include <biochain/ledger.hpp>
#include <biochain/protocol.hpp>
#include <biochain/reports.hpp>
#include <biochain/scenario.hpp>

namespace {

using biochain::Error;
using biochain::ErrorCode;
using biochain::contract::Address;
using nlohmann::json;

// 32 hex characters are taken literally, anything else is a label.
Address resolve(const std::string& text) {
    if (biochain::is_lower_hex(text, 32)) return Address::parse(text);
    return Address::from_label(text);
}

std::unique_ptr<biochain::RandomSource> make_random(const std::optional<std::uint64_t>& seed) {
    if (seed) return std::make_unique<biochain::SeededRandom>(*seed);
    return std::make_unique<biochain::SecureRandom>();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out{path, std::ios::binary | std::ios::trunc};
    if (!out) throw Error{ErrorCode::IoError, "cannot write " + path};
    out << text;
}

json event_json(const biochain::contract::Event& event) { return {{"event", event.name}, {"payload", event.payload}}; }

struct LedgerSession {
    std::string path;
    biochain::ledger::Ledger ledger;
    biochain::ecc::LinearCode code;

    explicit LedgerSession(const std::string& file)
        : path{file},
          ledger{biochain::ledger::Ledger::load_file(file)},
          code{biochain::ecc::code_from_json(ledger.code_description())} {}

    void save() const { ledger.write_jsonl(path); }
};

std::vector<biochain::FeatureVector> parse_templates(const std::vector<std::string>& texts) {
    std::vector<biochain::FeatureVector> out;
    for (const auto& t : texts) out.push_back(biochain::BitVector::from_string(t));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Biometric commitments on a simulated permissioned ledger"};
    app.require_subcommand(1);

    // deploy
    std::string ledger_path;
    std::string creator{"creator"};
    std::vector<std::string> ecs;
    std::string code_spec{"hamming:3"};
    std::string gas_table_path;
    auto* deploy = app.add_subcommand("deploy", "Create a ledger whose genesis block deploys the contract");
    deploy->add_option("--ledger", ledger_path, "Ledger file to create")->required();
    deploy->add_option("--creator", creator, "Creator label or address");
    deploy->add_option("--ec", ecs, "Initial enrollment center label or address")->required();
    deploy->add_option("--code", code_spec, "hamming:<r>, repetition:<n> or a JSON code description");
    deploy->add_option("--gas-table", gas_table_path, "JSON gas table (defaults otherwise)");

    // register-node
    std::string by;
    std::string name;
    std::string address;
    std::int64_t node_id = 0;
    auto* register_node = app.add_subcommand("register-node", "Register an authentication center");
    register_node->add_option("--ledger", ledger_path)->required();
    register_node->add_option("--by", by, "Registering EC")->required();
    register_node->add_option("--name", name, "Node name")->required();
    register_node->add_option("--id", node_id, "Node id")->required();
    register_node->add_option("--address", address, "Node address (derived from the name if omitted)");

    // enroll / authenticate / revoke
    std::string subject;
    std::vector<std::string> templates;
    std::optional<std::uint64_t> seed;
    std::size_t modality = 1;
    bool log_auth = false;
    auto* enroll = app.add_subcommand("enroll", "Commit one template per modality and store the subject");
    enroll->add_option("--ledger", ledger_path)->required();
    enroll->add_option("--by", by, "Enrolling EC")->required();
    enroll->add_option("--subject", subject)->required();
    enroll->add_option("--template", templates, "Feature bitstring, one per modality")->required();
    enroll->add_option("--seed", seed, "Deterministic witness seed (secure randomness otherwise)");

    std::string probe;
    auto* authenticate = app.add_subcommand("authenticate", "Open a stored commitment with a fresh acquisition");
    authenticate->add_option("--ledger", ledger_path)->required();
    authenticate->add_option("--by", by, "Authenticating node")->required();
    authenticate->add_option("--subject", subject)->required();
    authenticate->add_option("--modality", modality, "1-based modality index");
    authenticate->add_option("--template", probe, "Acquired feature bitstring")->required();
    authenticate->add_flag("--log-auth", log_auth, "Record the outcome on-chain");

    auto* revoke = app.add_subcommand("revoke", "Delete a subject from contract state");
    revoke->add_option("--ledger", ledger_path)->required();
    revoke->add_option("--by", by)->required();
    revoke->add_option("--subject", subject)->required();

    std::string candidate;
    std::vector<std::string> votes;
    auto* elect = app.add_subcommand("elect", "Vote on elevating an AC to enrollment center");
    elect->add_option("--ledger", ledger_path)->required();
    elect->add_option("--candidate", candidate)->required();
    elect->add_option("--vote", votes, "VOTER=yes|no, in order")->required();

    // run
    std::string scenario_path;
    std::string ledger_out{"ledger.jsonl"};
    std::string report_out{"report.json"};
    std::optional<double> flip_prob;
    std::optional<std::string> code_override;
    auto* run = app.add_subcommand("run", "Execute a scenario document");
    run->add_option("scenario", scenario_path, "Scenario JSON")->required();
    run->add_option("--ledger-out", ledger_out, "Where to write the JSONL ledger");
    run->add_option("--report-out", report_out, "Where to write the JSON report");
    run->add_option("--seed", seed, "Override the scenario seed");
    run->add_option("--code", code_override, "Override the scenario code");
    run->add_option("--flip-prob", flip_prob, "Override the scenario flip probability");
    run->add_flag("--log-auth", log_auth, "Log every authentication on-chain");

    // sweep
    std::vector<std::string> codes;
    std::vector<double> grid;
    std::size_t trials = 10000;
    std::string csv_out;
    auto* sweep = app.add_subcommand("sweep", "Empirical vs analytic FRR/FAR as CSV");
    sweep->add_option("--code", codes, "Code spec (repeatable)");
    sweep->add_option("--flip-prob", grid, "Flip probability (repeatable)");
    sweep->add_option("--trials", trials, "Trials per cell (>= 1000)");
    sweep->add_option("--seed", seed, "Sweep seed");
    sweep->add_option("--out", csv_out, "Write CSV here instead of stdout");

    // gas-report
    bool csv = false;
    auto* gas = app.add_subcommand("gas-report", "Per-function gas from a ledger");
    gas->add_option("ledger", ledger_path)->required();
    gas->add_flag("--csv", csv, "CSV instead of an aligned table");

    // ledger verify|replay
    auto* ledger_cmd = app.add_subcommand("ledger", "Chain integrity tools");
    ledger_cmd->require_subcommand(1);
    auto* verify = ledger_cmd->add_subcommand("verify", "Check hashes and links");
    verify->add_option("file", ledger_path)->required();
    auto* replay = ledger_cmd->add_subcommand("replay", "Re-execute and print the final contract state");
    replay->add_option("file", ledger_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << '\n';
        return 2;
    }

    try {
        if (*deploy) {
            biochain::ledger::GenesisConfig config;
            config.creator = resolve(creator);
            config.code = biochain::ecc::to_json(biochain::ecc::parse_code_spec(code_spec));
            if (!gas_table_path.empty()) {
                std::ifstream in{gas_table_path};
                if (!in) throw Error{ErrorCode::IoError, "cannot read " + gas_table_path};
                config.gas_table = biochain::ledger::gas_table_from_json(json::parse(in));
            }
            std::int64_t id = 1;
            for (const auto& ec : ecs) {
                config.initial_ecs.push_back({id++, ec, resolve(ec), true, true});
            }
            auto ledger = biochain::ledger::Ledger::genesis(config);
            ledger.write_jsonl(ledger_path);
            std::cout << json{{"blocks", ledger.blocks().size()}, {"headHash", ledger.blocks().back().block_hash}}.dump()
                      << '\n';
        } else if (*register_node) {
            LedgerSession session{ledger_path};
            biochain::SeededRandom unused{0};
            biochain::protocol::Protocol protocol{session.ledger, session.code, unused};
            const auto node_address = address.empty() ? Address::from_label(name) : Address::parse(address);
            const auto event = protocol.register_node_flow(resolve(by), {node_id, name, node_address, true, false});
            session.save();
            std::cout << event_json(event).dump() << '\n';
        } else if (*enroll) {
            LedgerSession session{ledger_path};
            auto random = make_random(seed);
            biochain::protocol::Protocol protocol{session.ledger, session.code, *random};
            const auto biometrics = parse_templates(templates);
            const auto event = protocol.enroll_user(resolve(by), subject, biometrics);
            session.save();
            std::cout << event_json(event).dump() << '\n';
        } else if (*authenticate) {
            LedgerSession session{ledger_path};
            biochain::SeededRandom unused{0};
            biochain::protocol::Protocol protocol{session.ledger, session.code, unused, log_auth};
            const auto outcome = protocol.authenticate_user(
                resolve(by), subject, modality, {biochain::BitVector::from_string(probe), modality});
            if (log_auth) session.save();
            std::cout << json{{"subjectId", outcome.subject_id},
                              {"modality", outcome.modality},
                              {"accepted", outcome.accepted},
                              {"reason", biochain::protocol::to_string(outcome.reason)}}
                             .dump()
                      << '\n';
        } else if (*revoke) {
            LedgerSession session{ledger_path};
            biochain::SeededRandom unused{0};
            biochain::protocol::Protocol protocol{session.ledger, session.code, unused};
            const auto event = protocol.revoke_user(resolve(by), subject);
            session.save();
            std::cout << event_json(event).dump() << '\n';
        } else if (*elect) {
            LedgerSession session{ledger_path};
            biochain::SeededRandom unused{0};
            biochain::protocol::Protocol protocol{session.ledger, session.code, unused};
            std::vector<std::pair<Address, bool>> ballot;
            for (const auto& v : votes) {
                const auto eq = v.rfind('=');
                if (eq == std::string::npos) throw Error{ErrorCode::ParseError, "vote must be VOTER=yes|no"};
                const auto choice = v.substr(eq + 1);
                if (choice != "yes" && choice != "no") throw Error{ErrorCode::ParseError, "vote must be yes or no"};
                ballot.emplace_back(resolve(v.substr(0, eq)), choice == "yes");
            }
            // Save even on failure: reverted votes are part of the record.
            bool elevated = false;
            try {
                elevated = protocol.election_flow(resolve(candidate), ballot);
            } catch (...) {
                session.save();
                throw;
            }
            session.save();
            std::cout << json{{"candidate", resolve(candidate).str()}, {"elevated", elevated}}.dump() << '\n';
        } else if (*run) {
            auto scenario = biochain::scenario::load_scenario(scenario_path);
            if (seed) scenario.seed = *seed;
            if (code_override) scenario.code = *code_override;
            if (flip_prob) scenario.flip_probability = *flip_prob;
            if (log_auth) scenario.log_auth_results = true;
            const auto result = biochain::scenario::run_scenario(scenario);
            std::ofstream out{ledger_out, std::ios::binary | std::ios::trunc};
            if (!out) throw Error{ErrorCode::IoError, "cannot write " + ledger_out};
            for (const auto& line : result.ledger_lines) out << line << '\n';
            write_text(report_out, result.report.dump(2) + "\n");
            std::cout << json{{"ledger", ledger_out},
                              {"report", report_out},
                              {"blocks", result.ledger_lines.size()},
                              {"headHash", result.report.at("headHash")}}
                             .dump()
                      << '\n';
        } else if (*sweep) {
            if (codes.empty()) codes.emplace_back("hamming:3");
            std::vector<biochain::ecc::LinearCode> parsed;
            for (const auto& c : codes) parsed.push_back(biochain::ecc::parse_code_spec(c));
            const auto rows = biochain::reports::far_frr_sweep(parsed, grid, trials, seed.value_or(1));
            const auto text = biochain::reports::sweep_csv(rows);
            if (csv_out.empty()) {
                std::cout << text;
            } else {
                write_text(csv_out, text);
            }
        } else if (*gas) {
            const auto report = biochain::reports::gas_report(biochain::ledger::read_jsonl(ledger_path));
            std::cout << (csv ? biochain::reports::render_csv(report) : biochain::reports::render_text(report));
        } else if (*verify) {
            const auto lines = biochain::ledger::read_jsonl(ledger_path);
            if (!biochain::ledger::verify_chain(lines)) {
                throw Error{ErrorCode::CorruptChain, ledger_path + " fails hash-chain verification"};
            }
            std::cout << json{{"valid", true}, {"blocks", lines.size()}}.dump() << '\n';
        } else if (*replay) {
            const auto state = biochain::ledger::replay(biochain::ledger::read_jsonl(ledger_path));
            std::cout << biochain::contract::to_json(state).dump(2) << '\n';
        }
    } catch (const Error& e) {
        std::cerr << json{{"error", biochain::to_string(e.code())}, {"message", e.what()}}.dump() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << '\n';
        return 1;
    }
    return 0;
}
