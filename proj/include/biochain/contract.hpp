// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include <biochain/fcs.hpp>

namespace biochain::contract {

//! Node/sender identity: 32 lowercase hex characters.
class Address {
  public:
    Address() = default;

    //! Throws ParseError unless text is 32 lowercase hex characters.
    static Address parse(std::string_view text);
    //! Deterministic address for a human-readable label (SHA-256 prefix).
    static Address from_label(std::string_view label);

    [[nodiscard]] const std::string& str() const noexcept { return value_; }

    friend bool operator==(const Address&, const Address&) = default;
    friend auto operator<=>(const Address&, const Address&) = default;

  private:
    explicit Address(std::string value) : value_{std::move(value)} {}
    std::string value_;
};

enum class Function {
    Deploy,
    SetSubjects,
    GetSubjects,
    UpdateSubjects,
    DelSubjects,
    SetNodes,
    GetNodes,
    UpdateNodes,
    DelNodes,
    LogAuthentication,
};

std::string_view to_string(Function function) noexcept;
std::optional<Function> function_from_string(std::string_view name) noexcept;
//! Read-only functions: executed as calls, never as transactions.
bool is_view(Function function) noexcept;
std::span<const Function> all_functions() noexcept;

struct SubjectRecord {
    std::string id;
    std::vector<fcs::Commitment> commitments;  // index i-1 holds modality i

    friend bool operator==(const SubjectRecord&, const SubjectRecord&) = default;
};

struct NodeRecord {
    std::int64_t id{0};
    std::string name;
    Address address;
    bool is_authentication{false};
    bool is_enrollment{false};

    friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

struct Election {
    Address candidate;
    std::map<Address, bool> votes;
    bool open{false};

    friend bool operator==(const Election&, const Election&) = default;
};

struct AuthLogEntry {
    std::string subject_id;
    std::size_t modality{1};
    bool outcome{false};
    Address caller;

    friend bool operator==(const AuthLogEntry&, const AuthLogEntry&) = default;
};

struct ContractState {
    Address creator;
    std::size_t code_length{0};
    std::map<std::string, SubjectRecord> subjects;
    std::map<Address, NodeRecord> nodes;
    std::map<Address, Election> elections;
    std::vector<AuthLogEntry> auth_log;

    friend bool operator==(const ContractState&, const ContractState&) = default;
};

struct Event {
    std::string name;
    nlohmann::json payload;

    friend bool operator==(const Event&, const Event&) = default;
};

//! Storage slots a successful call wrote, for gas metering.
struct StorageDelta {
    std::size_t new_slots{0};
    std::size_t updated_slots{0};
};

struct Outcome {
    Event event;
    StorageDelta storage;
};

//! The contract's state machine. Every mutating member either completes and
//! returns exactly one event, or throws biochain::Error and leaves the state
//! untouched. Callers are authenticated by address only.
class Contract {
  public:
    struct Deployment;

    //! Throws NoInitialEc unless every initial node is an EC (and there is one).
    static Deployment deploy(const Address& creator, std::vector<NodeRecord> initial_ecs, std::size_t code_length);

    Outcome set_subjects(const Address& caller, const std::string& id, std::vector<fcs::Commitment> commitments);
    [[nodiscard]] SubjectRecord get_subjects(const Address& caller, const std::string& id) const;
    Outcome update_subjects(const Address& caller, const std::string& id, std::vector<fcs::Commitment> commitments);
    Outcome del_subjects(const Address& caller, const std::string& id);

    Outcome set_nodes(const Address& caller, NodeRecord record);
    [[nodiscard]] NodeRecord get_nodes(const Address& caller, const Address& address) const;
    //! One EC vote on elevating an AC. A strict majority of current ECs
    //! elevates; once a majority is out of reach the election closes unchanged.
    Outcome update_nodes(const Address& caller, const Address& candidate, bool approve);
    Outcome del_nodes(const Address& caller, const Address& address);

    Outcome log_authentication(const Address& caller, const std::string& subject_id, std::size_t modality,
                               bool outcome);

    //! JSON-argument dispatch used by the ledger. Deploy is not dispatchable.
    Outcome execute(const Address& caller, Function function, const nlohmann::json& args);
    [[nodiscard]] nlohmann::json view(const Address& caller, Function function, const nlohmann::json& args) const;

    [[nodiscard]] const ContractState& state() const noexcept { return state_; }
    [[nodiscard]] std::size_t enrollment_center_count() const noexcept;
    [[nodiscard]] bool is_enrollment_center(const Address& address) const noexcept;
    [[nodiscard]] bool is_registered(const Address& address) const noexcept;

  private:
    Contract() = default;

    void require_enrollment_center(const Address& caller, std::string_view function) const;
    void require_registered(const Address& caller, std::string_view function) const;
    void require_commitments(const std::vector<fcs::Commitment>& commitments) const;

    ContractState state_;
};

struct Contract::Deployment {
    Contract contract;
    Outcome outcome;
};

nlohmann::json to_json(const NodeRecord& node);
NodeRecord node_from_json(const nlohmann::json& value);
nlohmann::json to_json(const SubjectRecord& subject);
SubjectRecord subject_from_json(const nlohmann::json& value);
nlohmann::json to_json(const ContractState& state);

}  // namespace biochain::contract
