// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#include <biochain/contract.hpp>

#include <algorithm>
#include <array>
#include <set>

#include <biochain/errors.hpp>
#include <biochain/hash.hpp>

namespace biochain::contract {

namespace {

    constexpr std::array kFunctions{
        Function::Deploy,    Function::SetSubjects, Function::GetSubjects, Function::UpdateSubjects,
        Function::DelSubjects, Function::SetNodes,  Function::GetNodes,    Function::UpdateNodes,
        Function::DelNodes,  Function::LogAuthentication,
    };

    template <typename Fn>
    auto with_bad_arguments(std::string_view function, Fn&& fn) {
        try {
            return fn();
        } catch (const nlohmann::json::exception& e) {
            throw Error{ErrorCode::BadArguments, std::string{function} + ": " + e.what()};
        } catch (const Error& e) {
            if (e.code() == ErrorCode::ParseError) {
                throw Error{ErrorCode::BadArguments, std::string{function} + ": " + e.what()};
            }
            throw;
        }
    }

    std::vector<fcs::Commitment> commitments_from_json(const nlohmann::json& value) {
        std::vector<fcs::Commitment> out;
        for (const auto& item : value) out.push_back(fcs::commitment_from_json(item));
        return out;
    }

    Address address_arg(const nlohmann::json& args, const char* key) {
        return Address::parse(args.at(key).get<std::string>());
    }

}  // namespace

Address Address::parse(std::string_view text) {
    if (!is_lower_hex(text, 32)) {
        throw Error{ErrorCode::ParseError, "address must be 32 lowercase hex characters: '" + std::string{text} + "'"};
    }
    return Address{std::string{text}};
}

Address Address::from_label(std::string_view label) { return Address{sha256_hex(label).substr(0, 32)}; }

std::string_view to_string(Function function) noexcept {
    switch (function) {
        case Function::Deploy: return "deploy";
        case Function::SetSubjects: return "setSubjects";
        case Function::GetSubjects: return "getSubjects";
        case Function::UpdateSubjects: return "updateSubjects";
        case Function::DelSubjects: return "delSubjects";
        case Function::SetNodes: return "setNodes";
        case Function::GetNodes: return "getNodes";
        case Function::UpdateNodes: return "updateNodes";
        case Function::DelNodes: return "delNodes";
        case Function::LogAuthentication: return "logAuthentication";
    }
    return "unknown";
}

std::optional<Function> function_from_string(std::string_view name) noexcept {
    for (auto f : kFunctions) {
        if (to_string(f) == name) return f;
    }
    return std::nullopt;
}

bool is_view(Function function) noexcept {
    return function == Function::GetSubjects || function == Function::GetNodes;
}

std::span<const Function> all_functions() noexcept { return kFunctions; }

Contract::Deployment Contract::deploy(const Address& creator, std::vector<NodeRecord> initial_ecs,
                                      std::size_t code_length) {
    if (initial_ecs.empty()) throw Error{ErrorCode::NoInitialEc, "deployment needs at least one initial EC"};
    for (const auto& node : initial_ecs) {
        if (!node.is_enrollment) {
            throw Error{ErrorCode::NoInitialEc, "initial node '" + node.name + "' is not an enrollment center"};
        }
    }
    if (code_length == 0) throw Error{ErrorCode::BadArguments, "code length must be positive"};

    Contract contract;
    contract.state_.creator = creator;
    contract.state_.code_length = code_length;
    nlohmann::json addresses = nlohmann::json::array();
    for (auto& node : initial_ecs) {
        addresses.push_back(node.address.str());
        auto [it, inserted] = contract.state_.nodes.emplace(node.address, node);
        if (!inserted) throw Error{ErrorCode::DuplicateNode, "duplicate initial EC " + node.address.str()};
    }
    Outcome outcome{Event{"ContractDeployed", {{"creator", creator.str()}, {"initialEcs", addresses}}},
                    StorageDelta{initial_ecs.size() + 1, 0}};
    return Deployment{std::move(contract), std::move(outcome)};
}

std::size_t Contract::enrollment_center_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(state_.nodes.begin(), state_.nodes.end(),
                                                  [](const auto& entry) { return entry.second.is_enrollment; }));
}

bool Contract::is_enrollment_center(const Address& address) const noexcept {
    auto it = state_.nodes.find(address);
    return it != state_.nodes.end() && it->second.is_enrollment;
}

bool Contract::is_registered(const Address& address) const noexcept { return state_.nodes.contains(address); }

void Contract::require_enrollment_center(const Address& caller, std::string_view function) const {
    if (!is_enrollment_center(caller)) {
        throw Error{ErrorCode::Unauthorized, std::string{function} + " requires an enrollment center; caller " +
                                                 caller.str() + " is not one"};
    }
}

void Contract::require_registered(const Address& caller, std::string_view function) const {
    if (!is_registered(caller)) {
        throw Error{ErrorCode::Unauthorized,
                    std::string{function} + " requires a registered node; caller " + caller.str() + " is unknown"};
    }
}

void Contract::require_commitments(const std::vector<fcs::Commitment>& commitments) const {
    if (commitments.empty()) throw Error{ErrorCode::MalformedCommitment, "a subject needs at least one commitment"};
    for (std::size_t i = 0; i < commitments.size(); ++i) {
        if (!fcs::is_well_formed(commitments[i], state_.code_length)) {
            throw Error{ErrorCode::MalformedCommitment,
                        "commitment for modality " + std::to_string(i + 1) + " is malformed or has offset length " +
                            std::to_string(commitments[i].n()) + " != " + std::to_string(state_.code_length)};
        }
    }
}

Outcome Contract::set_subjects(const Address& caller, const std::string& id,
                               std::vector<fcs::Commitment> commitments) {
    require_enrollment_center(caller, "setSubjects");
    if (id.empty()) throw Error{ErrorCode::BadArguments, "subject id must be non-empty"};
    if (state_.subjects.contains(id)) throw Error{ErrorCode::DuplicateSubject, "subject '" + id + "' already enrolled"};
    require_commitments(commitments);

    const std::size_t slots = commitments.size();
    state_.subjects.emplace(id, SubjectRecord{id, std::move(commitments)});
    return {Event{"SubjectEnrolled", {{"id", id}, {"modalities", slots}, {"by", caller.str()}}},
            StorageDelta{slots, 0}};
}

SubjectRecord Contract::get_subjects(const Address& caller, const std::string& id) const {
    require_registered(caller, "getSubjects");
    auto it = state_.subjects.find(id);
    if (it == state_.subjects.end()) throw Error{ErrorCode::UnknownSubject, "subject '" + id + "' is not enrolled"};
    return it->second;
}

Outcome Contract::update_subjects(const Address& caller, const std::string& id,
                                  std::vector<fcs::Commitment> commitments) {
    require_enrollment_center(caller, "updateSubjects");
    auto it = state_.subjects.find(id);
    if (it == state_.subjects.end()) throw Error{ErrorCode::UnknownSubject, "subject '" + id + "' is not enrolled"};
    require_commitments(commitments);

    const std::size_t before = it->second.commitments.size();
    const std::size_t after = commitments.size();
    it->second.commitments = std::move(commitments);
    return {Event{"SubjectUpdated", {{"id", id}, {"modalities", after}, {"by", caller.str()}}},
            StorageDelta{after > before ? after - before : 0, std::min(before, after)}};
}

Outcome Contract::del_subjects(const Address& caller, const std::string& id) {
    require_enrollment_center(caller, "delSubjects");
    auto it = state_.subjects.find(id);
    if (it == state_.subjects.end()) throw Error{ErrorCode::UnknownSubject, "subject '" + id + "' is not enrolled"};

    const std::size_t cleared = it->second.commitments.size();
    state_.subjects.erase(it);
    return {Event{"SubjectDeleted", {{"id", id}, {"by", caller.str()}}}, StorageDelta{0, cleared}};
}

Outcome Contract::set_nodes(const Address& caller, NodeRecord record) {
    require_enrollment_center(caller, "setNodes");
    if (state_.nodes.contains(record.address)) {
        throw Error{ErrorCode::DuplicateNode, "address " + record.address.str() + " is already registered"};
    }
    if (record.is_enrollment) {
        throw Error{ErrorCode::DirectEcCreation, "enrollment centers are created only at deployment or by election"};
    }
    const auto address = record.address;
    nlohmann::json payload{{"address", address.str()}, {"id", record.id}, {"name", record.name}, {"by", caller.str()}};
    state_.nodes.emplace(address, std::move(record));
    return {Event{"NodeRegistered", std::move(payload)}, StorageDelta{1, 0}};
}

NodeRecord Contract::get_nodes(const Address& caller, const Address& address) const {
    require_registered(caller, "getNodes");
    auto it = state_.nodes.find(address);
    if (it == state_.nodes.end()) throw Error{ErrorCode::UnknownNode, "no node at " + address.str()};
    return it->second;
}

Outcome Contract::update_nodes(const Address& caller, const Address& candidate, bool approve) {
    require_enrollment_center(caller, "updateNodes");
    auto node = state_.nodes.find(candidate);
    if (node == state_.nodes.end()) throw Error{ErrorCode::UnknownNode, "no node at " + candidate.str()};
    if (node->second.is_enrollment) {
        throw Error{ErrorCode::InvalidCandidate, candidate.str() + " already has enrollment privileges"};
    }

    auto existing = state_.elections.find(candidate);
    if (existing != state_.elections.end() && existing->second.open && existing->second.votes.contains(caller)) {
        throw Error{ErrorCode::AlreadyVoted, caller.str() + " already voted on " + candidate.str()};
    }

    Election& election = state_.elections[candidate];
    if (!election.open) {
        election = Election{candidate, {}, true};
    }
    election.votes[caller] = approve;

    // Only votes of current ECs count.
    const std::size_t ecs = enrollment_center_count();
    std::size_t yes = 0;
    std::size_t cast = 0;
    for (const auto& [voter, vote] : election.votes) {
        if (!is_enrollment_center(voter)) continue;
        ++cast;
        if (vote) ++yes;
    }
    const std::size_t outstanding = ecs - cast;

    nlohmann::json payload{{"candidate", candidate.str()}, {"voter", caller.str()}, {"approve", approve},
                           {"yes", yes},                   {"cast", cast},          {"ecs", ecs}};
    if (2 * yes > ecs) {
        election.open = false;
        node->second.is_enrollment = true;
        payload["elevated"] = true;
        return {Event{"NodeUpdated", std::move(payload)}, StorageDelta{1, 1}};
    }
    const bool impossible = 2 * (yes + outstanding) <= ecs;
    if (impossible) election.open = false;
    payload["closed"] = impossible;
    payload["elevated"] = false;
    return {Event{"VoteRecorded", std::move(payload)}, StorageDelta{1, 0}};
}

Outcome Contract::del_nodes(const Address& caller, const Address& address) {
    require_enrollment_center(caller, "delNodes");
    auto it = state_.nodes.find(address);
    if (it == state_.nodes.end()) throw Error{ErrorCode::UnknownNode, "no node at " + address.str()};
    if (it->second.is_enrollment && enrollment_center_count() == 1) {
        throw Error{ErrorCode::LastEcProtection, "cannot delete the last enrollment center"};
    }

    state_.nodes.erase(it);
    state_.elections.erase(address);
    for (auto& [candidate, election] : state_.elections) election.votes.erase(address);
    return {Event{"NodeDeleted", {{"address", address.str()}, {"by", caller.str()}}}, StorageDelta{0, 1}};
}

Outcome Contract::log_authentication(const Address& caller, const std::string& subject_id, std::size_t modality,
                                     bool outcome) {
    require_registered(caller, "logAuthentication");
    if (subject_id.empty() || modality == 0) {
        throw Error{ErrorCode::BadArguments, "logAuthentication needs a subject id and a 1-based modality"};
    }
    state_.auth_log.push_back(AuthLogEntry{subject_id, modality, outcome, caller});
    return {Event{"AuthenticationLogged",
                  {{"subjectId", subject_id}, {"modality", modality}, {"outcome", outcome}, {"caller", caller.str()}}},
            StorageDelta{1, 0}};
}

Outcome Contract::execute(const Address& caller, Function function, const nlohmann::json& args) {
    const auto name = to_string(function);
    return with_bad_arguments(name, [&]() -> Outcome {
        switch (function) {
            case Function::SetSubjects:
                return set_subjects(caller, args.at("id").get<std::string>(),
                                    commitments_from_json(args.at("commitments")));
            case Function::UpdateSubjects:
                return update_subjects(caller, args.at("id").get<std::string>(),
                                       commitments_from_json(args.at("commitments")));
            case Function::DelSubjects: return del_subjects(caller, args.at("id").get<std::string>());
            case Function::SetNodes: return set_nodes(caller, node_from_json(args.at("node")));
            case Function::UpdateNodes:
                return update_nodes(caller, address_arg(args, "candidate"), args.at("vote").get<bool>());
            case Function::DelNodes: return del_nodes(caller, address_arg(args, "address"));
            case Function::LogAuthentication:
                return log_authentication(caller, args.at("subjectId").get<std::string>(),
                                          args.at("modality").get<std::size_t>(), args.at("outcome").get<bool>());
            case Function::Deploy:
                throw Error{ErrorCode::UnknownFunction, "deploy runs once, at genesis"};
            case Function::GetSubjects:
            case Function::GetNodes:
                throw Error{ErrorCode::ViewFunction, std::string{name} + " is read-only"};
        }
        throw Error{ErrorCode::UnknownFunction, std::string{name}};
    });
}

nlohmann::json Contract::view(const Address& caller, Function function, const nlohmann::json& args) const {
    const auto name = to_string(function);
    return with_bad_arguments(name, [&]() -> nlohmann::json {
        switch (function) {
            case Function::GetSubjects: return to_json(get_subjects(caller, args.at("id").get<std::string>()));
            case Function::GetNodes: return to_json(get_nodes(caller, address_arg(args, "address")));
            default: throw Error{ErrorCode::UnknownFunction, std::string{name} + " is not a read-only function"};
        }
    });
}

nlohmann::json to_json(const NodeRecord& node) {
    return {{"id", node.id},
            {"name", node.name},
            {"address", node.address.str()},
            {"isAuthentication", node.is_authentication},
            {"isEnrollment", node.is_enrollment}};
}

NodeRecord node_from_json(const nlohmann::json& value) {
    return NodeRecord{value.at("id").get<std::int64_t>(), value.at("name").get<std::string>(),
                      Address::parse(value.at("address").get<std::string>()),
                      value.at("isAuthentication").get<bool>(), value.at("isEnrollment").get<bool>()};
}

nlohmann::json to_json(const SubjectRecord& subject) {
    nlohmann::json commitments = nlohmann::json::array();
    for (const auto& c : subject.commitments) commitments.push_back(fcs::to_json(c));
    return {{"id", subject.id}, {"commitments", std::move(commitments)}};
}

SubjectRecord subject_from_json(const nlohmann::json& value) {
    return SubjectRecord{value.at("id").get<std::string>(), commitments_from_json(value.at("commitments"))};
}

nlohmann::json to_json(const ContractState& state) {
    nlohmann::json subjects = nlohmann::json::object();
    for (const auto& [id, record] : state.subjects) subjects[id] = to_json(record);
    nlohmann::json nodes = nlohmann::json::object();
    for (const auto& [address, node] : state.nodes) nodes[address.str()] = to_json(node);
    nlohmann::json elections = nlohmann::json::object();
    for (const auto& [candidate, election] : state.elections) {
        nlohmann::json votes = nlohmann::json::object();
        for (const auto& [voter, vote] : election.votes) votes[voter.str()] = vote;
        elections[candidate.str()] = {{"open", election.open}, {"votes", std::move(votes)}};
    }
    nlohmann::json log = nlohmann::json::array();
    for (const auto& entry : state.auth_log) {
        log.push_back({{"subjectId", entry.subject_id},
                       {"modality", entry.modality},
                       {"outcome", entry.outcome},
                       {"caller", entry.caller.str()}});
    }
    return {{"creator", state.creator.str()}, {"codeLength", state.code_length}, {"subjects", std::move(subjects)},
            {"nodes", std::move(nodes)},      {"elections", std::move(elections)}, {"authLog", std::move(log)}};
}

}  // namespace biochain::contract
