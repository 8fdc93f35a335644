// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#include <biochain/protocol.hpp>

#include <biochain/errors.hpp>

namespace biochain::protocol {

using contract::Function;

namespace {

    const synthbio::IdentityExtractor kIdentity;

    ErrorCode error_code_from_name(std::string_view name) {
        for (int i = 0; i <= static_cast<int>(ErrorCode::IoError); ++i) {
            const auto code = static_cast<ErrorCode>(i);
            if (biochain::to_string(code) == name) return code;
        }
        return ErrorCode::BadArguments;
    }

}  // namespace

std::string_view to_string(AuthReason reason) noexcept {
    switch (reason) {
        case AuthReason::Matched: return "matched";
        case AuthReason::DigestMismatch: return "digest-mismatch";
        case AuthReason::DecodingFailure: return "decoding-failure";
        case AuthReason::UnknownSubject: return "unknown-subject";
    }
    return "unknown";
}

Protocol::Protocol(ledger::Ledger& ledger, ecc::LinearCode code, RandomSource& witness_random,
                   bool log_auth_results)
    : ledger_{ledger},
      code_{std::move(code)},
      witness_random_{witness_random},
      log_auth_results_{log_auth_results},
      extractor_{&kIdentity} {
    if (code_.n() != ledger_.state().code_length) {
        throw Error{ErrorCode::LengthMismatch, "code length " + std::to_string(code_.n()) +
                                                   " does not match the deployed length " +
                                                   std::to_string(ledger_.state().code_length)};
    }
}

contract::Event Protocol::submit(const Address& sender, Function function, nlohmann::json args) {
    ledger::Transaction tx{sender, std::string{contract::to_string(function)}, std::move(args),
                           ledger_.next_nonce(sender)};
    auto receipt = ledger_.submit(tx);
    if (!receipt.ok()) {
        throw Error{error_code_from_name(receipt.error),
                    std::string{contract::to_string(function)} + " reverted for " + sender.str()};
    }
    return *receipt.event;
}

std::vector<fcs::Commitment> Protocol::commit_all(std::span<const FeatureVector> biometrics) {
    if (biometrics.empty()) throw Error{ErrorCode::InvalidParameter, "at least one biometric is required"};
    std::vector<fcs::Commitment> commitments;
    commitments.reserve(biometrics.size());
    for (const auto& x : biometrics) commitments.push_back(fcs::commit(code_, x, witness_random_));
    return commitments;
}

namespace {

    nlohmann::json subject_args(const std::string& id, const std::vector<fcs::Commitment>& commitments) {
        nlohmann::json list = nlohmann::json::array();
        for (const auto& c : commitments) list.push_back(fcs::to_json(c));
        return {{"id", id}, {"commitments", std::move(list)}};
    }

}  // namespace

contract::Event Protocol::enroll_user(const Address& ec, const std::string& subject_id,
                                      std::span<const FeatureVector> biometrics) {
    return submit(ec, Function::SetSubjects, subject_args(subject_id, commit_all(biometrics)));
}

contract::Event Protocol::reenroll_user(const Address& ec, const std::string& subject_id,
                                        std::span<const FeatureVector> biometrics) {
    return submit(ec, Function::UpdateSubjects, subject_args(subject_id, commit_all(biometrics)));
}

AuthOutcome Protocol::authenticate_user(const Address& ac, const std::string& subject_id, std::size_t modality,
                                        const synthbio::BiometricTemplate& acquisition) {
    AuthOutcome outcome{subject_id, modality, false, AuthReason::UnknownSubject};

    std::optional<contract::SubjectRecord> record;
    try {
        record = contract::subject_from_json(ledger_.call(ac, "getSubjects", {{"id", subject_id}}));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::UnknownSubject) throw;
    }

    if (record) {
        if (modality == 0 || modality > record->commitments.size()) {
            throw Error{ErrorCode::ModalityOutOfRange, "subject '" + subject_id + "' has " +
                                                           std::to_string(record->commitments.size()) +
                                                           " modalities, asked for " + std::to_string(modality)};
        }
        const auto probe = extractor_->extract(acquisition);
        switch (fcs::open_detailed(code_, record->commitments[modality - 1], probe)) {
            case fcs::OpenStatus::Matched: outcome.reason = AuthReason::Matched; break;
            case fcs::OpenStatus::DigestMismatch: outcome.reason = AuthReason::DigestMismatch; break;
            case fcs::OpenStatus::DecodingFailure: outcome.reason = AuthReason::DecodingFailure; break;
        }
        outcome.accepted = outcome.reason == AuthReason::Matched;
    }

    if (log_auth_results_) {
        submit(ac, Function::LogAuthentication,
               {{"subjectId", subject_id}, {"modality", modality}, {"outcome", outcome.accepted}});
    }
    return outcome;
}

contract::Event Protocol::revoke_user(const Address& ec, const std::string& subject_id) {
    return submit(ec, Function::DelSubjects, {{"id", subject_id}});
}

contract::Event Protocol::register_node_flow(const Address& ec, const contract::NodeRecord& node) {
    return submit(ec, Function::SetNodes, {{"node", contract::to_json(node)}});
}

contract::Event Protocol::delete_node(const Address& ec, const Address& node) {
    return submit(ec, Function::DelNodes, {{"address", node.str()}});
}

bool Protocol::election_flow(const Address& candidate, std::span<const std::pair<Address, bool>> votes) {
    for (const auto& [voter, approve] : votes) {
        const auto event =
            submit(voter, Function::UpdateNodes, {{"candidate", candidate.str()}, {"vote", approve}});
        if (event.name == "NodeUpdated") return true;
        if (event.payload.value("closed", false)) return false;
    }
    return ledger_.snapshot()->is_enrollment_center(candidate);
}

}  // namespace biochain::protocol
