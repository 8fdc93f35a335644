// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <biochain/contract.hpp>
#include <biochain/ecc.hpp>
#include <biochain/ledger.hpp>
#include <biochain/random.hpp>
#include <biochain/synthbio.hpp>

namespace biochain::protocol {

using contract::Address;

enum class AuthReason { Matched, DigestMismatch, DecodingFailure, UnknownSubject };

std::string_view to_string(AuthReason reason) noexcept;

struct AuthOutcome {
    std::string subject_id;
    std::size_t modality{1};
    bool accepted{false};  // accepted <=> reason == Matched
    AuthReason reason{AuthReason::UnknownSubject};
};

//! Drives the EC and AC roles against one ledger. Commitment math runs
//! off-chain here; only contract calls touch the ledger. Witnesses never
//! leave enroll_user.
class Protocol {
  public:
    Protocol(ledger::Ledger& ledger, ecc::LinearCode code, RandomSource& witness_random,
             bool log_auth_results = false);

    void set_feature_extractor(const synthbio::FeatureExtractor& extractor) noexcept { extractor_ = &extractor; }

    //! Submits a transaction with the sender's next nonce; a revert is
    //! rethrown as the contract error it recorded.
    contract::Event submit(const Address& sender, contract::Function function, nlohmann::json args);

    //! One commitment per modality, stored with a single setSubjects call.
    contract::Event enroll_user(const Address& ec, const std::string& subject_id,
                                std::span<const FeatureVector> biometrics);
    //! Fresh commitments for an enrolled subject (updateSubjects).
    contract::Event reenroll_user(const Address& ec, const std::string& subject_id,
                                  std::span<const FeatureVector> biometrics);

    //! Reads (offset, digest) for the modality, opens it against the
    //! extracted probe and, if configured, logs the result on-chain.
    //! Throws ModalityOutOfRange and propagates Unauthorized.
    AuthOutcome authenticate_user(const Address& ac, const std::string& subject_id, std::size_t modality,
                                  const synthbio::BiometricTemplate& acquisition);

    contract::Event revoke_user(const Address& ec, const std::string& subject_id);

    contract::Event register_node_flow(const Address& ec, const contract::NodeRecord& node);
    contract::Event delete_node(const Address& ec, const Address& node);

    //! Casts votes in order until the election closes; true iff the
    //! candidate ended up with enrollment privileges.
    bool election_flow(const Address& candidate, std::span<const std::pair<Address, bool>> votes);

    [[nodiscard]] const ecc::LinearCode& code() const noexcept { return code_; }
    [[nodiscard]] ledger::Ledger& ledger() noexcept { return ledger_; }
    [[nodiscard]] bool logs_auth_results() const noexcept { return log_auth_results_; }
    void set_log_auth_results(bool enabled) noexcept { log_auth_results_ = enabled; }

  private:
    std::vector<fcs::Commitment> commit_all(std::span<const FeatureVector> biometrics);

    ledger::Ledger& ledger_;
    ecc::LinearCode code_;
    RandomSource& witness_random_;
    bool log_auth_results_;
    const synthbio::FeatureExtractor* extractor_;
};

}  // namespace biochain::protocol
