// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace biochain {

enum class ErrorCode {
    // codes
    LengthMismatch,
    NonSystematicMatrix,
    RankDeficient,
    TableTooLarge,
    DecodingFailure,
    InvalidParameter,
    ParseError,
    // ledger
    IncompleteGasTable,
    BadNonce,
    UnknownFunction,
    ViewFunction,
    CorruptChain,
    // contract
    NoInitialEc,
    Unauthorized,
    DuplicateSubject,
    MalformedCommitment,
    UnknownSubject,
    DuplicateNode,
    DirectEcCreation,
    UnknownNode,
    AlreadyVoted,
    InvalidCandidate,
    LastEcProtection,
    BadArguments,
    // protocol
    ModalityOutOfRange,
    ScenarioInvalid,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

//! Every failure surfaced by the library carries one of the codes above.
//! Contract reverts use the same type so a receipt can name the reason.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace biochain
