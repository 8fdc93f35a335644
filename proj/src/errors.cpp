// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#include <biochain/errors.hpp>

namespace biochain {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::NonSystematicMatrix: return "NonSystematicMatrix";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::TableTooLarge: return "TableTooLarge";
        case ErrorCode::DecodingFailure: return "DecodingFailure";
        case ErrorCode::InvalidParameter: return "InvalidParameter";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IncompleteGasTable: return "IncompleteGasTable";
        case ErrorCode::BadNonce: return "BadNonce";
        case ErrorCode::UnknownFunction: return "UnknownFunction";
        case ErrorCode::ViewFunction: return "ViewFunction";
        case ErrorCode::CorruptChain: return "CorruptChain";
        case ErrorCode::NoInitialEc: return "NoInitialEc";
        case ErrorCode::Unauthorized: return "Unauthorized";
        case ErrorCode::DuplicateSubject: return "DuplicateSubject";
        case ErrorCode::MalformedCommitment: return "MalformedCommitment";
        case ErrorCode::UnknownSubject: return "UnknownSubject";
        case ErrorCode::DuplicateNode: return "DuplicateNode";
        case ErrorCode::DirectEcCreation: return "DirectEcCreation";
        case ErrorCode::UnknownNode: return "UnknownNode";
        case ErrorCode::AlreadyVoted: return "AlreadyVoted";
        case ErrorCode::InvalidCandidate: return "InvalidCandidate";
        case ErrorCode::LastEcProtection: return "LastEcProtection";
        case ErrorCode::BadArguments: return "BadArguments";
        case ErrorCode::ModalityOutOfRange: return "ModalityOutOfRange";
        case ErrorCode::ScenarioInvalid: return "ScenarioInvalid";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error{std::string{to_string(code)} + ": " + message}, code_{code} {}

}  // namespace biochain
