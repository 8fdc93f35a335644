// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#include <biochain/fcs.hpp>

#include <biochain/errors.hpp>
#include <biochain/hash.hpp>

namespace biochain::fcs {

std::string_view to_string(OpenStatus status) noexcept {
    switch (status) {
        case OpenStatus::Matched: return "matched";
        case OpenStatus::DigestMismatch: return "digest-mismatch";
        case OpenStatus::DecodingFailure: return "decoding-failure";
    }
    return "unknown";
}

Witness generate_witness(RandomSource& random, std::size_t k) {
    if (k == 0) throw Error{ErrorCode::InvalidParameter, "witness length must be >= 1"};
    Witness w(k);
    for (std::size_t i = 0; i < k; ++i) w.set(i, random.next_bit());
    return w;
}

std::string witness_digest(const Witness& witness) { return sha256_hex(witness.to_string()); }

WitnessedCommitment commit_with_witness(const ecc::LinearCode& code, const FeatureVector& features,
                                        RandomSource& random) {
    if (features.size() != code.n()) {
        throw Error{ErrorCode::LengthMismatch, "feature vector has " + std::to_string(features.size()) +
                                                   " bits, code length is " + std::to_string(code.n())};
    }
    if (code.t() < 1) throw Error{ErrorCode::InvalidParameter, "commitments need a code with t >= 1"};

    Witness w = generate_witness(random, code.k());
    Codeword c = code.encode(w);
    return {Commitment{witness_digest(w), c ^ features}, std::move(w)};
}

Commitment commit(const ecc::LinearCode& code, const FeatureVector& features, RandomSource& random) {
    return commit_with_witness(code, features, random).commitment;
}

OpenStatus open_detailed(const ecc::LinearCode& code, const Commitment& commitment, const FeatureVector& probe) {
    if (commitment.offset.size() != code.n() || probe.size() != code.n()) {
        throw Error{ErrorCode::LengthMismatch, "offset and probe must both have n = " + std::to_string(code.n()) +
                                                   " bits"};
    }
    const auto recovered = code.try_decode(probe ^ commitment.offset);
    if (!recovered) return OpenStatus::DecodingFailure;
    return witness_digest(*recovered) == commitment.digest ? OpenStatus::Matched : OpenStatus::DigestMismatch;
}

bool open(const ecc::LinearCode& code, const Commitment& commitment, const FeatureVector& probe) {
    return open_detailed(code, commitment, probe) == OpenStatus::Matched;
}

bool is_well_formed(const Commitment& commitment, std::size_t n) {
    if (!is_lower_hex(commitment.digest, 64)) return false;
    if (commitment.offset.empty()) return false;
    return n == 0 || commitment.offset.size() == n;
}

nlohmann::json to_json(const Commitment& commitment) {
    return {{"digest", commitment.digest}, {"offset", commitment.offset.to_string()}, {"n", commitment.n()}};
}

Commitment commitment_from_json(const nlohmann::json& value) {
    try {
        Commitment out{value.at("digest").get<std::string>(),
                       BitVector::from_string(value.at("offset").get<std::string>())};
        if (value.at("n").get<std::size_t>() != out.n() || !is_well_formed(out)) {
            throw Error{ErrorCode::MalformedCommitment, "inconsistent commitment fields"};
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw Error{ErrorCode::MalformedCommitment, e.what()};
    } catch (const Error& e) {
        if (e.code() == ErrorCode::MalformedCommitment) throw;
        throw Error{ErrorCode::MalformedCommitment, e.what()};
    }
}

}  // namespace biochain::fcs
