// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include <biochain/bits.hpp>
#include <biochain/ecc.hpp>
#include <biochain/random.hpp>

namespace biochain::fcs {

//! What goes on-chain per biometric modality: H(w) and the offset c ^ x.
struct Commitment {
    std::string digest;  // 64 lowercase hex chars
    BitVector offset;    // n bits

    [[nodiscard]] std::size_t n() const noexcept { return offset.size(); }

    friend bool operator==(const Commitment&, const Commitment&) = default;
};

//! Commitment plus the witness that produced it. Test and oracle use only;
//! the protocol never keeps witnesses.
struct WitnessedCommitment {
    Commitment commitment;
    Witness witness;
};

enum class OpenStatus { Matched, DigestMismatch, DecodingFailure };

std::string_view to_string(OpenStatus status) noexcept;

//! k uniform bits. Throws InvalidParameter for k == 0.
Witness generate_witness(RandomSource& random, std::size_t k);

//! SHA-256 over the witness as ASCII '0'/'1' (k characters, no delimiters).
std::string witness_digest(const Witness& witness);

//! Draws w, encodes c = wG, returns (H(w), c ^ x). Requires t >= 1.
Commitment commit(const ecc::LinearCode& code, const FeatureVector& features, RandomSource& random);
WitnessedCommitment commit_with_witness(const ecc::LinearCode& code, const FeatureVector& features,
                                        RandomSource& random);

//! Decodes x' ^ offset and compares the digest of the recovered witness.
//! Throws only LengthMismatch.
OpenStatus open_detailed(const ecc::LinearCode& code, const Commitment& commitment, const FeatureVector& probe);
bool open(const ecc::LinearCode& code, const Commitment& commitment, const FeatureVector& probe);

//! True iff the digest is 64 lowercase hex chars and the offset is non-empty
//! (and has length n when n is non-zero).
bool is_well_formed(const Commitment& commitment, std::size_t n = 0);

//! {"digest": hex64, "offset": bitstring, "n": int}
nlohmann::json to_json(const Commitment& commitment);
//! Throws MalformedCommitment.
Commitment commitment_from_json(const nlohmann::json& value);

}  // namespace biochain::fcs
