// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#include <biochain/random.hpp>

#include <string>

#include <openssl/rand.h>

#include <biochain/errors.hpp>
#include <biochain/hash.hpp>

namespace biochain {

double RandomSource::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t SecureRandom::next_u64() {
    std::uint64_t value = 0;
    if (RAND_bytes(reinterpret_cast<unsigned char*>(&value), sizeof(value)) != 1) {
        throw Error{ErrorCode::IoError, "RAND_bytes failed"};
    }
    return value;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
    const std::string digest = sha256_hex(std::to_string(seed) + "/" + std::string{label});
    return std::stoull(digest.substr(0, 16), nullptr, 16);
}

}  // namespace biochain
