// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace biochain {

//! Injected randomness. Nothing in the library draws from global state.
class RandomSource {
  public:
    virtual ~RandomSource() = default;

    virtual std::uint64_t next_u64() = 0;

    bool next_bit() { return (next_u64() >> 63) != 0; }

    //! Uniform double in [0, 1) from the top 53 bits.
    double next_unit();

    //! True with probability p.
    bool bernoulli(double p) { return next_unit() < p; }
};

//! mt19937_64 keyed by a seed. The engine is fully specified by the C++
//! standard and only its raw output is used, so sequences are identical
//! across platforms and standard libraries.
class SeededRandom final : public RandomSource {
  public:
    explicit SeededRandom(std::uint64_t seed) : engine_{seed} {}

    std::uint64_t next_u64() override { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

//! OS-backed CSPRNG (OpenSSL RAND_bytes).
class SecureRandom final : public RandomSource {
  public:
    std::uint64_t next_u64() override;
};

//! Independent substream seed: first 8 bytes of SHA-256("<seed>/<label>").
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

}  // namespace biochain
