// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include <biochain/bits.hpp>

namespace biochain::ecc {

enum class Family { Repetition, Hamming, GeneratorMatrix };

std::string_view to_string(Family family) noexcept;

//! Largest n - k for which the syndrome table is built (2^16 entries).
inline constexpr std::size_t kMaxRedundancy = 16;
//! Largest k for which d_min of an explicit generator is enumerated (2^24 codewords).
inline constexpr std::size_t kMaxEnumeratedDimension = 24;
//! Hamming codes are limited to r <= 10 (n = 1023).
inline constexpr unsigned kMaxHammingR = 10;

struct RepetitionParams {
    std::size_t n;  // odd, >= 3
};

struct HammingParams {
    unsigned r;  // 2..kMaxHammingR
};

struct GeneratorParams {
    std::vector<BitVector> rows;  // k rows of length n
};

using CodeParams = std::variant<RepetitionParams, HammingParams, GeneratorParams>;

//! Binary (n, k) code in systematic form G = [I_k | P], H = [P^T | I_{n-k}],
//! with a bounded-distance decoder: the syndrome table holds exactly the
//! error patterns of weight <= t. Immutable after construction.
class LinearCode {
  public:
    static LinearCode repetition(std::size_t n);
    static LinearCode hamming(unsigned r);
    //! Row-reduces the input to systematic form. Throws RankDeficient,
    //! NonSystematicMatrix or TableTooLarge.
    static LinearCode from_generator(std::vector<BitVector> rows);

    [[nodiscard]] Family family() const noexcept { return family_; }
    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t k() const noexcept { return k_; }
    [[nodiscard]] std::size_t t() const noexcept { return t_; }
    [[nodiscard]] std::size_t min_distance() const noexcept { return d_min_; }
    [[nodiscard]] std::size_t redundancy() const noexcept { return n_ - k_; }

    //! Radius-t balls tile the space, so every syndrome has a leader.
    [[nodiscard]] bool is_perfect() const noexcept;

    [[nodiscard]] const std::vector<BitVector>& generator() const noexcept { return generator_; }
    [[nodiscard]] const std::vector<BitVector>& parity_check() const noexcept { return parity_check_; }

    [[nodiscard]] Codeword encode(const Witness& message) const;

    //! Syndrome y * H^T packed little-endian: bit j is row j of H.
    [[nodiscard]] std::uint32_t syndrome(const BitVector& received) const;

    //! Minimum-weight error pattern for the syndrome, if its weight is <= t.
    [[nodiscard]] std::optional<BitVector> coset_leader(std::uint32_t syndrome) const;

    //! Number of syndromes with a tabulated leader.
    [[nodiscard]] std::size_t table_size() const noexcept { return table_entries_; }

    //! Throws DecodingFailure when the syndrome has no leader of weight <= t.
    [[nodiscard]] Witness decode(const BitVector& received) const;
    //! As decode, but a decoding failure is std::nullopt. LengthMismatch still throws.
    [[nodiscard]] std::optional<Witness> try_decode(const BitVector& received) const;

  private:
    LinearCode(Family family, std::vector<BitVector> systematic_rows, std::optional<std::size_t> known_distance);

    void build_syndrome_table();

    Family family_;
    std::size_t n_{0};
    std::size_t k_{0};
    std::size_t d_min_{0};
    std::size_t t_{0};
    std::vector<BitVector> generator_;
    std::vector<BitVector> parity_check_;
    std::vector<std::uint32_t> column_syndromes_;
    std::vector<std::vector<std::uint32_t>> leaders_;  // error positions, per syndrome
    std::vector<bool> has_leader_;
    std::size_t table_entries_{0};
};

LinearCode build_code(const CodeParams& params);

//! Exact minimum distance by enumerating all 2^k - 1 nonzero codewords.
std::size_t enumerate_min_distance(std::span<const BitVector> generator_rows);

//! {family, n, k, t, generator: [row bitstrings]}
nlohmann::json to_json(const LinearCode& code);
//! Inverse of to_json. n, k, t and generator rows, when present, must agree
//! with the rebuilt code (ParseError otherwise); t is never trusted.
LinearCode code_from_json(const nlohmann::json& description);

//! "hamming:<r>", "repetition:<n>", or an inline JSON description.
LinearCode parse_code_spec(std::string_view spec);

}  // namespace biochain::ecc
