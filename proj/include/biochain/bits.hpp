// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace biochain {

//! Binary vector, one byte per bit (values 0/1). Lengths in this project are
//! small (tens to a few thousand bits) so clarity wins over packing.
//! Text form is ASCII '0'/'1' with index 0 leftmost.
class BitVector {
  public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : bits_(size, 0) {}
    explicit BitVector(std::vector<std::uint8_t> bits);

    //! Parses a '0'/'1' string. Throws ParseError on any other character.
    static BitVector from_string(std::string_view text);

    [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
    [[nodiscard]] bool empty() const noexcept { return bits_.empty(); }

    [[nodiscard]] std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }
    void flip(std::size_t i) { bits_[i] ^= 1; }

    //! Hamming weight.
    [[nodiscard]] std::size_t weight() const noexcept;

    [[nodiscard]] BitVector slice(std::size_t begin, std::size_t length) const;

    //! XOR of equal-length vectors; LengthMismatch otherwise.
    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector lhs, const BitVector& rhs) { return lhs ^= rhs; }

    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

    friend bool operator==(const BitVector&, const BitVector&) = default;
    friend auto operator<=>(const BitVector&, const BitVector&) = default;

  private:
    std::vector<std::uint8_t> bits_;
};

[[nodiscard]] std::size_t hamming_distance(const BitVector& a, const BitVector& b);

// Domain names for the same representation.
using Witness = BitVector;        // k bits
using Codeword = BitVector;       // n bits
using FeatureVector = BitVector;  // n bits

}  // namespace biochain
