// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#include <biochain/bits.hpp>

#include <algorithm>

#include <biochain/errors.hpp>

namespace biochain {

BitVector::BitVector(std::vector<std::uint8_t> bits) : bits_{std::move(bits)} {
    for (auto& b : bits_) {
        if (b > 1) {
            throw Error{ErrorCode::ParseError, "bit value out of range"};
        }
    }
}

BitVector BitVector::from_string(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char ch : text) {
        if (ch != '0' && ch != '1') {
            throw Error{ErrorCode::ParseError, "bitstring may only contain '0' and '1'"};
        }
        bits.push_back(ch == '1' ? 1 : 0);
    }
    BitVector out;
    out.bits_ = std::move(bits);
    return out;
}

std::size_t BitVector::weight() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

BitVector BitVector::slice(std::size_t begin, std::size_t length) const {
    if (begin + length > bits_.size()) {
        throw Error{ErrorCode::LengthMismatch, "slice out of range"};
    }
    BitVector out;
    out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(begin),
                     bits_.begin() + static_cast<std::ptrdiff_t>(begin + length));
    return out;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (other.size() != size()) {
        throw Error{ErrorCode::LengthMismatch, "xor of vectors with lengths " + std::to_string(size()) +
                                                   " and " + std::to_string(other.size())};
    }
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        bits_[i] ^= other.bits_[i];
    }
    return *this;
}

std::string BitVector::to_string() const {
    std::string out(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i]) out[i] = '1';
    }
    return out;
}

std::size_t hamming_distance(const BitVector& a, const BitVector& b) { return (a ^ b).weight(); }

}  // namespace biochain
