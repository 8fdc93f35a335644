// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <biochain/ecc.hpp>
#include <biochain/errors.hpp>
#include <biochain/fcs.hpp>

#include "test_support.hpp"

namespace biochain::fcs {
namespace {

using testing::ScriptedRandom;

// SHA-256 of the ASCII string "1011", computed with an external reference tool.
constexpr const char* kDigest1011 = "3dd9c0995d54c0abd51a90f1d57b1ce77bc885fc8a7cea52dcad3c2540dda5ee";

BitVector bits(const char* text) { return BitVector::from_string(text); }

BitVector from_index(std::uint64_t value, std::size_t width) {
    BitVector v{width};
    for (std::size_t i = 0; i < width; ++i) v.set(i, ((value >> i) & 1U) != 0);
    return v;
}

std::string witness_script(std::uint64_t value, std::size_t k) { return from_index(value, k).to_string(); }

TEST(Witness, SeededIsDeterministic) {
    SeededRandom a{42};
    SeededRandom b{42};
    EXPECT_EQ(generate_witness(a, 4), generate_witness(b, 4));
    EXPECT_EQ(generate_witness(a, 4).size(), 4U);
}

TEST(Witness, ZeroLengthRejected) {
    SeededRandom r{1};
    try {
        (void)generate_witness(r, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidParameter);
    }
}

TEST(Commit, HammingExamples) {
    const auto code = ecc::LinearCode::hamming(3);
    ScriptedRandom r1{"1011"};
    const auto c1 = commit_with_witness(code, bits("0000000"), r1);
    EXPECT_EQ(c1.witness.to_string(), "1011");
    EXPECT_EQ(c1.commitment.offset.to_string(), "1011010");
    EXPECT_EQ(c1.commitment.digest, kDigest1011);
    EXPECT_EQ(witness_digest(bits("1011")), kDigest1011);

    ScriptedRandom r2{"1011"};
    const auto c2 = commit(code, bits("1011010"), r2);
    EXPECT_EQ(c2.offset.to_string(), "0000000");
    EXPECT_EQ(c2.digest, kDigest1011);

    ScriptedRandom r3{"1011"};
    try {
        (void)commit(code, bits("000000"), r3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
    }
}

TEST(Open, SingleFlipsAcceptDoubleFlipsReject) {
    const auto code = ecc::LinearCode::hamming(3);
    SeededRandom random{9};
    const auto x = bits("0110100");
    const auto c = commit(code, x, random);
    EXPECT_TRUE(open(code, c, x));
    for (std::size_t i = 0; i < 7; ++i) {
        auto probe = x;
        probe.flip(i);
        EXPECT_TRUE(open(code, c, probe)) << i;
        for (std::size_t j = i + 1; j < 7; ++j) {
            auto two = probe;
            two.flip(j);
            EXPECT_FALSE(open(code, c, two)) << i << "," << j;
            EXPECT_EQ(open_detailed(code, c, two), OpenStatus::DigestMismatch);
        }
    }
}

TEST(Open, ExactCharacterizationOnHamming) {
    // x = 0 suffices by linearity; every witness, every probe.
    const auto code = ecc::LinearCode::hamming(3);
    const BitVector x{7};
    for (std::uint64_t w = 0; w < 16; ++w) {
        const auto script = witness_script(w, 4);
        ScriptedRandom r{script};
        const auto c = commit(code, x, r);
        std::vector<BitVector> accepted;
        for (std::uint64_t v = 0; v < 128; ++v) {
            const auto probe = from_index(v, 7);
            const bool ok = open(code, c, probe);
            EXPECT_EQ(ok, probe.weight() <= code.t()) << script << " " << probe.to_string();
            if (ok) accepted.push_back(probe);
        }
        // Binding: the accepting set is one ball of radius t.
        EXPECT_EQ(accepted.size(), 8U);
        for (const auto& a : accepted) {
            for (const auto& b : accepted) EXPECT_LE(hamming_distance(a, b), 2 * code.t());
        }
    }
}

TEST(Open, RepetitionExhaustive) {
    const auto code = ecc::LinearCode::repetition(3);
    for (std::uint64_t xv = 0; xv < 8; ++xv) {
        const auto x = from_index(xv, 3);
        for (const char* w : {"0", "1"}) {
            ScriptedRandom r{w};
            const auto c = commit(code, x, r);
            for (std::uint64_t e = 0; e < 8; ++e) {
                const auto error = from_index(e, 3);
                EXPECT_EQ(open(code, c, x ^ error), error.weight() <= 1);
            }
        }
    }
}

TEST(Open, DecodingFailureIsRejectionNotError) {
    const auto code = ecc::LinearCode::from_generator({bits("100110"), bits("010101"), bits("001011")});
    ScriptedRandom r{"000"};
    const auto c = commit(code, BitVector{6}, r);
    // 100001 is at distance 2 from every codeword of this code.
    const auto probe = bits("100001");
    ASSERT_FALSE(code.try_decode(probe).has_value());
    EXPECT_EQ(open_detailed(code, c, probe), OpenStatus::DecodingFailure);
    EXPECT_FALSE(open(code, c, probe));
    EXPECT_THROW((void)open(code, c, bits("10000")), Error);
}

TEST(Commit, RequiresCorrectionCapability) {
    const auto code = ecc::LinearCode::from_generator({bits("110"), bits("011")});
    ASSERT_EQ(code.t(), 0U);
    SeededRandom r{1};
    EXPECT_THROW((void)commit(code, BitVector{3}, r), Error);
}

TEST(Commit, DeterministicPerSeedAndDistinctAcrossSeeds) {
    const auto code = ecc::LinearCode::hamming(6);
    SeededRandom template_source{5};
    BitVector x{code.n()};
    for (std::size_t i = 0; i < x.size(); ++i) x.set(i, template_source.next_bit());
    SeededRandom a{100};
    SeededRandom b{100};
    SeededRandom c{101};
    const auto ca = commit(code, x, a);
    EXPECT_EQ(ca, commit(code, x, b));
    const auto cc = commit(code, x, c);
    EXPECT_NE(ca.digest, cc.digest);
    EXPECT_NE(ca.offset, cc.offset);
}

TEST(Commitment, JsonAndWellFormedness) {
    const auto code = ecc::LinearCode::hamming(3);
    ScriptedRandom r{"1011"};
    const auto c = commit(code, BitVector{7}, r);
    const auto json = to_json(c);
    EXPECT_EQ(json.at("digest"), kDigest1011);
    EXPECT_EQ(json.at("offset"), "1011010");
    EXPECT_EQ(commitment_from_json(json), c);
    EXPECT_TRUE(is_well_formed(c, 7));
    EXPECT_FALSE(is_well_formed(c, 15));

    auto bad = json;
    bad["digest"] = "ABC";
    EXPECT_THROW((void)commitment_from_json(bad), Error);
    bad = json;
    bad["offset"] = "10x";
    EXPECT_THROW((void)commitment_from_json(bad), Error);
    EXPECT_FALSE(is_well_formed(Commitment{std::string(64, 'g'), BitVector{7}}));
    EXPECT_FALSE(is_well_formed(Commitment{kDigest1011, BitVector{}}));
}

}  // namespace
}  // namespace biochain::fcs
