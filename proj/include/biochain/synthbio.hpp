// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include <biochain/bits.hpp>
#include <biochain/ecc.hpp>
#include <biochain/random.hpp>

namespace biochain::synthbio {

//! One acquisition of modality i (1-based) of some user.
struct BiometricTemplate {
    BitVector bits;
    std::size_t modality_index{1};

    friend bool operator==(const BiometricTemplate&, const BiometricTemplate&) = default;
};

//! Binary symmetric channel with flip probability p in [0, 0.5).
class NoiseModel {
  public:
    explicit NoiseModel(double flip_probability);

    [[nodiscard]] double flip_probability() const noexcept { return p_; }

  private:
    double p_;
};

BiometricTemplate generate_template(RandomSource& random, std::size_t n, std::size_t modality_index = 1);

//! template ^ e, each bit of e set independently with probability p.
BiometricTemplate acquire(const BiometricTemplate& reference, const NoiseModel& noise, RandomSource& random);

//! Turns an acquisition into the n-bit vector the commitment scheme consumes.
class FeatureExtractor {
  public:
    virtual ~FeatureExtractor() = default;
    [[nodiscard]] virtual FeatureVector extract(const BiometricTemplate& acquisition) const = 0;
};

//! The synthetic model already produces feature vectors.
class IdentityExtractor final : public FeatureExtractor {
  public:
    [[nodiscard]] FeatureVector extract(const BiometricTemplate& acquisition) const override {
        return acquisition.bits;
    }
};

FeatureVector features_extractor(const BiometricTemplate& acquisition);

struct ErrorRates {
    double frr{0.0};
    double far{0.0};
    //! far is exact for perfect codes, an upper bound (2^-k) otherwise.
    bool far_exact{true};
};

//! frr = P[Binomial(n, p) > t]; far = 2^-k under a uniform impostor.
ErrorRates analytic_error_rates(const ecc::LinearCode& code, const NoiseModel& noise);

}  // namespace biochain::synthbio
