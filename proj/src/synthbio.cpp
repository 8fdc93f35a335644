// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#include <biochain/synthbio.hpp>

#include <cmath>
#include <string>

#include <biochain/errors.hpp>

namespace biochain::synthbio {

NoiseModel::NoiseModel(double flip_probability) : p_{flip_probability} {
    if (!(flip_probability >= 0.0 && flip_probability < 0.5)) {
        throw Error{ErrorCode::InvalidParameter,
                    "flip probability must be in [0, 0.5), got " + std::to_string(flip_probability)};
    }
}

BiometricTemplate generate_template(RandomSource& random, std::size_t n, std::size_t modality_index) {
    if (n == 0) throw Error{ErrorCode::InvalidParameter, "template length must be >= 1"};
    if (modality_index == 0) throw Error{ErrorCode::InvalidParameter, "modality index is 1-based"};
    BitVector bits(n);
    for (std::size_t i = 0; i < n; ++i) bits.set(i, random.next_bit());
    return {std::move(bits), modality_index};
}

BiometricTemplate acquire(const BiometricTemplate& reference, const NoiseModel& noise, RandomSource& random) {
    BiometricTemplate out = reference;
    const double p = noise.flip_probability();
    if (p == 0.0) return out;
    for (std::size_t i = 0; i < out.bits.size(); ++i) {
        if (random.bernoulli(p)) out.bits.flip(i);
    }
    return out;
}

FeatureVector features_extractor(const BiometricTemplate& acquisition) {
    return IdentityExtractor{}.extract(acquisition);
}

ErrorRates analytic_error_rates(const ecc::LinearCode& code, const NoiseModel& noise) {
    const double p = noise.flip_probability();
    const std::size_t n = code.n();

    // Tail P[Binomial(n, p) > t], terms in log space so larger n stays finite.
    double tail = 0.0;
    if (p > 0.0) {
        for (std::size_t j = code.t() + 1; j <= n; ++j) {
            const double log_choose = std::lgamma(static_cast<double>(n) + 1) -
                                      std::lgamma(static_cast<double>(j) + 1) -
                                      std::lgamma(static_cast<double>(n - j) + 1);
            tail += std::exp(log_choose + static_cast<double>(j) * std::log(p) +
                             static_cast<double>(n - j) * std::log1p(-p));
        }
    }
    ErrorRates rates;
    rates.frr = std::min(1.0, tail);
    rates.far = std::ldexp(1.0, -static_cast<int>(code.k()));
    rates.far_exact = code.is_perfect();
    return rates;
}

}  // namespace biochain::synthbio
