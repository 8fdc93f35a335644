// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <biochain/ecc.hpp>

namespace biochain::reports {

struct SweepRow {
    std::string family;
    std::size_t n{0};
    std::size_t k{0};
    std::size_t t{0};
    double p{0.0};
    double frr_analytic{0.0};
    double frr_empirical{0.0};
    double far_analytic{0.0};
    double far_empirical{0.0};
    std::size_t trials{0};
};

//! Empirical vs analytic error rates for every (code, p) cell. Each cell
//! runs `trials` genuine and `trials` uniform-impostor commit/open rounds
//! from its own seed substream. Throws InvalidParameter if trials < 1000.
std::vector<SweepRow> far_frr_sweep(std::span<const ecc::LinearCode> codes, std::span<const double> p_grid,
                                    std::size_t trials, std::uint64_t seed);

//! family,n,k,t,p,frr_analytic,frr_empirical,far_analytic,far_empirical,trials
std::string sweep_csv(std::span<const SweepRow> rows);

struct GasRow {
    std::string function;
    bool view{false};
    std::size_t calls{0};
    std::size_t reverted{0};
    std::uint64_t total_gas{0};
    std::uint64_t min_gas{0};
    std::uint64_t max_gas{0};

    [[nodiscard]] double per_call() const noexcept {
        return calls == 0 ? 0.0 : static_cast<double>(total_gas) / static_cast<double>(calls);
    }
};

struct GasReport {
    std::vector<GasRow> rows;  // one per contract function, in declaration order
    std::size_t deploy_count{0};
    std::uint64_t total_gas{0};
};

//! Replays the chain (CorruptChain on any inconsistency), aggregates gas per
//! function and checks that reads are free, writes are paid and deploy
//! happened exactly once (CorruptChain otherwise).
GasReport gas_report(std::span<const std::string> ledger_lines);

std::string render_text(const GasReport& report);
std::string render_csv(const GasReport& report);

}  // namespace biochain::reports
