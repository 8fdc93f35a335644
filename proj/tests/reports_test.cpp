// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#include <sstream>

#include <gtest/gtest.h>

#include <biochain/errors.hpp>
#include <biochain/reports.hpp>
#include <biochain/scenario.hpp>

#include "test_support.hpp"

namespace biochain::reports {
namespace {

constexpr const char* kHeader = "family,n,k,t,p,frr_analytic,frr_empirical,far_analytic,far_empirical,trials";

TEST(Sweep, HammingRowsWithinThreeSigma) {
    const std::vector<ecc::LinearCode> codes{ecc::LinearCode::hamming(3)};
    const std::vector<double> grid{0.0, 0.01, 0.05};
    const auto rows = far_frr_sweep(codes, grid, 10000, 2024);
    ASSERT_EQ(rows.size(), 3U);
    for (const auto& row : rows) {
        const double frr = testing::binomial_tail_above(7, 1, row.p);
        EXPECT_NEAR(row.frr_analytic, frr, 1e-12);
        EXPECT_NEAR(row.frr_empirical, frr, testing::three_sigma(frr, row.trials)) << row.p;
        EXPECT_DOUBLE_EQ(row.far_analytic, 1.0 / 16);
        EXPECT_NEAR(row.far_empirical, 1.0 / 16, testing::three_sigma(1.0 / 16, row.trials)) << row.p;
        EXPECT_EQ(row.family, "hamming");
        EXPECT_EQ(row.trials, 10000U);
    }
    EXPECT_EQ(rows[0].frr_empirical, 0.0);
}

TEST(Sweep, RepetitionFarIsOneHalf) {
    const std::vector<ecc::LinearCode> codes{ecc::LinearCode::repetition(5)};
    const std::vector<double> grid{0.1};
    const auto rows = far_frr_sweep(codes, grid, 5000, 1);
    ASSERT_EQ(rows.size(), 1U);
    EXPECT_NEAR(rows[0].far_empirical, 0.5, testing::three_sigma(0.5, 5000));
    const double frr = testing::binomial_tail_above(5, 2, 0.1);
    EXPECT_NEAR(rows[0].frr_empirical, frr, testing::three_sigma(frr, 5000));
}

TEST(Sweep, CsvShape) {
    const std::vector<ecc::LinearCode> codes{ecc::LinearCode::hamming(3)};
    EXPECT_EQ(sweep_csv(far_frr_sweep(codes, std::vector<double>{}, 1000, 1)), std::string{kHeader} + "\n");

    const auto csv = sweep_csv(far_frr_sweep(codes, std::vector<double>{0.05}, 1000, 1));
    std::istringstream in{csv};
    std::string header;
    std::string row;
    std::getline(in, header);
    std::getline(in, row);
    EXPECT_EQ(header, kHeader);
    EXPECT_EQ(row.rfind("hamming,7,4,1,0.05,", 0), 0U) << row;
    EXPECT_EQ(std::count(row.begin(), row.end(), ','), 9);
}

TEST(Sweep, RejectsTooFewTrials) {
    const std::vector<ecc::LinearCode> codes{ecc::LinearCode::hamming(3)};
    EXPECT_THROW((void)far_frr_sweep(codes, std::vector<double>{0.01}, 999, 1), Error);
}

TEST(Sweep, Deterministic) {
    const std::vector<ecc::LinearCode> codes{ecc::LinearCode::hamming(3)};
    const std::vector<double> grid{0.02};
    EXPECT_EQ(sweep_csv(far_frr_sweep(codes, grid, 2000, 9)), sweep_csv(far_frr_sweep(codes, grid, 2000, 9)));
}

std::vector<std::string> demo_ledger() {
    return scenario::run_scenario(scenario::load_scenario(BIOCHAIN_SCENARIO_DIR "/demo.json")).ledger_lines;
}

TEST(GasReport, DemoLedger) {
    const auto report = gas_report(demo_ledger());
    EXPECT_EQ(report.deploy_count, 1U);
    ASSERT_EQ(report.rows.size(), 10U);
    std::uint64_t sum = 0;
    for (const auto& row : report.rows) {
        sum += row.total_gas;
        if (row.view) {
            EXPECT_EQ(row.total_gas, 0U) << row.function;
        } else {
            EXPECT_GT(row.calls, 0U) << row.function;
            EXPECT_GT(row.min_gas, 0U) << row.function;
            EXPECT_GT(row.per_call(), 0.0) << row.function;
        }
    }
    EXPECT_EQ(sum, report.total_gas);

    const auto text = render_text(report);
    EXPECT_NE(text.find("getSubjects"), std::string::npos);
    const auto csv = render_csv(report);
    EXPECT_EQ(csv.rfind("function,kind,calls,reverted,total_gas,per_call_gas,min_gas,max_gas\n", 0), 0U);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 11);
}

TEST(GasReport, TamperedLedger) {
    auto lines = demo_ledger();
    lines[4][40] ^= 0x01;
    try {
        (void)gas_report(lines);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CorruptChain);
    }
}

}  // namespace
}  // namespace biochain::reports
