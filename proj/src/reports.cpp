// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#include <biochain/reports.hpp>

#include <algorithm>
#include <iomanip>
#include <limits>
#include <sstream>

#include <biochain/contract.hpp>
#include <biochain/errors.hpp>
#include <biochain/fcs.hpp>
#include <biochain/ledger.hpp>
#include <biochain/random.hpp>
#include <biochain/synthbio.hpp>

namespace biochain::reports {

std::vector<SweepRow> far_frr_sweep(std::span<const ecc::LinearCode> codes, std::span<const double> p_grid,
                                    std::size_t trials, std::uint64_t seed) {
    if (trials < 1000) throw Error{ErrorCode::InvalidParameter, "a sweep needs at least 1000 trials per cell"};

    std::vector<SweepRow> rows;
    for (std::size_t c = 0; c < codes.size(); ++c) {
        const auto& code = codes[c];
        for (std::size_t g = 0; g < p_grid.size(); ++g) {
            const synthbio::NoiseModel noise{p_grid[g]};
            const auto rates = synthbio::analytic_error_rates(code, noise);
            SeededRandom random{derive_seed(seed, "sweep/" + std::to_string(c) + "/" + std::to_string(g))};

            std::size_t rejected = 0;
            std::size_t accepted = 0;
            for (std::size_t i = 0; i < trials; ++i) {
                const auto reference = synthbio::generate_template(random, code.n());
                const auto commitment = fcs::commit(code, reference.bits, random);
                const auto probe = synthbio::acquire(reference, noise, random);
                if (!fcs::open(code, commitment, synthbio::features_extractor(probe))) ++rejected;
            }
            for (std::size_t i = 0; i < trials; ++i) {
                const auto reference = synthbio::generate_template(random, code.n());
                const auto commitment = fcs::commit(code, reference.bits, random);
                const auto impostor = synthbio::generate_template(random, code.n());
                if (fcs::open(code, commitment, synthbio::features_extractor(impostor))) ++accepted;
            }

            const auto n_trials = static_cast<double>(trials);
            rows.push_back(SweepRow{std::string{ecc::to_string(code.family())}, code.n(), code.k(), code.t(),
                                    p_grid[g], rates.frr, static_cast<double>(rejected) / n_trials, rates.far,
                                    static_cast<double>(accepted) / n_trials, trials});
        }
    }
    return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
    std::ostringstream out;
    out << "family,n,k,t,p,frr_analytic,frr_empirical,far_analytic,far_empirical,trials\n";
    out << std::setprecision(10);
    for (const auto& r : rows) {
        out << r.family << ',' << r.n << ',' << r.k << ',' << r.t << ',' << r.p << ',' << r.frr_analytic << ','
            << r.frr_empirical << ',' << r.far_analytic << ',' << r.far_empirical << ',' << r.trials << '\n';
    }
    return out.str();
}

GasReport gas_report(std::span<const std::string> ledger_lines) {
    const auto ledger = ledger::Ledger::load(ledger_lines);

    GasReport report;
    for (auto f : contract::all_functions()) {
        GasRow row;
        row.function = std::string{contract::to_string(f)};
        row.view = contract::is_view(f);
        report.rows.push_back(std::move(row));
    }
    auto row_of = [&](const std::string& name) -> GasRow& {
        auto it = std::find_if(report.rows.begin(), report.rows.end(),
                               [&](const GasRow& r) { return r.function == name; });
        if (it == report.rows.end()) throw Error{ErrorCode::CorruptChain, "unknown function " + name};
        return *it;
    };

    for (const auto& block : ledger.blocks()) {
        for (std::size_t i = 0; i < block.transactions.size(); ++i) {
            const auto& receipt = block.receipts[i];
            auto& row = row_of(block.transactions[i].function);
            row.min_gas = row.calls == 0 ? receipt.gas_used : std::min(row.min_gas, receipt.gas_used);
            row.max_gas = std::max(row.max_gas, receipt.gas_used);
            ++row.calls;
            if (!receipt.ok()) ++row.reverted;
            row.total_gas += receipt.gas_used;
            report.total_gas += receipt.gas_used;
        }
    }
    report.deploy_count = row_of("deploy").calls;

    for (const auto& row : report.rows) {
        if (row.view && row.total_gas != 0) {
            throw Error{ErrorCode::CorruptChain, row.function + " is read-only but was charged gas"};
        }
        if (!row.view && row.calls > 0 && row.min_gas == 0) {
            throw Error{ErrorCode::CorruptChain, row.function + " mutates state but a call was free"};
        }
    }
    if (report.deploy_count != 1) {
        throw Error{ErrorCode::CorruptChain, "deploy appears " + std::to_string(report.deploy_count) + " times"};
    }
    return report;
}

std::string render_text(const GasReport& report) {
    std::ostringstream out;
    out << std::left << std::setw(20) << "function" << std::setw(8) << "kind" << std::right << std::setw(8)
        << "calls" << std::setw(10) << "reverted" << std::setw(14) << "total_gas" << std::setw(14) << "per_call"
        << std::setw(10) << "min" << std::setw(10) << "max" << '\n';
    out << std::fixed << std::setprecision(1);
    for (const auto& r : report.rows) {
        out << std::left << std::setw(20) << r.function << std::setw(8) << (r.view ? "read" : "write") << std::right
            << std::setw(8) << r.calls << std::setw(10) << r.reverted << std::setw(14) << r.total_gas
            << std::setw(14) << r.per_call() << std::setw(10) << r.min_gas << std::setw(10) << r.max_gas << '\n';
    }
    out << std::left << std::setw(20) << "total" << std::setw(8) << "" << std::right << std::setw(8) << ""
        << std::setw(10) << "" << std::setw(14) << report.total_gas << '\n';
    return out.str();
}

std::string render_csv(const GasReport& report) {
    std::ostringstream out;
    out << "function,kind,calls,reverted,total_gas,per_call_gas,min_gas,max_gas\n";
    out << std::fixed << std::setprecision(1);
    for (const auto& r : report.rows) {
        out << r.function << ',' << (r.view ? "read" : "write") << ',' << r.calls << ',' << r.reverted << ','
            << r.total_gas << ',' << r.per_call() << ',' << r.min_gas << ',' << r.max_gas << '\n';
    }
    return out.str();
}

}  // namespace biochain::reports
