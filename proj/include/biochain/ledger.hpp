// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include <biochain/contract.hpp>

namespace biochain::ledger {

using contract::Address;

//! Gas schedule. Reads are free; a mutating call costs
//!   tx_base + function_cost[f] + new_slot * new + update_slot * updated + per_byte * |args|
//! and a reverted one pays everything but the storage terms.
struct GasTable {
    std::uint64_t tx_base{21000};
    std::uint64_t new_slot{20000};
    std::uint64_t update_slot{5000};
    std::uint64_t per_byte{16};
    std::map<std::string, std::uint64_t> function_cost;

    //! Ethereum-flavoured defaults; deploy carries the 32000 creation surcharge.
    static GasTable defaults();

    //! IncompleteGasTable unless every mutating function (and deploy) has an
    //! entry and tx_base is positive.
    void validate() const;
};

nlohmann::json to_json(const GasTable& table);
GasTable gas_table_from_json(const nlohmann::json& value);

//! Intrinsic price of a function: 0 for reads, tx_base + function_cost for
//! writes. Throws UnknownFunction.
std::uint64_t gas_cost(const GasTable& table, std::string_view function);

std::uint64_t metered_gas(const GasTable& table, contract::Function function, std::size_t payload_bytes,
                          const contract::StorageDelta& storage);

struct Transaction {
    Address sender;
    std::string function;
    nlohmann::json args = nlohmann::json::object();
    std::uint64_t nonce{0};

    friend bool operator==(const Transaction&, const Transaction&) = default;
};

enum class Status { Success, Reverted };

struct GasReceipt {
    std::uint64_t gas_used{0};
    Status status{Status::Success};
    std::optional<contract::Event> event;
    std::string error;  // ErrorCode name when reverted

    [[nodiscard]] bool ok() const noexcept { return status == Status::Success; }

    friend bool operator==(const GasReceipt&, const GasReceipt&) = default;
};

struct Block {
    std::uint64_t height{0};
    std::string prev_hash;
    std::vector<Transaction> transactions;
    std::vector<GasReceipt> receipts;
    std::string block_hash;

    friend bool operator==(const Block&, const Block&) = default;
};

inline const std::string kZeroHash(64, '0');

nlohmann::json to_json(const Transaction& tx);
nlohmann::json to_json(const GasReceipt& receipt);
//! Full block including blockHash.
nlohmann::json to_json(const Block& block);
Block block_from_json(const nlohmann::json& value);

//! SHA-256 of the compact sorted-key JSON of {height, prevHash, receipts, transactions}.
std::string compute_block_hash(const Block& block);
//! One JSONL line: compact sorted-key JSON of the full block.
std::string canonical_line(const Block& block);

struct GenesisConfig {
    GasTable gas_table = GasTable::defaults();
    Address creator;
    std::vector<contract::NodeRecord> initial_ecs;
    //! Public code description (ecc JSON); must carry "n".
    nlohmann::json code;
};

//! Single-writer, append-only chain of one-transaction blocks driving one
//! contract instance. Readers take snapshot() and may use it from any thread
//! while the writer keeps appending.
class Ledger {
  public:
    //! Throws IncompleteGasTable, NoInitialEc, BadArguments.
    static Ledger genesis(const GenesisConfig& config);
    //! Verifies and re-executes a serialized chain. Throws CorruptChain.
    static Ledger load(std::span<const std::string> lines);
    static Ledger load_file(const std::filesystem::path& path);

    //! Executes the call and appends a block. Unauthorized or otherwise
    //! failing calls are recorded as reverted. Throws BadNonce,
    //! UnknownFunction or ViewFunction without appending.
    GasReceipt submit(const Transaction& tx);

    //! Read-only call against the current state; zero gas, nothing recorded.
    [[nodiscard]] nlohmann::json call(const Address& caller, std::string_view function,
                                      const nlohmann::json& args) const;

    [[nodiscard]] std::uint64_t next_nonce(const Address& sender) const;

    [[nodiscard]] std::shared_ptr<const contract::Contract> snapshot() const noexcept { return contract_; }
    [[nodiscard]] const contract::ContractState& state() const noexcept { return contract_->state(); }
    [[nodiscard]] const std::vector<Block>& blocks() const noexcept { return blocks_; }
    [[nodiscard]] const GasTable& gas_table() const noexcept { return config_.gas_table; }
    [[nodiscard]] const nlohmann::json& code_description() const noexcept { return config_.code; }
    [[nodiscard]] const Address& creator() const noexcept { return config_.creator; }

    //! Recomputes every hash and link of the in-memory chain.
    [[nodiscard]] bool verify() const;

    [[nodiscard]] std::vector<std::string> serialize() const;
    void write_jsonl(const std::filesystem::path& path) const;

  private:
    Ledger() = default;

    Block& append(Transaction tx, GasReceipt receipt);

    GenesisConfig config_;
    std::shared_ptr<const contract::Contract> contract_;
    std::vector<Block> blocks_;
    std::map<Address, std::uint64_t> last_nonce_;
};

//! True iff every line is the canonical encoding of its block, every block
//! hash recomputes, heights count from 0 and prevHash links hold.
bool verify_chain(std::span<const std::string> lines);

//! Final contract state from re-executing the chain. Throws CorruptChain.
contract::ContractState replay(std::span<const std::string> lines);

std::vector<std::string> read_jsonl(const std::filesystem::path& path);

}  // namespace biochain::ledger
