// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#include <biochain/ledger.hpp>

#include <fstream>

#include <biochain/errors.hpp>
#include <biochain/hash.hpp>

namespace biochain::ledger {

using contract::Function;

namespace {

    std::string_view to_string(Status status) { return status == Status::Success ? "success" : "reverted"; }

    GenesisConfig genesis_config_from_args(const nlohmann::json& args) {
        GenesisConfig config;
        config.creator = Address::parse(args.at("creator").get<std::string>());
        for (const auto& node : args.at("initialEcs")) config.initial_ecs.push_back(contract::node_from_json(node));
        config.code = args.at("code");
        config.gas_table = gas_table_from_json(args.at("gasTable"));
        return config;
    }

    nlohmann::json genesis_args(const GenesisConfig& config) {
        nlohmann::json ecs = nlohmann::json::array();
        for (const auto& node : config.initial_ecs) ecs.push_back(contract::to_json(node));
        return {{"creator", config.creator.str()},
                {"initialEcs", std::move(ecs)},
                {"code", config.code},
                {"gasTable", to_json(config.gas_table)}};
    }

    std::vector<Block> parse_verified(std::span<const std::string> lines) {
        if (!verify_chain(lines)) throw Error{ErrorCode::CorruptChain, "chain verification failed"};
        std::vector<Block> blocks;
        blocks.reserve(lines.size());
        for (const auto& line : lines) blocks.push_back(block_from_json(nlohmann::json::parse(line)));
        return blocks;
    }

}  // namespace

GasTable GasTable::defaults() {
    GasTable table;
    for (auto f : contract::all_functions()) {
        if (!contract::is_view(f)) table.function_cost[std::string{contract::to_string(f)}] = 0;
    }
    table.function_cost["deploy"] = 32000;
    return table;
}

void GasTable::validate() const {
    if (tx_base == 0) throw Error{ErrorCode::IncompleteGasTable, "tx_base must be positive"};
    for (auto f : contract::all_functions()) {
        if (contract::is_view(f)) continue;
        const std::string name{contract::to_string(f)};
        if (!function_cost.contains(name)) {
            throw Error{ErrorCode::IncompleteGasTable, "no gas entry for " + name};
        }
    }
}

nlohmann::json to_json(const GasTable& table) {
    return {{"txBase", table.tx_base},
            {"newSlot", table.new_slot},
            {"updateSlot", table.update_slot},
            {"perByte", table.per_byte},
            {"functions", table.function_cost}};
}

GasTable gas_table_from_json(const nlohmann::json& value) {
    try {
        GasTable table;
        table.tx_base = value.at("txBase").get<std::uint64_t>();
        table.new_slot = value.at("newSlot").get<std::uint64_t>();
        table.update_slot = value.at("updateSlot").get<std::uint64_t>();
        table.per_byte = value.at("perByte").get<std::uint64_t>();
        table.function_cost = value.at("functions").get<std::map<std::string, std::uint64_t>>();
        return table;
    } catch (const nlohmann::json::exception& e) {
        throw Error{ErrorCode::IncompleteGasTable, e.what()};
    }
}

std::uint64_t gas_cost(const GasTable& table, std::string_view function) {
    const auto f = contract::function_from_string(function);
    if (!f) throw Error{ErrorCode::UnknownFunction, "unknown function '" + std::string{function} + "'"};
    if (contract::is_view(*f)) return 0;
    auto it = table.function_cost.find(std::string{function});
    if (it == table.function_cost.end()) {
        throw Error{ErrorCode::IncompleteGasTable, "no gas entry for " + std::string{function}};
    }
    return table.tx_base + it->second;
}

std::uint64_t metered_gas(const GasTable& table, Function function, std::size_t payload_bytes,
                          const contract::StorageDelta& storage) {
    return gas_cost(table, contract::to_string(function)) + table.new_slot * storage.new_slots +
           table.update_slot * storage.updated_slots + table.per_byte * payload_bytes;
}

nlohmann::json to_json(const Transaction& tx) {
    return {{"sender", tx.sender.str()}, {"function", tx.function}, {"args", tx.args}, {"nonce", tx.nonce}};
}

nlohmann::json to_json(const GasReceipt& receipt) {
    nlohmann::json out{{"gasUsed", receipt.gas_used}, {"status", to_string(receipt.status)}};
    if (receipt.event) {
        out["event"] = {{"name", receipt.event->name}, {"payload", receipt.event->payload}};
    } else {
        out["event"] = nullptr;
    }
    if (receipt.status == Status::Reverted) out["error"] = receipt.error;
    return out;
}

namespace {

    nlohmann::json hashed_content(const Block& block) {
        nlohmann::json txs = nlohmann::json::array();
        for (const auto& tx : block.transactions) txs.push_back(to_json(tx));
        nlohmann::json receipts = nlohmann::json::array();
        for (const auto& r : block.receipts) receipts.push_back(to_json(r));
        return {{"height", block.height},
                {"prevHash", block.prev_hash},
                {"transactions", std::move(txs)},
                {"receipts", std::move(receipts)}};
    }

}  // namespace

nlohmann::json to_json(const Block& block) {
    auto out = hashed_content(block);
    out["blockHash"] = block.block_hash;
    return out;
}

Block block_from_json(const nlohmann::json& value) {
    try {
        Block block;
        block.height = value.at("height").get<std::uint64_t>();
        block.prev_hash = value.at("prevHash").get<std::string>();
        block.block_hash = value.at("blockHash").get<std::string>();
        for (const auto& tx : value.at("transactions")) {
            block.transactions.push_back(Transaction{Address::parse(tx.at("sender").get<std::string>()),
                                                     tx.at("function").get<std::string>(), tx.at("args"),
                                                     tx.at("nonce").get<std::uint64_t>()});
        }
        for (const auto& r : value.at("receipts")) {
            GasReceipt receipt;
            receipt.gas_used = r.at("gasUsed").get<std::uint64_t>();
            const auto status = r.at("status").get<std::string>();
            if (status != "success" && status != "reverted") {
                throw Error{ErrorCode::CorruptChain, "bad receipt status '" + status + "'"};
            }
            receipt.status = status == "success" ? Status::Success : Status::Reverted;
            if (!r.at("event").is_null()) {
                receipt.event = contract::Event{r.at("event").at("name").get<std::string>(),
                                                r.at("event").at("payload")};
            }
            if (receipt.status == Status::Reverted) receipt.error = r.at("error").get<std::string>();
            block.receipts.push_back(std::move(receipt));
        }
        return block;
    } catch (const nlohmann::json::exception& e) {
        throw Error{ErrorCode::CorruptChain, e.what()};
    } catch (const Error& e) {
        if (e.code() == ErrorCode::CorruptChain) throw;
        throw Error{ErrorCode::CorruptChain, e.what()};
    }
}

std::string compute_block_hash(const Block& block) { return sha256_hex(hashed_content(block).dump()); }

std::string canonical_line(const Block& block) { return to_json(block).dump(); }

Ledger Ledger::genesis(const GenesisConfig& config) {
    config.gas_table.validate();
    if (!config.code.is_object() || !config.code.contains("n")) {
        throw Error{ErrorCode::BadArguments, "genesis needs a code description with n"};
    }
    auto deployment = contract::Contract::deploy(config.creator, config.initial_ecs,
                                                 config.code.at("n").get<std::size_t>());

    Ledger ledger;
    ledger.config_ = config;
    ledger.contract_ = std::make_shared<const contract::Contract>(std::move(deployment.contract));

    Transaction tx{config.creator, "deploy", genesis_args(config), 1};
    const std::size_t bytes = tx.args.dump().size();
    GasReceipt receipt{metered_gas(config.gas_table, Function::Deploy, bytes, deployment.outcome.storage),
                       Status::Success, std::move(deployment.outcome.event), {}};
    ledger.append(std::move(tx), std::move(receipt));
    return ledger;
}

Block& Ledger::append(Transaction tx, GasReceipt receipt) {
    last_nonce_[tx.sender] = tx.nonce;
    Block block;
    block.height = blocks_.size();
    block.prev_hash = blocks_.empty() ? kZeroHash : blocks_.back().block_hash;
    block.transactions.push_back(std::move(tx));
    block.receipts.push_back(std::move(receipt));
    block.block_hash = compute_block_hash(block);
    blocks_.push_back(std::move(block));
    return blocks_.back();
}

std::uint64_t Ledger::next_nonce(const Address& sender) const {
    auto it = last_nonce_.find(sender);
    return (it == last_nonce_.end() ? 0 : it->second) + 1;
}

GasReceipt Ledger::submit(const Transaction& tx) {
    const auto function = contract::function_from_string(tx.function);
    if (!function) throw Error{ErrorCode::UnknownFunction, "unknown function '" + tx.function + "'"};
    if (contract::is_view(*function)) {
        throw Error{ErrorCode::ViewFunction, tx.function + " is read-only; use call()"};
    }
    if (*function == Function::Deploy) throw Error{ErrorCode::UnknownFunction, "deploy runs once, at genesis"};
    if (tx.nonce != next_nonce(tx.sender)) {
        throw Error{ErrorCode::BadNonce, "expected nonce " + std::to_string(next_nonce(tx.sender)) + " for " +
                                             tx.sender.str() + ", got " + std::to_string(tx.nonce)};
    }

    const std::size_t bytes = tx.args.dump().size();
    GasReceipt receipt;
    auto next = std::make_shared<contract::Contract>(*contract_);
    try {
        auto outcome = next->execute(tx.sender, *function, tx.args);
        receipt = GasReceipt{metered_gas(config_.gas_table, *function, bytes, outcome.storage), Status::Success,
                             std::move(outcome.event), {}};
        contract_ = std::move(next);
    } catch (const Error& e) {
        receipt = GasReceipt{metered_gas(config_.gas_table, *function, bytes, {}), Status::Reverted, std::nullopt,
                             std::string{biochain::to_string(e.code())}};
    }
    append(tx, receipt);
    return receipt;
}

nlohmann::json Ledger::call(const Address& caller, std::string_view function, const nlohmann::json& args) const {
    const auto f = contract::function_from_string(function);
    if (!f) throw Error{ErrorCode::UnknownFunction, "unknown function '" + std::string{function} + "'"};
    return contract_->view(caller, *f, args);
}

bool Ledger::verify() const {
    std::string prev = kZeroHash;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const auto& b = blocks_[i];
        if (b.height != i || b.prev_hash != prev || compute_block_hash(b) != b.block_hash) return false;
        prev = b.block_hash;
    }
    return true;
}

std::vector<std::string> Ledger::serialize() const {
    std::vector<std::string> lines;
    lines.reserve(blocks_.size());
    for (const auto& b : blocks_) lines.push_back(canonical_line(b));
    return lines;
}

void Ledger::write_jsonl(const std::filesystem::path& path) const {
    std::ofstream out{path, std::ios::binary | std::ios::trunc};
    if (!out) throw Error{ErrorCode::IoError, "cannot write " + path.string()};
    for (const auto& line : serialize()) out << line << '\n';
    if (!out) throw Error{ErrorCode::IoError, "write failed for " + path.string()};
}

Ledger Ledger::load(std::span<const std::string> lines) {
    auto blocks = parse_verified(lines);
    if (blocks.empty()) throw Error{ErrorCode::CorruptChain, "empty chain"};

    const auto& first = blocks.front();
    if (first.transactions.size() != 1 || first.transactions.front().function != "deploy") {
        throw Error{ErrorCode::CorruptChain, "genesis block does not deploy the contract"};
    }
    std::optional<Ledger> ledger;
    try {
        ledger = genesis(genesis_config_from_args(first.transactions.front().args));
    } catch (const Error& e) {
        throw Error{ErrorCode::CorruptChain, std::string{"genesis does not re-execute: "} + e.what()};
    } catch (const nlohmann::json::exception& e) {
        throw Error{ErrorCode::CorruptChain, std::string{"genesis arguments: "} + e.what()};
    }
    if (ledger->blocks_.front() != first) throw Error{ErrorCode::CorruptChain, "genesis block differs on replay"};

    for (std::size_t i = 1; i < blocks.size(); ++i) {
        const auto& recorded = blocks[i];
        if (recorded.transactions.size() != 1) {
            throw Error{ErrorCode::CorruptChain, "block " + std::to_string(i) + " must hold one transaction"};
        }
        try {
            ledger->submit(recorded.transactions.front());
        } catch (const Error& e) {
            throw Error{ErrorCode::CorruptChain, "block " + std::to_string(i) + " rejected on replay: " + e.what()};
        }
        if (ledger->blocks_.back() != recorded) {
            throw Error{ErrorCode::CorruptChain, "block " + std::to_string(i) + " differs on replay"};
        }
    }
    return std::move(*ledger);
}

Ledger Ledger::load_file(const std::filesystem::path& path) {
    const auto lines = read_jsonl(path);
    return load(lines);
}

bool verify_chain(std::span<const std::string> lines) {
    if (lines.empty()) return false;
    std::string prev = kZeroHash;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        try {
            const auto value = nlohmann::json::parse(lines[i]);
            const Block block = block_from_json(value);
            if (canonical_line(block) != lines[i]) return false;
            if (block.height != i || block.prev_hash != prev) return false;
            if (!is_lower_hex(block.block_hash, 64) || compute_block_hash(block) != block.block_hash) return false;
            prev = block.block_hash;
        } catch (const nlohmann::json::exception&) {
            return false;
        } catch (const Error&) {
            return false;
        }
    }
    return true;
}

contract::ContractState replay(std::span<const std::string> lines) { return Ledger::load(lines).state(); }

std::vector<std::string> read_jsonl(const std::filesystem::path& path) {
    std::ifstream in{path, std::ios::binary};
    if (!in) throw Error{ErrorCode::IoError, "cannot read " + path.string()};
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

}  // namespace biochain::ledger
