// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#include <biochain/ecc.hpp>

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>

#include <biochain/errors.hpp>

namespace biochain::ecc {

namespace {

    // GF(2) rank by elimination on a copy.
    std::size_t rank_of(std::vector<BitVector> rows) {
        if (rows.empty()) return 0;
        const std::size_t n = rows.front().size();
        std::size_t rank = 0;
        for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
            auto pivot = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(rank), rows.end(),
                                      [col](const BitVector& r) { return r[col] == 1; });
            if (pivot == rows.end()) continue;
            std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(rank), pivot);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (i != rank && rows[i][col] == 1) rows[i] ^= rows[rank];
            }
            ++rank;
        }
        return rank;
    }

    // Reduced form with I_k in the first k columns, or NonSystematicMatrix.
    std::vector<BitVector> to_systematic(std::vector<BitVector> rows) {
        const std::size_t k = rows.size();
        for (std::size_t col = 0; col < k; ++col) {
            auto pivot = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(col), rows.end(),
                                      [col](const BitVector& r) { return r[col] == 1; });
            if (pivot == rows.end()) {
                throw Error{ErrorCode::NonSystematicMatrix,
                            "column " + std::to_string(col) + " has no pivot; matrix cannot be reduced to [I|P]"};
            }
            std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(col), pivot);
            for (std::size_t i = 0; i < k; ++i) {
                if (i != col && rows[i][col] == 1) rows[i] ^= rows[col];
            }
        }
        return rows;
    }

    // Calls visit(positions) for every weight-w subset of [0, n), lexicographic.
    template <typename Visit>
    void for_each_subset(std::size_t n, std::size_t w, Visit&& visit) {
        if (w > n) return;
        std::vector<std::uint32_t> idx(w);
        for (std::size_t i = 0; i < w; ++i) idx[i] = static_cast<std::uint32_t>(i);
        while (true) {
            visit(idx);
            std::size_t i = w;
            while (i > 0 && idx[i - 1] == n - w + i - 1) --i;
            if (i == 0) return;
            ++idx[i - 1];
            for (std::size_t j = i; j < w; ++j) idx[j] = idx[j - 1] + 1;
        }
    }

    std::size_t parse_size(std::string_view text, std::string_view what) {
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size()) {
            throw Error{ErrorCode::ParseError, "invalid " + std::string{what} + " '" + std::string{text} + "'"};
        }
        return value;
    }

}  // namespace

std::string_view to_string(Family family) noexcept {
    switch (family) {
        case Family::Repetition: return "repetition";
        case Family::Hamming: return "hamming";
        case Family::GeneratorMatrix: return "generator-matrix";
    }
    return "unknown";
}

std::size_t enumerate_min_distance(std::span<const BitVector> generator_rows) {
    const std::size_t k = generator_rows.size();
    if (k == 0) throw Error{ErrorCode::InvalidParameter, "empty generator"};
    if (k > kMaxEnumeratedDimension) {
        throw Error{ErrorCode::TableTooLarge, "k = " + std::to_string(k) + " exceeds the enumerable dimension"};
    }
    const std::size_t n = generator_rows.front().size();
    const std::size_t words = (n + 63) / 64;

    std::vector<std::vector<std::uint64_t>> packed(k, std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (generator_rows[i][j]) packed[i][j / 64] |= std::uint64_t{1} << (j % 64);
        }
    }

    // Gray-code walk: each step toggles one generator row.
    std::vector<std::uint64_t> current(words, 0);
    std::size_t best = std::numeric_limits<std::size_t>::max();
    const std::uint64_t total = std::uint64_t{1} << k;
    for (std::uint64_t i = 1; i < total; ++i) {
        const auto& row = packed[static_cast<std::size_t>(std::countr_zero(i))];
        std::size_t weight = 0;
        for (std::size_t w = 0; w < words; ++w) {
            current[w] ^= row[w];
            weight += static_cast<std::size_t>(std::popcount(current[w]));
        }
        best = std::min(best, weight);
    }
    return best;
}

LinearCode::LinearCode(Family family, std::vector<BitVector> systematic_rows,
                       std::optional<std::size_t> known_distance)
    : family_{family}, generator_{std::move(systematic_rows)} {
    k_ = generator_.size();
    n_ = generator_.front().size();

    parity_check_.assign(n_ - k_, BitVector(n_));
    for (std::size_t j = 0; j < n_ - k_; ++j) {
        for (std::size_t i = 0; i < k_; ++i) parity_check_[j].set(i, generator_[i][k_ + j] == 1);
        parity_check_[j].set(k_ + j, true);
    }

    column_syndromes_.assign(n_, 0);
    for (std::size_t j = 0; j < n_ - k_; ++j) {
        for (std::size_t i = 0; i < n_; ++i) {
            if (parity_check_[j][i]) column_syndromes_[i] |= std::uint32_t{1} << j;
        }
    }

    d_min_ = known_distance ? *known_distance : enumerate_min_distance(generator_);
    t_ = (d_min_ - 1) / 2;
    build_syndrome_table();
}

void LinearCode::build_syndrome_table() {
    const std::size_t entries = std::size_t{1} << (n_ - k_);
    leaders_.assign(entries, {});
    has_leader_.assign(entries, false);
    table_entries_ = 0;
    for (std::size_t w = 0; w <= t_; ++w) {
        for_each_subset(n_, w, [&](const std::vector<std::uint32_t>& positions) {
            std::uint32_t s = 0;
            for (auto p : positions) s ^= column_syndromes_[p];
            // Patterns of weight <= t have distinct syndromes whenever d_min >= 2t + 1.
            if (has_leader_[s]) {
                throw Error{ErrorCode::InvalidParameter, "syndrome collision below the correction radius"};
            }
            has_leader_[s] = true;
            leaders_[s] = positions;
            ++table_entries_;
        });
    }
}

bool LinearCode::is_perfect() const noexcept { return table_entries_ == (std::size_t{1} << (n_ - k_)); }

LinearCode LinearCode::repetition(std::size_t n) {
    if (n < 3 || n % 2 == 0) {
        throw Error{ErrorCode::InvalidParameter, "repetition code length must be odd and >= 3"};
    }
    if (n - 1 > kMaxRedundancy) {
        throw Error{ErrorCode::TableTooLarge, "repetition(" + std::to_string(n) + ") needs a 2^" +
                                                  std::to_string(n - 1) + " syndrome table"};
    }
    BitVector row(n);
    for (std::size_t i = 0; i < n; ++i) row.set(i, true);
    return LinearCode{Family::Repetition, {row}, n};
}

LinearCode LinearCode::hamming(unsigned r) {
    if (r < 2 || r > kMaxHammingR) {
        throw Error{ErrorCode::InvalidParameter, "hamming r must be in [2, " + std::to_string(kMaxHammingR) + "]"};
    }
    const std::size_t n = (std::size_t{1} << r) - 1;
    const std::size_t k = n - r;

    // Message bit i sits at the i-th non-power-of-two position p (1-based) of
    // the classic layout; parity j covers the positions with bit j set.
    std::vector<BitVector> rows;
    rows.reserve(k);
    for (std::size_t pos = 3; pos <= n; ++pos) {
        if (std::has_single_bit(pos)) continue;
        BitVector row(n);
        row.set(rows.size(), true);
        for (unsigned j = 0; j < r; ++j) row.set(k + j, ((pos >> j) & 1U) != 0);
        rows.push_back(std::move(row));
    }
    return LinearCode{Family::Hamming, std::move(rows), 3};
}

LinearCode LinearCode::from_generator(std::vector<BitVector> rows) {
    if (rows.empty()) throw Error{ErrorCode::RankDeficient, "generator has no rows"};
    const std::size_t n = rows.front().size();
    for (const auto& row : rows) {
        if (row.size() != n) throw Error{ErrorCode::LengthMismatch, "generator rows differ in length"};
    }
    if (rows.size() > n) throw Error{ErrorCode::RankDeficient, "more rows than columns"};
    if (rank_of(rows) < rows.size()) {
        throw Error{ErrorCode::RankDeficient, "generator rank is below k = " + std::to_string(rows.size())};
    }
    auto systematic = to_systematic(std::move(rows));
    if (n - systematic.size() > kMaxRedundancy) {
        throw Error{ErrorCode::TableTooLarge, "n - k = " + std::to_string(n - systematic.size()) + " exceeds " +
                                                  std::to_string(kMaxRedundancy)};
    }
    return LinearCode{Family::GeneratorMatrix, std::move(systematic), std::nullopt};
}

Codeword LinearCode::encode(const Witness& message) const {
    if (message.size() != k_) {
        throw Error{ErrorCode::LengthMismatch,
                    "message has " + std::to_string(message.size()) + " bits, code expects k = " + std::to_string(k_)};
    }
    Codeword out(n_);
    for (std::size_t i = 0; i < k_; ++i) {
        if (message[i]) out ^= generator_[i];
    }
    return out;
}

std::uint32_t LinearCode::syndrome(const BitVector& received) const {
    if (received.size() != n_) {
        throw Error{ErrorCode::LengthMismatch,
                    "received word has " + std::to_string(received.size()) + " bits, expected n = " +
                        std::to_string(n_)};
    }
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        if (received[i]) s ^= column_syndromes_[i];
    }
    return s;
}

std::optional<BitVector> LinearCode::coset_leader(std::uint32_t syndrome) const {
    if (syndrome >= has_leader_.size() || !has_leader_[syndrome]) return std::nullopt;
    BitVector e(n_);
    for (auto p : leaders_[syndrome]) e.set(p, true);
    return e;
}

std::optional<Witness> LinearCode::try_decode(const BitVector& received) const {
    const std::uint32_t s = syndrome(received);
    if (!has_leader_[s]) return std::nullopt;
    Witness out = received.slice(0, k_);
    for (auto p : leaders_[s]) {
        if (p < k_) out.flip(p);
    }
    return out;
}

Witness LinearCode::decode(const BitVector& received) const {
    auto out = try_decode(received);
    if (!out) {
        throw Error{ErrorCode::DecodingFailure, "syndrome " + std::to_string(syndrome(received)) +
                                                    " has no coset leader within radius t"};
    }
    return *out;
}

LinearCode build_code(const CodeParams& params) {
    return std::visit(
        [](const auto& p) -> LinearCode {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, RepetitionParams>) {
                return LinearCode::repetition(p.n);
            } else if constexpr (std::is_same_v<P, HammingParams>) {
                return LinearCode::hamming(p.r);
            } else {
                return LinearCode::from_generator(p.rows);
            }
        },
        params);
}

nlohmann::json to_json(const LinearCode& code) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : code.generator()) rows.push_back(row.to_string());
    return {{"family", std::string{to_string(code.family())}},
            {"n", code.n()},
            {"k", code.k()},
            {"t", code.t()},
            {"generator", std::move(rows)}};
}

LinearCode code_from_json(const nlohmann::json& description) {
    if (!description.is_object() || !description.contains("family")) {
        throw Error{ErrorCode::ParseError, "code description must be an object with a family"};
    }
    try {
        const auto family = description.at("family").get<std::string>();
        auto declared = [&](const char* key) -> std::optional<std::size_t> {
            if (!description.contains(key)) return std::nullopt;
            return description.at(key).get<std::size_t>();
        };

        std::optional<LinearCode> code;
        if (family == "repetition") {
            auto n = declared("n");
            if (!n) throw Error{ErrorCode::ParseError, "repetition code requires n"};
            code = LinearCode::repetition(*n);
        } else if (family == "hamming") {
            if (description.contains("r")) {
                code = LinearCode::hamming(description.at("r").get<unsigned>());
            } else {
                auto n = declared("n");
                auto k = declared("k");
                if (!n || !k || *k >= *n) throw Error{ErrorCode::ParseError, "hamming code requires r or n > k"};
                code = LinearCode::hamming(static_cast<unsigned>(*n - *k));
            }
        } else if (family == "generator-matrix") {
            std::vector<BitVector> rows;
            for (const auto& row : description.at("generator")) {
                rows.push_back(BitVector::from_string(row.get<std::string>()));
            }
            code = LinearCode::from_generator(std::move(rows));
        } else {
            throw Error{ErrorCode::ParseError, "unknown code family '" + family + "'"};
        }

        for (const char* key : {"n", "k", "t"}) {
            auto value = declared(key);
            const std::size_t actual = std::string_view{key} == "n" ? code->n()
                                       : std::string_view{key} == "k" ? code->k()
                                                                      : code->t();
            if (value && *value != actual) {
                throw Error{ErrorCode::ParseError, std::string{"declared "} + key + " = " + std::to_string(*value) +
                                                       " but the code has " + std::to_string(actual)};
            }
        }
        if (family != "generator-matrix" && description.contains("generator")) {
            if (description.at("generator") != to_json(*code).at("generator")) {
                throw Error{ErrorCode::ParseError, "generator rows do not match the " + family + " family"};
            }
        }
        return std::move(*code);
    } catch (const nlohmann::json::exception& e) {
        throw Error{ErrorCode::ParseError, e.what()};
    }
}

LinearCode parse_code_spec(std::string_view spec) {
    if (!spec.empty() && spec.front() == '{') {
        try {
            return code_from_json(nlohmann::json::parse(spec));
        } catch (const nlohmann::json::exception& e) {
            throw Error{ErrorCode::ParseError, e.what()};
        }
    }
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw Error{ErrorCode::ParseError, "code spec must be hamming:<r>, repetition:<n> or JSON"};
    }
    const auto family = spec.substr(0, colon);
    const auto value = spec.substr(colon + 1);
    if (family == "hamming") return LinearCode::hamming(static_cast<unsigned>(parse_size(value, "r")));
    if (family == "repetition") return LinearCode::repetition(parse_size(value, "n"));
    throw Error{ErrorCode::ParseError, "unknown code family '" + std::string{family} + "'"};
}

}  // namespace biochain::ecc
