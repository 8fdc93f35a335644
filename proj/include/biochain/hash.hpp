// Copyright 2026 The Biochain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace biochain {

//! SHA-256 of the given bytes as 64 lowercase hex characters.
std::string sha256_hex(std::string_view data);

//! True iff text is exactly `length` lowercase hex characters.
bool is_lower_hex(std::string_view text, std::size_t length);

}  // namespace biochain
