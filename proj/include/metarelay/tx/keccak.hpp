// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/common.hpp>

namespace metarelay::tx
{
/// Keccak-256 with the original 0x01 domain padding (not FIPS-202 SHA3-256).
Hash32 keccak256(bytes_view input) noexcept;

inline Hash32 keccak256(std::string_view input) noexcept
{
    return keccak256(bytes_view{reinterpret_cast<const uint8_t*>(input.data()), input.size()});
}
}  // namespace metarelay::tx
