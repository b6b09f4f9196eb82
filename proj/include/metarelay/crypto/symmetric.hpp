// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/common.hpp>

namespace metarelay::crypto
{
inline constexpr std::size_t aead_key_size = 32;
inline constexpr std::size_t aead_nonce_size = 12;
inline constexpr std::size_t aead_tag_size = 16;

/// AES-256-GCM. Returns ciphertext || 16-byte tag.
bytes aead_seal(bytes_view key, bytes_view nonce, bytes_view aad, bytes_view plaintext);

/// Throws Error{Errc::authentication_failure} on any tag mismatch.
bytes aead_open(bytes_view key, bytes_view nonce, bytes_view aad, bytes_view sealed);

/// HKDF-SHA256 extract-and-expand.
bytes hkdf_sha256(bytes_view ikm, bytes_view salt, bytes_view info, std::size_t length);

/// scrypt, for passphrase-protected owner files.
struct ScryptParams
{
    uint64_t n = 1u << 15;
    uint64_t r = 8;
    uint64_t p = 1;
};
bytes scrypt(std::string_view passphrase, bytes_view salt, const ScryptParams& params,
    std::size_t length);

Hash32 sha256(bytes_view data);

inline bytes_view as_bytes(std::string_view s) noexcept
{
    return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}
}  // namespace metarelay::crypto
