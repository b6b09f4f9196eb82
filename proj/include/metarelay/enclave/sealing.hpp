// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/enclave/keystore.hpp>

namespace metarelay::enclave
{
/// Code identity of this enclave build.
Hash32 build_measurement();

/// Simulated platform sealing key: HKDF-SHA256 over the platform secret, salted
/// with the measurement. Throws Error{Errc::empty_secret}.
struct SealingKey
{
    std::array<uint8_t, 32> bytes{};
    ~SealingKey() { secure_wipe(bytes); }
};
SealingKey derive_sealing_key(bytes_view platform_secret, const Hash32& measurement);

/// File layout: "MRKS" | format (1) | measurement (32) | nonce (12) | version (u64 BE) |
/// ciphertext | tag (16). Everything before the ciphertext is authenticated.
struct SealedBlob
{
    Hash32 measurement;
    std::array<uint8_t, 12> nonce{};
    uint64_t version = 0;
    bytes ciphertext;
    std::array<uint8_t, 16> auth_tag{};

    [[nodiscard]] bytes to_bytes() const;
    /// Throws Error{Errc::format_error}.
    static SealedBlob from_bytes(bytes_view data);
};

SealedBlob seal(const Keystore& ks, const SealingKey& key, const Hash32& measurement,
    const crypto::EntropySource& entropy);

/// Throws Error{Errc::measurement_mismatch}, Error{Errc::rollback} (blob version below
/// `min_version`), Error{Errc::authentication_failure}, or Error{Errc::format_error}.
Keystore unseal(bytes_view blob, const SealingKey& key, const Hash32& measurement,
    uint64_t min_version);
}  // namespace metarelay::enclave
