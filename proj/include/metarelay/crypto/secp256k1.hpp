// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/common.hpp>
#include <functional>

namespace metarelay::crypto
{
/// Fills the buffer with fresh random bytes.
using EntropySource = std::function<void(std::span<uint8_t>)>;

/// OS-backed CSPRNG.
EntropySource system_entropy();

/// Curve order n of secp256k1.
const uint256& curve_order() noexcept;

/// A secp256k1 scalar in [1, n). Wiped on destruction.
class PrivateKey
{
public:
    /// Throws Error{Errc::invalid_scalar} for zero or >= n.
    static PrivateKey from_bytes(bytes_view b);
    static PrivateKey generate(const EntropySource& entropy);

    PrivateKey(const PrivateKey&) = default;
    PrivateKey& operator=(const PrivateKey&) = default;
    ~PrivateKey() { secure_wipe(m_bytes); }

    [[nodiscard]] bytes_view view() const noexcept { return m_bytes; }

    friend bool operator==(const PrivateKey&, const PrivateKey&) = default;

private:
    PrivateKey() = default;
    std::array<uint8_t, 32> m_bytes{};
};

bool is_valid_scalar(bytes_view b) noexcept;

/// Affine point, serialized as x || y (64 bytes, no 0x04 tag).
struct PublicKey
{
    std::array<uint8_t, 64> xy{};

    /// Accepts 65-byte uncompressed (0x04 tag), 64-byte raw, or 33-byte compressed encodings.
    /// Throws Error{Errc::invalid_public_key} when the point is not on the curve.
    static PublicKey from_bytes(bytes_view b);

    /// 0x04 || x || y
    [[nodiscard]] bytes uncompressed() const;

    friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

PublicKey derive_public_key(const PrivateKey& key);

struct Signature
{
    uint256 r;
    uint256 s;
    uint8_t recovery_id = 0;

    /// r || s || recovery_id
    [[nodiscard]] bytes to_bytes65() const;
    static Signature from_bytes65(bytes_view b);

    friend bool operator==(const Signature&, const Signature&) = default;
};

/// ECDSA with RFC 6979 (HMAC-SHA256) nonces and low-s normalization.
Signature sign(const PrivateKey& key, const Hash32& digest);

/// Throws Error{Errc::unrecoverable_point}.
PublicKey recover_public_key(const Hash32& digest, const Signature& sig);

/// x-coordinate of key * peer.
std::array<uint8_t, 32> ecdh(const PrivateKey& key, const PublicKey& peer);
}  // namespace metarelay::crypto
