// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/crypto/secp256k1.hpp>

namespace metarelay::crypto
{
/// ECIES-style envelope: ephemeral secp256k1 ECDH, HKDF-SHA256, AES-256-GCM.
///
/// The AEAD key and nonce are both expanded from the shared secret, bound to
/// the ephemeral and recipient public keys. A fresh ephemeral key per envelope
/// keeps the derived nonce unique. `context` separates usages (request channel,
/// owner backup) and is authenticated as associated data.
struct Envelope
{
    PublicKey ephemeral_pubkey;
    bytes ciphertext;  // includes the 16-byte tag

    friend bool operator==(const Envelope&, const Envelope&) = default;
};

Envelope envelope_seal(const PublicKey& recipient, bytes_view plaintext, std::string_view context,
    const EntropySource& entropy);

/// Throws Error{Errc::authentication_failure} when the envelope was not sealed to
/// this key under this context, or was modified.
bytes envelope_open(const PrivateKey& recipient, const Envelope& envelope, std::string_view context);
}  // namespace metarelay::crypto
