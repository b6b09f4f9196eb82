// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include <metarelay/crypto/envelope.hpp>
#include <metarelay/crypto/symmetric.hpp>

namespace metarelay::crypto
{
namespace
{
struct SessionKeys
{
    bytes key;
    bytes nonce;

    ~SessionKeys()
    {
        secure_wipe(key);
        secure_wipe(nonce);
    }
};

SessionKeys session_keys(std::array<uint8_t, 32> shared, const PublicKey& ephemeral,
    const PublicKey& recipient, std::string_view context)
{
    auto salt = ephemeral.uncompressed();
    const auto r = recipient.uncompressed();
    salt.insert(salt.end(), r.begin(), r.end());
    auto okm = hkdf_sha256(shared, salt, as_bytes(context), aead_key_size + aead_nonce_size);
    secure_wipe(shared);
    SessionKeys keys;
    keys.key.assign(okm.begin(), okm.begin() + aead_key_size);
    keys.nonce.assign(okm.begin() + aead_key_size, okm.end());
    secure_wipe(okm);
    return keys;
}
}  // namespace

Envelope envelope_seal(const PublicKey& recipient, bytes_view plaintext, std::string_view context,
    const EntropySource& entropy)
{
    const auto ephemeral = PrivateKey::generate(entropy);
    const auto ephemeral_pub = derive_public_key(ephemeral);
    const auto keys =
        session_keys(ecdh(ephemeral, recipient), ephemeral_pub, recipient, context);
    return Envelope{ephemeral_pub, aead_seal(keys.key, keys.nonce, as_bytes(context), plaintext)};
}

bytes envelope_open(const PrivateKey& recipient, const Envelope& envelope, std::string_view context)
{
    const auto recipient_pub = derive_public_key(recipient);
    std::array<uint8_t, 32> shared{};
    try
    {
        shared = ecdh(recipient, envelope.ephemeral_pubkey);
    }
    catch (const Error&)
    {
        throw Error{Errc::authentication_failure, "invalid ephemeral key"};
    }
    const auto keys = session_keys(shared, envelope.ephemeral_pubkey, recipient_pub, context);
    return aead_open(keys.key, keys.nonce, as_bytes(context), envelope.ciphertext);
}
}  // namespace metarelay::crypto
