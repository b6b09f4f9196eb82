// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include "byte_io.hpp"
#include <metarelay/crypto/symmetric.hpp>
#include <metarelay/enclave/sealing.hpp>
#include <algorithm>

namespace metarelay::enclave
{
namespace
{
constexpr std::array<uint8_t, 4> magic{'M', 'R', 'K', 'S'};
constexpr uint8_t blob_format = 1;
constexpr std::size_t header_size = 4 + 1 + 32 + 12 + 8;
constexpr std::string_view seal_info = "metarelay/seal/v1";

bytes header_bytes(const SealedBlob& b)
{
    detail::ByteWriter w;
    w.raw(magic);
    w.u8(blob_format);
    w.raw(b.measurement.bytes);
    w.raw(b.nonce);
    w.u64(b.version);
    return std::move(w.buffer());
}
}  // namespace

Hash32 build_measurement()
{
    return tx::keccak256(std::string_view{"metarelay-enclave/1.0"});
}

SealingKey derive_sealing_key(bytes_view platform_secret, const Hash32& measurement)
{
    if (platform_secret.empty())
        throw Error{Errc::empty_secret, "platform secret must not be empty"};
    auto okm = crypto::hkdf_sha256(
        platform_secret, measurement.bytes, crypto::as_bytes(seal_info), 32);
    SealingKey key;
    std::copy(okm.begin(), okm.end(), key.bytes.begin());
    secure_wipe(okm);
    return key;
}

bytes SealedBlob::to_bytes() const
{
    auto out = header_bytes(*this);
    out.insert(out.end(), ciphertext.begin(), ciphertext.end());
    out.insert(out.end(), auth_tag.begin(), auth_tag.end());
    return out;
}

SealedBlob SealedBlob::from_bytes(bytes_view data)
{
    if (data.size() < header_size + crypto::aead_tag_size)
        throw Error{Errc::format_error, "sealed blob too short"};
    detail::ByteReader r{data};
    const auto m = r.take(4);
    if (!std::equal(m.begin(), m.end(), magic.begin()))
        throw Error{Errc::format_error, "bad sealed blob magic"};
    if (r.u8() != blob_format)
        throw Error{Errc::format_error, "unsupported sealed blob format"};
    SealedBlob b;
    b.measurement = Hash32::from_bytes(r.take(32));
    const auto n = r.take(12);
    std::copy(n.begin(), n.end(), b.nonce.begin());
    b.version = r.u64();
    const auto ct = r.take(r.remaining() - crypto::aead_tag_size);
    b.ciphertext.assign(ct.begin(), ct.end());
    const auto tag = r.take(crypto::aead_tag_size);
    std::copy(tag.begin(), tag.end(), b.auth_tag.begin());
    return b;
}

SealedBlob seal(const Keystore& ks, const SealingKey& key, const Hash32& measurement,
    const crypto::EntropySource& entropy)
{
    SealedBlob blob;
    blob.measurement = measurement;
    blob.version = ks.version;
    entropy(blob.nonce);

    auto plaintext = serialize(ks);
    auto sealed = crypto::aead_seal(key.bytes, blob.nonce, header_bytes(blob), plaintext);
    secure_wipe(plaintext);
    blob.ciphertext.assign(sealed.begin(), sealed.end() - crypto::aead_tag_size);
    std::copy(sealed.end() - crypto::aead_tag_size, sealed.end(), blob.auth_tag.begin());
    return blob;
}

Keystore unseal(bytes_view data, const SealingKey& key, const Hash32& measurement,
    uint64_t min_version)
{
    const auto blob = SealedBlob::from_bytes(data);
    if (blob.measurement != measurement)
        throw Error{Errc::measurement_mismatch, "sealed by a different enclave build"};
    if (blob.version < min_version)
        throw Error{Errc::rollback, "sealed keystore version " + std::to_string(blob.version) +
                                        " is older than " + std::to_string(min_version)};

    bytes sealed = blob.ciphertext;
    sealed.insert(sealed.end(), blob.auth_tag.begin(), blob.auth_tag.end());
    auto plaintext = crypto::aead_open(key.bytes, blob.nonce, header_bytes(blob), sealed);
    auto ks = deserialize(plaintext);
    secure_wipe(plaintext);
    if (ks.version != blob.version)
        throw Error{Errc::format_error, "header and keystore versions disagree"};
    return ks;
}
}  // namespace metarelay::enclave
