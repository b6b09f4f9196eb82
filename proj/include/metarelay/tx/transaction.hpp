// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/crypto/secp256k1.hpp>
#include <metarelay/tx/keccak.hpp>

namespace metarelay::tx
{
using crypto::PrivateKey;
using crypto::Signature;

inline constexpr uint64_t min_gas_limit = 21000;

/// Legacy (type-0) transaction body. Contract creation is not supported, so `to` is always set.
struct UnsignedTransaction
{
    uint64_t nonce = 0;
    uint256 gas_price;
    uint64_t gas_limit = min_gas_limit;
    Address to;
    uint256 value;
    bytes data;

    friend bool operator==(const UnsignedTransaction&, const UnsignedTransaction&) = default;
};

struct SignedTransaction
{
    UnsignedTransaction tx;
    Signature sig;
    uint64_t chain_id = 0;
    uint256 v;

    friend bool operator==(const SignedTransaction&, const SignedTransaction&) = default;
};

/// Last 20 bytes of keccak256(x || y).
Address address_of(const crypto::PublicKey& pub);

/// Throws Error{Errc::invalid_scalar} for zero or >= n.
Address derive_address(bytes_view private_key);
Address derive_address(const PrivateKey& key);

Signature sign_digest(const PrivateKey& key, const Hash32& digest);
Signature sign_digest(bytes_view private_key, const Hash32& digest);

/// Throws Error{Errc::unrecoverable_point}.
Address recover_signer(const Hash32& digest, const Signature& sig);

/// keccak256(rlp([nonce, gas_price, gas_limit, to, value, data, chain_id, 0, 0]))
Hash32 signing_preimage(const UnsignedTransaction& tx, uint64_t chain_id);

/// rlp([nonce, gas_price, gas_limit, to, value, data, v, r, s]), v = 2 chain_id + 35 + recovery_id.
bytes encode_signed(const UnsignedTransaction& tx, const Signature& sig, uint64_t chain_id);

/// Throws Error{Errc::malformed_encoding} or Error{Errc::invalid_v}.
SignedTransaction decode_signed(bytes_view raw);

/// keccak256 of the raw signed bytes.
inline Hash32 transaction_hash(bytes_view raw) noexcept
{
    return keccak256(raw);
}

/// gas_used * gas_price, exact. Throws Error{Errc::invalid_argument} if the fee exceeds 256 bits.
uint256 compute_fee(uint64_t gas_used, const uint256& gas_price);

/// 21000 + 16 per nonzero calldata byte + 4 per zero byte.
uint64_t intrinsic_gas(bytes_view calldata) noexcept;
}  // namespace metarelay::tx
