// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/tx/transaction.hpp>

namespace metarelay::tx
{
/// A call the end user signed with their own key, executed through a trusted forwarder.
struct ForwardRequest
{
    Address from;
    Address to;
    uint256 value;
    uint64_t gas = 0;
    uint64_t user_nonce = 0;
    bytes data;
    Signature user_sig;

    friend bool operator==(const ForwardRequest&, const ForwardRequest&) = default;
};

/// keccak256(rlp([chain_id, forwarder, from, to, value, gas, user_nonce, keccak256(data)]))
Hash32 forward_digest(const ForwardRequest& req, uint64_t chain_id, const Address& forwarder);

/// Fills in `user_sig` by signing the forward digest with the user's key.
void sign_forward(ForwardRequest& req, const PrivateKey& user_key, uint64_t chain_id,
    const Address& forwarder);

/// calldata || user (the trusted-forwarder suffix convention).
bytes append_sender(bytes_view calldata, const Address& user);

/// Outer calldata addressed to the forwarder:
/// rlp([from, to, value, gas, user_nonce, data, r || s || recovery_id]).
bytes encode_forward_call(const ForwardRequest& req);

/// Throws Error{Errc::malformed_encoding}.
ForwardRequest decode_forward_call(bytes_view calldata);
}  // namespace metarelay::tx
