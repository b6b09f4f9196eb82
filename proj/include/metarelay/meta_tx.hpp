// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/crypto/envelope.hpp>
#include <metarelay/tx/forward.hpp>
#include <nlohmann/json.hpp>
#include <optional>

namespace metarelay
{
/// A user-originated call to be wrapped, signed and paid for by the relayer.
struct MetaTxRequest
{
    /// Target contract. For forwarded requests this is the trusted forwarder.
    std::optional<Address> to;
    bytes data;
    uint256 value;
    std::optional<uint64_t> gas_limit;
    std::optional<uint256> gas_price;
    std::optional<tx::ForwardRequest> forward;

    friend bool operator==(const MetaTxRequest&, const MetaTxRequest&) = default;
};

/// Calldata that will actually be signed: the encoded forward call when a forward
/// request is present, the raw data otherwise.
bytes outer_calldata(const MetaTxRequest& req);

/// JSON wire form (POST /relay body and envelope plaintext):
/// {to, data, value?, gasLimit?, gasPrice?, forward?}
/// forward: {from, to, value?, gas, nonce, data, signature}. Throws Error{Errc::parse_error}.
nlohmann::json to_json(const MetaTxRequest& req);
MetaTxRequest meta_tx_from_json(const nlohmann::json& j);

/// {ephemeralPubkey, ciphertext}
nlohmann::json to_json(const crypto::Envelope& env);
crypto::Envelope envelope_from_json(const nlohmann::json& j);

nlohmann::json to_json(const tx::ForwardRequest& req);
tx::ForwardRequest forward_from_json(const nlohmann::json& j);
}  // namespace metarelay
