// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/common.hpp>
#include <nlohmann/json.hpp>
#include <atomic>
#include <chrono>
#include <functional>
#include <optional>

namespace metarelay::relay
{
struct NodeReceipt
{
    bool success = false;
    uint64_t gas_used = 0;
    uint64_t block_number = 0;
    /// The receipt exactly as the node returned it.
    nlohmann::json raw;
};

/// The slice of the Ethereum node RPC the relayer needs. Transport failures
/// throw Error{Errc::node_unreachable}; node-side refusals throw
/// Error{Errc::node_rejected}.
class NodeRpc
{
public:
    virtual ~NodeRpc() = default;

    virtual uint64_t chain_id() = 0;
    virtual uint256 balance(const Address& address) = 0;
    virtual uint64_t nonce(const Address& address) = 0;
    virtual Hash32 send_raw_transaction(bytes_view raw) = 0;
    virtual std::optional<NodeReceipt> receipt(const Hash32& tx_hash) = 0;
};

/// Carries one JSON-RPC request object to the node and returns the response object.
using RpcTransport = std::function<nlohmann::json(const nlohmann::json&)>;

/// JSON-RPC over HTTP POST. Connection failures and non-200 responses throw
/// Error{Errc::node_unreachable}.
RpcTransport http_transport(const std::string& url, std::chrono::milliseconds timeout = std::chrono::seconds{5});

class JsonRpcNode : public NodeRpc
{
public:
    explicit JsonRpcNode(RpcTransport transport) : m_transport{std::move(transport)} {}

    /// Generic call; returns `result` or throws on an error object.
    nlohmann::json call(const std::string& method, nlohmann::json params = nlohmann::json::array());

    uint64_t chain_id() override;
    uint256 balance(const Address& address) override;
    uint64_t nonce(const Address& address) override;
    Hash32 send_raw_transaction(bytes_view raw) override;
    std::optional<NodeReceipt> receipt(const Hash32& tx_hash) override;

private:
    RpcTransport m_transport;
    std::atomic<uint64_t> m_next_id{1};
};
}  // namespace metarelay::relay
