// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/chain/chain_state.hpp>
#include <nlohmann/json.hpp>
#include <memory>
#include <string>

namespace metarelay::chain
{
/// JSON-RPC 2.0 error codes.
namespace rpc_error
{
inline constexpr int parse_error = -32700;
inline constexpr int invalid_request = -32600;
inline constexpr int method_not_found = -32601;
inline constexpr int invalid_params = -32602;
inline constexpr int internal_error = -32603;
/// Transaction rejected; error.data.reason names the RejectReason.
inline constexpr int tx_rejected = -32000;
}  // namespace rpc_error

/// Handles one JSON-RPC 2.0 request object and returns the response object.
/// Implements the eth_* subset plus sim_* test controls.
nlohmann::json rpc_dispatch(ChainState& chain, const nlohmann::json& request);

/// Parses `body` and dispatches it; malformed JSON yields a parse-error response.
std::string rpc_handle_body(ChainState& chain, const std::string& body);

nlohmann::json receipt_to_json(const Receipt& r);

class HttpServer;

/// JSON-RPC over HTTP: POST / with a single request object.
class RpcServer
{
public:
    /// Port 0 binds an ephemeral port.
    RpcServer(ChainState& chain, std::string host = "127.0.0.1", int port = 0);
    ~RpcServer();
    RpcServer(const RpcServer&) = delete;
    RpcServer& operator=(const RpcServer&) = delete;

    [[nodiscard]] int port() const noexcept { return m_port; }
    [[nodiscard]] std::string url() const;

    /// Serves on a background thread until stop() or destruction.
    void start();
    void stop();
    /// Serves on the calling thread.
    void run();

private:
    ChainState& m_chain;
    std::string m_host;
    int m_port;
    std::unique_ptr<HttpServer> m_server;
    std::thread m_thread;
};
}  // namespace metarelay::chain
