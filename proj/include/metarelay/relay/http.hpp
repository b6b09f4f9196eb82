// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/enclave/sealed_store.hpp>
#include <metarelay/relay/service.hpp>

namespace metarelay::relay
{
/// HTTP status for an error raised while serving a request.
int http_status(Errc code) noexcept;

/// Response of one HTTP request, independent of the server library.
struct HttpReply
{
    int status = 200;
    nlohmann::json body;
};

/// Route handlers, usable without a socket.
HttpReply handle_relay(RelayService& service, const std::string& body);
HttpReply handle_status(RelayService& service, const std::string& tx_hash);
HttpReply handle_info(RelayService& service);
HttpReply handle_health(RelayService& service);
HttpReply handle_admin_init(RelayService& service, const std::string& body);
HttpReply handle_admin_secondary(RelayService& service, const std::string& body);
HttpReply handle_admin_fund(RelayService& service);

nlohmann::json to_json(const enclave::InitReceipt& receipt);
enclave::InitReceipt init_receipt_from_json(const nlohmann::json& j);

class HttpListener;

/// Serves the relay API: POST /relay, GET /status/{txHash}, GET /info,
/// GET /health, POST /admin/init, POST /admin/secondary, POST /admin/fund.
class RelayHttpServer
{
public:
    /// Port 0 binds an ephemeral port.
    RelayHttpServer(RelayService& service, const std::string& host, int port);
    ~RelayHttpServer();
    RelayHttpServer(const RelayHttpServer&) = delete;
    RelayHttpServer& operator=(const RelayHttpServer&) = delete;

    [[nodiscard]] int port() const noexcept { return m_port; }
    [[nodiscard]] std::string url() const;

    void start();
    void run();
    void stop();

private:
    std::string m_host;
    int m_port;
    std::unique_ptr<HttpListener> m_server;
    std::thread m_thread;
};

struct DaemonOptions
{
    RelayConfig config;
    bytes platform_secret;
    LogSink log;
    crypto::EntropySource entropy = crypto::system_entropy();
    /// Overrides the HTTP JSON-RPC client built from config.rpc_endpoint.
    std::shared_ptr<NodeRpc> node;
};

/// Wires the relay together: sealed storage and enclave, relay log, node
/// client, service and HTTP server. Unseals existing state on construction.
class RelayDaemon
{
public:
    explicit RelayDaemon(DaemonOptions options);
    ~RelayDaemon();

    /// Recovers, starts background activities and serves on a background thread.
    void start();
    /// Like start() but serves on the calling thread.
    void run();
    void stop();

    [[nodiscard]] std::string url() const { return m_http->url(); }
    [[nodiscard]] RelayService& service() noexcept { return *m_service; }
    [[nodiscard]] enclave::EnclaveBoundary& boundary() noexcept { return *m_boundary; }
    [[nodiscard]] enclave::EnclaveClient& enclave() noexcept { return *m_client; }
    [[nodiscard]] RelayStore& store() noexcept { return *m_store; }

private:
    LogSink m_log;
    std::unique_ptr<enclave::SealedFileStore> m_sealed;
    std::unique_ptr<enclave::EnclaveBoundary> m_boundary;
    std::unique_ptr<enclave::EnclaveClient> m_client;
    std::unique_ptr<RelayStore> m_store;
    std::shared_ptr<NodeRpc> m_node;
    std::unique_ptr<RelayService> m_service;
    std::unique_ptr<RelayHttpServer> m_http;
};
}  // namespace metarelay::relay
