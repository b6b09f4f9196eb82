// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include <metarelay/chain/rpc.hpp>
#include <httplib.h>

namespace metarelay::chain
{
class HttpServer : public httplib::Server
{
};

RpcServer::RpcServer(ChainState& chain, std::string host, int port)
  : m_chain{chain}, m_host{std::move(host)}, m_port{port}, m_server{std::make_unique<HttpServer>()}
{
    m_server->Post("/", [this](const httplib::Request& req, httplib::Response& res) {
        res.set_content(rpc_handle_body(m_chain, req.body), "application/json");
    });
    if (m_port == 0)
        m_port = m_server->bind_to_any_port(m_host);
    else if (!m_server->bind_to_port(m_host, m_port))
        m_port = -1;
    if (m_port < 0)
        throw Error{Errc::io_error, "cannot bind " + m_host + ":" + std::to_string(port)};
}

RpcServer::~RpcServer()
{
    stop();
}

std::string RpcServer::url() const
{
    return "http://" + m_host + ":" + std::to_string(m_port);
}

void RpcServer::start()
{
    m_thread = std::thread{[this] { m_server->listen_after_bind(); }};
    m_server->wait_until_ready();
}

void RpcServer::run()
{
    m_server->listen_after_bind();
}

void RpcServer::stop()
{
    m_server->stop();
    if (m_thread.joinable())
        m_thread.join();
}
}  // namespace metarelay::chain
