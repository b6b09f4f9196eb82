// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include <metarelay/relay/http.hpp>
#include <httplib.h>

namespace metarelay::relay
{
using nlohmann::json;

int http_status(Errc code) noexcept
{
    switch (code)
    {
    case Errc::busy:
    case Errc::already_initialized:
        return 409;
    case Errc::policy_violation:
    case Errc::invalid_argument:
    case Errc::parse_error:
    case Errc::malformed_encoding:
    case Errc::invalid_public_key:
    case Errc::invalid_owner_key:
    case Errc::invalid_scalar:
    case Errc::authentication_failure:
    case Errc::unknown_account:
        return 400;
    case Errc::not_found:
        return 404;
    case Errc::node_rejected:
        return 422;
    case Errc::node_unreachable:
        return 502;
    case Errc::uninitialized:
        return 503;
    default:
        return 500;
    }
}

namespace
{
HttpReply error_reply(Errc code, const std::string& message)
{
    return HttpReply{http_status(code), json{{"error", std::string{to_string(code)}}, {"message", message}}};
}

template <typename F>
HttpReply guarded(F&& f)
{
    try
    {
        return f();
    }
    catch (const Error& e)
    {
        return error_reply(e.code(), e.what());
    }
    catch (const json::exception& e)
    {
        return error_reply(Errc::parse_error, e.what());
    }
    catch (const std::exception& e)
    {
        return error_reply(Errc::io_error, e.what());
    }
}

json parse_body(const std::string& body)
{
    auto j = json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw Error{Errc::parse_error, "request body must be a JSON object"};
    return j;
}

json outcome_json(const RelayOutcome& o)
{
    return json{{"txHash", o.tx_hash.hex()}, {"signer", o.signer.hex()}, {"nonce", o.nonce},
        {"state", std::string{to_string(o.state)}}};
}
}  // namespace

json to_json(const enclave::InitReceipt& r)
{
    return json{{"masterAddress", r.master_address.hex()},
        {"encryptedMasterKey", metarelay::to_json(r.encrypted_master_key)},
        {"measurement", r.measurement.hex()}, {"channelPubkey", to_hex(r.channel_pubkey.uncompressed())}};
}

enclave::InitReceipt init_receipt_from_json(const json& j)
{
    enclave::InitReceipt r;
    r.master_address = Address::from_hex(j.at("masterAddress").get<std::string>());
    r.encrypted_master_key = envelope_from_json(j.at("encryptedMasterKey"));
    r.measurement = Hash32::from_hex(j.at("measurement").get<std::string>());
    r.channel_pubkey = crypto::PublicKey::from_bytes(from_hex(j.at("channelPubkey").get<std::string>()));
    return r;
}

HttpReply handle_relay(RelayService& service, const std::string& body)
{
    return guarded([&] {
        const auto j = parse_body(body);
        if (j.contains("envelope"))
        {
            if (j.size() != 1)
                throw Error{Errc::parse_error, "envelope excludes plaintext request fields"};
            return HttpReply{200, outcome_json(service.relay(envelope_from_json(j["envelope"])))};
        }
        auto request = j;
        if (request.contains("forward") && !request.contains("to"))
            request["to"] = service.config().forwarder.hex();
        return HttpReply{200, outcome_json(service.relay(meta_tx_from_json(request)))};
    });
}

HttpReply handle_status(RelayService& service, const std::string& tx_hash)
{
    return guarded([&] {
        const auto record = service.status(Hash32::from_hex(tx_hash));
        if (!record)
            throw Error{Errc::not_found, "unknown transaction " + tx_hash};
        return HttpReply{200, to_json(*record)};
    });
}

HttpReply handle_info(RelayService& service)
{
    return guarded([&] { return HttpReply{200, service.info()}; });
}

HttpReply handle_health(RelayService& service)
{
    return guarded([&] {
        const auto info = service.info();
        return HttpReply{200, json{{"status", "ok"}, {"initialized", info.at("initialized")},
                                  {"nodeReachable", !info.contains("nodeError")}}};
    });
}

HttpReply handle_admin_init(RelayService& service, const std::string& body)
{
    return guarded([&] {
        const auto j = parse_body(body);
        crypto::PublicKey owner;
        try
        {
            owner = crypto::PublicKey::from_bytes(from_hex(j.at("ownerPubkey").get<std::string>()));
        }
        catch (const Error& e)
        {
            throw Error{Errc::invalid_owner_key, e.what()};
        }
        return HttpReply{200, to_json(service.initialize(owner, j.value("reset", false)))};
    });
}

HttpReply handle_admin_secondary(RelayService& service, const std::string& body)
{
    return guarded([&] {
        const auto j = parse_body(body);
        const auto& count = j.at("count");
        if (!count.is_number_unsigned() || count.get<uint64_t>() > 1024)
            throw Error{Errc::invalid_argument, "count must be an integer in [1, 1024]"};
        json addresses = json::array();
        for (const auto& a : service.add_secondary(count.get<uint32_t>()))
            addresses.push_back(a.hex());
        return HttpReply{200, json{{"addresses", std::move(addresses)}}};
    });
}

HttpReply handle_admin_fund(RelayService& service)
{
    return guarded([&] {
        const auto result = service.funding_tick();
        json txs = json::array();
        for (const auto& t : result.transactions)
            txs.push_back(json{{"txHash", t.tx_hash.hex()}, {"to", t.to.hex()}, {"value", to_quantity(t.value)}});
        return HttpReply{200, json{{"dispatched", result.dispatched}, {"transactions", std::move(txs)}}};
    });
}

class HttpListener : public httplib::Server
{
};

RelayHttpServer::RelayHttpServer(RelayService& service, const std::string& host, int port)
  : m_host{host}, m_port{port}, m_server{std::make_unique<HttpListener>()}
{
    auto reply = [](httplib::Response& res, const HttpReply& r) {
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    auto& s = *m_server;
    s.Post("/relay", [&service, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, handle_relay(service, req.body));
    });
    s.Get(R"(/status/(0x[0-9a-fA-F]+))", [&service, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, handle_status(service, req.matches[1]));
    });
    s.Get("/info", [&service, reply](const httplib::Request&, httplib::Response& res) {
        reply(res, handle_info(service));
    });
    s.Get("/health", [&service, reply](const httplib::Request&, httplib::Response& res) {
        reply(res, handle_health(service));
    });
    s.Post("/admin/init", [&service, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, handle_admin_init(service, req.body));
    });
    s.Post("/admin/secondary", [&service, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, handle_admin_secondary(service, req.body));
    });
    s.Post("/admin/fund", [&service, reply](const httplib::Request&, httplib::Response& res) {
        reply(res, handle_admin_fund(service));
    });
    s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty())
            res.set_content(json{{"error", "not-found"}, {"message", "no such route"}}.dump(), "application/json");
    });

    if (m_port == 0)
        m_port = s.bind_to_any_port(m_host);
    else if (!s.bind_to_port(m_host, m_port))
        m_port = -1;
    if (m_port < 0)
        throw Error{Errc::io_error, "cannot bind " + host + ":" + std::to_string(port)};
}

RelayHttpServer::~RelayHttpServer()
{
    stop();
}

std::string RelayHttpServer::url() const
{
    return "http://" + m_host + ":" + std::to_string(m_port);
}

void RelayHttpServer::start()
{
    m_thread = std::thread{[this] { m_server->listen_after_bind(); }};
    m_server->wait_until_ready();
}

void RelayHttpServer::run()
{
    m_server->listen_after_bind();
}

void RelayHttpServer::stop()
{
    m_server->stop();
    if (m_thread.joinable())
        m_thread.join();
}

RelayDaemon::RelayDaemon(DaemonOptions options) : m_log{std::move(options.log)}
{
    auto& cfg = options.config;
    cfg.validate();
    m_sealed = std::make_unique<enclave::SealedFileStore>(cfg.data_dir / "enclave");

    enclave::EnclaveConfig ec;
    ec.platform_secret = std::move(options.platform_secret);
    ec.entropy = std::move(options.entropy);
    ec.ocalls.persist_sealed = [sealed = m_sealed.get()](bytes_view blob, uint64_t version) {
        sealed->persist(blob, version);
    };
    ec.ocalls.log = [log = m_log](std::string_view line) {
        if (log)
            log("enclave: " + std::string{line});
    };
    m_boundary = std::make_unique<enclave::EnclaveBoundary>(std::move(ec));
    m_client = std::make_unique<enclave::EnclaveClient>(*m_boundary);
    if (const auto blob = m_sealed->load_blob())
        m_client->load_sealed(*blob, m_sealed->load_version());

    m_store = std::make_unique<RelayStore>(cfg.data_dir / "relay.wal");
    m_node = options.node ? options.node : std::make_shared<JsonRpcNode>(http_transport(cfg.rpc_endpoint));
    const auto [host, port] = split_host_port(cfg.listen_address);
    m_service = std::make_unique<RelayService>(cfg, *m_client, *m_node, *m_store, m_log);
    m_http = std::make_unique<RelayHttpServer>(*m_service, host, port);
}

RelayDaemon::~RelayDaemon()
{
    stop();
}

void RelayDaemon::start()
{
    m_service->recover();
    m_service->start();
    m_http->start();
}

void RelayDaemon::run()
{
    m_service->recover();
    m_service->start();
    m_http->run();
}

void RelayDaemon::stop()
{
    if (m_http)
        m_http->stop();
    if (m_service)
        m_service->stop();
}
}  // namespace metarelay::relay
