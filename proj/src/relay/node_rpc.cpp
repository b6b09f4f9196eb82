// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include <metarelay/relay/node_rpc.hpp>
#include <httplib.h>

namespace metarelay::relay
{
using nlohmann::json;

RpcTransport http_transport(const std::string& url, std::chrono::milliseconds timeout)
{
    return [url, timeout](const json& request) {
        httplib::Client client{url};
        client.set_connection_timeout(timeout);
        client.set_read_timeout(timeout);
        client.set_write_timeout(timeout);
        const auto res = client.Post("/", request.dump(), "application/json");
        if (!res)
            throw Error{Errc::node_unreachable,
                "node " + url + " unreachable: " + httplib::to_string(res.error())};
        if (res->status != 200)
            throw Error{Errc::node_unreachable, "node " + url + " answered HTTP " + std::to_string(res->status)};
        auto body = json::parse(res->body, nullptr, false);
        if (body.is_discarded())
            throw Error{Errc::node_unreachable, "node " + url + " sent invalid JSON"};
        return body;
    };
}

json JsonRpcNode::call(const std::string& method, json params)
{
    const auto id = m_next_id++;
    const auto response =
        m_transport(json{{"jsonrpc", "2.0"}, {"id", id}, {"method", method}, {"params", std::move(params)}});
    if (!response.is_object())
        throw Error{Errc::node_unreachable, "node returned a non-object response"};
    if (const auto it = response.find("error"); it != response.end() && !it->is_null())
    {
        std::string message = it->value("message", std::string{"node error"});
        if (const auto data = it->find("data"); data != it->end() && data->contains("reason"))
            message = (*data)["reason"].get<std::string>() + ": " + message;
        throw Error{Errc::node_rejected, method + ": " + message};
    }
    if (!response.contains("result"))
        throw Error{Errc::node_unreachable, "node response lacks result"};
    return response["result"];
}

namespace
{
uint256 quantity(const json& j)
{
    if (!j.is_string())
        throw Error{Errc::node_unreachable, "node returned a non-string quantity"};
    return from_quantity(j.get<std::string>());
}
}  // namespace

uint64_t JsonRpcNode::chain_id()
{
    return static_cast<uint64_t>(quantity(call("eth_chainId")));
}

uint256 JsonRpcNode::balance(const Address& address)
{
    return quantity(call("eth_getBalance", {address.hex(), "latest"}));
}

uint64_t JsonRpcNode::nonce(const Address& address)
{
    return static_cast<uint64_t>(quantity(call("eth_getTransactionCount", {address.hex(), "latest"})));
}

Hash32 JsonRpcNode::send_raw_transaction(bytes_view raw)
{
    return Hash32::from_hex(call("eth_sendRawTransaction", {to_hex(raw)}).get<std::string>());
}

std::optional<NodeReceipt> JsonRpcNode::receipt(const Hash32& tx_hash)
{
    auto r = call("eth_getTransactionReceipt", {tx_hash.hex()});
    if (r.is_null())
        return std::nullopt;
    NodeReceipt out;
    out.success = r.value("status", "0x0") == "0x1";
    out.gas_used = static_cast<uint64_t>(quantity(r.at("gasUsed")));
    out.block_number = static_cast<uint64_t>(quantity(r.at("blockNumber")));
    out.raw = std::move(r);
    return out;
}
}  // namespace metarelay::relay
