// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include <metarelay/chain/rpc.hpp>

namespace metarelay::chain
{
using nlohmann::json;

namespace
{
struct RpcFailure
{
    int code;
    std::string message;
    json data;
};

const json& param(const json& params, std::size_t i)
{
    if (!params.is_array() || params.size() <= i)
        throw RpcFailure{rpc_error::invalid_params, "missing parameter " + std::to_string(i), nullptr};
    return params[i];
}

std::string string_param(const json& params, std::size_t i)
{
    const auto& p = param(params, i);
    if (!p.is_string())
        throw RpcFailure{rpc_error::invalid_params, "parameter " + std::to_string(i) + " must be a string", nullptr};
    return p.get<std::string>();
}

template <typename F>
auto parse_param(const json& params, std::size_t i, F&& parse)
{
    const auto text = string_param(params, i);
    try
    {
        return parse(text);
    }
    catch (const Error& e)
    {
        throw RpcFailure{rpc_error::invalid_params, "parameter " + std::to_string(i) + ": " + e.what(), nullptr};
    }
}

Address address_param(const json& params, std::size_t i)
{
    return parse_param(params, i, [](const std::string& s) { return Address::from_hex(s); });
}

uint256 quantity_param(const json& params, std::size_t i)
{
    return parse_param(params, i, [](const std::string& s) { return from_quantity(s); });
}

json call_record_to_json(const CallRecord& c)
{
    return json{{"sender", c.sender.hex()}, {"effectiveSender", c.effective_sender.hex()},
        {"calldata", to_hex(c.calldata)}, {"value", to_quantity(c.value)}};
}

json dispatch_method(ChainState& chain, const std::string& method, const json& params)
{
    if (method == "eth_chainId")
        return to_quantity(chain.config().chain_id);
    if (method == "eth_gasPrice")
        return to_quantity(chain.config().base_gas_price);
    if (method == "eth_getBalance")
        return to_quantity(chain.balance(address_param(params, 0)));
    if (method == "eth_getTransactionCount")
        return to_quantity(chain.nonce(address_param(params, 0)));
    if (method == "eth_sendRawTransaction")
    {
        const auto raw = parse_param(params, 0, [](const std::string& s) {
            if (!s.starts_with("0x"))
                throw Error{Errc::parse_error, "raw transaction must be 0x-prefixed"};
            return from_hex(s);
        });
        try
        {
            return chain.send_raw_transaction(raw).hex();
        }
        catch (const Rejected& e)
        {
            throw RpcFailure{rpc_error::tx_rejected, e.what(),
                json{{"reason", std::string{to_string(e.reason())}}}};
        }
    }
    if (method == "eth_getTransactionReceipt")
    {
        const auto hash = parse_param(params, 0, [](const std::string& s) { return Hash32::from_hex(s); });
        const auto r = chain.receipt(hash);
        return r ? receipt_to_json(*r) : json(nullptr);
    }
    if (method == "eth_blockNumber")
        return to_quantity(chain.stats().block_number);
    if (method == "sim_faucet")
    {
        const auto amount = quantity_param(params, 1);
        if (amount == 0)
            throw RpcFailure{rpc_error::invalid_params, "faucet amount must be positive", nullptr};
        return to_quantity(chain.faucet(address_param(params, 0), amount));
    }
    if (method == "sim_dropNext")
    {
        const auto n = quantity_param(params, 0);
        if (n > std::numeric_limits<uint32_t>::max())
            throw RpcFailure{rpc_error::invalid_params, "drop count too large", nullptr};
        chain.drop_next(static_cast<uint32_t>(n));
        return true;
    }
    if (method == "sim_getCallLog")
    {
        json out = json::array();
        for (const auto& c : chain.call_log(address_param(params, 0)))
            out.push_back(call_record_to_json(c));
        return out;
    }
    if (method == "sim_forwarderNonce")
        return to_quantity(chain.forwarder_nonce(address_param(params, 0)));
    if (method == "sim_sealBlock")
        return to_quantity(chain.seal_block());
    if (method == "sim_stats")
    {
        const auto s = chain.stats();
        const auto a = chain.audit();
        return json{{"blockNumber", to_quantity(s.block_number)}, {"accepted", s.accepted},
            {"rejected", s.rejected}, {"dropped", s.dropped}, {"pending", s.pending},
            {"faucetTotal", to_quantity(a.faucet_total)}, {"balanceTotal", to_quantity(a.balance_total)},
            {"feesTotal", to_quantity(a.fees_total)}, {"conserved", a.conserved()},
            {"stateDigest", chain.state_digest().hex()}};
    }
    throw RpcFailure{rpc_error::method_not_found, "method not found: " + method, nullptr};
}

json error_response(const json& id, int code, const std::string& message, const json& data = nullptr)
{
    json err{{"code", code}, {"message", message}};
    if (!data.is_null())
        err["data"] = data;
    return json{{"jsonrpc", "2.0"}, {"id", id}, {"error", std::move(err)}};
}
}  // namespace

json receipt_to_json(const Receipt& r)
{
    return json{{"transactionHash", r.tx_hash.hex()}, {"status", r.success ? "0x1" : "0x0"},
        {"gasUsed", to_quantity(r.gas_used)}, {"effectiveGasPrice", to_quantity(r.gas_price)},
        {"feePaid", to_quantity(r.fee_paid)}, {"blockNumber", to_quantity(r.block_number)},
        {"from", r.from.hex()}, {"to", r.to.hex()}};
}

json rpc_dispatch(ChainState& chain, const json& request)
{
    json id = nullptr;
    if (request.is_object() && request.contains("id"))
        id = request["id"];
    if (!request.is_object() || request.value("jsonrpc", "") != "2.0" || !request.contains("method") ||
        !request["method"].is_string())
        return error_response(id, rpc_error::invalid_request, "invalid JSON-RPC 2.0 request");
    const auto params = request.value("params", json::array());
    if (!params.is_array())
        return error_response(id, rpc_error::invalid_params, "params must be an array");
    try
    {
        return json{{"jsonrpc", "2.0"}, {"id", id},
            {"result", dispatch_method(chain, request["method"].get<std::string>(), params)}};
    }
    catch (const RpcFailure& f)
    {
        return error_response(id, f.code, f.message, f.data);
    }
    catch (const std::exception& e)
    {
        return error_response(id, rpc_error::internal_error, e.what());
    }
}

std::string rpc_handle_body(ChainState& chain, const std::string& body)
{
    const auto request = json::parse(body, nullptr, false);
    if (request.is_discarded())
        return error_response(nullptr, rpc_error::parse_error, "parse error").dump();
    return rpc_dispatch(chain, request).dump();
}
}  // namespace metarelay::chain
