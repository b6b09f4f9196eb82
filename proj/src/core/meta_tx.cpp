// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include <metarelay/meta_tx.hpp>

namespace metarelay
{
using nlohmann::json;

namespace
{
const json& field(const json& j, const char* name)
{
    const auto it = j.find(name);
    if (it == j.end())
        throw Error{Errc::parse_error, std::string{"missing field '"} + name + "'"};
    return *it;
}

std::string str(const json& j, const char* name)
{
    const auto& v = field(j, name);
    if (!v.is_string())
        throw Error{Errc::parse_error, std::string{"field '"} + name + "' must be a string"};
    return v.get<std::string>();
}

/// Quantities may be given as 0x-hex strings or as JSON integers.
uint256 quantity(const json& v, const char* name)
{
    if (v.is_number_unsigned())
        return v.get<uint64_t>();
    if (v.is_string())
        return from_quantity(v.get<std::string>());
    throw Error{Errc::parse_error, std::string{"field '"} + name + "' must be a quantity"};
}

uint64_t quantity64(const json& v, const char* name)
{
    const auto q = quantity(v, name);
    if (q > std::numeric_limits<uint64_t>::max())
        throw Error{Errc::parse_error, std::string{"field '"} + name + "' exceeds 64 bits"};
    return static_cast<uint64_t>(q);
}
}  // namespace

bytes outer_calldata(const MetaTxRequest& req)
{
    return req.forward ? tx::encode_forward_call(*req.forward) : req.data;
}

json to_json(const tx::ForwardRequest& req)
{
    return json{{"from", req.from.hex()}, {"to", req.to.hex()}, {"value", to_quantity(req.value)},
        {"gas", to_quantity(req.gas)}, {"nonce", to_quantity(req.user_nonce)},
        {"data", to_hex(req.data)}, {"signature", to_hex(req.user_sig.to_bytes65())}};
}

tx::ForwardRequest forward_from_json(const json& j)
{
    if (!j.is_object())
        throw Error{Errc::parse_error, "forward must be an object"};
    tx::ForwardRequest req;
    req.from = Address::from_hex(str(j, "from"));
    req.to = Address::from_hex(str(j, "to"));
    if (j.contains("value"))
        req.value = quantity(j["value"], "value");
    req.gas = quantity64(field(j, "gas"), "gas");
    req.user_nonce = quantity64(field(j, "nonce"), "nonce");
    req.data = from_hex(str(j, "data"));
    req.user_sig = crypto::Signature::from_bytes65(from_hex(str(j, "signature")));
    return req;
}

json to_json(const MetaTxRequest& req)
{
    json j = json::object();
    if (req.to)
        j["to"] = req.to->hex();
    j["data"] = to_hex(req.data);
    if (req.value != 0)
        j["value"] = to_quantity(req.value);
    if (req.gas_limit)
        j["gasLimit"] = to_quantity(*req.gas_limit);
    if (req.gas_price)
        j["gasPrice"] = to_quantity(*req.gas_price);
    if (req.forward)
        j["forward"] = to_json(*req.forward);
    return j;
}

MetaTxRequest meta_tx_from_json(const json& j)
{
    if (!j.is_object())
        throw Error{Errc::parse_error, "request must be a JSON object"};
    MetaTxRequest req;
    if (j.contains("to") && !j["to"].is_null())
        req.to = Address::from_hex(str(j, "to"));
    if (j.contains("data"))
        req.data = from_hex(str(j, "data"));
    if (j.contains("value"))
        req.value = quantity(j["value"], "value");
    if (j.contains("gasLimit"))
        req.gas_limit = quantity64(j["gasLimit"], "gasLimit");
    if (j.contains("gasPrice"))
        req.gas_price = quantity(j["gasPrice"], "gasPrice");
    if (j.contains("forward") && !j["forward"].is_null())
    {
        req.forward = forward_from_json(j["forward"]);
        if (!req.data.empty())
            throw Error{Errc::parse_error, "data must be empty when forward is present"};
    }
    if (!req.to && !req.forward)
        throw Error{Errc::parse_error, "missing field 'to'"};
    return req;
}

json to_json(const crypto::Envelope& env)
{
    return json{{"ephemeralPubkey", to_hex(env.ephemeral_pubkey.uncompressed())},
        {"ciphertext", to_hex(env.ciphertext)}};
}

crypto::Envelope envelope_from_json(const json& j)
{
    if (!j.is_object())
        throw Error{Errc::parse_error, "envelope must be an object"};
    try
    {
        return crypto::Envelope{crypto::PublicKey::from_bytes(from_hex(str(j, "ephemeralPubkey"))),
            from_hex(str(j, "ciphertext"))};
    }
    catch (const Error& e)
    {
        throw Error{Errc::parse_error, e.what()};
    }
}
}  // namespace metarelay
