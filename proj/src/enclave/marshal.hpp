// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/enclave/keystore.hpp>
#include <nlohmann/json.hpp>

// Boundary messages are CBOR maps; byte fields travel as CBOR byte strings.
namespace metarelay::enclave::marshal
{
using nlohmann::json;

inline json bin(bytes_view b)
{
    return json::binary(std::vector<uint8_t>{b.begin(), b.end()});
}

inline json bin(const uint256& v)
{
    return bin(to_be_minimal(v));
}

inline const json& at(const json& j, const char* name)
{
    const auto it = j.find(name);
    if (it == j.end())
        throw Error{Errc::parse_error, std::string{"boundary message lacks '"} + name + "'"};
    return *it;
}

inline bytes get_bin(const json& j, const char* name)
{
    const auto& v = at(j, name);
    if (!v.is_binary())
        throw Error{Errc::parse_error, std::string{"'"} + name + "' must be binary"};
    return v.get_binary();
}

inline Address get_address(const json& j, const char* name)
{
    return Address::from_bytes(get_bin(j, name));
}

inline Hash32 get_hash(const json& j, const char* name)
{
    return Hash32::from_bytes(get_bin(j, name));
}

inline uint256 get_u256(const json& j, const char* name)
{
    return from_be(get_bin(j, name));
}

inline uint64_t get_u64(const json& j, const char* name)
{
    const auto& v = at(j, name);
    if (!v.is_number_unsigned())
        throw Error{Errc::parse_error, std::string{"'"} + name + "' must be unsigned"};
    return v.get<uint64_t>();
}

inline json policy_to(const SpendingPolicy& p)
{
    json j{{"max_gas_limit", p.max_gas_limit}, {"max_gas_price", bin(p.max_gas_price)},
        {"default_gas_price", bin(p.default_gas_price)}};
    if (p.allowed_recipients)
    {
        json list = json::array();
        for (const auto& a : *p.allowed_recipients)
            list.push_back(bin(a.bytes));
        j["allowed_recipients"] = std::move(list);
    }
    return j;
}

inline SpendingPolicy policy_from(const json& j)
{
    SpendingPolicy p;
    p.max_gas_limit = get_u64(j, "max_gas_limit");
    p.max_gas_price = get_u256(j, "max_gas_price");
    p.default_gas_price = get_u256(j, "default_gas_price");
    if (j.contains("allowed_recipients"))
    {
        std::set<Address> allowed;
        for (const auto& a : j["allowed_recipients"])
        {
            if (!a.is_binary())
                throw Error{Errc::parse_error, "allowed recipient must be binary"};
            allowed.insert(Address::from_bytes(a.get_binary()));
        }
        p.allowed_recipients = std::move(allowed);
    }
    return p;
}

inline bytes encode(const json& j)
{
    return json::to_cbor(j);
}

inline json decode(bytes_view b)
{
    try
    {
        return json::from_cbor(b.begin(), b.end());
    }
    catch (const json::exception& e)
    {
        throw Error{Errc::parse_error, e.what()};
    }
}
}  // namespace metarelay::enclave::marshal
