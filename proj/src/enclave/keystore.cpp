// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include "byte_io.hpp"
#include <metarelay/enclave/keystore.hpp>

namespace metarelay::enclave
{
namespace
{
constexpr uint8_t keystore_format = 1;

// Reject absurd counts before allocating.
constexpr uint32_t max_accounts = 1u << 16;
constexpr uint32_t max_in_flight = 1u << 16;
}  // namespace

std::string_view to_string(Role role) noexcept
{
    return role == Role::master ? "master" : "secondary";
}

void SpendingPolicy::validate() const
{
    if (default_gas_price > max_gas_price)
        throw Error{Errc::invalid_argument, "default gas price exceeds the cap"};
    if (max_gas_limit < tx::min_gas_limit)
        throw Error{Errc::invalid_argument, "gas limit cap below 21000"};
}

AccountRecord* Keystore::find(const Address& address)
{
    for (auto& a : accounts)
        if (a.address == address)
            return &a;
    return nullptr;
}

bytes serialize(const Keystore& ks)
{
    detail::ByteWriter w;
    w.u8(keystore_format);
    w.u64(ks.chain_id);
    w.u64(ks.version);

    w.u64(ks.policy.max_gas_limit);
    w.u256(ks.policy.max_gas_price);
    w.u256(ks.policy.default_gas_price);
    w.u8(ks.policy.allowed_recipients ? 1 : 0);
    if (ks.policy.allowed_recipients)
    {
        w.u32(static_cast<uint32_t>(ks.policy.allowed_recipients->size()));
        for (const auto& a : *ks.policy.allowed_recipients)
            w.raw(a.bytes);
    }

    w.raw(ks.channel_key.view());

    w.u32(static_cast<uint32_t>(ks.accounts.size()));
    for (const auto& a : ks.accounts)
    {
        w.u8(static_cast<uint8_t>(a.role));
        w.raw(a.address.bytes);
        w.raw(a.key.view());
        w.u64(a.next_nonce);
        w.u32(static_cast<uint32_t>(a.in_flight.size()));
        for (const auto& p : a.in_flight)
        {
            w.raw(p.tx_hash.bytes);
            w.u64(p.nonce);
        }
    }
    return std::move(w.buffer());
}

Keystore deserialize(bytes_view data)
{
    detail::ByteReader r{data};
    if (r.u8() != keystore_format)
        throw Error{Errc::format_error, "unsupported keystore format"};

    const auto read_key = [&r] {
        const auto b = r.take(32);
        if (!crypto::is_valid_scalar(b))
            throw Error{Errc::format_error, "invalid key scalar"};
        return crypto::PrivateKey::from_bytes(b);
    };

    const auto chain_id = r.u64();
    const auto version = r.u64();

    SpendingPolicy policy;
    policy.max_gas_limit = r.u64();
    policy.max_gas_price = r.u256();
    policy.default_gas_price = r.u256();
    const auto has_allowed = r.u8();
    if (has_allowed > 1)
        throw Error{Errc::format_error, "bad allowed-recipients flag"};
    if (has_allowed == 1)
    {
        const auto n = r.u32();
        if (n > r.remaining() / Address::size)
            throw Error{Errc::format_error, "allowed-recipients count out of range"};
        std::set<Address> allowed;
        for (uint32_t i = 0; i < n; ++i)
            allowed.insert(Address::from_bytes(r.take(Address::size)));
        policy.allowed_recipients = std::move(allowed);
    }

    Keystore ks{chain_id, version, std::move(policy), read_key(), {}};

    const auto count = r.u32();
    if (count == 0 || count > max_accounts)
        throw Error{Errc::format_error, "account count out of range"};
    std::set<Address> seen;
    for (uint32_t i = 0; i < count; ++i)
    {
        const auto role = r.u8();
        if (role > 1 || (role == 0) != (i == 0))
            throw Error{Errc::format_error, "exactly one master, stored first"};
        const auto address = Address::from_bytes(r.take(Address::size));
        auto key = read_key();
        if (tx::derive_address(key) != address)
            throw Error{Errc::format_error, "account key does not match its address"};
        if (!seen.insert(address).second)
            throw Error{Errc::format_error, "duplicate account address"};

        AccountRecord a{address, std::move(key), r.u64(), static_cast<Role>(role), {}};
        const auto pending = r.u32();
        if (pending > max_in_flight)
            throw Error{Errc::format_error, "in-flight count out of range"};
        for (uint32_t p = 0; p < pending; ++p)
        {
            PendingTx tx;
            tx.tx_hash = Hash32::from_bytes(r.take(32));
            tx.nonce = r.u64();
            a.in_flight.push_back(tx);
        }
        ks.accounts.push_back(std::move(a));
    }
    if (!r.done())
        throw Error{Errc::format_error, "trailing bytes after keystore"};
    return ks;
}

GasParams resolve_gas(const MetaTxRequest& req, const SpendingPolicy& policy, bytes_view calldata)
{
    GasParams out;
    if (req.gas_price)
    {
        if (*req.gas_price > policy.max_gas_price)
            throw Error{Errc::policy_violation, "gas price above policy cap"};
        out.gas_price = *req.gas_price;
    }
    else
        out.gas_price = policy.default_gas_price;

    if (req.gas_limit)
    {
        if (*req.gas_limit > policy.max_gas_limit)
            throw Error{Errc::policy_violation, "gas limit above policy cap"};
        if (*req.gas_limit < tx::min_gas_limit)
            throw Error{Errc::policy_violation, "gas limit below 21000"};
        out.gas_limit = *req.gas_limit;
    }
    else
    {
        out.gas_limit = tx::intrinsic_gas(calldata);
        if (out.gas_limit > policy.max_gas_limit)
            throw Error{Errc::policy_violation, "calldata needs more gas than the policy cap"};
    }
    return out;
}
}  // namespace metarelay::enclave
