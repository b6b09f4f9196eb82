// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include "marshal.hpp"
#include <metarelay/enclave/client.hpp>

namespace metarelay::enclave
{
using namespace marshal;

namespace
{
SignedMetaTx signed_from(const json& j)
{
    SignedMetaTx s;
    s.raw = get_bin(j, "raw");
    s.tx_hash = get_hash(j, "tx_hash");
    s.signer = get_address(j, "signer");
    s.nonce = get_u64(j, "nonce");
    return s;
}

json envelope_to(const crypto::Envelope& env)
{
    return json{{"ephemeral", bin(env.ephemeral_pubkey.uncompressed())},
        {"ciphertext", bin(env.ciphertext)}};
}
}  // namespace

json EnclaveClient::call(const json& request)
{
    auto response = marshal::decode(m_boundary.ecall(marshal::encode(request)));
    if (response.contains("error"))
        throw Error{static_cast<Errc>(response["error"].get<int>()),
            response.value("message", std::string{"enclave error"})};
    return response;
}

InitReceipt EnclaveClient::initialize(const crypto::PublicKey& owner_pubkey,
    const SpendingPolicy& policy, uint64_t chain_id, bool reset)
{
    const auto r = call(json{{"fn", "initialize"}, {"owner_pubkey", bin(owner_pubkey.uncompressed())},
        {"policy", policy_to(policy)}, {"chain_id", chain_id}, {"reset", reset}});
    return InitReceipt{get_address(r, "master_address"),
        crypto::Envelope{crypto::PublicKey::from_bytes(get_bin(r, "backup_ephemeral")),
            get_bin(r, "backup_ciphertext")},
        get_hash(r, "measurement"), crypto::PublicKey::from_bytes(get_bin(r, "channel_pubkey"))};
}

SignedMetaTx EnclaveClient::sign_meta_tx(
    const MetaTxRequest& request, const std::optional<Address>& account)
{
    json req{{"fn", "sign"}, {"request", to_json(request)}};
    if (account)
        req["account"] = bin(account->bytes);
    return signed_from(call(req));
}

SignedMetaTx EnclaveClient::sign_meta_tx(
    const crypto::Envelope& envelope, const std::optional<Address>& account)
{
    json req{{"fn", "sign"}, {"envelope", envelope_to(envelope)}};
    if (account)
        req["account"] = bin(account->bytes);
    return signed_from(call(req));
}

uint64_t EnclaveClient::confirm(const Address& account, const Hash32& tx_hash)
{
    return get_u64(call(json{{"fn", "confirm"}, {"account", bin(account.bytes)},
                       {"tx_hash", bin(tx_hash.bytes)}}),
        "nonce");
}

void EnclaveClient::abort(const Address& account, const Hash32& tx_hash)
{
    call(json{{"fn", "abort"}, {"account", bin(account.bytes)}, {"tx_hash", bin(tx_hash.bytes)}});
}

std::vector<Address> EnclaveClient::add_secondary(uint32_t count)
{
    const auto r = call(json{{"fn", "add_secondary"}, {"count", count}});
    std::vector<Address> out;
    for (const auto& a : at(r, "addresses"))
        out.push_back(Address::from_bytes(a.get_binary()));
    return out;
}

std::vector<SignedMetaTx> EnclaveClient::fund_plan(
    const std::map<Address, uint256>& balances, const uint256& min_balance, const uint256& top_up)
{
    json list = json::array();
    for (const auto& [address, balance] : balances)
        list.push_back(json{{"address", bin(address.bytes)}, {"balance", bin(balance)}});
    const auto r = call(json{{"fn", "fund_plan"}, {"balances", std::move(list)},
        {"min_balance", bin(min_balance)}, {"top_up", bin(top_up)}});
    std::vector<SignedMetaTx> out;
    for (const auto& t : at(r, "transactions"))
        out.push_back(signed_from(t));
    return out;
}

MetaTxRequest EnclaveClient::decrypt_request(const crypto::Envelope& envelope)
{
    auto req = envelope_to(envelope);
    req["fn"] = "decrypt_request";
    return meta_tx_from_json(at(call(req), "request"));
}

void EnclaveClient::load_sealed(bytes_view blob, uint64_t min_version)
{
    call(json{{"fn", "load_sealed"}, {"blob", bin(blob)}, {"min_version", min_version}});
}

EnclaveInfo EnclaveClient::info()
{
    const auto r = call(json{{"fn", "info"}});
    EnclaveInfo out;
    out.initialized = at(r, "initialized").get<bool>();
    out.measurement = get_hash(r, "measurement");
    out.keystore_version = get_u64(r, "version");
    if (!out.initialized)
        return out;
    out.channel_pubkey = crypto::PublicKey::from_bytes(get_bin(r, "channel_pubkey"));
    out.chain_id = get_u64(r, "chain_id");
    out.policy = policy_from(at(r, "policy"));
    for (const auto& a : at(r, "accounts"))
    {
        AccountView v;
        v.address = get_address(a, "address");
        v.role = static_cast<Role>(at(a, "role").get<int>());
        v.next_nonce = get_u64(a, "next_nonce");
        for (const auto& p : at(a, "in_flight"))
            v.in_flight.push_back(PendingTx{get_hash(p, "tx_hash"), get_u64(p, "nonce")});
        out.accounts.push_back(std::move(v));
    }
    return out;
}
}  // namespace metarelay::enclave
