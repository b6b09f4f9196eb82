// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/enclave/boundary.hpp>
#include <map>

namespace metarelay::enclave
{
/// Output of the initialization protocol, safe to hand to the untrusted host.
struct InitReceipt
{
    Address master_address;
    /// Master key sealed to the owner's public key.
    crypto::Envelope encrypted_master_key;
    Hash32 measurement;
    crypto::PublicKey channel_pubkey;
};

struct SignedMetaTx
{
    bytes raw;
    Hash32 tx_hash;
    Address signer;
    uint64_t nonce = 0;
};

struct AccountView
{
    Address address;
    Role role = Role::secondary;
    uint64_t next_nonce = 0;
    std::vector<PendingTx> in_flight;
};

/// Public projection of the enclave state; doubles as the attestation stub
/// (measurement + channel key).
struct EnclaveInfo
{
    bool initialized = false;
    Hash32 measurement;
    uint64_t keystore_version = 0;
    std::optional<crypto::PublicKey> channel_pubkey;
    uint64_t chain_id = 0;
    SpendingPolicy policy;
    std::vector<AccountView> accounts;
};

/// Envelope contexts.
inline constexpr std::string_view request_context = "metarelay/request/v1";
inline constexpr std::string_view backup_context = "metarelay/owner-backup/v1";

/// Host-side typed proxy over the marshaled ECall interface.
/// Errors raised inside the enclave are rethrown as Error with the same code.
class EnclaveClient
{
public:
    explicit EnclaveClient(EnclaveBoundary& boundary) : m_boundary{boundary} {}

    InitReceipt initialize(const crypto::PublicKey& owner_pubkey, const SpendingPolicy& policy,
        uint64_t chain_id, bool reset = false);

    SignedMetaTx sign_meta_tx(
        const MetaTxRequest& request, const std::optional<Address>& account = std::nullopt);
    /// Decrypts and signs in one ECall; the plaintext never reaches the host.
    SignedMetaTx sign_meta_tx(
        const crypto::Envelope& envelope, const std::optional<Address>& account = std::nullopt);

    /// Returns the nonce of the confirmed transaction.
    uint64_t confirm(const Address& account, const Hash32& tx_hash);
    /// Voids the named pending tx and every later one of the same account.
    void abort(const Address& account, const Hash32& tx_hash);

    std::vector<Address> add_secondary(uint32_t count);

    std::vector<SignedMetaTx> fund_plan(const std::map<Address, uint256>& balances,
        const uint256& min_balance, const uint256& top_up);

    MetaTxRequest decrypt_request(const crypto::Envelope& envelope);

    /// Unseal-on-startup. `min_version` is the host-persisted counter.
    void load_sealed(bytes_view blob, uint64_t min_version);

    EnclaveInfo info();

private:
    nlohmann::json call(const nlohmann::json& request);

    EnclaveBoundary& m_boundary;
};
}  // namespace metarelay::enclave
