// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/meta_tx.hpp>
#include <optional>
#include <set>

namespace metarelay::enclave
{
enum class Role : uint8_t
{
    master = 0,
    secondary = 1,
};

std::string_view to_string(Role role) noexcept;

/// A signed transaction awaiting confirmation or abort.
struct PendingTx
{
    Hash32 tx_hash;
    uint64_t nonce = 0;

    friend bool operator==(const PendingTx&, const PendingTx&) = default;
};

/// One signing identity held inside the boundary.
///
/// `in_flight` holds at most one entry for ordinary signing; a funding batch on
/// the master holds one entry per batch transaction with consecutive nonces
/// starting at `next_nonce`.
struct AccountRecord
{
    Address address;
    crypto::PrivateKey key;
    uint64_t next_nonce = 0;
    Role role = Role::secondary;
    std::vector<PendingTx> in_flight;

    friend bool operator==(const AccountRecord&, const AccountRecord&) = default;
};

struct SpendingPolicy
{
    uint64_t max_gas_limit = 1'000'000;
    uint256 max_gas_price = 100'000'000'000u;  // 100 gwei
    uint256 default_gas_price = 1'000'000'000u;  // 1 gwei
    std::optional<std::set<Address>> allowed_recipients;

    /// Throws Error{Errc::invalid_argument}.
    void validate() const;

    friend bool operator==(const SpendingPolicy&, const SpendingPolicy&) = default;
};

struct Keystore
{
    uint64_t chain_id = 0;
    uint64_t version = 0;
    SpendingPolicy policy;
    /// Key for request envelopes addressed to the enclave.
    crypto::PrivateKey channel_key;
    /// accounts[0] is the master.
    std::vector<AccountRecord> accounts;

    [[nodiscard]] const AccountRecord& master() const { return accounts.at(0); }
    [[nodiscard]] AccountRecord* find(const Address& address);

    friend bool operator==(const Keystore&, const Keystore&) = default;
};

/// Canonical binary layout, format byte first. Deterministic for equal keystores.
bytes serialize(const Keystore& ks);

/// Throws Error{Errc::format_error}. Validates every account key against its address,
/// a single master at index 0, and distinct addresses.
Keystore deserialize(bytes_view data);

struct GasParams
{
    uint64_t gas_limit = 0;
    uint256 gas_price;

    friend bool operator==(const GasParams&, const GasParams&) = default;
};

/// Overrides win when within the policy caps; otherwise policy defaults apply.
/// The default gas limit is the intrinsic gas of `calldata`.
/// Throws Error{Errc::policy_violation} for over-cap overrides.
GasParams resolve_gas(const MetaTxRequest& req, const SpendingPolicy& policy, bytes_view calldata);
}  // namespace metarelay::enclave
