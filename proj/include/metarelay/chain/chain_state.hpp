// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/tx/forward.hpp>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <thread>

namespace metarelay::chain
{
enum class SealMode
{
    /// Every accepted transaction is mined in its own block before the RPC returns.
    instant,
    /// A background thread mines queued transactions every `seal_interval`.
    interval,
    /// Blocks are mined only by explicit seal_block() calls.
    manual,
};

struct ChainConfig
{
    uint64_t chain_id = 1337;
    uint256 base_gas_price = 1'000'000'000u;
    Address forwarder = Address::from_hex("0x000000000000000000000000000000000000f0f0");
    SealMode seal_mode = SealMode::instant;
    std::chrono::milliseconds seal_interval{1000};
};

enum class RejectReason
{
    malformed,
    wrong_chain,
    bad_nonce,
    insufficient_funds,
    gas_limit_exceeded,
};

std::string_view to_string(RejectReason r) noexcept;

class Rejected : public Error
{
public:
    Rejected(RejectReason reason, const std::string& what)
      : Error{Errc::node_rejected, what}, m_reason{reason}
    {}

    [[nodiscard]] RejectReason reason() const noexcept { return m_reason; }

private:
    RejectReason m_reason;
};

struct Receipt
{
    Hash32 tx_hash;
    bool success = false;
    uint64_t gas_used = 0;
    uint256 gas_price;
    uint256 fee_paid;
    uint64_t block_number = 0;
    Address from;
    Address to;

    friend bool operator==(const Receipt&, const Receipt&) = default;
};

struct CallRecord
{
    Address sender;
    /// The forwarded user for calls relayed through the trusted forwarder,
    /// otherwise equal to sender.
    Address effective_sender;
    bytes calldata;
    uint256 value;

    friend bool operator==(const CallRecord&, const CallRecord&) = default;
};

struct AccountState
{
    uint256 balance;
    uint64_t nonce = 0;

    friend bool operator==(const AccountState&, const AccountState&) = default;
};

struct Audit
{
    uint256 faucet_total;
    uint256 balance_total;
    uint256 fees_total;

    [[nodiscard]] bool conserved() const { return balance_total + fees_total == faucet_total; }
};

struct Stats
{
    uint64_t block_number = 0;
    uint64_t accepted = 0;
    uint64_t rejected = 0;
    uint64_t dropped = 0;
    uint64_t pending = 0;
};

/// Mock Ethereum node state. All mutations are serialized.
class ChainState
{
public:
    explicit ChainState(ChainConfig config = {});
    ~ChainState();
    ChainState(const ChainState&) = delete;
    ChainState& operator=(const ChainState&) = delete;

    [[nodiscard]] const ChainConfig& config() const noexcept { return m_config; }

    /// Requires amount > 0. Returns the new balance.
    uint256 faucet(const Address& address, const uint256& amount);

    [[nodiscard]] uint256 balance(const Address& address) const;
    /// Number of transactions from `address` included in blocks.
    [[nodiscard]] uint64_t nonce(const Address& address) const;
    [[nodiscard]] uint64_t forwarder_nonce(const Address& user) const;

    /// Validates and accepts a raw transaction. Throws Rejected.
    Hash32 send_raw_transaction(bytes_view raw);

    [[nodiscard]] std::optional<Receipt> receipt(const Hash32& tx_hash) const;
    [[nodiscard]] std::vector<CallRecord> call_log(const Address& target) const;

    /// The next `count` accepted transactions are acknowledged but never mined.
    void drop_next(uint32_t count);

    /// Mines every queued transaction into one block. Returns the number mined.
    std::size_t seal_block();

    [[nodiscard]] Audit audit() const;
    [[nodiscard]] Stats stats() const;

    /// Digest over accounts, receipts, call logs and forwarder nonces.
    [[nodiscard]] Hash32 state_digest() const;

private:
    struct Pending
    {
        Hash32 hash;
        Address from;
        tx::SignedTransaction tx;
    };

    Pending validate(bytes_view raw) const;
    void apply(const Pending& p, uint64_t block);
    void sealer_loop();

    ChainConfig m_config;
    mutable std::mutex m_mutex;
    std::map<Address, AccountState> m_accounts;
    std::map<Hash32, Receipt> m_receipts;
    std::map<Address, std::vector<CallRecord>> m_call_log;
    std::map<Address, uint64_t> m_forwarder_nonces;
    std::deque<Pending> m_queue;
    uint64_t m_block_number = 0;
    uint64_t m_drop_budget = 0;
    uint256 m_faucet_total;
    uint256 m_fees_total;
    Stats m_stats;

    std::condition_variable m_sealer_cv;
    bool m_stopping = false;
    std::thread m_sealer;
};
}  // namespace metarelay::chain
