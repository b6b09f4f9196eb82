// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/enclave/client.hpp>
#include <metarelay/relay/config.hpp>
#include <metarelay/relay/node_rpc.hpp>
#include <metarelay/relay/store.hpp>
#include <condition_variable>
#include <thread>

namespace metarelay::relay
{
using LogSink = std::function<void(std::string_view)>;

struct RelayOutcome
{
    Hash32 tx_hash;
    Address signer;
    uint64_t nonce = 0;
    RecordState state = RecordState::submitted;
};

struct FundingTx
{
    Hash32 tx_hash;
    Address to;
    uint256 value;
};

struct FundingResult
{
    /// Funding transactions accepted by the node.
    std::size_t dispatched = 0;
    std::vector<FundingTx> transactions;
};

/// The untrusted backend: drives the enclave, submits to the node and tracks
/// every signed transaction until exactly one of confirm/abort has run.
class RelayService
{
public:
    RelayService(RelayConfig config, enclave::EnclaveClient& enclave, NodeRpc& node, RelayStore& store,
        LogSink log = {});
    ~RelayService();
    RelayService(const RelayService&) = delete;
    RelayService& operator=(const RelayService&) = delete;

    /// Starts the tracker and, when funding.period > 0, the funding daemon.
    void start();
    void stop();

    /// Re-drives records left unsettled by a previous run and aborts enclave
    /// pending transactions that never reached the log. Call before start().
    void recover();

    /// Signs, submits and returns once the node accepted the transaction.
    /// Throws Error: busy, policy_violation, invalid_argument, uninitialized,
    /// node_rejected, node_unreachable.
    RelayOutcome relay(MetaTxRequest request);
    /// The envelope is opened inside the enclave.
    RelayOutcome relay(const crypto::Envelope& envelope);

    [[nodiscard]] std::optional<RelayRecord> status(const Hash32& tx_hash) const;
    [[nodiscard]] nlohmann::json info();

    /// Tops up secondaries below funding.min_balance. Returns zero dispatched
    /// when the master is busy or there are no secondaries.
    FundingResult funding_tick();

    enclave::InitReceipt initialize(const crypto::PublicKey& owner_pubkey, bool reset = false);
    std::vector<Address> add_secondary(uint32_t count);

    /// One tracker pass over submitted records. Returns the number settled.
    std::size_t poll_once();

    [[nodiscard]] const RelayConfig& config() const noexcept { return m_config; }

private:
    RelayOutcome relay_with(const std::function<enclave::SignedMetaTx(const Address&)>& sign);
    std::vector<Address> candidate_accounts(const enclave::EnclaveInfo& info);
    /// Submits a signed record. On failure the record is settled and the error rethrown.
    void submit(RelayRecord& record);
    /// Runs the confirm or abort ECall owed by a terminal record, once.
    bool resolve(RelayRecord& record);
    void void_later(const Address& signer, uint64_t nonce);
    void kick();
    void tracker_loop();
    void funding_loop();
    void log(const std::string& line);

    RelayConfig m_config;
    enclave::EnclaveClient& m_enclave;
    NodeRpc& m_node;
    RelayStore& m_store;
    LogSink m_log;

    std::mutex m_select_mutex;
    std::size_t m_cursor = 0;
    std::mutex m_resolve_mutex;
    std::mutex m_funding_mutex;

    std::mutex m_wake_mutex;
    std::condition_variable m_wake;
    bool m_kicked = false;
    bool m_stopping = false;
    std::thread m_tracker;
    std::thread m_funder;
};
}  // namespace metarelay::relay
