// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include <metarelay/relay/service.hpp>
#include <algorithm>
#include <set>

namespace metarelay::relay
{
using nlohmann::json;
using enclave::Role;

RelayService::RelayService(
    RelayConfig config, enclave::EnclaveClient& enclave, NodeRpc& node, RelayStore& store, LogSink log)
  : m_config{std::move(config)}, m_enclave{enclave}, m_node{node}, m_store{store}, m_log{std::move(log)}
{
    m_config.validate();
}

RelayService::~RelayService()
{
    stop();
}

void RelayService::log(const std::string& line)
{
    if (m_log)
        m_log(line);
}

void RelayService::start()
{
    {
        std::lock_guard lock{m_wake_mutex};
        m_stopping = false;
    }
    if (!m_tracker.joinable())
        m_tracker = std::thread{[this] { tracker_loop(); }};
    if (m_config.funding.period.count() > 0 && !m_funder.joinable())
        m_funder = std::thread{[this] { funding_loop(); }};
}

void RelayService::stop()
{
    {
        std::lock_guard lock{m_wake_mutex};
        m_stopping = true;
    }
    m_wake.notify_all();
    if (m_tracker.joinable())
        m_tracker.join();
    if (m_funder.joinable())
        m_funder.join();
}

void RelayService::kick()
{
    {
        std::lock_guard lock{m_wake_mutex};
        m_kicked = true;
    }
    m_wake.notify_all();
}

void RelayService::tracker_loop()
{
    while (true)
    {
        {
            std::unique_lock lock{m_wake_mutex};
            m_wake.wait_for(lock, m_config.poll_interval, [this] { return m_stopping || m_kicked; });
            if (m_stopping)
                return;
            m_kicked = false;
        }
        try
        {
            poll_once();
        }
        catch (const std::exception& e)
        {
            log(std::string{"tracker: "} + e.what());
        }
    }
}

void RelayService::funding_loop()
{
    while (true)
    {
        {
            std::unique_lock lock{m_wake_mutex};
            if (m_wake.wait_for(lock, m_config.funding.period, [this] { return m_stopping; }))
                return;
        }
        try
        {
            const auto r = funding_tick();
            if (r.dispatched > 0)
                log("funding: dispatched " + std::to_string(r.dispatched));
        }
        catch (const std::exception& e)
        {
            log(std::string{"funding: "} + e.what());
        }
    }
}

std::vector<Address> RelayService::candidate_accounts(const enclave::EnclaveInfo& info)
{
    std::vector<Address> idle;
    for (const auto& a : info.accounts)
        if (a.role == Role::secondary && a.in_flight.empty())
            idle.push_back(a.address);
    {
        std::lock_guard lock{m_select_mutex};
        if (!idle.empty())
            std::rotate(idle.begin(), idle.begin() + static_cast<std::ptrdiff_t>(m_cursor++ % idle.size()),
                idle.end());
    }
    if (!info.accounts.empty() && info.accounts[0].in_flight.empty())
        idle.push_back(info.accounts[0].address);
    return idle;
}

RelayOutcome RelayService::relay(MetaTxRequest request)
{
    if (request.forward && !request.to)
        request.to = m_config.forwarder;
    const auto info = m_enclave.info();
    if (!info.initialized)
        throw Error{Errc::uninitialized, "enclave is not initialized"};
    if (!request.to)
        throw Error{Errc::invalid_argument, "request has no recipient"};
    if (info.policy.allowed_recipients && !info.policy.allowed_recipients->contains(*request.to))
        throw Error{Errc::policy_violation, "recipient not allowed by policy"};
    enclave::resolve_gas(request, info.policy, outer_calldata(request));
    return relay_with([&](const Address& account) { return m_enclave.sign_meta_tx(request, account); });
}

RelayOutcome RelayService::relay(const crypto::Envelope& envelope)
{
    return relay_with([&](const Address& account) { return m_enclave.sign_meta_tx(envelope, account); });
}

RelayOutcome RelayService::relay_with(const std::function<enclave::SignedMetaTx(const Address&)>& sign)
{
    const auto info = m_enclave.info();
    if (!info.initialized)
        throw Error{Errc::uninitialized, "enclave is not initialized"};

    std::optional<enclave::SignedMetaTx> signed_tx;
    for (const auto& account : candidate_accounts(info))
    {
        try
        {
            signed_tx = sign(account);
            break;
        }
        catch (const Error& e)
        {
            if (e.code() != Errc::busy)
                throw;
        }
    }
    if (!signed_tx)
        throw Error{Errc::busy, "every relay account has a transaction in flight"};

    RelayRecord record;
    record.tx_hash = signed_tx->tx_hash;
    record.signer = signed_tx->signer;
    record.nonce = signed_tx->nonce;
    record.kind = RecordKind::relay;
    record.raw = signed_tx->raw;
    m_store.put(record);
    submit(record);
    log("relay: " + record.tx_hash.hex() + " signer=" + record.signer.hex() +
        " nonce=" + std::to_string(record.nonce));
    return RelayOutcome{record.tx_hash, record.signer, record.nonce, record.state};
}

void RelayService::submit(RelayRecord& record)
{
    try
    {
        const auto hash = m_node.send_raw_transaction(record.raw);
        if (hash != record.tx_hash)
            log("submit: node reported hash " + hash.hex() + " for " + record.tx_hash.hex());
    }
    catch (const Error& e)
    {
        const bool rejected = e.code() == Errc::node_rejected;
        if (rejected)
        {
            record.state = RecordState::submitted;
            m_store.put(record);
            record.state = RecordState::failed;
        }
        else
            record.state = RecordState::aborted;
        record.error = e.what();
        m_store.put(record);
        resolve(record);
        log("submit: " + record.tx_hash.hex() + " " + std::string{to_string(record.state)} + ": " + e.what());
        if (rejected)
            throw;
        throw Error{Errc::node_unreachable, e.what()};
    }
    record.state = RecordState::submitted;
    m_store.put(record);
    kick();
}

bool RelayService::resolve(RelayRecord& record)
{
    std::lock_guard lock{m_resolve_mutex};
    if (const auto current = m_store.get(record.tx_hash); current && current->settled())
    {
        record = *current;
        return true;
    }
    const bool confirm = record.state == RecordState::confirmed;
    try
    {
        if (confirm)
            m_enclave.confirm(record.signer, record.tx_hash);
        else
            m_enclave.abort(record.signer, record.tx_hash);
    }
    catch (const Error& e)
    {
        if (e.code() != Errc::no_pending && e.code() != Errc::hash_mismatch)
        {
            log("resolve: " + record.tx_hash.hex() + ": " + e.what());
            return false;
        }
        // The ECall may have completed before a crash; check the enclave's view.
        bool applied = false;
        for (const auto& a : m_enclave.info().accounts)
        {
            if (a.address != record.signer)
                continue;
            const bool pending = std::any_of(a.in_flight.begin(), a.in_flight.end(),
                [&](const enclave::PendingTx& p) { return p.tx_hash == record.tx_hash; });
            applied = confirm ? a.next_nonce > record.nonce && !pending : !pending;
        }
        if (!applied)
        {
            log("resolve: " + record.tx_hash.hex() + " is not the pending head: " + e.what());
            return false;
        }
    }
    record.resolved = true;
    m_store.put(record);
    if (!confirm)
        void_later(record.signer, record.nonce);
    return true;
}

void RelayService::void_later(const Address& signer, uint64_t nonce)
{
    for (auto r : m_store.unsettled())
    {
        if (r.signer != signer || r.nonce <= nonce)
            continue;
        if (!is_terminal(r.state))
            r.state = RecordState::aborted;
        r.error = "voided by abort of nonce " + std::to_string(nonce);
        r.resolved = true;
        m_store.put(r);
    }
}

std::size_t RelayService::poll_once()
{
    std::size_t settled = 0;
    std::set<Address> blocked;
    for (const auto& snapshot : m_store.unsettled())
    {
        auto current = m_store.get(snapshot.tx_hash);
        if (!current || current->settled())
            continue;
        auto r = std::move(*current);
        if (blocked.contains(r.signer))
            continue;
        if (is_terminal(r.state))
        {
            if (resolve(r))
                ++settled;
            else
                blocked.insert(r.signer);
            continue;
        }
        if (r.state != RecordState::submitted)
            continue;

        std::optional<NodeReceipt> receipt;
        try
        {
            receipt = m_node.receipt(r.tx_hash);
        }
        catch (const Error& e)
        {
            log("tracker: receipt " + r.tx_hash.hex() + ": " + e.what());
        }
        if (receipt)
        {
            r.receipt = receipt->raw;
            r.state = RecordState::confirmed;
            m_store.put(r);
            if (resolve(r))
                ++settled;
            else
                blocked.insert(r.signer);
            continue;
        }
        const auto age = unix_millis() - r.timestamps.at(RecordState::submitted);
        if (age >= m_config.confirmation_timeout.count())
        {
            r.state = RecordState::failed;
            r.error = "no receipt within " + std::to_string(m_config.confirmation_timeout.count()) + " ms";
            m_store.put(r);
            log("tracker: " + r.tx_hash.hex() + " timed out");
            if (resolve(r))
                ++settled;
        }
        blocked.insert(r.signer);
    }
    return settled;
}

void RelayService::recover()
{
    const auto info = m_enclave.info();
    if (!info.initialized)
        return;

    for (const auto& snapshot : m_store.unsettled())
    {
        auto current = m_store.get(snapshot.tx_hash);
        if (!current || current->settled())
            continue;
        auto r = std::move(*current);
        if (is_terminal(r.state))
        {
            resolve(r);
            continue;
        }
        if (r.state != RecordState::signed_tx)
            continue;
        // Crashed between logging and submission; the node may or may not have it.
        std::optional<NodeReceipt> receipt;
        try
        {
            receipt = m_node.receipt(r.tx_hash);
        }
        catch (const Error&)
        {
        }
        if (receipt)
        {
            r.state = RecordState::submitted;
            m_store.put(r);
            continue;
        }
        try
        {
            submit(r);
        }
        catch (const Error& e)
        {
            log("recover: resubmission of " + r.tx_hash.hex() + " failed: " + e.what());
        }
    }

    // Pending transactions the log never saw were never submitted.
    for (const auto& a : m_enclave.info().accounts)
    {
        for (const auto& p : a.in_flight)
        {
            if (m_store.get(p.tx_hash))
                continue;
            log("recover: aborting unlogged " + p.tx_hash.hex());
            m_enclave.abort(a.address, p.tx_hash);
            void_later(a.address, p.nonce);
            break;
        }
    }
}

std::optional<RelayRecord> RelayService::status(const Hash32& tx_hash) const
{
    return m_store.get(tx_hash);
}

json RelayService::info()
{
    const auto info = m_enclave.info();
    json j{{"initialized", info.initialized}, {"measurement", info.measurement.hex()},
        {"keystoreVersion", info.keystore_version}};
    if (!info.initialized)
        return j;
    j["channelPubkey"] = to_hex(info.channel_pubkey->uncompressed());
    j["chainId"] = info.chain_id;
    j["forwarder"] = m_config.forwarder.hex();
    json policy{{"maxGasLimit", info.policy.max_gas_limit},
        {"maxGasPrice", to_quantity(info.policy.max_gas_price)},
        {"defaultGasPrice", to_quantity(info.policy.default_gas_price)}};
    if (info.policy.allowed_recipients)
    {
        json allowed = json::array();
        for (const auto& a : *info.policy.allowed_recipients)
            allowed.push_back(a.hex());
        policy["allowedRecipients"] = std::move(allowed);
    }
    j["policy"] = std::move(policy);

    json accounts = json::array();
    json secondaries = json::array();
    for (const auto& a : info.accounts)
    {
        json pending = json::array();
        for (const auto& p : a.in_flight)
            pending.push_back(json{{"txHash", p.tx_hash.hex()}, {"nonce", p.nonce}});
        json entry{{"address", a.address.hex()}, {"role", enclave::to_string(a.role)},
            {"nextNonce", a.next_nonce}, {"pending", std::move(pending)}};
        try
        {
            entry["balance"] = to_quantity(m_node.balance(a.address));
        }
        catch (const Error& e)
        {
            entry["balance"] = nullptr;
            j["nodeError"] = e.what();
        }
        if (a.role == Role::secondary)
            secondaries.push_back(a.address.hex());
        accounts.push_back(std::move(entry));
    }
    j["master"] = info.accounts.at(0).address.hex();
    j["secondaries"] = std::move(secondaries);
    j["accounts"] = std::move(accounts);
    return j;
}

FundingResult RelayService::funding_tick()
{
    std::lock_guard funding_lock{m_funding_mutex};
    FundingResult result;
    const auto info = m_enclave.info();
    if (!info.initialized)
        throw Error{Errc::uninitialized, "enclave is not initialized"};
    if (!info.accounts.at(0).in_flight.empty())
        return result;

    std::map<Address, uint256> balances;
    for (const auto& a : info.accounts)
        if (a.role == Role::secondary)
            balances[a.address] = m_node.balance(a.address);
    if (balances.empty())
        return result;

    std::vector<enclave::SignedMetaTx> plan;
    try
    {
        plan = m_enclave.fund_plan(balances, m_config.funding.min_balance, m_config.funding.top_up);
    }
    catch (const Error& e)
    {
        if (e.code() == Errc::busy)
            return result;
        throw;
    }

    std::vector<RelayRecord> records;
    for (const auto& t : plan)
    {
        RelayRecord r;
        r.tx_hash = t.tx_hash;
        r.signer = t.signer;
        r.nonce = t.nonce;
        r.kind = RecordKind::funding;
        r.raw = t.raw;
        m_store.put(r);
        records.push_back(std::move(r));
        const auto decoded = tx::decode_signed(t.raw);
        result.transactions.push_back(FundingTx{t.tx_hash, decoded.tx.to, decoded.tx.value});
    }
    for (auto& r : records)
    {
        try
        {
            submit(r);
            ++result.dispatched;
        }
        catch (const Error&)
        {
            // submit() aborted this nonce, which voids the rest of the batch.
            break;
        }
    }
    return result;
}

enclave::InitReceipt RelayService::initialize(const crypto::PublicKey& owner_pubkey, bool reset)
{
    auto receipt = m_enclave.initialize(owner_pubkey, m_config.policy, m_config.chain_id, reset);
    log("initialized master " + receipt.master_address.hex());
    return receipt;
}

std::vector<Address> RelayService::add_secondary(uint32_t count)
{
    return m_enclave.add_secondary(count);
}
}  // namespace metarelay::relay
