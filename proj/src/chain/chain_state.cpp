// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include <metarelay/chain/chain_state.hpp>
#include <metarelay/tx/rlp.hpp>

namespace metarelay::chain
{
std::string_view to_string(RejectReason r) noexcept
{
    switch (r)
    {
    case RejectReason::malformed:
        return "malformed";
    case RejectReason::wrong_chain:
        return "wrong-chain";
    case RejectReason::bad_nonce:
        return "bad-nonce";
    case RejectReason::insufficient_funds:
        return "insufficient-funds";
    case RejectReason::gas_limit_exceeded:
        return "gas-limit-exceeded";
    }
    return "unknown";
}

namespace
{
uint512 max_cost(const tx::UnsignedTransaction& t)
{
    return uint512{t.gas_limit} * uint512{t.gas_price} + uint512{t.value};
}
}  // namespace

ChainState::ChainState(ChainConfig config) : m_config{std::move(config)}
{
    if (m_config.seal_mode == SealMode::interval)
        m_sealer = std::thread{[this] { sealer_loop(); }};
}

ChainState::~ChainState()
{
    {
        std::lock_guard lock{m_mutex};
        m_stopping = true;
    }
    m_sealer_cv.notify_all();
    if (m_sealer.joinable())
        m_sealer.join();
}

uint256 ChainState::faucet(const Address& address, const uint256& amount)
{
    if (amount == 0)
        throw Error{Errc::invalid_argument, "faucet amount must be positive"};
    std::lock_guard lock{m_mutex};
    auto& account = m_accounts[address];
    if (uint512{account.balance} + amount > uint512{std::numeric_limits<uint256>::max()} ||
        uint512{m_faucet_total} + amount > uint512{std::numeric_limits<uint256>::max()})
        throw Error{Errc::invalid_argument, "faucet amount overflows 256 bits"};
    account.balance += amount;
    m_faucet_total += amount;
    return account.balance;
}

uint256 ChainState::balance(const Address& address) const
{
    std::lock_guard lock{m_mutex};
    const auto it = m_accounts.find(address);
    return it == m_accounts.end() ? uint256{0} : it->second.balance;
}

uint64_t ChainState::nonce(const Address& address) const
{
    std::lock_guard lock{m_mutex};
    const auto it = m_accounts.find(address);
    return it == m_accounts.end() ? 0 : it->second.nonce;
}

uint64_t ChainState::forwarder_nonce(const Address& user) const
{
    std::lock_guard lock{m_mutex};
    const auto it = m_forwarder_nonces.find(user);
    return it == m_forwarder_nonces.end() ? 0 : it->second;
}

ChainState::Pending ChainState::validate(bytes_view raw) const
{
    Pending p;
    try
    {
        p.tx = tx::decode_signed(raw);
    }
    catch (const Error& e)
    {
        throw Rejected{RejectReason::malformed, std::string{"malformed transaction: "} + e.what()};
    }
    if (p.tx.chain_id != m_config.chain_id)
        throw Rejected{RejectReason::wrong_chain,
            "chain id " + std::to_string(p.tx.chain_id) + " != " + std::to_string(m_config.chain_id)};
    try
    {
        p.from = tx::recover_signer(tx::signing_preimage(p.tx.tx, p.tx.chain_id), p.tx.sig);
    }
    catch (const Error& e)
    {
        throw Rejected{RejectReason::malformed, std::string{"invalid signature: "} + e.what()};
    }
    p.hash = tx::transaction_hash(raw);

    AccountState account;
    if (const auto it = m_accounts.find(p.from); it != m_accounts.end())
        account = it->second;
    uint64_t expected = account.nonce;
    uint512 reserved = 0;
    for (const auto& q : m_queue)
    {
        if (q.from != p.from)
            continue;
        ++expected;
        reserved += max_cost(q.tx.tx);
    }
    if (p.tx.tx.nonce != expected)
        throw Rejected{RejectReason::bad_nonce, "nonce " + std::to_string(p.tx.tx.nonce) +
                                                    " but account " + p.from.hex() + " expects " +
                                                    std::to_string(expected)};

    const auto gas_used = tx::intrinsic_gas(p.tx.tx.data);
    if (gas_used > p.tx.tx.gas_limit)
        throw Rejected{RejectReason::gas_limit_exceeded,
            "gas used " + std::to_string(gas_used) + " exceeds gas limit " +
                std::to_string(p.tx.tx.gas_limit)};

    if (uint512{account.balance} < reserved + max_cost(p.tx.tx))
        throw Rejected{RejectReason::insufficient_funds,
            "insufficient funds for gas * price + value on " + p.from.hex()};
    return p;
}

Hash32 ChainState::send_raw_transaction(bytes_view raw)
{
    std::lock_guard lock{m_mutex};
    Pending p;
    try
    {
        p = validate(raw);
    }
    catch (const Rejected&)
    {
        ++m_stats.rejected;
        throw;
    }
    ++m_stats.accepted;
    const auto hash = p.hash;
    if (m_drop_budget > 0)
    {
        --m_drop_budget;
        ++m_stats.dropped;
        return hash;
    }
    if (m_config.seal_mode == SealMode::instant)
        apply(p, ++m_block_number);
    else
        m_queue.push_back(std::move(p));
    return hash;
}

void ChainState::apply(const Pending& p, uint64_t block)
{
    const auto& t = p.tx.tx;
    const auto gas_used = tx::intrinsic_gas(t.data);
    const auto fee = tx::compute_fee(gas_used, t.gas_price);

    auto& sender = m_accounts[p.from];
    sender.balance -= fee;
    ++sender.nonce;
    m_fees_total += fee;

    Receipt r;
    r.tx_hash = p.hash;
    r.gas_used = gas_used;
    r.gas_price = t.gas_price;
    r.fee_paid = fee;
    r.block_number = block;
    r.from = p.from;
    r.to = t.to;

    if (t.to != m_config.forwarder)
    {
        sender.balance -= t.value;
        m_accounts[t.to].balance += t.value;
        m_call_log[t.to].push_back(CallRecord{p.from, p.from, t.data, t.value});
        r.success = true;
        m_receipts[p.hash] = r;
        return;
    }

    // Trusted forwarder: verify the inner request, then call the target with
    // the user appended to the calldata.
    try
    {
        const auto req = tx::decode_forward_call(t.data);
        const auto digest = tx::forward_digest(req, m_config.chain_id, m_config.forwarder);
        const auto nit = m_forwarder_nonces.find(req.from);
        const uint64_t user_nonce = nit == m_forwarder_nonces.end() ? 0 : nit->second;
        if (tx::recover_signer(digest, req.user_sig) == req.from && req.user_nonce == user_nonce &&
            req.value == t.value)
        {
            m_forwarder_nonces[req.from] = user_nonce + 1;
            sender.balance -= t.value;
            m_accounts[req.to].balance += t.value;
            const auto inner = tx::append_sender(req.data, req.from);
            const auto effective = Address::from_bytes(bytes_view{inner}.last(Address::size));
            m_call_log[t.to].push_back(CallRecord{p.from, p.from, t.data, t.value});
            m_call_log[req.to].push_back(CallRecord{m_config.forwarder, effective, inner, t.value});
            r.success = true;
        }
    }
    catch (const Error&)
    {
    }
    m_receipts[p.hash] = r;
}

std::optional<Receipt> ChainState::receipt(const Hash32& tx_hash) const
{
    std::lock_guard lock{m_mutex};
    const auto it = m_receipts.find(tx_hash);
    if (it == m_receipts.end())
        return std::nullopt;
    return it->second;
}

std::vector<CallRecord> ChainState::call_log(const Address& target) const
{
    std::lock_guard lock{m_mutex};
    const auto it = m_call_log.find(target);
    return it == m_call_log.end() ? std::vector<CallRecord>{} : it->second;
}

void ChainState::drop_next(uint32_t count)
{
    std::lock_guard lock{m_mutex};
    m_drop_budget += count;
}

std::size_t ChainState::seal_block()
{
    std::lock_guard lock{m_mutex};
    if (m_queue.empty())
        return 0;
    const auto block = ++m_block_number;
    const auto n = m_queue.size();
    for (const auto& p : m_queue)
        apply(p, block);
    m_queue.clear();
    return n;
}

void ChainState::sealer_loop()
{
    std::unique_lock lock{m_mutex};
    while (!m_stopping)
    {
        m_sealer_cv.wait_for(lock, m_config.seal_interval, [this] { return m_stopping; });
        if (m_stopping)
            break;
        lock.unlock();
        seal_block();
        lock.lock();
    }
}

Audit ChainState::audit() const
{
    std::lock_guard lock{m_mutex};
    Audit a;
    a.faucet_total = m_faucet_total;
    a.fees_total = m_fees_total;
    for (const auto& [address, account] : m_accounts)
        a.balance_total += account.balance;
    return a;
}

Stats ChainState::stats() const
{
    std::lock_guard lock{m_mutex};
    auto s = m_stats;
    s.block_number = m_block_number;
    s.pending = m_queue.size();
    return s;
}

Hash32 ChainState::state_digest() const
{
    using tx::rlp::Item;
    using tx::rlp::uint_item;
    auto addr = [](const Address& a) { return Item{bytes{a.bytes.begin(), a.bytes.end()}}; };

    std::lock_guard lock{m_mutex};
    Item::List accounts;
    for (const auto& [address, a] : m_accounts)
        accounts.push_back(Item::List{addr(address), uint_item(a.balance), uint_item(a.nonce)});
    Item::List receipts;
    for (const auto& [hash, r] : m_receipts)
        receipts.push_back(Item::List{Item{bytes{hash.bytes.begin(), hash.bytes.end()}},
            uint_item(uint64_t{r.success}), uint_item(r.gas_used), uint_item(r.fee_paid),
            uint_item(r.block_number), addr(r.from), addr(r.to)});
    Item::List logs;
    for (const auto& [target, entries] : m_call_log)
    {
        Item::List list;
        for (const auto& c : entries)
            list.push_back(Item::List{addr(c.sender), addr(c.effective_sender), Item{c.calldata},
                uint_item(c.value)});
        logs.push_back(Item::List{addr(target), Item{std::move(list)}});
    }
    Item::List fwd;
    for (const auto& [user, n] : m_forwarder_nonces)
        fwd.push_back(Item::List{addr(user), uint_item(n)});
    const Item root{Item::List{Item{std::move(accounts)}, Item{std::move(receipts)},
        Item{std::move(logs)}, Item{std::move(fwd)}, uint_item(m_block_number)}};
    return tx::keccak256(tx::rlp::encode(root));
}
}  // namespace metarelay::chain
