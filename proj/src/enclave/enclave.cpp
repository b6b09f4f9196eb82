// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include "marshal.hpp"
#include <metarelay/crypto/symmetric.hpp>
#include <metarelay/enclave/boundary.hpp>
#include <metarelay/enclave/client.hpp>
#include <algorithm>
#include <map>
#include <sstream>

namespace metarelay::enclave
{
using namespace marshal;

/// Everything in this class is "inside" the boundary. The host only ever sees
/// the CBOR bytes going in and out of ecall() and the OCall payloads.
class TrustedEnclave
{
public:
    TrustedEnclave(EnclaveConfig config)
      : m_ocalls{std::move(config.ocalls)},
        m_entropy{std::move(config.entropy)},
        m_measurement{config.measurement},
        m_sealing_key{derive_sealing_key(config.platform_secret, config.measurement)}
    {
        secure_wipe(config.platform_secret);
    }

    bytes ecall(bytes_view request)
    {
        std::lock_guard lock{m_mutex};
        json response;
        try
        {
            response = dispatch(marshal::decode(request));
        }
        catch (const Error& e)
        {
            response = json{{"error", static_cast<int>(e.code())}, {"message", e.what()}};
        }
        catch (const std::exception& e)
        {
            response = json{{"error", static_cast<int>(Errc::invalid_argument)},
                {"message", e.what()}};
        }
        return marshal::encode(response);
    }

private:
    json dispatch(const json& req)
    {
        const auto fn = at(req, "fn").get<std::string>();
        if (fn == "initialize")
            return initialize(req);
        if (fn == "sign")
            return sign(req);
        if (fn == "confirm")
            return confirm(req);
        if (fn == "abort")
            return abort(req);
        if (fn == "add_secondary")
            return add_secondary(req);
        if (fn == "fund_plan")
            return fund_plan(req);
        if (fn == "decrypt_request")
            return json{{"request", to_json(decrypt(envelope_in(req)))}};
        if (fn == "load_sealed")
            return load_sealed(req);
        if (fn == "info")
            return info();
        throw Error{Errc::invalid_argument, "unknown ecall '" + fn + "'"};
    }

    Keystore& keystore()
    {
        if (!m_keystore)
            throw Error{Errc::uninitialized, "enclave keystore is not initialized"};
        return *m_keystore;
    }

    void log(const std::string& line)
    {
        if (m_ocalls.log)
            m_ocalls.log(line);
    }

    /// Seals and persists `next`, then makes it current. A failed persist leaves
    /// the current keystore untouched.
    void commit(Keystore next)
    {
        next.version = m_last_seen_version + 1;
        const auto blob = seal(next, m_sealing_key, m_measurement, m_entropy).to_bytes();
        if (m_ocalls.persist_sealed)
            m_ocalls.persist_sealed(blob, next.version);
        m_last_seen_version = next.version;
        m_keystore = std::move(next);
    }

    AccountRecord& account_in(Keystore& ks, const Address& address)
    {
        auto* a = ks.find(address);
        if (a == nullptr)
            throw Error{Errc::unknown_account, "no such enclave account " + address.hex()};
        return *a;
    }

    json initialize(const json& req)
    {
        const bool reset = req.value("reset", false);
        if (m_keystore && !reset)
            throw Error{Errc::already_initialized, "enclave already holds a keystore"};

        crypto::PublicKey owner;
        try
        {
            owner = crypto::PublicKey::from_bytes(get_bin(req, "owner_pubkey"));
        }
        catch (const Error&)
        {
            throw Error{Errc::invalid_owner_key, "owner public key is not a secp256k1 point"};
        }
        auto policy = policy_from(at(req, "policy"));
        policy.validate();
        const auto chain_id = get_u64(req, "chain_id");

        auto master_key = crypto::PrivateKey::generate(m_entropy);
        const auto master = tx::derive_address(master_key);
        Keystore ks{chain_id, 0, std::move(policy), crypto::PrivateKey::generate(m_entropy), {}};
        ks.accounts.push_back(AccountRecord{master, master_key, 0, Role::master, {}});

        const auto backup =
            crypto::envelope_seal(owner, master_key.view(), backup_context, m_entropy);
        const auto channel_pub = crypto::derive_public_key(ks.channel_key);
        commit(std::move(ks));
        log("initialize master=" + master.hex());

        return json{{"master_address", bin(master.bytes)},
            {"backup_ephemeral", bin(backup.ephemeral_pubkey.uncompressed())},
            {"backup_ciphertext", bin(backup.ciphertext)}, {"measurement", bin(m_measurement.bytes)},
            {"channel_pubkey", bin(channel_pub.uncompressed())}};
    }

    crypto::Envelope envelope_in(const json& req)
    {
        try
        {
            return crypto::Envelope{
                crypto::PublicKey::from_bytes(get_bin(req, "ephemeral")), get_bin(req, "ciphertext")};
        }
        catch (const Error& e)
        {
            if (e.code() == Errc::invalid_public_key)
                throw Error{Errc::authentication_failure, "envelope ephemeral key is invalid"};
            throw;
        }
    }

    MetaTxRequest decrypt(const crypto::Envelope& env)
    {
        const auto& ks = keystore();
        auto plaintext = crypto::envelope_open(ks.channel_key, env, request_context);
        MetaTxRequest req;
        try
        {
            req = meta_tx_from_json(json::parse(plaintext.begin(), plaintext.end()));
        }
        catch (const json::exception& e)
        {
            throw Error{Errc::parse_error, std::string{"envelope payload: "} + e.what()};
        }
        return req;
    }

    json sign(const json& req)
    {
        auto next = keystore();
        const auto request = req.contains("envelope") ? decrypt(envelope_in(at(req, "envelope"))) :
                                                        meta_tx_from_json(at(req, "request"));
        auto& account = req.contains("account") ? account_in(next, get_address(req, "account")) :
                                                  next.accounts.front();
        if (!account.in_flight.empty())
            throw Error{Errc::busy, "account " + account.address.hex() + " has a transaction in flight"};
        if (!request.to)
            throw Error{Errc::invalid_argument, "request has no recipient"};
        if (next.policy.allowed_recipients && !next.policy.allowed_recipients->contains(*request.to))
            throw Error{Errc::policy_violation, "recipient not allowed by policy"};

        tx::UnsignedTransaction t;
        t.data = outer_calldata(request);
        const auto gas = resolve_gas(request, next.policy, t.data);
        t.nonce = account.next_nonce;
        t.gas_price = gas.gas_price;
        t.gas_limit = gas.gas_limit;
        t.to = *request.to;
        t.value = request.value;

        const auto signed_tx = sign_with(account, t, next.chain_id);
        account.in_flight.push_back(PendingTx{signed_tx.tx_hash, t.nonce});
        commit(std::move(next));

        std::ostringstream line;
        line << "sign account=" << signed_tx.signer.hex() << " nonce=" << t.nonce
             << " tx=" << signed_tx.tx_hash.hex();
        log(line.str());
        return signed_json(signed_tx);
    }

    static SignedMetaTx sign_with(const AccountRecord& account, const tx::UnsignedTransaction& t,
        uint64_t chain_id)
    {
        const auto sig = tx::sign_digest(account.key, tx::signing_preimage(t, chain_id));
        SignedMetaTx out;
        out.raw = tx::encode_signed(t, sig, chain_id);
        out.tx_hash = tx::transaction_hash(out.raw);
        out.signer = account.address;
        out.nonce = t.nonce;
        return out;
    }

    static json signed_json(const SignedMetaTx& s)
    {
        return json{{"raw", bin(s.raw)}, {"tx_hash", bin(s.tx_hash.bytes)},
            {"signer", bin(s.signer.bytes)}, {"nonce", s.nonce}};
    }

    /// The hash must name the oldest pending tx.
    static void check_head(const AccountRecord& account, const Hash32& hash)
    {
        if (account.in_flight.empty())
            throw Error{Errc::no_pending, "no transaction in flight for " + account.address.hex()};
        if (account.in_flight.front().tx_hash != hash)
            throw Error{Errc::hash_mismatch, "tx hash does not match the pending transaction"};
    }

    json confirm(const json& req)
    {
        auto next = keystore();
        auto& account = account_in(next, get_address(req, "account"));
        const auto hash = get_hash(req, "tx_hash");
        check_head(account, hash);
        const auto nonce = account.in_flight.front().nonce;
        account.next_nonce = nonce + 1;
        account.in_flight.erase(account.in_flight.begin());
        const auto address = account.address;
        commit(std::move(next));
        log("confirm account=" + address.hex() + " nonce=" + std::to_string(nonce));
        return json{{"nonce", nonce}};
    }

    json abort(const json& req)
    {
        auto next = keystore();
        auto& account = account_in(next, get_address(req, "account"));
        const auto hash = get_hash(req, "tx_hash");
        if (account.in_flight.empty())
            throw Error{Errc::no_pending, "no transaction in flight for " + account.address.hex()};
        const auto it = std::find_if(account.in_flight.begin(), account.in_flight.end(),
            [&](const PendingTx& p) { return p.tx_hash == hash; });
        if (it == account.in_flight.end())
            throw Error{Errc::hash_mismatch, "tx hash does not match any pending transaction"};
        // Later batch entries depend on this nonce, so they are void as well.
        account.in_flight.erase(it, account.in_flight.end());
        const auto address = account.address;
        commit(std::move(next));
        log("abort account=" + address.hex());
        return json::object();
    }

    json add_secondary(const json& req)
    {
        auto next = keystore();
        const auto count = get_u64(req, "count");
        if (count == 0 || count > 1024)
            throw Error{Errc::invalid_argument, "secondary count must be in [1, 1024]"};
        json added = json::array();
        while (added.size() < count)
        {
            auto key = crypto::PrivateKey::generate(m_entropy);
            const auto address = tx::derive_address(key);
            if (next.find(address) != nullptr)
                continue;
            next.accounts.push_back(AccountRecord{address, std::move(key), 0, Role::secondary, {}});
            added.push_back(bin(address.bytes));
        }
        commit(std::move(next));
        log("add_secondary count=" + std::to_string(count));
        return json{{"addresses", std::move(added)}};
    }

    json fund_plan(const json& req)
    {
        auto next = keystore();
        auto& master = next.accounts.front();
        if (!master.in_flight.empty())
            throw Error{Errc::busy, "master has transactions in flight"};
        const auto min_balance = get_u256(req, "min_balance");
        const auto top_up = get_u256(req, "top_up");
        if (top_up == 0)
            throw Error{Errc::invalid_argument, "top-up amount must be positive"};

        std::map<Address, uint256> balances;
        for (const auto& entry : at(req, "balances"))
            balances[get_address(entry, "address")] = get_u256(entry, "balance");

        json out = json::array();
        std::vector<PendingTx> batch;
        for (std::size_t i = 1; i < next.accounts.size(); ++i)
        {
            const auto& secondary = next.accounts[i];
            const auto it = balances.find(secondary.address);
            const uint256 balance = it == balances.end() ? uint256{0} : it->second;
            if (balance >= min_balance)
                continue;

            tx::UnsignedTransaction t;
            t.nonce = master.next_nonce + batch.size();
            t.gas_price = next.policy.default_gas_price;
            t.gas_limit = tx::min_gas_limit;
            t.to = secondary.address;
            t.value = top_up;
            const auto s = sign_with(master, t, next.chain_id);
            batch.push_back(PendingTx{s.tx_hash, t.nonce});
            out.push_back(signed_json(s));
        }
        if (batch.empty())
            return json{{"transactions", std::move(out)}};

        master.in_flight = std::move(batch);
        commit(std::move(next));
        log("fund_plan transactions=" + std::to_string(out.size()));
        return json{{"transactions", std::move(out)}};
    }

    json load_sealed(const json& req)
    {
        const auto blob = get_bin(req, "blob");
        const auto min_version = std::max(get_u64(req, "min_version"), m_last_seen_version);
        auto ks = unseal(blob, m_sealing_key, m_measurement, min_version);
        m_last_seen_version = ks.version;
        m_keystore = std::move(ks);
        log("load_sealed version=" + std::to_string(m_last_seen_version));
        return json::object();
    }

    json info()
    {
        json j{{"initialized", m_keystore.has_value()}, {"measurement", bin(m_measurement.bytes)},
            {"version", m_last_seen_version}};
        if (!m_keystore)
            return j;
        const auto& ks = *m_keystore;
        j["channel_pubkey"] = bin(crypto::derive_public_key(ks.channel_key).uncompressed());
        j["chain_id"] = ks.chain_id;
        j["policy"] = policy_to(ks.policy);
        json accounts = json::array();
        for (const auto& a : ks.accounts)
        {
            json pending = json::array();
            for (const auto& p : a.in_flight)
                pending.push_back(json{{"tx_hash", bin(p.tx_hash.bytes)}, {"nonce", p.nonce}});
            accounts.push_back(json{{"address", bin(a.address.bytes)},
                {"role", static_cast<int>(a.role)}, {"next_nonce", a.next_nonce},
                {"in_flight", std::move(pending)}});
        }
        j["accounts"] = std::move(accounts);
        return j;
    }

    std::mutex m_mutex;
    Ocalls m_ocalls;
    crypto::EntropySource m_entropy;
    Hash32 m_measurement;
    SealingKey m_sealing_key;
    std::optional<Keystore> m_keystore;
    uint64_t m_last_seen_version = 0;
};

EnclaveBoundary::EnclaveBoundary(EnclaveConfig config)
{
    // OCall payloads are boundary crossings too.
    auto host = std::move(config.ocalls);
    config.ocalls.persist_sealed = [this, persist = std::move(host.persist_sealed)](
                                       bytes_view blob, uint64_t version) {
        record(Crossing::ocall, blob);
        if (persist)
            persist(blob, version);
    };
    config.ocalls.log = [this, log = std::move(host.log)](std::string_view line) {
        record(Crossing::ocall, crypto::as_bytes(line));
        if (log)
            log(line);
    };
    m_enclave = std::make_unique<TrustedEnclave>(std::move(config));
}

EnclaveBoundary::~EnclaveBoundary() = default;

bytes EnclaveBoundary::ecall(bytes_view request)
{
    record(Crossing::ecall_request, request);
    auto response = m_enclave->ecall(request);
    record(Crossing::ecall_response, response);
    return response;
}

void EnclaveBoundary::set_transcript(TranscriptSink sink)
{
    std::lock_guard lock{m_transcript_mutex};
    m_transcript = std::move(sink);
}

void EnclaveBoundary::record(Crossing kind, bytes_view data)
{
    std::lock_guard lock{m_transcript_mutex};
    if (m_transcript)
        m_transcript(kind, data);
}
}  // namespace metarelay::enclave
