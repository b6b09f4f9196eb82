// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include <metarelay/enclave/sealed_store.hpp>
#include <metarelay/owner/owner.hpp>
#include <metarelay/relay/http.hpp>
#include <metarelay/tx/transaction.hpp>
#include <httplib.h>
#include <iomanip>
#include <ostream>

namespace metarelay::owner
{
using nlohmann::json;

namespace
{
constexpr std::string_view key_file_context = "metarelay/owner-key/v1";

Errc errc_from_string(std::string_view name)
{
    for (int i = 0; i <= static_cast<int>(Errc::io_error); ++i)
        if (to_string(static_cast<Errc>(i)) == name)
            return static_cast<Errc>(i);
    return Errc::io_error;
}

json parse_reply(const httplib::Result& res, const std::string& endpoint, const std::string& path)
{
    if (!res)
        throw Error{Errc::io_error, "service unreachable at " + endpoint + ": " + httplib::to_string(res.error())};
    auto body = json::parse(res->body, nullptr, false);
    if (body.is_discarded())
        throw Error{Errc::io_error, path + ": HTTP " + std::to_string(res->status) + " with a non-JSON body"};
    if (res->status != 200)
    {
        const auto code = body.is_object() ? errc_from_string(body.value("error", "")) : Errc::io_error;
        const auto message = body.is_object() ? body.value("message", "") : std::string{};
        throw Error{code, path + ": HTTP " + std::to_string(res->status) + ": " + message};
    }
    return body;
}

bytes key_aad(const crypto::PublicKey& pub)
{
    bytes aad(key_file_context.begin(), key_file_context.end());
    const auto p = pub.uncompressed();
    aad.insert(aad.end(), p.begin(), p.end());
    return aad;
}

int report(std::ostream& err, const Error& e)
{
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    switch (e.code())
    {
    case Errc::measurement_mismatch:
    case Errc::authentication_failure:
    case Errc::hash_mismatch:
        return exit_verification;
    case Errc::invalid_argument:
    case Errc::not_found:
        return exit_usage;
    default:
        return exit_service;
    }
}

template <typename F>
int guarded(std::ostream& err, F&& f)
{
    try
    {
        return f();
    }
    catch (const Error& e)
    {
        return report(err, e);
    }
    catch (const json::exception& e)
    {
        return report(err, Error{Errc::parse_error, e.what()});
    }
}

const std::string& require_passphrase(const Options& opt)
{
    if (!opt.passphrase)
        throw Error{Errc::invalid_argument, "no passphrase given"};
    return *opt.passphrase;
}

std::string wei_text(const json& v)
{
    if (v.is_null())
        return "?";
    return from_quantity(v.get<std::string>()).str();
}
}  // namespace

void save_owner_key(const std::filesystem::path& path, const crypto::PrivateKey& key, std::string_view passphrase,
    const crypto::EntropySource& entropy, const crypto::ScryptParams& kdf)
{
    if (std::filesystem::exists(path))
        throw Error{Errc::invalid_argument, "owner key file " + path.string() + " already exists"};
    bytes salt(16);
    bytes nonce(crypto::aead_nonce_size);
    entropy(salt);
    entropy(nonce);
    const auto pub = crypto::derive_public_key(key);
    auto wrap = crypto::scrypt(passphrase, salt, kdf, crypto::aead_key_size);
    bytes scalar(key.view().begin(), key.view().end());
    const auto ct = crypto::aead_seal(wrap, nonce, key_aad(pub), scalar);
    secure_wipe(wrap);
    secure_wipe(scalar);
    const json j{{"version", 1}, {"publicKey", to_hex(pub.uncompressed())},
        {"kdf", {{"name", "scrypt"}, {"n", kdf.n}, {"r", kdf.r}, {"p", kdf.p}, {"salt", to_hex(salt)}}},
        {"cipher", "aes-256-gcm"}, {"nonce", to_hex(nonce)}, {"ciphertext", to_hex(ct)}};
    const auto text = j.dump(2) + "\n";
    enclave::write_file_atomic(path, crypto::as_bytes(text));
    std::filesystem::permissions(path, std::filesystem::perms::owner_read | std::filesystem::perms::owner_write);
}

crypto::PrivateKey load_owner_key(const std::filesystem::path& path, std::string_view passphrase)
{
    const auto raw = enclave::read_file(path);
    if (!raw)
        throw Error{Errc::not_found, "owner key file " + path.string() + " not found"};
    const auto j = json::parse(raw->begin(), raw->end(), nullptr, false);
    if (j.is_discarded() || j.value("version", 0) != 1 || j.at("kdf").value("name", "") != "scrypt")
        throw Error{Errc::format_error, "unrecognized owner key file"};
    const auto& k = j.at("kdf");
    const crypto::ScryptParams params{k.at("n").get<uint64_t>(), k.at("r").get<uint64_t>(), k.at("p").get<uint64_t>()};
    const auto pub = crypto::PublicKey::from_bytes(from_hex(j.at("publicKey").get<std::string>()));
    auto wrap = crypto::scrypt(passphrase, from_hex(k.at("salt").get<std::string>()), params, crypto::aead_key_size);
    bytes scalar;
    try
    {
        scalar = crypto::aead_open(
            wrap, from_hex(j.at("nonce").get<std::string>()), key_aad(pub), from_hex(j.at("ciphertext").get<std::string>()));
    }
    catch (const Error&)
    {
        secure_wipe(wrap);
        throw Error{Errc::authentication_failure, "wrong passphrase or damaged owner key file"};
    }
    secure_wipe(wrap);
    auto key = crypto::PrivateKey::from_bytes(scalar);
    secure_wipe(scalar);
    if (crypto::derive_public_key(key) != pub)
        throw Error{Errc::authentication_failure, "owner key does not match its public key"};
    return key;
}

json to_json(const Backup& b)
{
    return json{{"version", 1}, {"ownerPubkey", to_hex(b.owner_pubkey.uncompressed())},
        {"receipt", relay::to_json(b.receipt)}};
}

Backup backup_from_json(const json& j)
{
    if (j.value("version", 0) != 1)
        throw Error{Errc::format_error, "unrecognized backup file"};
    return Backup{relay::init_receipt_from_json(j.at("receipt")),
        crypto::PublicKey::from_bytes(from_hex(j.at("ownerPubkey").get<std::string>()))};
}

crypto::PrivateKey open_backup(const Backup& b, const crypto::PrivateKey& owner_key)
{
    if (crypto::derive_public_key(owner_key) != b.owner_pubkey)
        throw Error{Errc::authentication_failure, "backup was made for a different owner key"};
    bytes scalar;
    try
    {
        scalar = crypto::envelope_open(owner_key, b.receipt.encrypted_master_key, enclave::backup_context);
    }
    catch (const Error&)
    {
        throw Error{Errc::authentication_failure, "master key backup does not decrypt"};
    }
    auto key = crypto::PrivateKey::from_bytes(scalar);
    secure_wipe(scalar);
    if (tx::derive_address(key) != b.receipt.master_address)
        throw Error{Errc::hash_mismatch, "address-mismatch: backup key does not derive the recorded master address"};
    return key;
}

ServiceClient::ServiceClient(std::string endpoint, std::chrono::milliseconds timeout)
  : m_endpoint{std::move(endpoint)}, m_timeout{timeout}
{}

json ServiceClient::get(const std::string& path) const
{
    httplib::Client c{m_endpoint};
    c.set_connection_timeout(m_timeout);
    c.set_read_timeout(m_timeout);
    return parse_reply(c.Get(path), m_endpoint, path);
}

json ServiceClient::post(const std::string& path, const json& body) const
{
    httplib::Client c{m_endpoint};
    c.set_connection_timeout(m_timeout);
    c.set_read_timeout(m_timeout);
    return parse_reply(c.Post(path, body.dump(), "application/json"), m_endpoint, path);
}

int cmd_init(const Options& opt, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto expected = opt.measurement.value_or(enclave::build_measurement());
        const auto& passphrase = require_passphrase(opt);

        const ServiceClient service{opt.endpoint, opt.timeout};
        const auto info = service.get("/info");
        if (Hash32::from_hex(info.at("measurement").get<std::string>()) != expected)
            throw Error{Errc::measurement_mismatch, "service reports measurement " +
                                                        info.at("measurement").get<std::string>()};
        if (info.at("initialized").get<bool>())
            throw Error{Errc::already_initialized, "enclave is already initialized"};
        if (std::filesystem::exists(opt.backup_file))
            throw Error{Errc::invalid_argument, "backup file " + opt.backup_file.string() + " already exists"};

        const bool have_key = std::filesystem::exists(opt.owner_key_file);
        const auto owner_key =
            have_key ? load_owner_key(opt.owner_key_file, passphrase) : crypto::PrivateKey::generate(opt.entropy);
        const auto owner_pub = crypto::derive_public_key(owner_key);

        const auto reply = service.post("/admin/init", json{{"ownerPubkey", to_hex(owner_pub.uncompressed())}});
        const Backup backup{relay::init_receipt_from_json(reply), owner_pub};
        if (backup.receipt.measurement != expected)
            throw Error{Errc::measurement_mismatch, "init receipt carries measurement " +
                                                        backup.receipt.measurement.hex()};
        open_backup(backup, owner_key);

        if (!have_key)
            save_owner_key(opt.owner_key_file, owner_key, passphrase, opt.entropy, opt.kdf);
        const auto text = to_json(backup).dump(2) + "\n";
        enclave::write_file_atomic(opt.backup_file, crypto::as_bytes(text));

        if (opt.json)
            out << json{{"masterAddress", backup.receipt.master_address.hex()},
                       {"measurement", expected.hex()}, {"backupFile", opt.backup_file.string()}}
                       .dump()
                << '\n';
        else
            out << "master " << backup.receipt.master_address.hex() << '\n'
                << "measurement " << expected.hex() << '\n'
                << "backup " << opt.backup_file.string() << '\n';
        return exit_ok;
    });
}

int cmd_export_key(const Options& opt, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto& passphrase = require_passphrase(opt);
        const auto raw = enclave::read_file(opt.backup_file);
        if (!raw)
            throw Error{Errc::not_found, "backup file " + opt.backup_file.string() + " not found"};
        const auto parsed = json::parse(raw->begin(), raw->end(), nullptr, false);
        if (parsed.is_discarded())
            throw Error{Errc::format_error, "backup file is not JSON"};
        const auto backup = backup_from_json(parsed);
        const auto owner_key = load_owner_key(opt.owner_key_file, passphrase);
        const auto master = open_backup(backup, owner_key);
        bytes scalar(master.view().begin(), master.view().end());
        if (opt.json)
            out << json{{"address", backup.receipt.master_address.hex()}, {"privateKey", to_hex(scalar)}}.dump()
                << '\n';
        else
            out << to_hex(scalar) << '\n';
        secure_wipe(scalar);
        return exit_ok;
    });
}

int cmd_status(const Options& opt, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const ServiceClient service{opt.endpoint, opt.timeout};
        auto info = service.get("/info");
        json pending = json::array();
        if (info.contains("accounts"))
        {
            for (const auto& a : info["accounts"])
                for (const auto& p : a["pending"])
                {
                    json row{{"txHash", p["txHash"]}, {"account", a["address"]}, {"nonce", p["nonce"]}};
                    try
                    {
                        row["state"] = service.get("/status/" + p["txHash"].get<std::string>())["state"];
                    }
                    catch (const Error&)
                    {
                        row["state"] = "unknown";
                    }
                    pending.push_back(std::move(row));
                }
        }
        if (opt.json)
        {
            info["pendingRelays"] = pending;
            out << info.dump() << '\n';
            return exit_ok;
        }
        out << "initialized " << (info["initialized"].get<bool>() ? "yes" : "no") << '\n'
            << "measurement " << info["measurement"].get<std::string>() << '\n';
        if (!info["initialized"].get<bool>())
            return exit_ok;
        out << std::left << std::setw(44) << "ACCOUNT" << std::setw(11) << "ROLE" << std::setw(8) << "NONCE"
            << std::setw(9) << "PENDING" << "BALANCE" << '\n';
        for (const auto& a : info["accounts"])
            out << std::left << std::setw(44) << a["address"].get<std::string>() << std::setw(11)
                << a["role"].get<std::string>() << std::setw(8) << a["nextNonce"].get<uint64_t>() << std::setw(9)
                << a["pending"].size() << wei_text(a["balance"]) << '\n';
        for (const auto& p : pending)
            out << "pending " << p["txHash"].get<std::string>() << ' ' << p["account"].get<std::string>()
                << " nonce=" << p["nonce"].get<uint64_t>() << " state=" << p["state"].get<std::string>() << '\n';
        if (info.contains("nodeError"))
            err << "warning: node: " << info["nodeError"].get<std::string>() << '\n';
        return exit_ok;
    });
}

int cmd_secondary_add(const Options& opt, uint32_t count, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (count == 0)
            throw Error{Errc::invalid_argument, "count must be positive"};
        const ServiceClient service{opt.endpoint, opt.timeout};
        const auto reply = service.post("/admin/secondary", json{{"count", count}});
        if (opt.json)
            out << reply.dump() << '\n';
        else
            for (const auto& a : reply.at("addresses"))
                out << a.get<std::string>() << '\n';
        return exit_ok;
    });
}

int cmd_secondary_fund(const Options& opt, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const ServiceClient service{opt.endpoint, opt.timeout};
        const auto reply = service.post("/admin/fund", json::object());
        if (opt.json)
        {
            out << reply.dump() << '\n';
            return exit_ok;
        }
        out << reply.at("dispatched").get<uint64_t>() << " dispatched\n";
        for (const auto& t : reply.at("transactions"))
            out << "top-up " << t.at("to").get<std::string>() << ' ' << wei_text(t.at("value")) << ' '
                << t.at("txHash").get<std::string>() << '\n';
        return exit_ok;
    });
}
}  // namespace metarelay::owner
