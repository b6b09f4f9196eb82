// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/crypto/symmetric.hpp>
#include <metarelay/enclave/client.hpp>
#include <nlohmann/json.hpp>
#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace metarelay::owner
{
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_verification = 2;
inline constexpr int exit_service = 3;

/// Writes the owner key encrypted under a passphrase-derived key (scrypt,
/// AES-256-GCM). Refuses to overwrite an existing file.
void save_owner_key(const std::filesystem::path& path, const crypto::PrivateKey& key,
    std::string_view passphrase, const crypto::EntropySource& entropy, const crypto::ScryptParams& kdf = {});

/// Throws Error{Errc::authentication_failure} on a wrong passphrase or a
/// modified file.
crypto::PrivateKey load_owner_key(const std::filesystem::path& path, std::string_view passphrase);

/// Owner-side copy of the init receipt. Holds the master key only in
/// encrypted form.
struct Backup
{
    enclave::InitReceipt receipt;
    crypto::PublicKey owner_pubkey;
};

nlohmann::json to_json(const Backup& b);
Backup backup_from_json(const nlohmann::json& j);

/// Decrypts the master key and checks it against the recorded address.
/// Throws Error{Errc::authentication_failure} when the backup does not open
/// and Error{Errc::hash_mismatch} when the derived address differs.
crypto::PrivateKey open_backup(const Backup& b, const crypto::PrivateKey& owner_key);

/// Minimal client for the relay's HTTP API.
class ServiceClient
{
public:
    explicit ServiceClient(std::string endpoint, std::chrono::milliseconds timeout = std::chrono::seconds{10});

    /// Error replies are rethrown as Error with the service's error code;
    /// transport failures throw Error{Errc::io_error}.
    nlohmann::json get(const std::string& path) const;
    nlohmann::json post(const std::string& path, const nlohmann::json& body) const;

private:
    std::string m_endpoint;
    std::chrono::milliseconds m_timeout;
};

struct Options
{
    std::string endpoint = "http://127.0.0.1:8080";
    /// Defaults to the measurement of this build.
    std::optional<Hash32> measurement;
    std::filesystem::path backup_file = "metarelay-backup.json";
    std::filesystem::path owner_key_file = "metarelay-owner.key";
    std::optional<std::string> passphrase;
    bool json = false;
    crypto::ScryptParams kdf;
    crypto::EntropySource entropy = crypto::system_entropy();
    std::chrono::milliseconds timeout = std::chrono::seconds{10};
};

/// Commands return a process exit code and write results to `out` and
/// diagnostics to `err`.
int cmd_init(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_export_key(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_status(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_secondary_add(const Options& opt, uint32_t count, std::ostream& out, std::ostream& err);
int cmd_secondary_fund(const Options& opt, std::ostream& out, std::ostream& err);
}  // namespace metarelay::owner
