// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/common.hpp>
#include <nlohmann/json.hpp>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>

namespace metarelay::relay
{
enum class RecordState
{
    signed_tx,
    submitted,
    confirmed,
    failed,
    aborted,
};

std::string_view to_string(RecordState s) noexcept;
RecordState record_state_from_string(std::string_view s);

/// signed -> submitted -> {confirmed | failed}; aborted from signed or submitted.
bool can_transition(RecordState from, RecordState to) noexcept;
bool is_terminal(RecordState s) noexcept;

enum class RecordKind
{
    relay,
    funding,
};

struct RelayRecord
{
    Hash32 tx_hash;
    Address signer;
    uint64_t nonce = 0;
    RecordKind kind = RecordKind::relay;
    RecordState state = RecordState::signed_tx;
    bytes raw;
    std::optional<nlohmann::json> receipt;
    std::string error;
    /// True once the matching confirm or abort ECall has completed, or was made
    /// unnecessary by an abort of an earlier nonce.
    bool resolved = false;
    /// Unix milliseconds of each state entered.
    std::map<RecordState, int64_t> timestamps;

    [[nodiscard]] bool settled() const noexcept { return is_terminal(state) && resolved; }
};

nlohmann::json to_json(const RelayRecord& r);
RelayRecord record_from_json(const nlohmann::json& j);

int64_t unix_millis();

/// Relay records backed by an append-only, CRC-framed JSON-lines log.
/// Concurrent readers, serialized writers.
class RelayStore
{
public:
    /// In-memory only.
    RelayStore() = default;
    /// Replays `wal` if present, then compacts it. Throws Error{Errc::format_error}
    /// on corruption other than a torn final line.
    explicit RelayStore(std::filesystem::path wal);
    ~RelayStore();
    RelayStore(const RelayStore&) = delete;
    RelayStore& operator=(const RelayStore&) = delete;

    /// Inserts or updates a record and makes it durable before returning.
    /// A record may replace an existing one with the same hash only if the
    /// existing one is settled; otherwise the state change must be a legal
    /// transition. Throws Error{Errc::invalid_argument}.
    void put(RelayRecord record);

    [[nodiscard]] std::optional<RelayRecord> get(const Hash32& tx_hash) const;
    [[nodiscard]] std::vector<RelayRecord> all() const;
    /// Records whose nonce is not yet settled, ordered by (signer, nonce).
    [[nodiscard]] std::vector<RelayRecord> unsettled() const;

private:
    void append(const RelayRecord& r);

    mutable std::shared_mutex m_mutex;
    std::map<Hash32, RelayRecord> m_records;
    std::filesystem::path m_path;
    std::FILE* m_file = nullptr;
};
}  // namespace metarelay::relay
