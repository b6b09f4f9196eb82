// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include <metarelay/relay/store.hpp>
#include <boost/crc.hpp>
#include <algorithm>
#include <fstream>
#include <mutex>
#include <unistd.h>

namespace metarelay::relay
{
using nlohmann::json;

namespace
{
constexpr RecordState all_states[] = {RecordState::signed_tx, RecordState::submitted,
    RecordState::confirmed, RecordState::failed, RecordState::aborted};

uint32_t crc32(std::string_view s)
{
    boost::crc_32_type crc;
    crc.process_bytes(s.data(), s.size());
    return crc.checksum();
}

std::string frame(const RelayRecord& r)
{
    const auto body = to_json(r).dump();
    char prefix[10];
    std::snprintf(prefix, sizeof prefix, "%08x ", crc32(body));
    return prefix + body + "\n";
}

std::optional<RelayRecord> unframe(const std::string& line)
{
    if (line.size() < 10 || line[8] != ' ')
        return std::nullopt;
    const auto body = std::string_view{line}.substr(9);
    uint32_t expected = 0;
    try
    {
        expected = static_cast<uint32_t>(std::stoul(line.substr(0, 8), nullptr, 16));
    }
    catch (const std::exception&)
    {
        return std::nullopt;
    }
    if (crc32(body) != expected)
        return std::nullopt;
    try
    {
        return record_from_json(json::parse(body));
    }
    catch (const std::exception&)
    {
        return std::nullopt;
    }
}

void sync_file(std::FILE* f)
{
    if (std::fflush(f) != 0 || ::fsync(::fileno(f)) != 0)
        throw Error{Errc::io_error, "cannot flush relay log"};
}
}  // namespace

std::string_view to_string(RecordState s) noexcept
{
    switch (s)
    {
    case RecordState::signed_tx:
        return "signed";
    case RecordState::submitted:
        return "submitted";
    case RecordState::confirmed:
        return "confirmed";
    case RecordState::failed:
        return "failed";
    case RecordState::aborted:
        return "aborted";
    }
    return "unknown";
}

RecordState record_state_from_string(std::string_view s)
{
    for (const auto state : all_states)
        if (to_string(state) == s)
            return state;
    throw Error{Errc::parse_error, "unknown record state '" + std::string{s} + "'"};
}

bool can_transition(RecordState from, RecordState to) noexcept
{
    switch (from)
    {
    case RecordState::signed_tx:
        return to == RecordState::submitted || to == RecordState::aborted;
    case RecordState::submitted:
        return to == RecordState::confirmed || to == RecordState::failed || to == RecordState::aborted;
    default:
        return false;
    }
}

bool is_terminal(RecordState s) noexcept
{
    return s == RecordState::confirmed || s == RecordState::failed || s == RecordState::aborted;
}

int64_t unix_millis()
{
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

json to_json(const RelayRecord& r)
{
    json ts = json::object();
    for (const auto& [state, t] : r.timestamps)
        ts[std::string{to_string(state)}] = t;
    json j{{"txHash", r.tx_hash.hex()}, {"signer", r.signer.hex()}, {"nonce", r.nonce},
        {"kind", r.kind == RecordKind::relay ? "relay" : "funding"}, {"state", to_string(r.state)},
        {"raw", to_hex(r.raw)}, {"resolved", r.resolved}, {"timestamps", std::move(ts)}};
    j["receipt"] = r.receipt ? *r.receipt : json(nullptr);
    if (!r.error.empty())
        j["error"] = r.error;
    return j;
}

RelayRecord record_from_json(const json& j)
{
    RelayRecord r;
    r.tx_hash = Hash32::from_hex(j.at("txHash").get<std::string>());
    r.signer = Address::from_hex(j.at("signer").get<std::string>());
    r.nonce = j.at("nonce").get<uint64_t>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind != "relay" && kind != "funding")
        throw Error{Errc::parse_error, "unknown record kind"};
    r.kind = kind == "relay" ? RecordKind::relay : RecordKind::funding;
    r.state = record_state_from_string(j.at("state").get<std::string>());
    r.raw = from_hex(j.at("raw").get<std::string>());
    if (j.contains("receipt") && !j["receipt"].is_null())
        r.receipt = j["receipt"];
    r.error = j.value("error", "");
    r.resolved = j.at("resolved").get<bool>();
    for (const auto& [name, t] : j.at("timestamps").items())
        r.timestamps[record_state_from_string(name)] = t.get<int64_t>();
    return r;
}

RelayStore::RelayStore(std::filesystem::path wal) : m_path{std::move(wal)}
{
    if (m_path.has_parent_path())
        std::filesystem::create_directories(m_path.parent_path());
    {
        std::ifstream in{m_path};
        std::vector<std::string> lines;
        for (std::string line; std::getline(in, line);)
            lines.push_back(std::move(line));
        for (std::size_t i = 0; i < lines.size(); ++i)
        {
            auto r = unframe(lines[i]);
            if (!r)
            {
                if (i + 1 == lines.size())
                    break;  // torn tail
                throw Error{Errc::format_error,
                    "corrupt relay log entry at line " + std::to_string(i + 1) + " of " + m_path.string()};
            }
            m_records[r->tx_hash] = std::move(*r);
        }
    }

    auto tmp = m_path;
    tmp += ".tmp";
    {
        std::FILE* f = std::fopen(tmp.c_str(), "wb");
        if (f == nullptr)
            throw Error{Errc::io_error, "cannot write " + tmp.string()};
        for (const auto& [hash, r] : m_records)
        {
            const auto line = frame(r);
            std::fwrite(line.data(), 1, line.size(), f);
        }
        sync_file(f);
        std::fclose(f);
    }
    std::filesystem::rename(tmp, m_path);
    m_file = std::fopen(m_path.c_str(), "ab");
    if (m_file == nullptr)
        throw Error{Errc::io_error, "cannot open " + m_path.string()};
}

RelayStore::~RelayStore()
{
    if (m_file != nullptr)
        std::fclose(m_file);
}

void RelayStore::append(const RelayRecord& r)
{
    if (m_file == nullptr)
        return;
    const auto line = frame(r);
    if (std::fwrite(line.data(), 1, line.size(), m_file) != line.size())
        throw Error{Errc::io_error, "short write to relay log"};
    sync_file(m_file);
}

void RelayStore::put(RelayRecord record)
{
    std::unique_lock lock{m_mutex};
    const auto it = m_records.find(record.tx_hash);
    if (it != m_records.end() && !it->second.settled())
    {
        const auto& old = it->second;
        if (old.state != record.state && !can_transition(old.state, record.state))
            throw Error{Errc::invalid_argument, "illegal record transition " +
                                                    std::string{to_string(old.state)} + " -> " +
                                                    std::string{to_string(record.state)}};
        if (old.resolved && !record.resolved)
            throw Error{Errc::invalid_argument, "record resolution cannot be undone"};
        for (const auto& [state, t] : old.timestamps)
            record.timestamps.try_emplace(state, t);
    }
    else if (record.state != RecordState::signed_tx)
        throw Error{Errc::invalid_argument, "new records must start in the signed state"};
    record.timestamps.try_emplace(record.state, unix_millis());
    append(record);
    m_records[record.tx_hash] = std::move(record);
}

std::optional<RelayRecord> RelayStore::get(const Hash32& tx_hash) const
{
    std::shared_lock lock{m_mutex};
    const auto it = m_records.find(tx_hash);
    if (it == m_records.end())
        return std::nullopt;
    return it->second;
}

std::vector<RelayRecord> RelayStore::all() const
{
    std::shared_lock lock{m_mutex};
    std::vector<RelayRecord> out;
    for (const auto& [hash, r] : m_records)
        out.push_back(r);
    return out;
}

std::vector<RelayRecord> RelayStore::unsettled() const
{
    std::shared_lock lock{m_mutex};
    std::vector<RelayRecord> out;
    for (const auto& [hash, r] : m_records)
        if (!r.settled())
            out.push_back(r);
    std::sort(out.begin(), out.end(), [](const RelayRecord& a, const RelayRecord& b) {
        return std::tie(a.signer, a.nonce) < std::tie(b.signer, b.nonce);
    });
    return out;
}
}  // namespace metarelay::relay
