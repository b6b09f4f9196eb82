// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/common.hpp>
#include <filesystem>
#include <mutex>
#include <optional>

namespace metarelay::enclave
{
/// Untrusted persistence for the sealed keystore: the blob plus a separate
/// monotonic version counter. Both files are replaced atomically.
class SealedFileStore
{
public:
    explicit SealedFileStore(std::filesystem::path dir);

    void persist(bytes_view blob, uint64_t version);

    /// The blob, if one has been persisted.
    std::optional<bytes> load_blob() const;

    /// Highest version ever persisted; 0 if none.
    uint64_t load_version() const;

    const std::filesystem::path& blob_path() const noexcept { return m_blob; }
    const std::filesystem::path& counter_path() const noexcept { return m_counter; }

private:
    mutable std::mutex m_mutex;
    std::filesystem::path m_blob;
    std::filesystem::path m_counter;
};

/// Writes `data` to `path` via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, bytes_view data);
std::optional<bytes> read_file(const std::filesystem::path& path);
}  // namespace metarelay::enclave
