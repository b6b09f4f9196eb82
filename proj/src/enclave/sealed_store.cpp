// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include <metarelay/enclave/sealed_store.hpp>
#include <fstream>
#include <iterator>
#include <string>

namespace metarelay::enclave
{
void write_file_atomic(const std::filesystem::path& path, bytes_view data)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out{tmp, std::ios::binary | std::ios::trunc};
        if (!out)
            throw Error{Errc::io_error, "cannot open " + tmp.string()};
        out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
        out.flush();
        if (!out)
            throw Error{Errc::io_error, "short write to " + tmp.string()};
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw Error{Errc::io_error, "rename " + tmp.string() + ": " + ec.message()};
}

std::optional<bytes> read_file(const std::filesystem::path& path)
{
    std::ifstream in{path, std::ios::binary};
    if (!in)
        return std::nullopt;
    return bytes{std::istreambuf_iterator<char>{in}, std::istreambuf_iterator<char>{}};
}

SealedFileStore::SealedFileStore(std::filesystem::path dir)
  : m_blob{dir / "keystore.sealed"}, m_counter{dir / "keystore.version"}
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw Error{Errc::io_error, "cannot create " + dir.string() + ": " + ec.message()};
}

void SealedFileStore::persist(bytes_view blob, uint64_t version)
{
    std::lock_guard lock{m_mutex};
    write_file_atomic(m_blob, blob);
    const auto text = std::to_string(version);
    write_file_atomic(m_counter, bytes{text.begin(), text.end()});
}

std::optional<bytes> SealedFileStore::load_blob() const
{
    std::lock_guard lock{m_mutex};
    return read_file(m_blob);
}

uint64_t SealedFileStore::load_version() const
{
    std::lock_guard lock{m_mutex};
    const auto data = read_file(m_counter);
    if (!data || data->empty())
        return 0;
    try
    {
        return std::stoull(std::string{data->begin(), data->end()});
    }
    catch (const std::exception&)
    {
        throw Error{Errc::format_error, "corrupt version counter " + m_counter.string()};
    }
}
}  // namespace metarelay::enclave
