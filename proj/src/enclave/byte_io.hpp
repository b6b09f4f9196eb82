// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/common.hpp>

namespace metarelay::enclave::detail
{
class ByteWriter
{
public:
    void u8(uint8_t v) { m_out.push_back(v); }
    void u32(uint32_t v)
    {
        for (int s = 24; s >= 0; s -= 8)
            m_out.push_back(static_cast<uint8_t>(v >> s));
    }
    void u64(uint64_t v)
    {
        for (int s = 56; s >= 0; s -= 8)
            m_out.push_back(static_cast<uint8_t>(v >> s));
    }
    void u256(const uint256& v)
    {
        const auto b = to_be32(v);
        raw(b);
    }
    void raw(bytes_view b) { m_out.insert(m_out.end(), b.begin(), b.end()); }

    bytes& buffer() noexcept { return m_out; }

private:
    bytes m_out;
};

class ByteReader
{
public:
    explicit ByteReader(bytes_view in) : m_in{in} {}

    uint8_t u8() { return take(1)[0]; }
    uint32_t u32()
    {
        uint32_t v = 0;
        for (const auto b : take(4))
            v = (v << 8) | b;
        return v;
    }
    uint64_t u64()
    {
        uint64_t v = 0;
        for (const auto b : take(8))
            v = (v << 8) | b;
        return v;
    }
    uint256 u256() { return from_be(take(32)); }
    bytes_view take(std::size_t n)
    {
        if (m_in.size() - m_pos < n)
            throw Error{Errc::format_error, "unexpected end of data"};
        const auto out = m_in.subspan(m_pos, n);
        m_pos += n;
        return out;
    }
    [[nodiscard]] bool done() const noexcept { return m_pos == m_in.size(); }
    [[nodiscard]] std::size_t remaining() const noexcept { return m_in.size() - m_pos; }

private:
    bytes_view m_in;
    std::size_t m_pos = 0;
};
}  // namespace metarelay::enclave::detail
