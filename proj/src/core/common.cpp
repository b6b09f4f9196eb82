// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include <metarelay/common.hpp>
#include <openssl/crypto.h>
#include <algorithm>

namespace metarelay
{
std::string_view to_string(Errc code) noexcept
{
    switch (code)
    {
    case Errc::malformed_encoding:
        return "malformed-encoding";
    case Errc::invalid_scalar:
        return "invalid-scalar";
    case Errc::invalid_public_key:
        return "invalid-public-key";
    case Errc::unrecoverable_point:
        return "unrecoverable-point";
    case Errc::invalid_v:
        return "invalid-v";
    case Errc::invalid_argument:
        return "invalid-argument";
    case Errc::already_initialized:
        return "already-initialized";
    case Errc::invalid_owner_key:
        return "invalid-owner-key";
    case Errc::uninitialized:
        return "uninitialized";
    case Errc::busy:
        return "busy";
    case Errc::policy_violation:
        return "policy-violation";
    case Errc::unknown_account:
        return "unknown-account";
    case Errc::no_pending:
        return "no-pending";
    case Errc::hash_mismatch:
        return "hash-mismatch";
    case Errc::authentication_failure:
        return "authentication-failure";
    case Errc::rollback:
        return "rollback";
    case Errc::measurement_mismatch:
        return "measurement-mismatch";
    case Errc::empty_secret:
        return "empty-secret";
    case Errc::parse_error:
        return "parse-error";
    case Errc::format_error:
        return "format-error";
    case Errc::node_unreachable:
        return "node-unreachable";
    case Errc::node_rejected:
        return "node-rejected";
    case Errc::not_found:
        return "not-found";
    case Errc::io_error:
        return "io-error";
    }
    return "unknown";
}

namespace
{
int hex_digit(char c) noexcept
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

template <typename T>
T fixed_from_bytes(bytes_view b)
{
    T out;
    if (b.size() != T::size)
        throw Error{Errc::parse_error,
            "expected " + std::to_string(T::size) + " bytes, got " + std::to_string(b.size())};
    std::copy(b.begin(), b.end(), out.bytes.begin());
    return out;
}
}  // namespace

std::string to_hex(bytes_view data)
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 + data.size() * 2);
    out += "0x";
    for (const auto b : data)
    {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

bytes from_hex(std::string_view text)
{
    if (text.starts_with("0x") || text.starts_with("0X"))
        text.remove_prefix(2);
    if (text.size() % 2 != 0)
        throw Error{Errc::parse_error, "odd-length hex string"};
    bytes out(text.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        const int hi = hex_digit(text[2 * i]);
        const int lo = hex_digit(text[2 * i + 1]);
        if (hi < 0 || lo < 0)
            throw Error{Errc::parse_error, "invalid hex digit"};
        out[i] = static_cast<uint8_t>((hi << 4) | lo);
    }
    return out;
}

Address Address::from_hex(std::string_view text)
{
    return from_bytes(metarelay::from_hex(text));
}

Address Address::from_bytes(bytes_view b)
{
    return fixed_from_bytes<Address>(b);
}

Hash32 Hash32::from_hex(std::string_view text)
{
    return from_bytes(metarelay::from_hex(text));
}

Hash32 Hash32::from_bytes(bytes_view b)
{
    return fixed_from_bytes<Hash32>(b);
}

bytes to_be_minimal(const uint256& v)
{
    bytes out;
    if (v == 0)
        return out;
    boost::multiprecision::export_bits(v, std::back_inserter(out), 8, true);
    return out;
}

bytes to_be_minimal(uint64_t v)
{
    bytes out;
    for (int shift = 56; shift >= 0; shift -= 8)
    {
        const auto b = static_cast<uint8_t>(v >> shift);
        if (!out.empty() || b != 0)
            out.push_back(b);
    }
    return out;
}

std::array<uint8_t, 32> to_be32(const uint256& v)
{
    std::array<uint8_t, 32> out{};
    const auto min = to_be_minimal(v);
    std::copy(min.begin(), min.end(), out.end() - static_cast<std::ptrdiff_t>(min.size()));
    return out;
}

uint256 from_be(bytes_view b)
{
    if (b.size() > 32)
        throw Error{Errc::malformed_encoding, "integer wider than 256 bits"};
    uint256 v;
    if (b.empty())
        return v;
    boost::multiprecision::import_bits(v, b.begin(), b.end(), 8, true);
    return v;
}

std::string to_quantity(const uint256& v)
{
    if (v == 0)
        return "0x0";
    std::string hex = to_hex(to_be_minimal(v));
    if (hex[2] == '0')
        hex.erase(2, 1);
    return hex;
}

uint256 from_quantity(std::string_view text)
{
    if (!text.starts_with("0x") && !text.starts_with("0X"))
        throw Error{Errc::parse_error, "quantity must be 0x-prefixed"};
    text.remove_prefix(2);
    if (text.empty() || text.size() > 64)
        throw Error{Errc::parse_error, "bad quantity length"};
    uint256 v;
    for (const char c : text)
    {
        const int d = hex_digit(c);
        if (d < 0)
            throw Error{Errc::parse_error, "invalid hex digit in quantity"};
        v = (v << 4) | d;
    }
    return v;
}

void secure_wipe(std::span<uint8_t> buf) noexcept
{
    if (!buf.empty())
        OPENSSL_cleanse(buf.data(), buf.size());
}
}  // namespace metarelay
