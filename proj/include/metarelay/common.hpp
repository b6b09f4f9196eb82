// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace metarelay
{
using bytes = std::vector<uint8_t>;
using bytes_view = std::span<const uint8_t>;

/// Wei amounts and other 256-bit quantities.
using uint256 = boost::multiprecision::uint256_t;
using uint512 = boost::multiprecision::uint512_t;

/// Error categories surfaced across module boundaries.
enum class Errc
{
    malformed_encoding,
    invalid_scalar,
    invalid_public_key,
    unrecoverable_point,
    invalid_v,
    invalid_argument,
    already_initialized,
    invalid_owner_key,
    uninitialized,
    busy,
    policy_violation,
    unknown_account,
    no_pending,
    hash_mismatch,
    authentication_failure,
    rollback,
    measurement_mismatch,
    empty_secret,
    parse_error,
    format_error,
    node_unreachable,
    node_rejected,
    not_found,
    io_error,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error
{
public:
    Error(Errc code, const std::string& what) : std::runtime_error{what}, m_code{code} {}
    explicit Error(Errc code) : Error{code, std::string{to_string(code)}} {}

    [[nodiscard]] Errc code() const noexcept { return m_code; }

private:
    Errc m_code;
};

/// Fixed-size byte string with value semantics.
template <std::size_t N>
struct FixedBytes
{
    static constexpr std::size_t size = N;
    std::array<uint8_t, N> bytes{};

    [[nodiscard]] bytes_view view() const noexcept { return bytes; }
    [[nodiscard]] std::string hex() const;

    friend auto operator<=>(const FixedBytes&, const FixedBytes&) = default;
};

struct Address : FixedBytes<20>
{
    /// Parses "0x" + 40 hex digits (case-insensitive).
    static Address from_hex(std::string_view text);
    static Address from_bytes(bytes_view b);
};

struct Hash32 : FixedBytes<32>
{
    static Hash32 from_hex(std::string_view text);
    static Hash32 from_bytes(bytes_view b);
};

/// Lowercase, 0x-prefixed.
std::string to_hex(bytes_view data);

/// Accepts an optional 0x prefix; rejects odd length and non-hex digits.
bytes from_hex(std::string_view text);

/// Minimal big-endian encoding; zero encodes as the empty string.
bytes to_be_minimal(const uint256& v);
bytes to_be_minimal(uint64_t v);
std::array<uint8_t, 32> to_be32(const uint256& v);
uint256 from_be(bytes_view b);

/// Ethereum quantity text: 0x-prefixed minimal hex, "0x0" for zero.
std::string to_quantity(const uint256& v);
uint256 from_quantity(std::string_view text);

/// Securely wipes a buffer.
void secure_wipe(std::span<uint8_t> buf) noexcept;

template <std::size_t N>
std::string FixedBytes<N>::hex() const
{
    return to_hex(bytes);
}
}  // namespace metarelay
