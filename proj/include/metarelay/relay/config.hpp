// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/enclave/keystore.hpp>
#include <chrono>
#include <filesystem>

namespace metarelay::relay
{
using std::chrono::milliseconds;

struct FundingConfig
{
    uint256 min_balance = 10'000'000'000'000'000u;  // 0.01 ether
    uint256 top_up = 50'000'000'000'000'000u;       // 0.05 ether
    /// Zero disables the funding daemon; funding_tick() still works on demand.
    milliseconds period{0};
};

struct RelayConfig
{
    std::string rpc_endpoint = "http://127.0.0.1:8545";
    uint64_t chain_id = 1337;
    milliseconds confirmation_timeout{30'000};
    milliseconds poll_interval{500};
    FundingConfig funding;
    std::string listen_address = "127.0.0.1:8080";
    std::filesystem::path data_dir = "metarelay-data";
    /// Trusted forwarder; the default recipient of forwarded requests.
    Address forwarder = Address::from_hex("0x000000000000000000000000000000000000f0f0");
    /// Applied when the owner initializes the enclave.
    enclave::SpendingPolicy policy;

    /// Throws Error{Errc::invalid_argument}.
    void validate() const;
};

/// Parses the flat `key = value` format. Blank lines and lines starting with
/// '#' are ignored; unknown keys are errors. Durations take an ms or s suffix.
/// Throws Error{Errc::parse_error}.
RelayConfig parse_config(std::string_view text);
RelayConfig load_config(const std::filesystem::path& path);

inline constexpr const char* platform_secret_env = "METARELAY_PLATFORM_SECRET";

/// Reads the platform secret from the environment. A 0x prefix means hex,
/// otherwise the raw bytes are used. Throws Error{Errc::empty_secret}.
bytes platform_secret_from_env(const char* name = platform_secret_env);

/// Splits "host:port". Throws Error{Errc::parse_error}.
std::pair<std::string, int> split_host_port(std::string_view address);
}  // namespace metarelay::relay
