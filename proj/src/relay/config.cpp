// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include <metarelay/relay/config.hpp>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace metarelay::relay
{
namespace
{
std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

uint64_t parse_u64(std::string_view v)
{
    uint64_t out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size() || v.empty())
        throw Error{Errc::parse_error, "not an unsigned integer: '" + std::string{v} + "'"};
    return out;
}

uint256 parse_wei(std::string_view v)
{
    if (v.starts_with("0x"))
        return from_quantity(v);
    if (v.empty() || v.size() > 78 || v.find_first_not_of("0123456789") != std::string_view::npos)
        throw Error{Errc::parse_error, "not a wei amount: '" + std::string{v} + "'"};
    const uint512 wide{std::string{v}};
    if (wide > uint512{std::numeric_limits<uint256>::max()})
        throw Error{Errc::parse_error, "wei amount exceeds 256 bits"};
    return static_cast<uint256>(wide);
}

milliseconds parse_duration(std::string_view v)
{
    if (v.ends_with("ms"))
        return milliseconds{parse_u64(v.substr(0, v.size() - 2))};
    if (v.ends_with("s"))
        return milliseconds{parse_u64(v.substr(0, v.size() - 1)) * 1000};
    return milliseconds{parse_u64(v)};
}
}  // namespace

void RelayConfig::validate() const
{
    if (poll_interval.count() <= 0)
        throw Error{Errc::invalid_argument, "poll_interval must be positive"};
    if (poll_interval >= confirmation_timeout)
        throw Error{Errc::invalid_argument, "poll_interval must be shorter than confirmation_timeout"};
    if (funding.top_up == 0)
        throw Error{Errc::invalid_argument, "funding.top_up must be positive"};
    policy.validate();
    split_host_port(listen_address);
}

RelayConfig parse_config(std::string_view text)
{
    RelayConfig cfg;
    std::istringstream in{std::string{text}};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw))
    {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.starts_with("#"))
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw Error{Errc::parse_error, "line " + std::to_string(line_no) + ": expected key = value"};
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        try
        {
            if (key == "rpc_endpoint")
                cfg.rpc_endpoint = value;
            else if (key == "chain_id")
                cfg.chain_id = parse_u64(value);
            else if (key == "confirmation_timeout")
                cfg.confirmation_timeout = parse_duration(value);
            else if (key == "poll_interval")
                cfg.poll_interval = parse_duration(value);
            else if (key == "funding.min_balance")
                cfg.funding.min_balance = parse_wei(value);
            else if (key == "funding.top_up")
                cfg.funding.top_up = parse_wei(value);
            else if (key == "funding.period")
                cfg.funding.period = parse_duration(value);
            else if (key == "listen_address")
                cfg.listen_address = value;
            else if (key == "data_dir")
                cfg.data_dir = std::string{value};
            else if (key == "forwarder")
                cfg.forwarder = Address::from_hex(value);
            else if (key == "policy.max_gas_limit")
                cfg.policy.max_gas_limit = parse_u64(value);
            else if (key == "policy.max_gas_price")
                cfg.policy.max_gas_price = parse_wei(value);
            else if (key == "policy.default_gas_price")
                cfg.policy.default_gas_price = parse_wei(value);
            else if (key == "policy.allowed_recipients")
            {
                std::set<Address> allowed;
                std::string_view rest = value;
                while (!rest.empty())
                {
                    const auto comma = rest.find(',');
                    const auto item = trim(rest.substr(0, comma));
                    if (!item.empty())
                        allowed.insert(Address::from_hex(item));
                    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
                }
                cfg.policy.allowed_recipients = std::move(allowed);
            }
            else
                throw Error{Errc::parse_error, "unknown key '" + std::string{key} + "'"};
        }
        catch (const Error& e)
        {
            throw Error{Errc::parse_error, "line " + std::to_string(line_no) + ": " + e.what()};
        }
    }
    return cfg;
}

RelayConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in{path};
    if (!in)
        throw Error{Errc::io_error, "cannot read config " + path.string()};
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

bytes platform_secret_from_env(const char* name)
{
    const char* value = std::getenv(name);
    if (value == nullptr || *value == '\0')
        throw Error{Errc::empty_secret, std::string{name} + " is not set"};
    const std::string_view v{value};
    if (v.starts_with("0x"))
        return from_hex(v);
    return bytes{v.begin(), v.end()};
}

std::pair<std::string, int> split_host_port(std::string_view address)
{
    const auto colon = address.rfind(':');
    if (colon == std::string_view::npos || colon == 0)
        throw Error{Errc::parse_error, "expected host:port, got '" + std::string{address} + "'"};
    const auto port = parse_u64(address.substr(colon + 1));
    if (port > 65535)
        throw Error{Errc::parse_error, "port out of range"};
    return {std::string{address.substr(0, colon)}, static_cast<int>(port)};
}
}  // namespace metarelay::relay
