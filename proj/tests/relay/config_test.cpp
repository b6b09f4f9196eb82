// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include "../test_util.hpp"
#include <metarelay/relay/config.hpp>
#include <gtest/gtest.h>
#include <cstdlib>

using namespace metarelay;
using namespace metarelay::relay;

TEST(config, parses_every_key)
{
    const auto cfg = parse_config(R"(
# relay settings
rpc_endpoint = http://10.0.0.2:8545
chain_id = 5
confirmation_timeout = 45s
poll_interval = 250ms
funding.min_balance = 1000
funding.top_up = 0x10
funding.period = 60s
listen_address = 0.0.0.0:9000
data_dir = /var/lib/metarelay
forwarder = 0x00000000000000000000000000000000000000f1
policy.max_gas_limit = 500000
policy.max_gas_price = 50000000000
policy.default_gas_price = 2000000000
policy.allowed_recipients = 0x00000000000000000000000000000000000000aa, 0x00000000000000000000000000000000000000bb
)");
    EXPECT_EQ(cfg.rpc_endpoint, "http://10.0.0.2:8545");
    EXPECT_EQ(cfg.chain_id, 5u);
    EXPECT_EQ(cfg.confirmation_timeout, std::chrono::seconds{45});
    EXPECT_EQ(cfg.poll_interval, std::chrono::milliseconds{250});
    EXPECT_EQ(cfg.funding.min_balance, 1000);
    EXPECT_EQ(cfg.funding.top_up, 16);
    EXPECT_EQ(cfg.funding.period, std::chrono::seconds{60});
    EXPECT_EQ(cfg.listen_address, "0.0.0.0:9000");
    EXPECT_EQ(cfg.data_dir, "/var/lib/metarelay");
    EXPECT_EQ(cfg.forwarder, Address::from_hex("0x00000000000000000000000000000000000000f1"));
    EXPECT_EQ(cfg.policy.max_gas_limit, 500000u);
    EXPECT_EQ(cfg.policy.max_gas_price, 50'000'000'000u);
    EXPECT_EQ(cfg.policy.default_gas_price, 2'000'000'000u);
    ASSERT_TRUE(cfg.policy.allowed_recipients);
    EXPECT_EQ(cfg.policy.allowed_recipients->size(), 2u);
    EXPECT_NO_THROW(cfg.validate());
}

TEST(config, defaults_are_valid)
{
    EXPECT_NO_THROW(RelayConfig{}.validate());
    EXPECT_NO_THROW(parse_config("").validate());
}

TEST(config, rejects_bad_input)
{
    EXPECT_THROW(parse_config("no equals sign"), Error);
    EXPECT_THROW(parse_config("colour = blue"), Error);
    EXPECT_THROW(parse_config("chain_id = -1"), Error);
    EXPECT_THROW(parse_config("poll_interval = soon"), Error);
    EXPECT_THROW(parse_config("funding.top_up = 12abc"), Error);
    EXPECT_THROW(parse_config("forwarder = 0x1234"), Error);
}

TEST(config, poll_interval_must_be_shorter_than_timeout)
{
    RelayConfig cfg;
    cfg.poll_interval = cfg.confirmation_timeout;
    EXPECT_THROW(cfg.validate(), Error);
}

TEST(config, host_port)
{
    EXPECT_EQ(split_host_port("127.0.0.1:8080"), (std::pair<std::string, int>{"127.0.0.1", 8080}));
    EXPECT_THROW(split_host_port("localhost"), Error);
    EXPECT_THROW(split_host_port("localhost:99999"), Error);
}

TEST(config, platform_secret_env)
{
    ::setenv("METARELAY_TEST_SECRET", "0xa1b2", 1);
    EXPECT_EQ(platform_secret_from_env("METARELAY_TEST_SECRET"), (bytes{0xa1, 0xb2}));
    ::setenv("METARELAY_TEST_SECRET", "plain", 1);
    EXPECT_EQ(platform_secret_from_env("METARELAY_TEST_SECRET"), (bytes{'p', 'l', 'a', 'i', 'n'}));
    ::unsetenv("METARELAY_TEST_SECRET");
    try
    {
        platform_secret_from_env("METARELAY_TEST_SECRET");
        FAIL();
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.code(), Errc::empty_secret);
    }
}
