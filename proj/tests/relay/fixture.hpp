// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "../test_util.hpp"
#include <metarelay/chain/rpc.hpp>
#include <metarelay/relay/service.hpp>
#include <gtest/gtest.h>
#include <unistd.h>
#include <filesystem>

namespace metarelay::test
{
inline const uint256 one_eth{"1000000000000000000"};
inline const Address target = Address::from_hex("0x00000000000000000000000000000000000000aa");

/// Node client talking to an in-process chain without HTTP. `down` simulates
/// an unreachable node.
inline relay::RpcTransport local_transport(chain::ChainState& chain, std::shared_ptr<std::atomic<bool>> down)
{
    return [&chain, down](const nlohmann::json& request) {
        if (down && *down)
            throw Error{Errc::node_unreachable, "node is down"};
        return chain::rpc_dispatch(chain, request);
    };
}

/// Scratch directory removed on destruction.
struct TempDir
{
    TempDir()
    {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               ("metarelay-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path path;
};

template <typename F>
Errc error_of(F&& f)
{
    try
    {
        f();
    }
    catch (const Error& e)
    {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return Errc::io_error;
}

/// Chain, enclave, store and service wired in-process.
struct RelayHarness
{
    explicit RelayHarness(uint64_t seed, relay::RelayConfig cfg = default_config(), chain::ChainConfig chain_cfg = {})
      : rng{seed},
        owner{random_key(rng)},
        chain{chain_cfg},
        down{std::make_shared<std::atomic<bool>>(false)},
        node{local_transport(chain, down)},
        boundary{enclave_config(seed)},
        client{boundary},
        service{cfg, client, node, store}
    {}

    static relay::RelayConfig default_config()
    {
        relay::RelayConfig cfg;
        cfg.poll_interval = std::chrono::milliseconds{10};
        cfg.confirmation_timeout = std::chrono::milliseconds{200};
        cfg.funding.min_balance = 1'000'000'000'000'000u;
        cfg.funding.top_up = 5'000'000'000'000'000u;
        return cfg;
    }

    enclave::EnclaveConfig enclave_config(uint64_t seed)
    {
        enclave::EnclaveConfig ec;
        ec.platform_secret = from_hex("0x5ec7e75ec7e7");
        ec.entropy = seeded_entropy(seed);
        ec.ocalls.persist_sealed = [this](bytes_view blob, uint64_t version) {
            sealed.assign(blob.begin(), blob.end());
            sealed_version = version;
        };
        return ec;
    }

    Address init(const uint256& funds = one_eth)
    {
        master = service.initialize(crypto::derive_public_key(owner)).master_address;
        if (funds > 0)
            chain.faucet(master, funds);
        return master;
    }

    MetaTxRequest request(bytes data = {}) const
    {
        MetaTxRequest r;
        r.to = target;
        r.data = std::move(data);
        return r;
    }

    /// Polls until the record is settled or `limit` passes.
    relay::RelayRecord settle(const Hash32& hash, std::chrono::milliseconds limit = std::chrono::seconds{5})
    {
        const auto deadline = std::chrono::steady_clock::now() + limit;
        while (std::chrono::steady_clock::now() < deadline)
        {
            service.poll_once();
            const auto r = store.get(hash);
            if (r && r->settled())
                return *r;
            std::this_thread::sleep_for(std::chrono::milliseconds{5});
        }
        ADD_FAILURE() << "record " << hash.hex() << " did not settle";
        return *store.get(hash);
    }

    std::mt19937_64 rng;
    crypto::PrivateKey owner;
    chain::ChainState chain;
    std::shared_ptr<std::atomic<bool>> down;
    relay::JsonRpcNode node;
    bytes sealed;
    uint64_t sealed_version = 0;
    enclave::EnclaveBoundary boundary;
    enclave::EnclaveClient client;
    relay::RelayStore store;
    relay::RelayService service;
    Address master;
};
}  // namespace metarelay::test
