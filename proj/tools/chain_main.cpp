// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

// Mock Ethereum node serving JSON-RPC over HTTP.

#include "signals.hpp"
#include <metarelay/chain/rpc.hpp>
#include <CLI11.hpp>
#include <iostream>

using namespace metarelay;

int main(int argc, char** argv)
{
    CLI::App app{"metarelay-chain: in-memory Ethereum node for local testing"};
    std::string host = "127.0.0.1";
    int port = 8545;
    chain::ChainConfig cfg;
    std::string seal = "instant";
    int64_t seal_ms = cfg.seal_interval.count();
    std::string gas_price = "1000000000";
    std::string forwarder = cfg.forwarder.hex();
    std::vector<std::string> fund;
    uint32_t drop = 0;

    app.add_option("--host", host, "Listen address")->capture_default_str();
    app.add_option("--port", port, "Listen port (0 picks a free port)")->capture_default_str();
    app.add_option("--chain-id", cfg.chain_id, "Chain identifier")->capture_default_str();
    app.add_option("--seal", seal, "Block production: instant, interval or manual")
        ->check(CLI::IsMember({"instant", "interval", "manual"}))
        ->capture_default_str();
    app.add_option("--seal-interval-ms", seal_ms, "Block interval in interval mode")->capture_default_str();
    app.add_option("--gas-price", gas_price, "Value of eth_gasPrice in wei")->capture_default_str();
    app.add_option("--forwarder", forwarder, "Trusted forwarder address")->capture_default_str();
    app.add_option("--fund", fund, "Pre-fund ADDRESS=WEI (repeatable)");
    app.add_option("--drop", drop, "Silently drop the next N accepted transactions");
    CLI11_PARSE(app, argc, argv);

    try
    {
        cfg.seal_mode = seal == "instant" ? chain::SealMode::instant
                        : seal == "interval" ? chain::SealMode::interval
                                             : chain::SealMode::manual;
        cfg.seal_interval = std::chrono::milliseconds{seal_ms};
        cfg.base_gas_price = uint256{gas_price};
        cfg.forwarder = Address::from_hex(forwarder);

        const auto signals = tools::block_shutdown_signals();
        chain::ChainState chain{cfg};
        for (const auto& f : fund)
        {
            const auto eq = f.find('=');
            if (eq == std::string::npos)
                throw Error{Errc::parse_error, "--fund expects ADDRESS=WEI"};
            chain.faucet(Address::from_hex(f.substr(0, eq)), uint256{f.substr(eq + 1)});
        }
        if (drop > 0)
            chain.drop_next(drop);

        chain::RpcServer server{chain, host, port};
        server.start();
        std::cout << "listening " << server.url() << " chain-id " << cfg.chain_id << " seal " << seal << std::endl;
        tools::wait_for_shutdown(signals);
        server.stop();
        const auto stats = chain.stats();
        std::cout << "blocks " << stats.block_number << " accepted " << stats.accepted << " rejected "
                  << stats.rejected << std::endl;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
