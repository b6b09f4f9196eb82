// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

// Relay daemon: simulated enclave, relay log and HTTP API.

#include "signals.hpp"
#include <metarelay/relay/http.hpp>
#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <mutex>

using namespace metarelay;

int main(int argc, char** argv)
{
    CLI::App app{"metarelay-relay: meta-transaction relayer with a simulated enclave"};
    std::string config_file;
    std::string listen;
    std::string rpc;
    std::string data_dir;
    std::string secret_env = relay::platform_secret_env;
    app.add_option("-c,--config", config_file, "Configuration file (key = value lines)")->check(CLI::ExistingFile);
    app.add_option("--listen", listen, "Override listen_address");
    app.add_option("--rpc", rpc, "Override rpc_endpoint");
    app.add_option("--data-dir", data_dir, "Override data_dir");
    app.add_option("--secret-env", secret_env, "Environment variable holding the platform secret")
        ->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    auto log = [mutex = std::make_shared<std::mutex>()](std::string_view line) {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&now, &tm);
        std::lock_guard lock{*mutex};
        std::cerr << std::put_time(&tm, "%FT%TZ") << ' ' << line << '\n';
    };

    try
    {
        relay::DaemonOptions opts;
        if (!config_file.empty())
            opts.config = relay::load_config(config_file);
        if (!listen.empty())
            opts.config.listen_address = listen;
        if (!rpc.empty())
            opts.config.rpc_endpoint = rpc;
        if (!data_dir.empty())
            opts.config.data_dir = data_dir;
        opts.platform_secret = relay::platform_secret_from_env(secret_env.c_str());
        opts.log = log;

        const auto signals = tools::block_shutdown_signals();
        relay::RelayDaemon daemon{std::move(opts)};
        daemon.start();
        log("listening " + daemon.url());
        tools::wait_for_shutdown(signals);
        log("shutting down");
        daemon.stop();
    }
    catch (const std::exception& e)
    {
        log(std::string{"fatal: "} + e.what());
        return 1;
    }
    return 0;
}
