// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

// Owner tooling: enclave initialization, key backup, status and funding.

#include <metarelay/owner/owner.hpp>
#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

using namespace metarelay;

int main(int argc, char** argv)
{
    CLI::App app{"metarelay-owner: operate a metarelay deployment"};
    app.require_subcommand(1);
    owner::Options opt;
    std::string measurement;
    std::string passphrase_env = "METARELAY_OWNER_PASSPHRASE";
    std::string backup_file = opt.backup_file.string();
    std::string owner_key = opt.owner_key_file.string();

    app.add_option("--endpoint", opt.endpoint, "Relay service URL")->capture_default_str();
    app.add_option("--measurement", measurement, "Expected enclave measurement (default: this build)");
    app.add_option("--backup-file", backup_file, "Master key backup file")->capture_default_str();
    app.add_option("--owner-key", owner_key, "Encrypted owner key file")->capture_default_str();
    app.add_option("--passphrase-env", passphrase_env, "Environment variable holding the passphrase")
        ->capture_default_str();
    app.add_flag("--json", opt.json, "Emit JSON instead of text");

    auto* init = app.add_subcommand("init", "Initialize the enclave and store the master key backup");
    auto* export_key = app.add_subcommand("export-key", "Decrypt the master key backup to standard output");
    auto* status = app.add_subcommand("status", "Show accounts, balances, nonces and pending relays");
    auto* secondary = app.add_subcommand("secondary", "Manage secondary relay accounts");
    secondary->require_subcommand(1);
    uint32_t count = 0;
    auto* add = secondary->add_subcommand("add", "Create secondary accounts");
    add->add_option("count", count, "Number of accounts")->required()->check(CLI::Range(1, 1024));
    auto* fund = secondary->add_subcommand("fund", "Top up secondaries below the minimum balance");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? owner::exit_ok : owner::exit_usage;
    }

    try
    {
        if (!measurement.empty())
            opt.measurement = Hash32::from_hex(measurement);
    }
    catch (const Error& e)
    {
        std::cerr << "error: --measurement: " << e.what() << '\n';
        return owner::exit_usage;
    }
    opt.backup_file = backup_file;
    opt.owner_key_file = owner_key;
    if (const char* p = std::getenv(passphrase_env.c_str()); p != nullptr && *p != '\0')
        opt.passphrase = p;

    if (*init)
        return owner::cmd_init(opt, std::cout, std::cerr);
    if (*export_key)
        return owner::cmd_export_key(opt, std::cout, std::cerr);
    if (*status)
        return owner::cmd_status(opt, std::cout, std::cerr);
    if (*add)
        return owner::cmd_secondary_add(opt, count, std::cout, std::cerr);
    if (*fund)
        return owner::cmd_secondary_fund(opt, std::cout, std::cerr);
    return owner::exit_usage;
}
