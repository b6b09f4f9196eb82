// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <csignal>
#include <pthread.h>

namespace metarelay::tools
{
/// Blocks SIGINT and SIGTERM in the calling thread and every thread it spawns
/// afterwards.
inline sigset_t block_shutdown_signals()
{
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set, nullptr);
    return set;
}

inline int wait_for_shutdown(const sigset_t& set)
{
    int sig = 0;
    sigwait(&set, &sig);
    return sig;
}
}  // namespace metarelay::tools
