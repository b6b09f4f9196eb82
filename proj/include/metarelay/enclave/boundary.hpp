// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/enclave/sealing.hpp>
#include <functional>
#include <memory>
#include <mutex>

namespace metarelay::enclave
{
/// Direction of a boundary crossing.
enum class Crossing
{
    ecall_request,
    ecall_response,
    ocall,
};

/// Observes every byte that crosses the boundary, in order.
using TranscriptSink = std::function<void(Crossing, bytes_view)>;

/// Untrusted services the enclave calls out to.
struct Ocalls
{
    /// Stores the sealed keystore and its version counter outside the boundary.
    std::function<void(bytes_view sealed_blob, uint64_t version)> persist_sealed;
    std::function<void(std::string_view line)> log;
};

struct EnclaveConfig
{
    bytes platform_secret;
    Ocalls ocalls;
    crypto::EntropySource entropy = crypto::system_entropy();
    Hash32 measurement = build_measurement();
};

class TrustedEnclave;

/// The simulated enclave. Trusted state lives behind this object and is reachable
/// only through ecall(), which takes and returns CBOR-marshaled messages. At most
/// one ECall executes at a time.
class EnclaveBoundary
{
public:
    explicit EnclaveBoundary(EnclaveConfig config);
    ~EnclaveBoundary();
    EnclaveBoundary(const EnclaveBoundary&) = delete;
    EnclaveBoundary& operator=(const EnclaveBoundary&) = delete;

    bytes ecall(bytes_view request);

    void set_transcript(TranscriptSink sink);

private:
    void record(Crossing kind, bytes_view data);

    std::mutex m_transcript_mutex;
    TranscriptSink m_transcript;
    std::unique_ptr<TrustedEnclave> m_enclave;
};
}  // namespace metarelay::enclave
