// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include <metarelay/tx/keccak.hpp>
#include <bit>
#include <cstring>

namespace metarelay::tx
{
namespace
{
constexpr uint64_t round_constants[24] = {
    0x0000000000000001,
    0x0000000000008082,
    0x800000000000808a,
    0x8000000080008000,
    0x000000000000808b,
    0x0000000080000001,
    0x8000000080008081,
    0x8000000000008009,
    0x000000000000008a,
    0x0000000000000088,
    0x0000000080008009,
    0x000000008000000a,
    0x000000008000808b,
    0x800000000000008b,
    0x8000000000008089,
    0x8000000000008003,
    0x8000000000008002,
    0x8000000000000080,
    0x000000000000800a,
    0x800000008000000a,
    0x8000000080008081,
    0x8000000000008080,
    0x0000000080000001,
    0x8000000080008008,
};

// Lane index i = x + 5y. Rotation offsets and the pi permutation order.
constexpr int rotations[24] = {1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 2, 14, 27, 41, 56, 8, 25, 43,
    62, 18, 39, 61, 20, 44};
constexpr int pi_lanes[24] = {
    10, 7, 11, 17, 18, 3, 5, 16, 8, 21, 24, 4, 15, 23, 19, 13, 12, 2, 20, 14, 22, 9, 6, 1};

constexpr std::size_t rate = 136;

void keccakf(uint64_t st[25]) noexcept
{
    uint64_t bc[5];
    for (const auto rc : round_constants)
    {
        // theta
        for (int x = 0; x < 5; ++x)
            bc[x] = st[x] ^ st[x + 5] ^ st[x + 10] ^ st[x + 15] ^ st[x + 20];
        for (int x = 0; x < 5; ++x)
        {
            const uint64_t t = bc[(x + 4) % 5] ^ std::rotl(bc[(x + 1) % 5], 1);
            for (int y = 0; y < 25; y += 5)
                st[y + x] ^= t;
        }

        // rho, pi
        uint64_t carry = st[1];
        for (int i = 0; i < 24; ++i)
        {
            const int j = pi_lanes[i];
            const uint64_t tmp = st[j];
            st[j] = std::rotl(carry, rotations[i]);
            carry = tmp;
        }

        // chi
        for (int y = 0; y < 25; y += 5)
        {
            for (int x = 0; x < 5; ++x)
                bc[x] = st[y + x];
            for (int x = 0; x < 5; ++x)
                st[y + x] ^= (~bc[(x + 1) % 5]) & bc[(x + 2) % 5];
        }

        // iota
        st[0] ^= rc;
    }
}

uint64_t load_le64(const uint8_t* p) noexcept
{
    uint64_t v = 0;
    for (int i = 7; i >= 0; --i)
        v = (v << 8) | p[i];
    return v;
}

void absorb_block(uint64_t st[25], const uint8_t* block) noexcept
{
    for (std::size_t i = 0; i < rate / 8; ++i)
        st[i] ^= load_le64(block + 8 * i);
    keccakf(st);
}
}  // namespace

Hash32 keccak256(bytes_view input) noexcept
{
    uint64_t st[25] = {};
    auto data = input.data();
    auto remaining = input.size();
    while (remaining >= rate)
    {
        absorb_block(st, data);
        data += rate;
        remaining -= rate;
    }

    uint8_t last[rate] = {};
    if (remaining != 0)
        std::memcpy(last, data, remaining);
    last[remaining] ^= 0x01;
    last[rate - 1] ^= 0x80;
    absorb_block(st, last);

    Hash32 out;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t b = 0; b < 8; ++b)
            out.bytes[8 * i + b] = static_cast<uint8_t>(st[i] >> (8 * b));
    return out;
}
}  // namespace metarelay::tx
