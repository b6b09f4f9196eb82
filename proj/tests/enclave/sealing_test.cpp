// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include "../test_util.hpp"
#include <metarelay/enclave/sealed_store.hpp>
#include <metarelay/enclave/sealing.hpp>
#include <gtest/gtest.h>

using namespace metarelay;
using namespace metarelay::enclave;
using namespace metarelay::test;

namespace
{
Keystore sample_keystore(std::mt19937_64& rng, uint64_t version)
{
    Keystore ks{1337, version, {}, random_key(rng), {}};
    auto key = random_key(rng);
    const auto address = tx::derive_address(key);
    ks.accounts.push_back(AccountRecord{address, std::move(key), rng() % 10, Role::master, {}});
    return ks;
}

Errc unseal_error(bytes_view blob, const SealingKey& key, const Hash32& m, uint64_t min_version)
{
    try
    {
        unseal(blob, key, m, min_version);
    }
    catch (const Error& e)
    {
        return e.code();
    }
    ADD_FAILURE() << "blob accepted";
    return Errc::invalid_argument;
}
}  // namespace

TEST(sealing, measurement_is_hash_of_build_identity)
{
    EXPECT_EQ(build_measurement(), tx::keccak256(std::string_view{"metarelay-enclave/1.0"}));
}

TEST(sealing, key_derivation)
{
    const auto m = build_measurement();
    const bytes secret = "0102030405"_hex;
    const auto k1 = derive_sealing_key(secret, m);
    EXPECT_EQ(k1.bytes, derive_sealing_key(secret, m).bytes);
    EXPECT_NE(k1.bytes, derive_sealing_key("0102030406"_hex, m).bytes);
    auto other = m;
    other.bytes[0] ^= 1;
    EXPECT_NE(k1.bytes, derive_sealing_key(secret, other).bytes);
    try
    {
        derive_sealing_key({}, m);
        FAIL();
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.code(), Errc::empty_secret);
    }
}

TEST(sealing, roundtrip)
{
    std::mt19937_64 rng{21};
    const auto m = build_measurement();
    const auto key = derive_sealing_key(random_bytes(rng, 32), m);
    const auto entropy = seeded_entropy(21);
    for (uint64_t v = 1; v <= 100; ++v)
    {
        const auto ks = sample_keystore(rng, v);
        const auto blob = seal(ks, key, m, entropy);
        EXPECT_EQ(blob.version, v);
        EXPECT_EQ(blob.measurement, m);
        EXPECT_EQ(SealedBlob::from_bytes(blob.to_bytes()).to_bytes(), blob.to_bytes());
        EXPECT_EQ(unseal(blob.to_bytes(), key, m, v), ks);
    }
}

TEST(sealing, blob_layout)
{
    std::mt19937_64 rng{22};
    const auto m = build_measurement();
    const auto key = derive_sealing_key("aa"_hex, m);
    const auto blob = seal(sample_keystore(rng, 0x0102030405060708), key, m, seeded_entropy(1)).to_bytes();
    EXPECT_EQ(bytes(blob.begin(), blob.begin() + 5), "4d524b5301"_hex);
    EXPECT_EQ(bytes(blob.begin() + 5, blob.begin() + 37), bytes(m.bytes.begin(), m.bytes.end()));
    EXPECT_EQ(bytes(blob.begin() + 49, blob.begin() + 57), "0102030405060708"_hex);
}

TEST(sealing, every_bit_flip_is_rejected)
{
    std::mt19937_64 rng{23};
    const auto m = build_measurement();
    const auto key = derive_sealing_key("aa"_hex, m);
    const auto blob = seal(sample_keystore(rng, 5), key, m, seeded_entropy(2)).to_bytes();
    for (std::size_t bit = 0; bit < blob.size() * 8; ++bit)
    {
        auto bad = blob;
        bad[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
        EXPECT_THROW(unseal(bad, key, m, 0), Error) << "bit " << bit;
    }
}

TEST(sealing, rollback_is_rejected)
{
    std::mt19937_64 rng{24};
    const auto m = build_measurement();
    const auto key = derive_sealing_key("aa"_hex, m);
    const auto old_blob = seal(sample_keystore(rng, 3), key, m, seeded_entropy(3)).to_bytes();
    EXPECT_NO_THROW(unseal(old_blob, key, m, 3));
    EXPECT_EQ(unseal_error(old_blob, key, m, 4), Errc::rollback);
}

TEST(sealing, binds_measurement_and_secret)
{
    std::mt19937_64 rng{25};
    const auto m = build_measurement();
    const auto key = derive_sealing_key("aa"_hex, m);
    const auto blob = seal(sample_keystore(rng, 1), key, m, seeded_entropy(4)).to_bytes();

    auto other_m = m;
    other_m.bytes[31] ^= 0x80;
    EXPECT_EQ(unseal_error(blob, derive_sealing_key("aa"_hex, other_m), other_m, 0),
        Errc::measurement_mismatch);
    EXPECT_EQ(unseal_error(blob, derive_sealing_key("ab"_hex, m), m, 0), Errc::authentication_failure);
}

TEST(sealing, rejects_bad_framing)
{
    const auto m = build_measurement();
    const auto key = derive_sealing_key("aa"_hex, m);
    EXPECT_EQ(unseal_error({}, key, m, 0), Errc::format_error);
    EXPECT_EQ(unseal_error(bytes(71, 0), key, m, 0), Errc::format_error);
}

TEST(sealed_store, persist_and_load)
{
    const auto dir = std::filesystem::temp_directory_path() / ("metarelay-store-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    SealedFileStore store{dir};
    EXPECT_FALSE(store.load_blob());
    EXPECT_EQ(store.load_version(), 0u);
    store.persist("010203"_hex, 7);
    EXPECT_EQ(*store.load_blob(), "010203"_hex);
    EXPECT_EQ(store.load_version(), 7u);
    store.persist("04"_hex, 8);
    EXPECT_EQ(*store.load_blob(), "04"_hex);
    EXPECT_EQ(store.load_version(), 8u);
    EXPECT_FALSE(std::filesystem::exists(store.blob_path().string() + ".tmp"));
    std::filesystem::remove_all(dir);
}
