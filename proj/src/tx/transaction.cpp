// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include <metarelay/tx/rlp.hpp>
#include <metarelay/tx/transaction.hpp>

namespace metarelay::tx
{
namespace
{
rlp::Item::List body_fields(const UnsignedTransaction& tx)
{
    rlp::Item::List fields;
    fields.reserve(9);
    fields.push_back(rlp::uint_item(tx.nonce));
    fields.push_back(rlp::uint_item(tx.gas_price));
    fields.push_back(rlp::uint_item(tx.gas_limit));
    fields.emplace_back(bytes{tx.to.bytes.begin(), tx.to.bytes.end()});
    fields.push_back(rlp::uint_item(tx.value));
    fields.emplace_back(tx.data);
    return fields;
}

uint256 eip155_v(uint64_t chain_id, uint8_t recovery_id)
{
    return uint256{chain_id} * 2 + 35 + recovery_id;
}
}  // namespace

Address address_of(const crypto::PublicKey& pub)
{
    const auto h = keccak256(pub.xy);
    return Address::from_bytes(bytes_view{h.bytes}.subspan(12));
}

Address derive_address(bytes_view private_key)
{
    return derive_address(PrivateKey::from_bytes(private_key));
}

Address derive_address(const PrivateKey& key)
{
    return address_of(crypto::derive_public_key(key));
}

Signature sign_digest(const PrivateKey& key, const Hash32& digest)
{
    return crypto::sign(key, digest);
}

Signature sign_digest(bytes_view private_key, const Hash32& digest)
{
    return crypto::sign(PrivateKey::from_bytes(private_key), digest);
}

Address recover_signer(const Hash32& digest, const Signature& sig)
{
    return address_of(crypto::recover_public_key(digest, sig));
}

Hash32 signing_preimage(const UnsignedTransaction& tx, uint64_t chain_id)
{
    auto fields = body_fields(tx);
    fields.push_back(rlp::uint_item(chain_id));
    fields.emplace_back(bytes{});
    fields.emplace_back(bytes{});
    return keccak256(rlp::encode(rlp::Item{std::move(fields)}));
}

bytes encode_signed(const UnsignedTransaction& tx, const Signature& sig, uint64_t chain_id)
{
    auto fields = body_fields(tx);
    fields.push_back(rlp::uint_item(eip155_v(chain_id, sig.recovery_id)));
    fields.push_back(rlp::uint_item(sig.r));
    fields.push_back(rlp::uint_item(sig.s));
    return rlp::encode(rlp::Item{std::move(fields)});
}

SignedTransaction decode_signed(bytes_view raw)
{
    const auto item = rlp::decode(raw);
    const auto& f = item.as_list();
    if (f.size() != 9)
        throw Error{Errc::malformed_encoding, "signed transaction must have 9 fields"};

    SignedTransaction out;
    out.tx.nonce = rlp::to_uint64(f[0]);
    out.tx.gas_price = rlp::to_uint256(f[1]);
    out.tx.gas_limit = rlp::to_uint64(f[2]);
    const auto& to = f[3].as_bytes();
    if (to.size() != Address::size)
        throw Error{Errc::malformed_encoding, "recipient must be 20 bytes"};
    out.tx.to = Address::from_bytes(to);
    out.tx.value = rlp::to_uint256(f[4]);
    out.tx.data = f[5].as_bytes();
    out.v = rlp::to_uint256(f[6]);
    out.sig.r = rlp::to_uint256(f[7]);
    out.sig.s = rlp::to_uint256(f[8]);

    if (out.v < 35)
        throw Error{Errc::invalid_v, "pre-EIP-155 v values are not accepted"};
    const uint256 chain = (out.v - 35) / 2;
    if (chain > std::numeric_limits<uint64_t>::max())
        throw Error{Errc::invalid_v, "chain id exceeds 64 bits"};
    out.chain_id = static_cast<uint64_t>(chain);
    out.sig.recovery_id = static_cast<uint8_t>((out.v - 35) % 2);
    return out;
}

uint256 compute_fee(uint64_t gas_used, const uint256& gas_price)
{
    const uint512 fee = uint512{gas_used} * uint512{gas_price};
    if (fee > uint512{std::numeric_limits<uint256>::max()})
        throw Error{Errc::invalid_argument, "fee exceeds 256 bits"};
    return static_cast<uint256>(fee);
}

uint64_t intrinsic_gas(bytes_view calldata) noexcept
{
    uint64_t gas = min_gas_limit;
    for (const auto b : calldata)
        gas += b == 0 ? 4 : 16;
    return gas;
}
}  // namespace metarelay::tx
