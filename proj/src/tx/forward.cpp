// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include <metarelay/tx/forward.hpp>
#include <metarelay/tx/rlp.hpp>

namespace metarelay::tx
{
namespace
{
rlp::Item address_item(const Address& a)
{
    return rlp::Item{bytes{a.bytes.begin(), a.bytes.end()}};
}

Address address_from(const rlp::Item& item)
{
    const auto& b = item.as_bytes();
    if (b.size() != Address::size)
        throw Error{Errc::malformed_encoding, "address must be 20 bytes"};
    return Address::from_bytes(b);
}
}  // namespace

Hash32 forward_digest(const ForwardRequest& req, uint64_t chain_id, const Address& forwarder)
{
    const auto data_hash = keccak256(req.data);
    rlp::Item::List fields{
        rlp::uint_item(chain_id),
        address_item(forwarder),
        address_item(req.from),
        address_item(req.to),
        rlp::uint_item(req.value),
        rlp::uint_item(req.gas),
        rlp::uint_item(req.user_nonce),
        rlp::Item{bytes{data_hash.bytes.begin(), data_hash.bytes.end()}},
    };
    return keccak256(rlp::encode(rlp::Item{std::move(fields)}));
}

void sign_forward(ForwardRequest& req, const PrivateKey& user_key, uint64_t chain_id,
    const Address& forwarder)
{
    req.user_sig = sign_digest(user_key, forward_digest(req, chain_id, forwarder));
}

bytes append_sender(bytes_view calldata, const Address& user)
{
    bytes out{calldata.begin(), calldata.end()};
    out.insert(out.end(), user.bytes.begin(), user.bytes.end());
    return out;
}

bytes encode_forward_call(const ForwardRequest& req)
{
    rlp::Item::List fields{
        address_item(req.from),
        address_item(req.to),
        rlp::uint_item(req.value),
        rlp::uint_item(req.gas),
        rlp::uint_item(req.user_nonce),
        rlp::Item{req.data},
        rlp::Item{req.user_sig.to_bytes65()},
    };
    return rlp::encode(rlp::Item{std::move(fields)});
}

ForwardRequest decode_forward_call(bytes_view calldata)
{
    const auto item = rlp::decode(calldata);
    const auto& f = item.as_list();
    if (f.size() != 7)
        throw Error{Errc::malformed_encoding, "forward call must have 7 fields"};
    ForwardRequest req;
    req.from = address_from(f[0]);
    req.to = address_from(f[1]);
    req.value = rlp::to_uint256(f[2]);
    req.gas = rlp::to_uint64(f[3]);
    req.user_nonce = rlp::to_uint64(f[4]);
    req.data = f[5].as_bytes();
    try
    {
        req.user_sig = Signature::from_bytes65(f[6].as_bytes());
    }
    catch (const Error& e)
    {
        throw Error{Errc::malformed_encoding, e.what()};
    }
    return req;
}
}  // namespace metarelay::tx
