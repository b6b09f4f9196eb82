// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include <metarelay/tx/rlp.hpp>

namespace metarelay::tx::rlp
{
namespace
{
void put_length(bytes& out, std::size_t len, uint8_t offset)
{
    if (len < 56)
    {
        out.push_back(static_cast<uint8_t>(offset + len));
        return;
    }
    const auto be = to_be_minimal(static_cast<uint64_t>(len));
    out.push_back(static_cast<uint8_t>(offset + 55 + be.size()));
    out.insert(out.end(), be.begin(), be.end());
}

void encode_into(bytes& out, const Item& item)
{
    if (const auto* b = std::get_if<bytes>(&item.value))
    {
        if (b->size() == 1 && (*b)[0] < 0x80)
        {
            out.push_back((*b)[0]);
            return;
        }
        put_length(out, b->size(), 0x80);
        out.insert(out.end(), b->begin(), b->end());
        return;
    }

    bytes body;
    for (const auto& child : std::get<Item::List>(item.value))
        encode_into(body, child);
    put_length(out, body.size(), 0xc0);
    out.insert(out.end(), body.begin(), body.end());
}

[[noreturn]] void malformed(const char* why)
{
    throw Error{Errc::malformed_encoding, std::string{"rlp: "} + why};
}

struct Header
{
    bool list;
    std::size_t offset;  // payload start, relative to the item
    std::size_t length;  // payload length
};

Header read_header(bytes_view in)
{
    if (in.empty())
        malformed("unexpected end of input");
    const uint8_t p = in[0];
    if (p < 0x80)
        return {false, 0, 1};

    const bool list = p >= 0xc0;
    const uint8_t base = list ? 0xc0 : 0x80;
    if (p - base < 56)
    {
        const std::size_t len = p - base;
        if (!list && len == 1 && (in.size() < 2 || in[1] < 0x80))
        {
            if (in.size() < 2)
                malformed("truncated string");
            malformed("single byte below 0x80 must be encoded as itself");
        }
        return {list, 1, len};
    }

    const std::size_t len_of_len = p - base - 55;
    if (in.size() < 1 + len_of_len)
        malformed("truncated length");
    if (in[1] == 0)
        malformed("length has leading zero");
    if (len_of_len > 8)
        malformed("length too large");
    std::size_t len = 0;
    for (std::size_t i = 0; i < len_of_len; ++i)
        len = (len << 8) | in[1 + i];
    if (len < 56)
        malformed("long form used for short payload");
    return {list, 1 + len_of_len, len};
}

Item decode_one(bytes_view in, std::size_t& consumed)
{
    const auto h = read_header(in);
    if (in.size() - h.offset < h.length)
        malformed("truncated payload");
    const auto payload = in.subspan(h.offset, h.length);
    consumed = h.offset + h.length;

    if (!h.list)
        return Item{bytes{payload.begin(), payload.end()}};

    Item::List children;
    std::size_t pos = 0;
    while (pos < payload.size())
    {
        std::size_t n = 0;
        children.push_back(decode_one(payload.subspan(pos), n));
        pos += n;
    }
    return Item{std::move(children)};
}
}  // namespace

const bytes& Item::as_bytes() const
{
    if (const auto* b = std::get_if<bytes>(&value))
        return *b;
    malformed("expected byte string, found list");
}

const Item::List& Item::as_list() const
{
    if (const auto* l = std::get_if<List>(&value))
        return *l;
    malformed("expected list, found byte string");
}

bytes encode(const Item& item)
{
    bytes out;
    encode_into(out, item);
    return out;
}

Item decode(bytes_view data)
{
    std::size_t consumed = 0;
    auto item = decode_one(data, consumed);
    if (consumed != data.size())
        malformed("trailing bytes");
    return item;
}

Item uint_item(const uint256& v)
{
    return Item{to_be_minimal(v)};
}

Item uint_item(uint64_t v)
{
    return Item{to_be_minimal(v)};
}

uint256 to_uint256(const Item& item)
{
    const auto& b = item.as_bytes();
    if (!b.empty() && b[0] == 0)
        malformed("integer has leading zero");
    return from_be(b);
}

uint64_t to_uint64(const Item& item)
{
    const auto v = to_uint256(item);
    if (v > std::numeric_limits<uint64_t>::max())
        malformed("integer exceeds 64 bits");
    return static_cast<uint64_t>(v);
}
}  // namespace metarelay::tx::rlp
