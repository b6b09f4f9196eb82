// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <metarelay/common.hpp>
#include <variant>

namespace metarelay::tx::rlp
{
/// A recursive-length-prefix item: a byte string or a list of items.
struct Item
{
    using List = std::vector<Item>;
    std::variant<bytes, List> value;

    Item() = default;
    Item(bytes b) : value{std::move(b)} {}
    Item(List l) : value{std::move(l)} {}

    [[nodiscard]] bool is_list() const noexcept { return value.index() == 1; }
    [[nodiscard]] const bytes& as_bytes() const;
    [[nodiscard]] const List& as_list() const;

    friend bool operator==(const Item&, const Item&) = default;
};

bytes encode(const Item& item);

/// Strict decoder: rejects truncation, trailing data, and non-canonical prefixes.
/// Throws Error{Errc::malformed_encoding}.
Item decode(bytes_view data);

/// Helpers for the common "list of scalars" shape.
Item uint_item(const uint256& v);
Item uint_item(uint64_t v);

/// Scalar fields must be minimal: no leading zero byte.
uint256 to_uint256(const Item& item);
uint64_t to_uint64(const Item& item);
}  // namespace metarelay::tx::rlp
