// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include <metarelay/crypto/secp256k1.hpp>
#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/obj_mac.h>
#include <openssl/rand.h>
#include <algorithm>
#include <memory>

namespace metarelay::crypto
{
namespace
{
struct BnFree
{
    void operator()(BIGNUM* p) const noexcept { BN_clear_free(p); }
};
struct PointFree
{
    void operator()(EC_POINT* p) const noexcept { EC_POINT_clear_free(p); }
};
struct CtxFree
{
    void operator()(BN_CTX* p) const noexcept { BN_CTX_free(p); }
};
using Bn = std::unique_ptr<BIGNUM, BnFree>;
using Point = std::unique_ptr<EC_POINT, PointFree>;

[[noreturn]] void openssl_failure(const char* what)
{
    throw std::runtime_error{std::string{"openssl: "} + what};
}

Bn new_bn()
{
    Bn bn{BN_new()};
    if (!bn)
        openssl_failure("BN_new");
    return bn;
}

Bn bn_from(bytes_view b)
{
    Bn bn{BN_bin2bn(b.data(), static_cast<int>(b.size()), nullptr)};
    if (!bn)
        openssl_failure("BN_bin2bn");
    return bn;
}

Bn bn_from(const uint256& v)
{
    const auto be = to_be32(v);
    return bn_from(be);
}

std::array<uint8_t, 32> bn_to32(const BIGNUM* bn)
{
    std::array<uint8_t, 32> out{};
    if (BN_bn2binpad(bn, out.data(), 32) != 32)
        openssl_failure("BN_bn2binpad");
    return out;
}

uint256 bn_to_uint(const BIGNUM* bn)
{
    const auto be = bn_to32(bn);
    return from_be(be);
}

BN_CTX* ctx()
{
    thread_local std::unique_ptr<BN_CTX, CtxFree> c{BN_CTX_new()};
    if (!c)
        openssl_failure("BN_CTX_new");
    return c.get();
}

class Curve
{
public:
    Curve() : m_group{EC_GROUP_new_by_curve_name(NID_secp256k1)}
    {
        if (m_group == nullptr)
            openssl_failure("secp256k1 unavailable");
        m_order = new_bn();
        m_half = new_bn();
        if (EC_GROUP_get_order(m_group, m_order.get(), ctx()) != 1)
            openssl_failure("EC_GROUP_get_order");
        if (BN_rshift1(m_half.get(), m_order.get()) != 1)
            openssl_failure("BN_rshift1");
        m_order_u = bn_to_uint(m_order.get());
    }
    ~Curve() { EC_GROUP_free(m_group); }
    Curve(const Curve&) = delete;
    Curve& operator=(const Curve&) = delete;

    [[nodiscard]] const EC_GROUP* group() const noexcept { return m_group; }
    [[nodiscard]] const BIGNUM* order() const noexcept { return m_order.get(); }
    [[nodiscard]] const BIGNUM* half_order() const noexcept { return m_half.get(); }
    [[nodiscard]] const uint256& order_u() const noexcept { return m_order_u; }

    [[nodiscard]] Point new_point() const
    {
        Point p{EC_POINT_new(m_group)};
        if (!p)
            openssl_failure("EC_POINT_new");
        return p;
    }

    [[nodiscard]] PublicKey to_public(const EC_POINT* p) const
    {
        if (EC_POINT_is_at_infinity(m_group, p) == 1)
            throw Error{Errc::invalid_public_key, "point at infinity"};
        uint8_t buf[65];
        if (EC_POINT_point2oct(m_group, p, POINT_CONVERSION_UNCOMPRESSED, buf, sizeof(buf),
                ctx()) != sizeof(buf))
            openssl_failure("EC_POINT_point2oct");
        PublicKey out;
        std::copy(buf + 1, buf + 65, out.xy.begin());
        return out;
    }

    [[nodiscard]] Point from_public(const PublicKey& pk) const
    {
        auto p = new_point();
        const auto enc = pk.uncompressed();
        if (EC_POINT_oct2point(m_group, p.get(), enc.data(), enc.size(), ctx()) != 1)
            throw Error{Errc::invalid_public_key, "point not on secp256k1"};
        return p;
    }

private:
    EC_GROUP* m_group;
    Bn m_order;
    Bn m_half;
    uint256 m_order_u;
};

const Curve& curve()
{
    static const Curve c;
    return c;
}

Bn secret_bn(const PrivateKey& key)
{
    auto bn = bn_from(key.view());
    BN_set_flags(bn.get(), BN_FLG_CONSTTIME);
    return bn;
}

/// RFC 6979 section 3.2 with HMAC-SHA256, qlen = hlen = 256.
class DeterministicNonce
{
public:
    DeterministicNonce(bytes_view key, const Hash32& digest)
    {
        // bits2octets(h1): reduce the digest mod n once.
        auto h = bn_from(digest.view());
        if (BN_cmp(h.get(), curve().order()) >= 0)
            BN_sub(h.get(), h.get(), curve().order());
        const auto h1 = bn_to32(h.get());

        m_v.fill(0x01);
        m_k.fill(0x00);
        step(0x00, key, h1);
        m_v = mac(m_v);
        step(0x01, key, h1);
        m_v = mac(m_v);
    }

    ~DeterministicNonce()
    {
        secure_wipe(m_k);
        secure_wipe(m_v);
    }

    /// Next candidate in [1, n).
    Bn next()
    {
        while (true)
        {
            if (m_started)
            {
                bytes buf{m_v.begin(), m_v.end()};
                buf.push_back(0x00);
                m_k = mac(buf);
                m_v = mac(m_v);
            }
            m_started = true;
            m_v = mac(m_v);
            auto k = bn_from(m_v);
            BN_set_flags(k.get(), BN_FLG_CONSTTIME);
            if (!BN_is_zero(k.get()) && BN_cmp(k.get(), curve().order()) < 0)
                return k;
        }
    }

private:
    using Block = std::array<uint8_t, 32>;

    Block mac(bytes_view msg) const
    {
        Block out{};
        unsigned int len = 0;
        if (HMAC(EVP_sha256(), m_k.data(), static_cast<int>(m_k.size()), msg.data(), msg.size(),
                out.data(), &len) == nullptr ||
            len != out.size())
            openssl_failure("HMAC");
        return out;
    }

    void step(uint8_t sep, bytes_view key, const Block& h1)
    {
        bytes buf;
        buf.reserve(32 + 1 + 32 + 32);
        buf.insert(buf.end(), m_v.begin(), m_v.end());
        buf.push_back(sep);
        buf.insert(buf.end(), key.begin(), key.end());
        buf.insert(buf.end(), h1.begin(), h1.end());
        m_k = mac(buf);
        secure_wipe(buf);
    }

    Block m_v{};
    Block m_k{};
    bool m_started = false;
};
}  // namespace

EntropySource system_entropy()
{
    return [](std::span<uint8_t> out) {
        if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1)
            openssl_failure("RAND_bytes");
    };
}

const uint256& curve_order() noexcept
{
    return curve().order_u();
}

bool is_valid_scalar(bytes_view b) noexcept
{
    if (b.size() != 32)
        return false;
    const auto v = from_be(b);
    return v != 0 && v < curve_order();
}

PrivateKey PrivateKey::from_bytes(bytes_view b)
{
    if (!is_valid_scalar(b))
        throw Error{Errc::invalid_scalar, "private key must be a 32-byte scalar in [1, n)"};
    PrivateKey k;
    std::copy(b.begin(), b.end(), k.m_bytes.begin());
    return k;
}

PrivateKey PrivateKey::generate(const EntropySource& entropy)
{
    std::array<uint8_t, 32> buf{};
    do
        entropy(buf);
    while (!is_valid_scalar(buf));
    auto k = from_bytes(buf);
    secure_wipe(buf);
    return k;
}

PublicKey PublicKey::from_bytes(bytes_view b)
{
    bytes enc;
    if (b.size() == 64)
    {
        enc.push_back(0x04);
        enc.insert(enc.end(), b.begin(), b.end());
    }
    else if ((b.size() == 65 && b[0] == 0x04) ||
             (b.size() == 33 && (b[0] == 0x02 || b[0] == 0x03)))
        enc.assign(b.begin(), b.end());
    else
        throw Error{Errc::invalid_public_key, "unsupported public key encoding"};

    const auto& c = curve();
    auto p = c.new_point();
    if (EC_POINT_oct2point(c.group(), p.get(), enc.data(), enc.size(), ctx()) != 1)
        throw Error{Errc::invalid_public_key, "point not on secp256k1"};
    return c.to_public(p.get());
}

bytes PublicKey::uncompressed() const
{
    bytes out;
    out.reserve(65);
    out.push_back(0x04);
    out.insert(out.end(), xy.begin(), xy.end());
    return out;
}

PublicKey derive_public_key(const PrivateKey& key)
{
    const auto& c = curve();
    auto d = secret_bn(key);
    auto p = c.new_point();
    if (EC_POINT_mul(c.group(), p.get(), d.get(), nullptr, nullptr, ctx()) != 1)
        openssl_failure("EC_POINT_mul");
    return c.to_public(p.get());
}

bytes Signature::to_bytes65() const
{
    bytes out;
    out.reserve(65);
    const auto rb = to_be32(r);
    const auto sb = to_be32(s);
    out.insert(out.end(), rb.begin(), rb.end());
    out.insert(out.end(), sb.begin(), sb.end());
    out.push_back(recovery_id);
    return out;
}

Signature Signature::from_bytes65(bytes_view b)
{
    if (b.size() != 65)
        throw Error{Errc::parse_error, "signature must be 65 bytes"};
    Signature sig;
    sig.r = from_be(b.subspan(0, 32));
    sig.s = from_be(b.subspan(32, 32));
    // Accept both the raw 0/1 form and the legacy 27/28 form.
    const uint8_t v = b[64];
    if (v == 0 || v == 1)
        sig.recovery_id = v;
    else if (v == 27 || v == 28)
        sig.recovery_id = static_cast<uint8_t>(v - 27);
    else
        throw Error{Errc::parse_error, "signature recovery byte must be 0, 1, 27 or 28"};
    return sig;
}

Signature sign(const PrivateKey& key, const Hash32& digest)
{
    const auto& c = curve();
    auto* bctx = ctx();
    auto d = secret_bn(key);

    auto z = bn_from(digest.view());
    if (BN_nnmod(z.get(), z.get(), c.order(), bctx) != 1)
        openssl_failure("BN_nnmod");

    DeterministicNonce nonces{key.view(), digest};
    auto big_r = c.new_point();
    auto rx = new_bn();
    auto ry = new_bn();
    auto r = new_bn();
    auto s = new_bn();
    auto kinv = new_bn();
    auto tmp = new_bn();

    while (true)
    {
        auto k = nonces.next();
        if (EC_POINT_mul(c.group(), big_r.get(), k.get(), nullptr, nullptr, bctx) != 1)
            openssl_failure("EC_POINT_mul");
        if (EC_POINT_get_affine_coordinates(c.group(), big_r.get(), rx.get(), ry.get(), bctx) != 1)
            openssl_failure("EC_POINT_get_affine_coordinates");
        // x >= n would need recovery ids 2/3; skip such nonces (probability ~2^-128).
        if (BN_cmp(rx.get(), c.order()) >= 0)
            continue;
        if (BN_copy(r.get(), rx.get()) == nullptr)
            openssl_failure("BN_copy");
        if (BN_is_zero(r.get()))
            continue;

        // s = k^-1 (z + r d) mod n
        if (BN_mod_inverse(kinv.get(), k.get(), c.order(), bctx) == nullptr ||
            BN_mod_mul(tmp.get(), r.get(), d.get(), c.order(), bctx) != 1 ||
            BN_mod_add(tmp.get(), tmp.get(), z.get(), c.order(), bctx) != 1 ||
            BN_mod_mul(s.get(), kinv.get(), tmp.get(), c.order(), bctx) != 1)
            openssl_failure("scalar arithmetic");
        if (BN_is_zero(s.get()))
            continue;

        auto recovery_id = static_cast<uint8_t>(BN_is_odd(ry.get()) ? 1 : 0);
        if (BN_cmp(s.get(), c.half_order()) > 0)
        {
            if (BN_sub(s.get(), c.order(), s.get()) != 1)
                openssl_failure("BN_sub");
            recovery_id ^= 1;
        }
        return Signature{bn_to_uint(r.get()), bn_to_uint(s.get()), recovery_id};
    }
}

PublicKey recover_public_key(const Hash32& digest, const Signature& sig)
{
    const auto& c = curve();
    const auto& n = c.order_u();
    if (sig.r == 0 || sig.r >= n || sig.s == 0 || sig.s >= n || sig.recovery_id > 1)
        throw Error{Errc::unrecoverable_point, "signature values out of range"};

    auto* bctx = ctx();
    auto r = bn_from(sig.r);
    auto s = bn_from(sig.s);

    auto big_r = c.new_point();
    if (EC_POINT_set_compressed_coordinates(c.group(), big_r.get(), r.get(), sig.recovery_id, bctx) !=
        1)
        throw Error{Errc::unrecoverable_point, "r is not the x-coordinate of a curve point"};

    auto z = bn_from(digest.view());
    auto rinv = new_bn();
    auto u1 = new_bn();
    auto u2 = new_bn();
    if (BN_nnmod(z.get(), z.get(), c.order(), bctx) != 1 ||
        BN_mod_inverse(rinv.get(), r.get(), c.order(), bctx) == nullptr ||
        BN_mod_mul(u1.get(), z.get(), rinv.get(), c.order(), bctx) != 1 ||
        BN_mod_sub(u1.get(), c.order(), u1.get(), c.order(), bctx) != 1 ||
        BN_mod_mul(u2.get(), s.get(), rinv.get(), c.order(), bctx) != 1)
        openssl_failure("scalar arithmetic");

    // Q = r^-1 (s R - z G) = u1 G + u2 R
    auto q = c.new_point();
    if (EC_POINT_mul(c.group(), q.get(), u1.get(), big_r.get(), u2.get(), bctx) != 1)
        openssl_failure("EC_POINT_mul");
    if (EC_POINT_is_at_infinity(c.group(), q.get()) == 1)
        throw Error{Errc::unrecoverable_point, "recovered point at infinity"};
    return c.to_public(q.get());
}

std::array<uint8_t, 32> ecdh(const PrivateKey& key, const PublicKey& peer)
{
    const auto& c = curve();
    auto* bctx = ctx();
    auto q = c.from_public(peer);
    auto d = secret_bn(key);
    auto shared = c.new_point();
    if (EC_POINT_mul(c.group(), shared.get(), nullptr, q.get(), d.get(), bctx) != 1)
        openssl_failure("EC_POINT_mul");
    if (EC_POINT_is_at_infinity(c.group(), shared.get()) == 1)
        throw Error{Errc::invalid_public_key, "degenerate shared point"};
    auto x = new_bn();
    if (EC_POINT_get_affine_coordinates(c.group(), shared.get(), x.get(), nullptr, bctx) != 1)
        openssl_failure("EC_POINT_get_affine_coordinates");
    return bn_to32(x.get());
}
}  // namespace metarelay::crypto
