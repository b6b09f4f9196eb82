#!/usr/bin/env python3
# metarelay: SGX-style meta-transaction relayer
# Copyright 2026 The metarelay Authors.
# SPDX-License-Identifier: Apache-2.0
"""Independent reference oracle for the tx_core known-answer vectors.

Pure Python: Keccak-f[1600] sponge, RLP, secp256k1 affine arithmetic with
RFC 6979 nonces. Nothing here shares code with the C++ implementation.
ECDSA output is cross-checked with the `cryptography` package when present.

Usage: gen_vectors.py > ../oracle_vectors.hpp
"""

import hashlib
import hmac
import sys

# ---------------------------------------------------------------- keccak

_RC = [
    0x0000000000000001, 0x0000000000008082, 0x800000000000808A, 0x8000000080008000,
    0x000000000000808B, 0x0000000080000001, 0x8000000080008081, 0x8000000000008009,
    0x000000000000008A, 0x0000000000000088, 0x0000000080008009, 0x000000008000000A,
    0x000000008000808B, 0x800000000000008B, 0x8000000000008089, 0x8000000000008003,
    0x8000000000008002, 0x8000000000000080, 0x000000000000800A, 0x800000008000000A,
    0x8000000080008081, 0x8000000000008080, 0x0000000080000001, 0x8000000080008008,
]
_M = (1 << 64) - 1


def _rol(x, n):
    n %= 64
    return ((x << n) | (x >> (64 - n))) & _M


def _keccak_f(a):
    # a[x][y], lanes as ints; rotation offsets computed from the (t+1)(t+2)/2 walk
    for rnd in range(24):
        c = [a[x][0] ^ a[x][1] ^ a[x][2] ^ a[x][3] ^ a[x][4] for x in range(5)]
        d = [c[(x - 1) % 5] ^ _rol(c[(x + 1) % 5], 1) for x in range(5)]
        a = [[a[x][y] ^ d[x] for y in range(5)] for x in range(5)]
        # rho + pi
        b = [[0] * 5 for _ in range(5)]
        x, y = 1, 0
        b[0][0] = a[0][0]
        for t in range(24):
            b[y][(2 * x + 3 * y) % 5] = _rol(a[x][y], (t + 1) * (t + 2) // 2)
            x, y = y, (2 * x + 3 * y) % 5
        # the pi target for lane (0,0) is itself
        a = [[b[x][y] ^ ((~b[(x + 1) % 5][y]) & b[(x + 2) % 5][y]) for y in range(5)]
             for x in range(5)]
        a[0][0] ^= _RC[rnd]
    return a


def keccak256(data: bytes) -> bytes:
    rate = 136
    msg = bytearray(data)
    msg.append(0x01)
    while len(msg) % rate:
        msg.append(0)
    msg[-1] |= 0x80
    a = [[0] * 5 for _ in range(5)]
    for off in range(0, len(msg), rate):
        block = msg[off:off + rate]
        for i in range(rate // 8):
            x, y = i % 5, i // 5
            a[x][y] ^= int.from_bytes(block[8 * i:8 * i + 8], "little")
        a = _keccak_f(a)
    out = b""
    for i in range(4):
        out += a[i % 5][i // 5].to_bytes(8, "little")
    return out


# ---------------------------------------------------------------- RLP

def rlp(item) -> bytes:
    if isinstance(item, (bytes, bytearray)):
        if len(item) == 1 and item[0] < 0x80:
            return bytes(item)
        return _rlp_len(len(item), 0x80) + bytes(item)
    body = b"".join(rlp(x) for x in item)
    return _rlp_len(len(body), 0xC0) + body


def _rlp_len(n, off):
    if n < 56:
        return bytes([off + n])
    be = n.to_bytes((n.bit_length() + 7) // 8, "big")
    return bytes([off + 55 + len(be)]) + be


def uint(v: int) -> bytes:
    return b"" if v == 0 else v.to_bytes((v.bit_length() + 7) // 8, "big")


# ---------------------------------------------------------------- secp256k1

P = 0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFC2F
N = 0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141
G = (0x79BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798,
     0x483ADA7726A3C4655DA4FBFC0E1108A8FD17B448A68554199C47D08FFB10D4B8)


def _add(p, q):
    if p is None:
        return q
    if q is None:
        return p
    if p[0] == q[0] and (p[1] + q[1]) % P == 0:
        return None
    if p == q:
        lam = 3 * p[0] * p[0] * pow(2 * p[1], -1, P) % P
    else:
        lam = (q[1] - p[1]) * pow(q[0] - p[0], -1, P) % P
    x = (lam * lam - p[0] - q[0]) % P
    return (x, (lam * (p[0] - x) - p[1]) % P)


def _mul(k, p):
    r = None
    while k:
        if k & 1:
            r = _add(r, p)
        p = _add(p, p)
        k >>= 1
    return r


def pubkey(priv):
    return _mul(priv, G)


def address(priv) -> bytes:
    x, y = pubkey(priv)
    return keccak256(x.to_bytes(32, "big") + y.to_bytes(32, "big"))[12:]


def rfc6979_k(priv, digest):
    x = priv.to_bytes(32, "big")
    h1 = (int.from_bytes(digest, "big") % N).to_bytes(32, "big")
    v = b"\x01" * 32
    k = b"\x00" * 32
    k = hmac.new(k, v + b"\x00" + x + h1, hashlib.sha256).digest()
    v = hmac.new(k, v, hashlib.sha256).digest()
    k = hmac.new(k, v + b"\x01" + x + h1, hashlib.sha256).digest()
    v = hmac.new(k, v, hashlib.sha256).digest()
    while True:
        v = hmac.new(k, v, hashlib.sha256).digest()
        cand = int.from_bytes(v, "big")
        if 1 <= cand < N:
            yield cand
        k = hmac.new(k, v + b"\x00", hashlib.sha256).digest()
        v = hmac.new(k, v, hashlib.sha256).digest()


def sign(priv, digest):
    z = int.from_bytes(digest, "big") % N
    for k in rfc6979_k(priv, digest):
        rp = _mul(k, G)
        r = rp[0] % N
        if r == 0 or rp[0] >= N:
            continue
        s = pow(k, -1, N) * (z + r * priv) % N
        if s == 0:
            continue
        rec = rp[1] & 1
        if s > N // 2:
            s = N - s
            rec ^= 1
        return r, s, rec


def recover(digest, r, s, rec):
    x = r
    alpha = (x * x * x + 7) % P
    y = pow(alpha, (P + 1) // 4, P)
    if (y & 1) != rec:
        y = P - y
    rp = (x, y)
    z = int.from_bytes(digest, "big") % N
    rinv = pow(r, -1, N)
    q = _add(_mul(s * rinv % N, rp), _mul((-z * rinv) % N, G))
    return keccak256(q[0].to_bytes(32, "big") + q[1].to_bytes(32, "big"))[12:]


def _crosscheck_with_cryptography(priv, digest, r, s):
    try:
        from cryptography.hazmat.primitives.asymmetric import ec, utils
        from cryptography.hazmat.primitives import hashes
    except ImportError:
        return
    key = ec.derive_private_key(priv, ec.SECP256K1()).public_key()
    key.verify(utils.encode_dss_signature(r, s), digest,
               ec.ECDSA(utils.Prehashed(hashes.SHA256())))
    nums = key.public_numbers()
    assert (nums.x, nums.y) == pubkey(priv)


# ---------------------------------------------------------------- vectors

def seeded(label: str, i: int) -> bytes:
    return hashlib.sha256(f"{label}:{i}".encode()).digest()


def hx(b: bytes) -> str:
    return b.hex()


def main():
    # published anchors the oracle itself must reproduce
    assert hx(keccak256(b"")) == "c5d2460186f7233c927e7db2dcc703c0e500b653ca82273b7bfad8045d85a470"
    assert hx(keccak256(b"abc")) == "4e03657aea45a94fc7d47ba826c8d667c0d1e6e33a64a036ec44f58fa12d6c45"
    assert hx(address(1)) == "7e5f4552091a69125d5dfcb7b8c2659029395bdf"
    eip155_tx = [uint(9), uint(20 * 10**9), uint(21000), bytes.fromhex("35" * 20),
                 uint(10**18), b""]
    eip155_pre = rlp(eip155_tx + [uint(1), b"", b""])
    assert hx(eip155_pre) == ("ec098504a817c800825208943535353535353535353535353535353535353535"
                              "880de0b6b3a764000080018080")
    assert hx(keccak256(eip155_pre)) == \
        "daf5a779ae972f972197303d7b574746c7ef83eadac0f2791ad23db92e4c8e53"
    r, s, rec = sign(int("46" * 32, 16), keccak256(eip155_pre))
    assert r == 18515461264373351373200002665853028612451056578545711640558177340181847433846
    assert s == 46948507304638947509940763649030358759909902576025900602547168820602576006531
    assert rec == 0

    out = []
    w = out.append
    w("// metarelay: SGX-style meta-transaction relayer")
    w("// Copyright 2026 The metarelay Authors.")
    w("// SPDX-License-Identifier: Apache-2.0")
    w("")
    w("// Generated by tests/oracles/gen_vectors.py. Do not edit.")
    w("#pragma once")
    w("")
    w("#include <array>")
    w("#include <cstdint>")
    w("#include <string_view>")
    w("")
    w("namespace metarelay::test::oracle")
    w("{")

    # keccak
    kin = [b"", b"abc", b"a", b"The quick brown fox jumps over the lazy dog",
           b"\x00", b"\xff" * 32, bytes(range(135)), bytes(range(136)),
           bytes(range(137)), bytes(i & 0xFF for i in range(300)), b"a" * 1000,
           seeded("keccak", 0)]
    w("struct KeccakVector")
    w("{")
    w("    std::string_view input_hex;")
    w("    std::string_view digest_hex;")
    w("};")
    w(f"inline constexpr std::array<KeccakVector, {len(kin)}> keccak_vectors{{{{")
    for m in kin:
        w(f'    {{"{hx(m)}",')
        w(f'        "{hx(keccak256(m))}"}},')
    w("}};")
    w("")

    # addresses
    keys = [1, 2, 3, 0xFF, int("46" * 32, 16), N - 1, 2**128 + 1]
    keys += [int.from_bytes(seeded("addr", i), "big") % (N - 1) + 1 for i in range(5)]
    w("struct AddressVector")
    w("{")
    w("    std::string_view private_key_hex;")
    w("    std::string_view address_hex;")
    w("};")
    w(f"inline constexpr std::array<AddressVector, {len(keys)}> address_vectors{{{{")
    for k in keys:
        w(f'    {{"{k:064x}", "{hx(address(k))}"}},')
    w("}};")
    w("")

    # RLP
    def enc_str(item):
        if isinstance(item, bytes):
            return "b:" + hx(item)
        return "[" + ",".join(enc_str(x) for x in item) + "]"

    rlp_items = [
        b"", b"\x0f", b"dog", b"\x80", b"\x7f", [], [b"cat", b"dog"],
        b"Lorem ipsum dolor sit amet, consectetur adipisicing elit",
        [[], [[]], [[], [[]]]], uint(1024), bytes(range(56)), bytes(300),
        [b"\x01" * 60, [b"x", b""], b"\x00"], [bytes([i]) * i for i in range(1, 20)],
    ]
    w("struct RlpVector")
    w("{")
    w("    // tree notation: b:<hex> for byte strings, [a,b,...] for lists")
    w("    std::string_view tree;")
    w("    std::string_view encoding_hex;")
    w("};")
    w(f"inline constexpr std::array<RlpVector, {len(rlp_items)}> rlp_vectors{{{{")
    for it in rlp_items:
        w(f'    {{"{enc_str(it)}",')
        w(f'        "{hx(rlp(it))}"}},')
    w("}};")
    w("")

    # transactions: preimage digest, signature, raw
    txs = [(9, 20 * 10**9, 21000, bytes.fromhex("35" * 20), 10**18, b"", 1,
            int("46" * 32, 16))]
    for i in range(11):
        sd = seeded("tx", i)
        nonce = [0, 1, 127, 128, 255, 256, 2**32, 7, 0, 42, 2**64 - 1][i]
        gp = [0, 1, 10**9, 3 * 10**9 + 7, 2**40, 5, 10**9, 999, 1, 2**63, 123][i]
        gl = [21000, 21000, 100000, 30000000, 65535, 21016, 50000, 21000, 90000, 21000, 300000][i]
        to = sd[:20]
        val = [0, 1, 10**18, 2**255 + 3, 0, 55, 10**17, 0, 2**128, 0, 3][i]
        data = [b"", b"\x00", seeded("data", i) * 3, b"", bytes(range(70)), b"\x12\x34",
                b"\x00\x00\x01", b"hello", b"", b"\xff" * 100, b"\xa9\x05\x9c\xbb"][i]
        chain = [1, 5, 1337, 1, 2**32, 11155111, 3, 1, 61, 1337, 7][i]
        key = int.from_bytes(seeded("txkey", i), "big") % (N - 1) + 1
        txs.append((nonce, gp, gl, to, val, data, chain, key))

    w("struct TxVector")
    w("{")
    w("    std::uint64_t nonce;")
    w("    std::string_view gas_price;  // decimal")
    w("    std::uint64_t gas_limit;")
    w("    std::string_view to_hex;")
    w("    std::string_view value;  // decimal")
    w("    std::string_view data_hex;")
    w("    std::uint64_t chain_id;")
    w("    std::string_view private_key_hex;")
    w("    std::string_view preimage_digest_hex;")
    w("    std::string_view r_hex;")
    w("    std::string_view s_hex;")
    w("    int recovery_id;")
    w("    std::string_view raw_hex;")
    w("    std::string_view signer_hex;")
    w("};")
    w(f"inline constexpr std::array<TxVector, {len(txs)}> tx_vectors{{{{")
    for (nonce, gp, gl, to, val, data, chain, key) in txs:
        fields = [uint(nonce), uint(gp), uint(gl), to, uint(val), data]
        digest = keccak256(rlp(fields + [uint(chain), b"", b""]))
        r, s, rec = sign(key, digest)
        _crosscheck_with_cryptography(key, digest, r, s)
        assert recover(digest, r, s, rec) == address(key)
        raw = rlp(fields + [uint(2 * chain + 35 + rec), uint(r), uint(s)])
        w(f'    {{{nonce}u, "{gp}", {gl}u, "{hx(to)}", "{val}",')
        w(f'        "{hx(data)}", {chain}u,')
        w(f'        "{key:064x}",')
        w(f'        "{hx(digest)}",')
        w(f'        "{r:064x}",')
        w(f'        "{s:064x}", {rec},')
        w(f'        "{hx(raw)}",')
        w(f'        "{hx(address(key))}"}},')
    w("}};")
    w("")

    # forward digest
    fwds = []
    for i in range(3):
        sd = seeded("fwd", i)
        ukey = int.from_bytes(seeded("fwdkey", i), "big") % (N - 1) + 1
        chain = [1337, 1, 5][i]
        forwarder = seeded("forwarder", i)[:20]
        to = sd[:20]
        value, gas, unonce = [0, 5, 10**18][i], [100000, 21000, 1][i], [0, 1, 99][i]
        data = [b"", b"\xde\xad\xbe\xef", seeded("fdata", i)][i]
        digest = keccak256(rlp([uint(chain), forwarder, address(ukey), to, uint(value),
                                uint(gas), uint(unonce), keccak256(data)]))
        fwds.append((chain, forwarder, ukey, to, value, gas, unonce, data, digest))
    w("struct ForwardVector")
    w("{")
    w("    std::uint64_t chain_id;")
    w("    std::string_view forwarder_hex;")
    w("    std::string_view user_key_hex;")
    w("    std::string_view from_hex;")
    w("    std::string_view to_hex;")
    w("    std::string_view value;")
    w("    std::uint64_t gas;")
    w("    std::uint64_t user_nonce;")
    w("    std::string_view data_hex;")
    w("    std::string_view digest_hex;")
    w("};")
    w(f"inline constexpr std::array<ForwardVector, {len(fwds)}> forward_vectors{{{{")
    for (chain, forwarder, ukey, to, value, gas, unonce, data, digest) in fwds:
        w(f'    {{{chain}u, "{hx(forwarder)}", "{ukey:064x}",')
        w(f'        "{hx(address(ukey))}", "{hx(to)}", "{value}", {gas}u, {unonce}u,')
        w(f'        "{hx(data)}",')
        w(f'        "{hx(digest)}"}},')
    w("}};")
    w("}  // namespace metarelay::test::oracle")
    print("\n".join(out))


if __name__ == "__main__":
    sys.exit(main())
