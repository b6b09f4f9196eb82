// metarelay: SGX-style meta-transaction relayer
// Copyright 2026 The metarelay Authors.
// SPDX-License-Identifier: Apache-2.0

#include <metarelay/crypto/symmetric.hpp>
#include <openssl/evp.h>
#include <openssl/kdf.h>
#include <openssl/sha.h>
#include <memory>

namespace metarelay::crypto
{
namespace
{
struct CipherCtxFree
{
    void operator()(EVP_CIPHER_CTX* p) const noexcept { EVP_CIPHER_CTX_free(p); }
};
struct PkeyCtxFree
{
    void operator()(EVP_PKEY_CTX* p) const noexcept { EVP_PKEY_CTX_free(p); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxFree>;

[[noreturn]] void openssl_failure(const char* what)
{
    throw std::runtime_error{std::string{"openssl: "} + what};
}

void check_key_nonce(bytes_view key, bytes_view nonce)
{
    if (key.size() != aead_key_size)
        throw Error{Errc::invalid_argument, "aead key must be 32 bytes"};
    if (nonce.size() != aead_nonce_size)
        throw Error{Errc::invalid_argument, "aead nonce must be 12 bytes"};
}

CipherCtx init_gcm(bytes_view key, bytes_view nonce, bool encrypt)
{
    CipherCtx c{EVP_CIPHER_CTX_new()};
    if (!c)
        openssl_failure("EVP_CIPHER_CTX_new");
    const auto init = encrypt ? EVP_EncryptInit_ex : EVP_DecryptInit_ex;
    if (init(c.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr) != 1 ||
        EVP_CIPHER_CTX_ctrl(c.get(), EVP_CTRL_GCM_SET_IVLEN, static_cast<int>(nonce.size()),
            nullptr) != 1 ||
        init(c.get(), nullptr, nullptr, key.data(), nonce.data()) != 1)
        openssl_failure("gcm init");
    return c;
}
}  // namespace

bytes aead_seal(bytes_view key, bytes_view nonce, bytes_view aad, bytes_view plaintext)
{
    check_key_nonce(key, nonce);
    auto c = init_gcm(key, nonce, true);
    int len = 0;
    if (!aad.empty() &&
        EVP_EncryptUpdate(c.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())) != 1)
        openssl_failure("gcm aad");

    bytes out(plaintext.size() + aead_tag_size);
    int written = 0;
    if (!plaintext.empty())
    {
        if (EVP_EncryptUpdate(c.get(), out.data(), &len, plaintext.data(),
                static_cast<int>(plaintext.size())) != 1)
            openssl_failure("gcm encrypt");
        written = len;
    }
    if (EVP_EncryptFinal_ex(c.get(), out.data() + written, &len) != 1)
        openssl_failure("gcm final");
    written += len;
    if (EVP_CIPHER_CTX_ctrl(c.get(), EVP_CTRL_GCM_GET_TAG, static_cast<int>(aead_tag_size),
            out.data() + written) != 1)
        openssl_failure("gcm tag");
    out.resize(static_cast<std::size_t>(written) + aead_tag_size);
    return out;
}

bytes aead_open(bytes_view key, bytes_view nonce, bytes_view aad, bytes_view sealed)
{
    check_key_nonce(key, nonce);
    if (sealed.size() < aead_tag_size)
        throw Error{Errc::authentication_failure, "ciphertext shorter than tag"};
    const auto ct = sealed.first(sealed.size() - aead_tag_size);
    bytes tag{sealed.end() - static_cast<std::ptrdiff_t>(aead_tag_size), sealed.end()};

    auto c = init_gcm(key, nonce, false);
    int len = 0;
    if (!aad.empty() &&
        EVP_DecryptUpdate(c.get(), nullptr, &len, aad.data(), static_cast<int>(aad.size())) != 1)
        openssl_failure("gcm aad");

    bytes out(ct.size());
    int written = 0;
    if (!ct.empty())
    {
        if (EVP_DecryptUpdate(c.get(), out.data(), &len, ct.data(), static_cast<int>(ct.size())) !=
            1)
            openssl_failure("gcm decrypt");
        written = len;
    }
    if (EVP_CIPHER_CTX_ctrl(c.get(), EVP_CTRL_GCM_SET_TAG, static_cast<int>(tag.size()),
            tag.data()) != 1)
        openssl_failure("gcm set tag");
    if (EVP_DecryptFinal_ex(c.get(), out.data() + written, &len) != 1)
    {
        secure_wipe(out);
        throw Error{Errc::authentication_failure, "authentication tag mismatch"};
    }
    out.resize(static_cast<std::size_t>(written + len));
    return out;
}

bytes hkdf_sha256(bytes_view ikm, bytes_view salt, bytes_view info, std::size_t length)
{
    std::unique_ptr<EVP_PKEY_CTX, PkeyCtxFree> c{EVP_PKEY_CTX_new_id(EVP_PKEY_HKDF, nullptr)};
    if (!c)
        openssl_failure("EVP_PKEY_CTX_new_id");
    // OpenSSL rejects a null salt pointer even with zero length.
    static const uint8_t empty = 0;
    const uint8_t* salt_ptr = salt.empty() ? &empty : salt.data();
    if (EVP_PKEY_derive_init(c.get()) != 1 ||
        EVP_PKEY_CTX_set_hkdf_md(c.get(), EVP_sha256()) != 1 ||
        EVP_PKEY_CTX_set1_hkdf_salt(c.get(), salt_ptr, static_cast<int>(salt.size())) != 1 ||
        EVP_PKEY_CTX_set1_hkdf_key(c.get(), ikm.data(), static_cast<int>(ikm.size())) != 1 ||
        EVP_PKEY_CTX_add1_hkdf_info(c.get(), info.data(), static_cast<int>(info.size())) != 1)
        openssl_failure("hkdf setup");
    bytes out(length);
    std::size_t out_len = length;
    if (EVP_PKEY_derive(c.get(), out.data(), &out_len) != 1 || out_len != length)
        openssl_failure("hkdf derive");
    return out;
}

bytes scrypt(std::string_view passphrase, bytes_view salt, const ScryptParams& params,
    std::size_t length)
{
    bytes out(length);
    if (EVP_PBE_scrypt(passphrase.data(), passphrase.size(), salt.data(), salt.size(), params.n,
            params.r, params.p, 256ull * 1024 * 1024, out.data(), out.size()) != 1)
        openssl_failure("scrypt");
    return out;
}

Hash32 sha256(bytes_view data)
{
    Hash32 out;
    SHA256(data.data(), data.size(), out.bytes.data());
    return out;
}
}  // namespace metarelay::crypto
