#include "priv/pii/crypto.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <memory>

namespace priv::pii {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return 10 + (c - 'a');
  return -1;
}

using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)>;

CipherCtx make_cipher_ctx() {
  CipherCtx ctx(EVP_CIPHER_CTX_new(), &EVP_CIPHER_CTX_free);
  if (!ctx) throw std::bad_alloc();
  return ctx;
}

}  // namespace

std::string to_hex(const unsigned char* data, std::size_t len) {
  std::string out;
  out.reserve(len * 2);
  for (std::size_t i = 0; i < len; ++i) {
    out += kHexDigits[data[i] >> 4];
    out += kHexDigits[data[i] & 0x0f];
  }
  return out;
}

std::string to_hex(const Bytes& data) { return to_hex(data.data(), data.size()); }

Bytes from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) throw FormatError("hex string has odd length");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw FormatError("invalid hex digit");
    out[i] = static_cast<unsigned char>((hi << 4) | lo);
  }
  return out;
}

std::array<unsigned char, 32> hmac_sha256(const unsigned char* key, std::size_t key_len,
                                          const unsigned char* data, std::size_t data_len) {
  std::array<unsigned char, 32> out{};
  unsigned int out_len = 0;
  if (HMAC(EVP_sha256(), key, static_cast<int>(key_len), data, data_len, out.data(), &out_len) ==
          nullptr ||
      out_len != out.size()) {
    throw StateError("HMAC-SHA256 failed");
  }
  return out;
}

std::array<unsigned char, 32> hmac_sha256(const std::array<unsigned char, 32>& key,
                                          const std::string& data) {
  return hmac_sha256(key.data(), key.size(),
                     reinterpret_cast<const unsigned char*>(data.data()), data.size());
}

Bytes aes256gcm_seal(const std::array<unsigned char, 32>& key,
                     const std::array<unsigned char, 12>& nonce, const std::string& plaintext,
                     const std::string& aad) {
  CipherCtx ctx = make_cipher_ctx();
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), nonce.data()) != 1) {
    throw StateError("GCM encrypt init failed");
  }
  int len = 0;
  if (!aad.empty() &&
      EVP_EncryptUpdate(ctx.get(), nullptr, &len,
                        reinterpret_cast<const unsigned char*>(aad.data()),
                        static_cast<int>(aad.size())) != 1) {
    throw StateError("GCM aad update failed");
  }
  Bytes out(plaintext.size() + 16);
  int ct_len = 0;
  if (!plaintext.empty() &&
      EVP_EncryptUpdate(ctx.get(), out.data(), &ct_len,
                        reinterpret_cast<const unsigned char*>(plaintext.data()),
                        static_cast<int>(plaintext.size())) != 1) {
    throw StateError("GCM encrypt update failed");
  }
  if (EVP_EncryptFinal_ex(ctx.get(), out.data() + ct_len, &len) != 1) {
    throw StateError("GCM encrypt final failed");
  }
  ct_len += len;
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, 16, out.data() + ct_len) != 1) {
    throw StateError("GCM tag extraction failed");
  }
  out.resize(static_cast<std::size_t>(ct_len) + 16);
  return out;
}

std::string aes256gcm_open(const std::array<unsigned char, 32>& key,
                           const std::array<unsigned char, 12>& nonce, const Bytes& ct_and_tag,
                           const std::string& aad) {
  if (ct_and_tag.size() < 16) throw FormatError("ciphertext shorter than its tag");
  const std::size_t ct_len = ct_and_tag.size() - 16;
  CipherCtx ctx = make_cipher_ctx();
  if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), nonce.data()) != 1) {
    throw StateError("GCM decrypt init failed");
  }
  int len = 0;
  if (!aad.empty() &&
      EVP_DecryptUpdate(ctx.get(), nullptr, &len,
                        reinterpret_cast<const unsigned char*>(aad.data()),
                        static_cast<int>(aad.size())) != 1) {
    throw StateError("GCM aad update failed");
  }
  std::string out(ct_len, '\0');
  int pt_len = 0;
  if (ct_len > 0 &&
      EVP_DecryptUpdate(ctx.get(), reinterpret_cast<unsigned char*>(out.data()), &pt_len,
                        ct_and_tag.data(), static_cast<int>(ct_len)) != 1) {
    throw VaultAuthError("ciphertext failed authentication");
  }
  Bytes tag(ct_and_tag.end() - 16, ct_and_tag.end());
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, 16, tag.data()) != 1) {
    throw StateError("GCM tag set failed");
  }
  if (EVP_DecryptFinal_ex(ctx.get(), reinterpret_cast<unsigned char*>(out.data()) + pt_len,
                          &len) != 1) {
    throw VaultAuthError("ciphertext failed authentication");
  }
  out.resize(static_cast<std::size_t>(pt_len) + static_cast<std::size_t>(len));
  return out;
}

bool ct_equal(const unsigned char* a, const unsigned char* b, std::size_t len) {
  return CRYPTO_memcmp(a, b, len) == 0;
}

}  // namespace priv::pii
