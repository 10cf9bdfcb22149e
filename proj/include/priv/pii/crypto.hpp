#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "priv/errors.hpp"

namespace priv::pii {

using Bytes = std::vector<unsigned char>;

std::string to_hex(const unsigned char* data, std::size_t len);
std::string to_hex(const Bytes& data);

// Rejects odd length and non-hex digits. Accepts only lowercase a-f.
Bytes from_hex(const std::string& hex);

std::array<unsigned char, 32> hmac_sha256(const unsigned char* key, std::size_t key_len,
                                          const unsigned char* data, std::size_t data_len);
std::array<unsigned char, 32> hmac_sha256(const std::array<unsigned char, 32>& key,
                                          const std::string& data);

// AES-256-GCM. Output is ciphertext with the 16-byte tag appended.
Bytes aes256gcm_seal(const std::array<unsigned char, 32>& key,
                     const std::array<unsigned char, 12>& nonce, const std::string& plaintext,
                     const std::string& aad);

// Throws VaultAuthError when the tag (or aad binding) does not verify.
std::string aes256gcm_open(const std::array<unsigned char, 32>& key,
                           const std::array<unsigned char, 12>& nonce, const Bytes& ct_and_tag,
                           const std::string& aad);

bool ct_equal(const unsigned char* a, const unsigned char* b, std::size_t len);

}  // namespace priv::pii
