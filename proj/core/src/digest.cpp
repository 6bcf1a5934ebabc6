#include "rulesmith/digest.hpp"

#include <openssl/evp.h>

#include <array>
#include <vector>

#include "rulesmith/errors.hpp"

namespace rulesmith {

std::string sha256_hex(std::string_view data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw Error("sha256 failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

std::string base64_encode(std::string_view data) {
    std::vector<unsigned char> buf(4 * ((data.size() + 2) / 3) + 1);
    const int n = EVP_EncodeBlock(buf.data(), reinterpret_cast<const unsigned char*>(data.data()),
                                  static_cast<int>(data.size()));
    return std::string(reinterpret_cast<const char*>(buf.data()), static_cast<std::size_t>(n));
}

std::string base64_decode(std::string_view encoded) {
    if (encoded.size() % 4 != 0) throw InputError("base64 length is not a multiple of 4");
    if (encoded.empty()) return {};
    std::vector<unsigned char> buf(3 * (encoded.size() / 4) + 1);
    const int n = EVP_DecodeBlock(buf.data(), reinterpret_cast<const unsigned char*>(encoded.data()),
                                  static_cast<int>(encoded.size()));
    if (n < 0) throw InputError("malformed base64");
    // EVP_DecodeBlock keeps the bytes produced by '=' padding.
    std::size_t size = static_cast<std::size_t>(n);
    if (encoded.back() == '=') --size;
    if (encoded.size() > 1 && encoded[encoded.size() - 2] == '=') --size;
    return std::string(reinterpret_cast<const char*>(buf.data()), size);
}

}  // namespace rulesmith
