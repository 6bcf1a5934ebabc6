#pragma once

#include <string>
#include <string_view>

namespace rulesmith {

std::string sha256_hex(std::string_view data);

std::string base64_encode(std::string_view data);

// Throws InputError on malformed input.
std::string base64_decode(std::string_view encoded);

}  // namespace rulesmith
