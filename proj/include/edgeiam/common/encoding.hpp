// Copyright 2026 The Edge IAM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace edgeiam {

using Bytes = std::vector<std::uint8_t>;

/// URL-safe base64 without padding.
std::string base64url_encode(std::span<const std::uint8_t> data);
std::string base64url_encode(std::string_view data);

/// Strict decoder: rejects padding, characters outside the URL-safe
/// alphabet, impossible lengths and non-zero trailing bits, so every byte
/// string has exactly one accepted encoding.
std::optional<Bytes> base64url_decode(std::string_view text);

std::string hex_encode(std::span<const std::uint8_t> data);
/// Accepts upper or lower case digits; length must be even.
std::optional<Bytes> hex_decode(std::string_view text);
bool is_lower_hex(std::string_view text);

/// `[a-z][a-z0-9_]{0,63}`, the grammar shared by type names, relation names
/// and credential attribute tags.
bool is_identifier(std::string_view text);

std::string to_lower_ascii(std::string_view text);
std::string to_upper_ascii(std::string_view text);

}  // namespace edgeiam
