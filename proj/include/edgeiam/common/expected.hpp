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

#include <stdexcept>
#include <type_traits>
#include <utility>
#include <variant>

namespace edgeiam {

template <typename E>
struct Unexpected {
  E error;
};

template <typename E>
Unexpected<std::decay_t<E>> unexpected(E&& e) {
  return Unexpected<std::decay_t<E>>{std::forward<E>(e)};
}

class BadExpectedAccess : public std::logic_error {
 public:
  BadExpectedAccess() : std::logic_error("value() called on an Expected holding an error") {}
};

/// Value-or-error return type used where failures are part of the normal
/// contract (verification outcomes, validation). Exceptions remain reserved
/// for I/O and configuration failures.
template <typename T, typename E>
class Expected {
 public:
  Expected(T value) : storage_(std::in_place_index<0>, std::move(value)) {}  // NOLINT
  Expected(Unexpected<E> err) : storage_(std::in_place_index<1>, std::move(err.error)) {}  // NOLINT

  bool has_value() const noexcept { return storage_.index() == 0; }
  explicit operator bool() const noexcept { return has_value(); }

  T& value() & {
    if (!has_value()) throw BadExpectedAccess();
    return std::get<0>(storage_);
  }
  const T& value() const& {
    if (!has_value()) throw BadExpectedAccess();
    return std::get<0>(storage_);
  }
  T&& value() && {
    if (!has_value()) throw BadExpectedAccess();
    return std::get<0>(std::move(storage_));
  }

  const E& error() const { return std::get<1>(storage_); }

  T& operator*() & { return value(); }
  const T& operator*() const& { return value(); }
  T* operator->() { return &value(); }
  const T* operator->() const { return &value(); }

 private:
  std::variant<T, E> storage_;
};

}  // namespace edgeiam
