/*
 * Copyright 2026 The rankgames Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace rankgames {

/// Natural numbers extended with an absorbing infinity.
class extnat {
  public:
    constexpr extnat() noexcept = default;
    constexpr extnat(std::uint64_t v) noexcept : value_(v) {}  // NOLINT: implicit by intent

    static constexpr extnat infinity() noexcept
    {
        extnat r;
        r.inf_ = true;
        return r;
    }

    constexpr bool is_infinite() const noexcept { return inf_; }
    constexpr bool is_finite() const noexcept { return !inf_; }

    /// Finite value; calling this on infinity is a logic error.
    constexpr std::uint64_t value() const noexcept { return value_; }

    friend constexpr bool operator==(const extnat& a, const extnat& b) noexcept
    {
        return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
    }

    friend constexpr std::strong_ordering operator<=>(const extnat& a, const extnat& b) noexcept
    {
        if (a.inf_ || b.inf_)
            return a.inf_ <=> b.inf_;
        return a.value_ <=> b.value_;
    }

    /// Saturating addition; infinity absorbs.
    friend constexpr extnat operator+(const extnat& a, const extnat& b) noexcept
    {
        if (a.inf_ || b.inf_)
            return infinity();
        if (a.value_ > std::numeric_limits<std::uint64_t>::max() - b.value_)
            return infinity();
        return extnat(a.value_ + b.value_);
    }

    std::string to_string() const { return inf_ ? std::string("inf") : std::to_string(value_); }

  private:
    std::uint64_t value_ = 0;
    bool inf_ = false;
};

inline constexpr extnat max(const extnat& a, const extnat& b) noexcept { return a < b ? b : a; }
inline constexpr extnat min(const extnat& a, const extnat& b) noexcept { return b < a ? b : a; }

inline std::ostream& operator<<(std::ostream& os, const extnat& x) { return os << x.to_string(); }

}  // namespace rankgames
