// Copyright 2026 The qualplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/**
 * @file scale.hpp
 * @brief Finite totally ordered scales and their elements.
 *
 * A Scale is a list of K >= 2 display labels, lowest first. A Level is a rank
 * in [0, K-1] tagged with the scale it came from. Only the order matters:
 * labels such as "0.2" are never interpreted arithmetically. The lattice
 * operations are
 *
 *   meet(x, y) = min(x, y)     join(x, y) = max(x, y)     neg(x) = K-1-x
 *
 * Scales with identical label lists share a tag, so a model written to disk
 * and loaded back compares equal to the original. Mixing levels of distinct
 * scales throws ScaleMismatch.
 */

#include <charconv>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "qualplan/errors.hpp"

namespace qualplan {

class Scale;

class Level {
 public:
  std::size_t rank() const noexcept { return rank_; }
  std::size_t scale_size() const noexcept { return size_; }
  std::uint32_t scale_tag() const noexcept { return tag_; }

  bool is_bottom() const noexcept { return rank_ == 0; }
  bool is_top() const noexcept { return rank_ + 1u == size_; }
  bool same_scale(Level other) const noexcept { return tag_ == other.tag_; }

  friend bool operator==(Level a, Level b) {
    check_same(a, b);
    return a.rank_ == b.rank_;
  }
  friend std::strong_ordering operator<=>(Level a, Level b) {
    check_same(a, b);
    return a.rank_ <=> b.rank_;
  }

  friend Level neg(Level x) noexcept;
  friend Level top_of(Level x) noexcept;
  friend Level bottom_of(Level x) noexcept;
  friend Level meet(Level a, Level b);
  friend Level join(Level a, Level b);

 private:
  friend class Scale;

  Level(std::uint32_t tag, std::uint16_t rank, std::uint16_t size) noexcept
      : tag_(tag), rank_(rank), size_(size) {}

  static void check_same(Level a, Level b) {
    if (a.tag_ != b.tag_) {
      throw ScaleMismatch("levels belong to different scales");
    }
  }

  std::uint32_t tag_;
  std::uint16_t rank_;
  std::uint16_t size_;
};

/// The order-reversing involution: rank r maps to K-1-r.
inline Level neg(Level x) noexcept {
  return Level(x.tag_, static_cast<std::uint16_t>(x.size_ - 1u - x.rank_), x.size_);
}

/// Top level of x's scale.
inline Level top_of(Level x) noexcept {
  return Level(x.tag_, static_cast<std::uint16_t>(x.size_ - 1u), x.size_);
}

inline Level bottom_of(Level x) noexcept { return Level(x.tag_, 0, x.size_); }

inline Level meet(Level a, Level b) {
  Level::check_same(a, b);
  return a.rank_ <= b.rank_ ? a : b;
}

inline Level join(Level a, Level b) {
  Level::check_same(a, b);
  return a.rank_ >= b.rank_ ? a : b;
}

class Scale {
 public:
  /// Labels are listed from 0_L to 1_L. Throws InvalidArgument when there are
  /// fewer than two labels, duplicates, empty labels, or numeric labels that
  /// are not strictly increasing.
  explicit Scale(std::vector<std::string> labels) {
    if (labels.size() < 2) {
      throw InvalidArgument("a scale needs at least two levels");
    }
    if (labels.size() > 0xFFFFu) {
      throw InvalidArgument("scale too large");
    }
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
      if (l.empty()) throw InvalidArgument("empty scale label");
      if (!seen.insert(l).second) {
        throw InvalidArgument("duplicate scale label '" + l + "'");
      }
    }
    std::vector<double> numeric;
    for (const auto& l : labels) {
      auto v = parse_number(l);
      if (!v) break;
      numeric.push_back(*v);
    }
    if (numeric.size() == labels.size()) {
      for (std::size_t i = 1; i < numeric.size(); ++i) {
        if (!(numeric[i - 1] < numeric[i])) {
          throw InvalidArgument("numeric scale labels must be strictly increasing");
        }
      }
    }
    auto impl = std::make_shared<Impl>();
    impl->tag = intern(labels);
    impl->labels = std::move(labels);
    impl_ = std::move(impl);
  }

  /// A scale with labels "0", "1", ..., "K-1".
  static Scale ranks(std::size_t k) {
    std::vector<std::string> labels;
    labels.reserve(k);
    for (std::size_t i = 0; i < k; ++i) labels.push_back(std::to_string(i));
    return Scale(std::move(labels));
  }

  std::size_t size() const noexcept { return impl_->labels.size(); }
  std::uint32_t tag() const noexcept { return impl_->tag; }
  const std::vector<std::string>& labels() const noexcept { return impl_->labels; }

  Level bottom() const noexcept { return make(0); }
  Level top() const noexcept { return make(size() - 1); }

  Level level(std::size_t rank) const {
    if (rank >= size()) {
      throw InvalidArgument("rank " + std::to_string(rank) + " outside scale of size " +
                            std::to_string(size()));
    }
    return make(rank);
  }

  bool owns(Level x) const noexcept { return x.scale_tag() == tag(); }

  const std::string& label(Level x) const {
    if (!owns(x)) throw ScaleMismatch("level does not belong to this scale");
    return impl_->labels[x.rank()];
  }

  std::optional<Level> find(std::string_view label) const {
    for (std::size_t i = 0; i < size(); ++i) {
      if (impl_->labels[i] == label) return make(i);
    }
    return std::nullopt;
  }

  /// Matches a number against numerically valued labels ("0.20" matches 0.2).
  std::optional<Level> find_numeric(double value) const {
    for (std::size_t i = 0; i < size(); ++i) {
      auto v = parse_number(impl_->labels[i]);
      if (v && *v == value) return make(i);
    }
    return std::nullopt;
  }

  Level parse(std::string_view label) const {
    if (auto l = find(label)) return *l;
    throw InvalidArgument("label '" + std::string(label) + "' is not on the scale");
  }

  /// Every level, bottom first.
  std::vector<Level> levels() const {
    std::vector<Level> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(make(i));
    return out;
  }

  friend bool operator==(const Scale& a, const Scale& b) noexcept { return a.tag() == b.tag(); }

 private:
  struct Impl {
    std::uint32_t tag = 0;
    std::vector<std::string> labels;
  };

  Level make(std::size_t rank) const noexcept {
    return Level(impl_->tag, static_cast<std::uint16_t>(rank),
                 static_cast<std::uint16_t>(impl_->labels.size()));
  }

  static std::optional<double> parse_number(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
  }

  static std::uint32_t intern(const std::vector<std::string>& labels) {
    static std::mutex mutex;
    static std::map<std::vector<std::string>, std::uint32_t> registry;
    std::lock_guard lock(mutex);
    auto [it, inserted] =
        registry.emplace(labels, static_cast<std::uint32_t>(registry.size() + 1));
    return it->second;
  }

  std::shared_ptr<const Impl> impl_;
};

/// Maximum of a non-empty range of levels.
inline Level join_all(std::span<const Level> xs) {
  if (xs.empty()) throw InvalidArgument("join over an empty range");
  Level acc = xs.front();
  for (Level x : xs.subspan(1)) acc = join(acc, x);
  return acc;
}

/// Minimum of a non-empty range of levels.
inline Level meet_all(std::span<const Level> xs) {
  if (xs.empty()) throw InvalidArgument("meet over an empty range");
  Level acc = xs.front();
  for (Level x : xs.subspan(1)) acc = meet(acc, x);
  return acc;
}

}  // namespace qualplan
