#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fissile {

/// Canonical element key: an opaque byte string. Equal elements must have
/// equal keys; ensembles never look inside.
using Key = std::string;

/// Thrown when a key cannot be decoded by the module that claims to own it.
class KeyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Appends fixed-width big-endian fields so that byte order agrees with
/// numeric order field by field.
class KeyWriter {
 public:
  KeyWriter& u32(std::uint32_t value);
  KeyWriter& i32(std::int32_t value);
  /// Length-prefixed nested key.
  KeyWriter& nested(std::string_view bytes);
  Key finish() && { return std::move(out_); }
  const Key& view() const noexcept { return out_; }

 private:
  Key out_;
};

class KeyReader {
 public:
  explicit KeyReader(std::string_view bytes) : in_(bytes) {}
  std::uint32_t u32();
  std::int32_t i32();
  std::string_view nested();
  bool done() const noexcept { return pos_ == in_.size(); }
  void expect_done() const;

 private:
  std::string_view in_;
  std::size_t pos_ = 0;
};

/// Key for a sequence of small integers (morphism images, subsets, ...).
Key encode_ints(std::span<const int> values);
std::vector<int> decode_ints(std::string_view key);

/// Key for a tuple of keys. The empty tuple is the key of the one-point set.
Key encode_tuple(std::span<const Key> parts);
std::vector<Key> decode_tuple(std::string_view key);

std::string to_base64(std::string_view bytes);
std::string from_base64(std::string_view text);

}  // namespace fissile
