#include "fissile/key.hpp"

#include <openssl/evp.h>

namespace fissile {

KeyWriter& KeyWriter::u32(std::uint32_t value) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out_.push_back(static_cast<char>((value >> shift) & 0xffu));
  }
  return *this;
}

KeyWriter& KeyWriter::i32(std::int32_t value) {
  // Offset so that negative values sort first.
  return u32(static_cast<std::uint32_t>(value) ^ 0x80000000u);
}

KeyWriter& KeyWriter::nested(std::string_view bytes) {
  u32(static_cast<std::uint32_t>(bytes.size()));
  out_.append(bytes);
  return *this;
}

std::uint32_t KeyReader::u32() {
  if (in_.size() - pos_ < 4) throw KeyError("truncated key");
  std::uint32_t value = 0;
  for (int k = 0; k < 4; ++k) {
    value = (value << 8) | static_cast<unsigned char>(in_[pos_ + k]);
  }
  pos_ += 4;
  return value;
}

std::int32_t KeyReader::i32() { return static_cast<std::int32_t>(u32() ^ 0x80000000u); }

std::string_view KeyReader::nested() {
  const auto length = u32();
  if (in_.size() - pos_ < length) throw KeyError("truncated nested key");
  auto part = in_.substr(pos_, length);
  pos_ += length;
  return part;
}

void KeyReader::expect_done() const {
  if (!done()) throw KeyError("trailing bytes in key");
}

Key encode_ints(std::span<const int> values) {
  KeyWriter w;
  for (int v : values) w.i32(v);
  return std::move(w).finish();
}

std::vector<int> decode_ints(std::string_view key) {
  if (key.size() % 4 != 0) throw KeyError("integer key length not a multiple of 4");
  KeyReader r(key);
  std::vector<int> out;
  out.reserve(key.size() / 4);
  while (!r.done()) out.push_back(r.i32());
  return out;
}

Key encode_tuple(std::span<const Key> parts) {
  KeyWriter w;
  w.u32(static_cast<std::uint32_t>(parts.size()));
  for (const auto& p : parts) w.nested(p);
  return std::move(w).finish();
}

std::vector<Key> decode_tuple(std::string_view key) {
  KeyReader r(key);
  const auto count = r.u32();
  std::vector<Key> parts;
  parts.reserve(count);
  for (std::uint32_t k = 0; k < count; ++k) parts.emplace_back(r.nested());
  r.expect_done();
  return parts;
}

std::string to_base64(std::string_view bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int written = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                      reinterpret_cast<const unsigned char*>(bytes.data()),
                                      static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(written));
  return out;
}

std::string from_base64(std::string_view text) {
  if (text.size() % 4 != 0) throw KeyError("base64 length not a multiple of 4");
  std::string out(3 * (text.size() / 4), '\0');
  const int written = EVP_DecodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                      reinterpret_cast<const unsigned char*>(text.data()),
                                      static_cast<int>(text.size()));
  if (written < 0) throw KeyError("invalid base64");
  // EVP_DecodeBlock keeps the zero bytes produced by '=' padding.
  std::size_t padding = 0;
  if (!text.empty() && text.back() == '=') ++padding;
  if (text.size() > 1 && text[text.size() - 2] == '=') ++padding;
  out.resize(static_cast<std::size_t>(written) - padding);
  return out;
}

}  // namespace fissile
