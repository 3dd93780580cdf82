// Copyright 2026 The Fedkin Authors
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

#include "fedkin/random.h"

#include <sodium.h>

#include <cstring>
#include <limits>
#include <stdexcept>

namespace fedkin {
namespace {

void StoreLittleEndian(uint64_t value, unsigned char* out) {
  for (int i = 0; i < 8; ++i) {
    out[i] = static_cast<unsigned char>(value >> (8 * i));
  }
}

uint64_t LoadLittleEndian(const unsigned char* in) {
  uint64_t value = 0;
  for (int i = 7; i >= 0; --i) value = (value << 8) | in[i];
  return value;
}

struct SodiumInit {
  SodiumInit() {
    if (sodium_init() < 0) throw std::runtime_error("sodium_init failed");
  }
};

}  // namespace

ChaChaStream::ChaChaStream(uint64_t seed, uint64_t stream_id) {
  static const SodiumInit init;
  StoreLittleEndian(seed, key_.data());
  StoreLittleEndian(stream_id, nonce_.data());
}

void ChaChaStream::SeekWord(uint64_t word_index) {
  next_block_ = word_index / kWordsPerBlock;
  Refill();
  position_ = word_index % kWordsPerBlock;
}

void ChaChaStream::Refill() {
  static const std::array<unsigned char, kBufferWords * 8> kZeros{};
  std::array<unsigned char, kBufferWords * 8> bytes;
  // The IETF variant has a 32-bit block counter; 2^32 blocks (256 GiB) per
  // stream is far beyond anything the simulator draws.
  crypto_stream_chacha20_ietf_xor_ic(
      bytes.data(), kZeros.data(), bytes.size(), nonce_.data(),
      static_cast<uint32_t>(next_block_), key_.data());
  for (size_t i = 0; i < kBufferWords; ++i) {
    buffer_[i] = LoadLittleEndian(bytes.data() + 8 * i);
  }
  next_block_ += kBlocksPerRefill;
  position_ = 0;
}

uint64_t ChaChaStream::NextU64() {
  if (position_ == kBufferWords) Refill();
  return buffer_[position_++];
}

double ChaChaStream::NextDouble() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

uint64_t ChaChaStream::UniformBelow(uint64_t bound) {
  // 2^64 mod bound, computed without 128-bit arithmetic.
  const uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const uint64_t word = NextU64();
    if (word >= threshold) return word % bound;
  }
}

uint64_t Fnv1a64(absl::string_view text) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

uint64_t DeriveSeed(uint64_t parent, absl::string_view label, uint64_t index) {
  ChaChaStream stream(parent, Fnv1a64(label) ^ (index * 0x9e3779b97f4a7c15ULL));
  return stream.NextU64();
}

}  // namespace fedkin
