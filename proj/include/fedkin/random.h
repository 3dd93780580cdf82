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

#ifndef FEDKIN_RANDOM_H_
#define FEDKIN_RANDOM_H_

#include <array>
#include <cstddef>
#include <cstdint>

#include "absl/strings/string_view.h"

namespace fedkin {

// Deterministic random stream built on the ChaCha20 (IETF, RFC 8439) block
// function. The 256-bit key is the 64-bit seed in little-endian followed by
// zero bytes; the 96-bit nonce is the 64-bit stream id in little-endian
// followed by zero bytes; the block counter starts at zero. Output words are
// consecutive little-endian 64-bit chunks of the keystream.
//
// Every party that implements the same construction obtains the same words,
// which is what makes seed-derived permutations bit-exact across
// researchers.
class ChaChaStream {
 public:
  explicit ChaChaStream(uint64_t seed, uint64_t stream_id = 0);

  // Positions the stream so that the next call to NextU64() returns the
  // keystream word with the given index.
  void SeekWord(uint64_t word_index);

  uint64_t NextU64();

  // Uniform double in [0, 1) with 53 bits of precision: (word >> 11) * 2^-53.
  double NextDouble();

  // Uniform integer in [0, bound). Rejects words below 2^64 mod bound, then
  // reduces modulo bound. Requires bound > 0.
  uint64_t UniformBelow(uint64_t bound);

 private:
  static constexpr size_t kBlocksPerRefill = 16;
  static constexpr size_t kWordsPerBlock = 8;
  static constexpr size_t kBufferWords = kBlocksPerRefill * kWordsPerBlock;

  void Refill();

  std::array<unsigned char, 32> key_{};
  std::array<unsigned char, 12> nonce_{};
  uint64_t next_block_ = 0;
  std::array<uint64_t, kBufferWords> buffer_{};
  size_t position_ = kBufferWords;
};

// 64-bit FNV-1a; used to turn human-readable stream labels into stream ids.
uint64_t Fnv1a64(absl::string_view text);

// Derives an independent child seed from `parent` for the labelled purpose
// and index. Child seeds for distinct (label, index) are unrelated streams.
uint64_t DeriveSeed(uint64_t parent, absl::string_view label,
                    uint64_t index = 0);

}  // namespace fedkin

#endif  // FEDKIN_RANDOM_H_
