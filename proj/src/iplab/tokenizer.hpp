// iplab/tokenizer.hpp

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "iplab/manifest.hpp"

namespace iplab {

// Character tokenizer over a fixed symbol inventory. The CTC blank is the
// extra class at index |symbols| and is never produced by encode.
struct Tokenizer {
  std::vector<char> symbols;

  int blank_index() const { return static_cast<int>(symbols.size()); }
  int vocab_size() const { return static_cast<int>(symbols.size()) + 1; }

  // First `alphabet_size` lowercase letters, 'a' onward.
  static Tokenizer letters(int alphabet_size);

  // Sorted distinct characters of the normalized texts in the given
  // manifests; entries without text are skipped.
  static Tokenizer from_manifests(const std::vector<const Manifest*>& manifests);

  // Lowercase ASCII, collapse whitespace runs to single spaces, trim ends.
  static std::string normalize(const std::string& text);

  // Throws std::invalid_argument naming the first unknown character.
  std::vector<int> encode(const std::string& text) const;
  std::string decode_ids(const std::vector<int>& ids) const;
};

}  // namespace iplab
