// iplab/tokenizer.cc

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

#include "iplab/tokenizer.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace iplab {

Tokenizer Tokenizer::letters(int alphabet_size) {
  if (alphabet_size < 1 || alphabet_size > 26) {
    throw std::invalid_argument("Tokenizer::letters: alphabet_size in [1,26]");
  }
  Tokenizer tok;
  for (int i = 0; i < alphabet_size; ++i) {
    tok.symbols.push_back(static_cast<char>('a' + i));
  }
  return tok;
}

Tokenizer Tokenizer::from_manifests(
    const std::vector<const Manifest*>& manifests) {
  std::set<char> chars;
  for (const Manifest* m : manifests) {
    for (const auto& utt : m->entries) {
      if (!utt.text) continue;
      for (char c : normalize(*utt.text)) chars.insert(c);
    }
  }
  Tokenizer tok;
  tok.symbols.assign(chars.begin(), chars.end());
  if (tok.symbols.empty()) {
    throw std::runtime_error("Tokenizer::from_manifests: no text found");
  }
  return tok;
}

std::string Tokenizer::normalize(const std::string& text) {
  std::string out;
  bool in_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out += ' ';
    in_space = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::vector<int> Tokenizer::encode(const std::string& text) const {
  const std::string norm = normalize(text);
  std::vector<int> ids;
  ids.reserve(norm.size());
  for (char c : norm) {
    const auto it = std::find(symbols.begin(), symbols.end(), c);
    if (it == symbols.end()) {
      throw std::invalid_argument(std::string("encode: unknown character '") +
                                  c + "'");
    }
    ids.push_back(static_cast<int>(it - symbols.begin()));
  }
  return ids;
}

std::string Tokenizer::decode_ids(const std::vector<int>& ids) const {
  std::string out;
  out.reserve(ids.size());
  for (int id : ids) {
    if (id < 0 || id >= static_cast<int>(symbols.size())) {
      throw std::invalid_argument("decode_ids: id out of range: " +
                                  std::to_string(id));
    }
    out += symbols[static_cast<std::size_t>(id)];
  }
  return out;
}

}  // namespace iplab
