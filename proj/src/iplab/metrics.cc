// iplab/metrics.cc

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

#include "iplab/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace iplab {

namespace {

enum class Move : std::uint8_t { kMatch, kSub, kDel, kIns };

}  // namespace

ErrorRateReport edit_distance(const std::vector<std::string>& ref,
                              const std::vector<std::string>& hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();

  std::vector<std::int32_t> dist((n + 1) * (m + 1));
  std::vector<Move> back((n + 1) * (m + 1));
  auto at = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };

  for (std::size_t i = 0; i <= n; ++i) {
    dist[at(i, 0)] = static_cast<std::int32_t>(i);
    back[at(i, 0)] = Move::kDel;
  }
  for (std::size_t j = 0; j <= m; ++j) {
    dist[at(0, j)] = static_cast<std::int32_t>(j);
    back[at(0, j)] = Move::kIns;
  }

  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const bool match = ref[i - 1] == hyp[j - 1];
      const std::int32_t diag = dist[at(i - 1, j - 1)] + (match ? 0 : 1);
      const std::int32_t del = dist[at(i - 1, j)] + 1;
      const std::int32_t ins = dist[at(i, j - 1)] + 1;
      // Tie-break preference: match > substitution > deletion > insertion.
      std::int32_t best = diag;
      Move move = match ? Move::kMatch : Move::kSub;
      if (del < best) {
        best = del;
        move = Move::kDel;
      }
      if (ins < best) {
        best = ins;
        move = Move::kIns;
      }
      dist[at(i, j)] = best;
      back[at(i, j)] = move;
    }
  }

  ErrorRateReport report;
  report.ref_len = static_cast<std::int64_t>(n);
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    switch (i == 0 ? Move::kIns : (j == 0 ? Move::kDel : back[at(i, j)])) {
      case Move::kMatch:
        --i;
        --j;
        break;
      case Move::kSub:
        ++report.substitutions;
        --i;
        --j;
        break;
      case Move::kDel:
        ++report.deletions;
        --i;
        break;
      case Move::kIns:
        ++report.insertions;
        --j;
        break;
    }
  }
  report.rate = static_cast<double>(report.errors()) /
                static_cast<double>(std::max<std::int64_t>(report.ref_len, 1));
  return report;
}

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> words;
  std::istringstream in(text);
  std::string word;
  while (in >> word) words.push_back(word);
  return words;
}

std::vector<std::string> split_chars(const std::string& text) {
  std::vector<std::string> chars;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t len = 1;
    const auto byte = static_cast<unsigned char>(text[i]);
    if ((byte & 0xE0) == 0xC0) len = 2;
    else if ((byte & 0xF0) == 0xE0) len = 3;
    else if ((byte & 0xF8) == 0xF0) len = 4;
    len = std::min(len, text.size() - i);
    chars.push_back(text.substr(i, len));
    i += len;
  }
  return chars;
}

ErrorRateReport wer_report(const std::string& ref, const std::string& hyp) {
  return edit_distance(split_words(ref), split_words(hyp));
}

ErrorRateReport cer_report(const std::string& ref, const std::string& hyp) {
  return edit_distance(split_chars(ref), split_chars(hyp));
}

double wer(const std::string& ref, const std::string& hyp) {
  return wer_report(ref, hyp).rate;
}

double cer(const std::string& ref, const std::string& hyp) {
  return cer_report(ref, hyp).rate;
}

std::size_t count_chars(const std::string& text, bool count_whitespace) {
  std::size_t count = 0;
  for (const auto& cp : split_chars(text)) {
    if (!count_whitespace && cp.size() == 1 &&
        std::isspace(static_cast<unsigned char>(cp[0]))) {
      continue;
    }
    ++count;
  }
  return count;
}

double character_rate(const std::string& text, double duration_s,
                      bool count_whitespace) {
  if (duration_s <= 0.0) {
    throw std::invalid_argument("character_rate: duration must be > 0");
  }
  return static_cast<double>(count_chars(text, count_whitespace)) / duration_s;
}

ErrorRateReport corpus_wer(
    const std::vector<std::pair<std::string, std::string>>& id_and_ref,
    const std::unordered_map<std::string, std::string>& hyps) {
  std::vector<std::string> missing;
  for (const auto& [id, ref] : id_and_ref) {
    if (hyps.find(id) == hyps.end()) missing.push_back(id);
  }
  if (!missing.empty()) {
    std::string msg = "corpus_wer: missing hypotheses for ids:";
    for (const auto& id : missing) msg += " " + id;
    throw std::runtime_error(msg);
  }

  ErrorRateReport pooled;
  for (const auto& [id, ref] : id_and_ref) {
    const ErrorRateReport one = wer_report(ref, hyps.at(id));
    pooled.substitutions += one.substitutions;
    pooled.insertions += one.insertions;
    pooled.deletions += one.deletions;
    pooled.ref_len += one.ref_len;
  }
  pooled.rate = static_cast<double>(pooled.errors()) /
                static_cast<double>(std::max<std::int64_t>(pooled.ref_len, 1));
  return pooled;
}

}  // namespace iplab
