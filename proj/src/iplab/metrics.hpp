// iplab/metrics.hpp

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

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace iplab {

struct ErrorRateReport {
  std::int64_t substitutions = 0;
  std::int64_t insertions = 0;
  std::int64_t deletions = 0;
  std::int64_t ref_len = 0;
  double rate = 0.0;  // (S+I+D) / max(ref_len, 1)

  std::int64_t errors() const { return substitutions + insertions + deletions; }
};

// Levenshtein distance with unit costs between reference `ref` and
// hypothesis `hyp`. The S/I/D decomposition follows a fixed backtrace
// preference (match > substitution > deletion > insertion) so reports are
// reproducible.
ErrorRateReport edit_distance(const std::vector<std::string>& ref,
                              const std::vector<std::string>& hyp);

// Whitespace tokenization for WER; UTF-8 code point tokenization for CER.
std::vector<std::string> split_words(const std::string& text);
std::vector<std::string> split_chars(const std::string& text);

ErrorRateReport wer_report(const std::string& ref, const std::string& hyp);
ErrorRateReport cer_report(const std::string& ref, const std::string& hyp);
double wer(const std::string& ref, const std::string& hyp);
double cer(const std::string& ref, const std::string& hyp);

// Number of UTF-8 code points; spaces and punctuation count by default.
std::size_t count_chars(const std::string& text, bool count_whitespace = true);

// Characters per second. Throws std::invalid_argument if duration <= 0.
double character_rate(const std::string& text, double duration_s,
                      bool count_whitespace = true);

// Pooled word error rate: total errors over all pairs divided by total
// reference words. Throws std::runtime_error listing ids that have no
// hypothesis. Pairs are (reference text, hypothesis text) keyed by id.
ErrorRateReport corpus_wer(
    const std::vector<std::pair<std::string, std::string>>& id_and_ref,
    const std::unordered_map<std::string, std::string>& hyps);

}  // namespace iplab
