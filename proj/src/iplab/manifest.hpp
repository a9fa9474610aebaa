// iplab/manifest.hpp

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

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

namespace iplab {

// Word with aligner timestamps in seconds, relative to the utterance start.
struct WordStamp {
  std::string word;
  double start = 0.0;
  double end = 0.0;

  bool operator==(const WordStamp&) const = default;
};

// One dataset entry. Features are either inline (T x D, one row per frame)
// or a reference to a file holding a JSON array of frames; at most one of
// the two is set. Unknown manifest fields are carried in `extra` and written
// back untouched.
struct Utterance {
  std::string id;
  std::optional<Eigen::MatrixXd> features;
  std::optional<std::string> features_path;
  std::optional<std::string> text;
  double duration = 0.0;
  std::optional<std::string> lang;
  std::optional<std::vector<WordStamp>> words;
  std::optional<std::string> source;
  nlohmann::json extra = nlohmann::json::object();
};

bool operator==(const Utterance& a, const Utterance& b);

struct Manifest {
  std::vector<Utterance> entries;

  bool operator==(const Manifest&) const = default;
};

// JSON Lines serialization. read_manifest throws std::runtime_error naming
// the offending line on malformed JSON, schema violations, or duplicate ids.
Manifest read_manifest(const std::filesystem::path& path);
void write_manifest(const Manifest& manifest, const std::filesystem::path& path);

nlohmann::json utterance_to_json(const Utterance& utt);
Utterance utterance_from_json(const nlohmann::json& j);

// Inline features, or the referenced file loaded relative to base_dir.
// Throws if the utterance has no features at all.
Eigen::MatrixXd resolve_features(const Utterance& utt,
                                 const std::filesystem::path& base_dir);

// Per-stage accounting. kept + dropped == input size; reasons sum to dropped.
struct FilterReport {
  std::string stage;
  std::int64_t kept = 0;
  std::int64_t dropped = 0;
  std::map<std::string, std::int64_t> reasons;

  nlohmann::json to_json() const;
};

using HypMap = std::unordered_map<std::string, std::string>;

// All filters are pure selections: kept entries are an unmodified
// subsequence of the input, in input order.
std::pair<Manifest, FilterReport> filter_duration(const Manifest& m,
                                                  double max_seconds);
std::pair<Manifest, FilterReport> filter_language(const Manifest& m,
                                                  const std::string& target);
std::pair<Manifest, FilterReport> filter_char_rate(const Manifest& m,
                                                   const HypMap& hyps,
                                                   double low, double high,
                                                   bool count_whitespace = true);
std::pair<Manifest, FilterReport> filter_wer(const Manifest& m,
                                             const HypMap& hyps,
                                             double threshold);

// Sentence boundary markers; entries are single UTF-8 code points matched
// against the final code point of each word token.
const std::set<std::string>& default_boundary_chars();

// Groups consecutive words into sentences ending at boundary punctuation,
// crops inline features to each sentence's frame range, and keeps sentences
// whose duration lies in [min_s, max_s]. Child ids are "<parent-id>-segN"
// with N counting kept segments from 0; child word times are shifted to be
// relative to the segment start. The frame rate used for cropping is
// inferred as frames / parent duration. Throws "no-timestamps" if the
// utterance has no words.
std::vector<Utterance> segment_utterance(
    const Utterance& utt, double min_s, double max_s,
    const std::set<std::string>& boundary_chars = default_boundary_chars());

}  // namespace iplab
