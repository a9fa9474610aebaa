// iplab/synthdata.hpp

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

#include <json.hpp>

#include "iplab/manifest.hpp"
#include "iplab/rng.hpp"

namespace iplab {

struct IntRange {
  int lo = 0;
  int hi = 0;  // inclusive
};

// Parameters of the synthetic corpus: each utterance is a random symbol
// string; each symbol emits a few frames of its prototype vector plus
// Gaussian noise.
struct SynthSpec {
  int alphabet_size = 8;
  int feat_dim = 16;
  IntRange frames_per_symbol{3, 8};
  IntRange symbols_per_utt{2, 10};
  double noise_sigma = 0.3;
  double fps = 10.0;
  std::uint64_t seed = 0;
  int n_labeled = 200;
  int n_unlabeled = 2000;
  int n_dev = 100;
  int n_test = 200;

  void validate() const;  // throws std::invalid_argument
  static SynthSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// One unit-norm prototype vector per symbol, pairwise dot products < 0.9.
struct SymbolTemplates {
  Eigen::MatrixXd prototypes;  // alphabet_size x feat_dim
};

SymbolTemplates make_templates(const SynthSpec& spec);

// Draws a symbol string and emits noisy prototype frames. The rng must be
// the utterance's own derived stream.
Utterance gen_utterance(const SymbolTemplates& templates, const SynthSpec& spec,
                        Rng& rng, const std::string& id);

struct Corpus {
  Manifest labeled;
  Manifest unlabeled;  // text removed
  Manifest dev;
  Manifest test;
  Manifest unlabeled_refs;  // hidden ground truth; diagnostics only
};

// Fully deterministic given spec.seed; utterance streams are derived from
// (seed, split, index) so generation order does not matter.
Corpus gen_corpus(const SynthSpec& spec);

// Writes labeled/unlabeled/dev/test.jsonl plus the unlabeled.refs.jsonl
// sidecar into out_dir.
Corpus gen_corpus_to_dir(const SynthSpec& spec,
                         const std::filesystem::path& out_dir);

}  // namespace iplab
