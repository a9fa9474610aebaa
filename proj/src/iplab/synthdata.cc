// iplab/synthdata.cc

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

#include "iplab/synthdata.hpp"

#include <cstdio>
#include <stdexcept>

namespace iplab {

namespace {

// Stream tags for Rng::derive. Values are part of the reproducibility
// contract; do not renumber.
enum StreamTag : std::uint64_t {
  kSplitLabeled = 0,
  kSplitUnlabeled = 1,
  kSplitDev = 2,
  kSplitTest = 3,
  kTemplates = 100,
};

std::string padded_id(const char* prefix, int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s-%06d", prefix, index);
  return buf;
}

}  // namespace

void SynthSpec::validate() const {
  if (alphabet_size < 2) throw std::invalid_argument("alphabet_size >= 2");
  if (alphabet_size > 26) throw std::invalid_argument("alphabet_size <= 26");
  if (feat_dim < alphabet_size) {
    throw std::invalid_argument("feat_dim >= alphabet_size");
  }
  if (noise_sigma < 0.0) throw std::invalid_argument("noise_sigma >= 0");
  if (fps <= 0.0) throw std::invalid_argument("fps > 0");
  if (frames_per_symbol.lo < 1 || frames_per_symbol.hi < frames_per_symbol.lo) {
    throw std::invalid_argument("frames_per_symbol range invalid");
  }
  if (symbols_per_utt.lo < 1 || symbols_per_utt.hi < symbols_per_utt.lo) {
    throw std::invalid_argument("symbols_per_utt range invalid");
  }
  if (n_labeled <= 0 || n_unlabeled <= 0 || n_dev <= 0 || n_test <= 0) {
    throw std::invalid_argument("split sizes must be > 0");
  }
}

SynthSpec SynthSpec::from_json(const nlohmann::json& j) {
  SynthSpec spec;
  if (j.contains("alphabet_size")) spec.alphabet_size = j.at("alphabet_size");
  if (j.contains("feat_dim")) spec.feat_dim = j.at("feat_dim");
  if (j.contains("frames_per_symbol")) {
    spec.frames_per_symbol = {j.at("frames_per_symbol").at(0),
                              j.at("frames_per_symbol").at(1)};
  }
  if (j.contains("symbols_per_utt")) {
    spec.symbols_per_utt = {j.at("symbols_per_utt").at(0),
                            j.at("symbols_per_utt").at(1)};
  }
  if (j.contains("noise_sigma")) spec.noise_sigma = j.at("noise_sigma");
  if (j.contains("fps")) spec.fps = j.at("fps");
  if (j.contains("seed")) spec.seed = j.at("seed");
  if (j.contains("split_sizes")) {
    const auto& s = j.at("split_sizes");
    spec.n_labeled = s.at("labeled");
    spec.n_unlabeled = s.at("unlabeled");
    spec.n_dev = s.at("dev");
    spec.n_test = s.at("test");
  }
  spec.validate();
  return spec;
}

nlohmann::json SynthSpec::to_json() const {
  return {
      {"alphabet_size", alphabet_size},
      {"feat_dim", feat_dim},
      {"frames_per_symbol", {frames_per_symbol.lo, frames_per_symbol.hi}},
      {"symbols_per_utt", {symbols_per_utt.lo, symbols_per_utt.hi}},
      {"noise_sigma", noise_sigma},
      {"fps", fps},
      {"seed", seed},
      {"split_sizes",
       {{"labeled", n_labeled},
        {"unlabeled", n_unlabeled},
        {"dev", n_dev},
        {"test", n_test}}},
  };
}

SymbolTemplates make_templates(const SynthSpec& spec) {
  spec.validate();
  Rng rng = Rng::derive(spec.seed, {kTemplates});
  Eigen::MatrixXd protos(spec.alphabet_size, spec.feat_dim);
  constexpr int kMaxDraws = 1000;
  int accepted = 0;
  for (int draw = 0; draw < kMaxDraws && accepted < spec.alphabet_size; ++draw) {
    Eigen::VectorXd v(spec.feat_dim);
    for (int d = 0; d < spec.feat_dim; ++d) v(d) = rng.normal();
    v.normalize();
    bool distinct = true;
    for (int k = 0; k < accepted; ++k) {
      if (protos.row(k).dot(v) >= 0.9) {
        distinct = false;
        break;
      }
    }
    if (distinct) protos.row(accepted++) = v.transpose();
  }
  if (accepted < spec.alphabet_size) {
    throw std::runtime_error(
        "make_templates: could not draw distinct prototypes");
  }
  return SymbolTemplates{std::move(protos)};
}

Utterance gen_utterance(const SymbolTemplates& templates, const SynthSpec& spec,
                        Rng& rng, const std::string& id) {
  const int n_symbols = static_cast<int>(
      rng.uniform_range(spec.symbols_per_utt.lo, spec.symbols_per_utt.hi));
  std::string text;
  std::vector<int> frames_per;
  int total_frames = 0;
  for (int s = 0; s < n_symbols; ++s) {
    const int symbol =
        static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(
            spec.alphabet_size)));
    text += static_cast<char>('a' + symbol);
    const int k = static_cast<int>(
        rng.uniform_range(spec.frames_per_symbol.lo, spec.frames_per_symbol.hi));
    frames_per.push_back(k);
    total_frames += k;
  }

  Eigen::MatrixXd feats(total_frames, spec.feat_dim);
  int row = 0;
  for (int s = 0; s < n_symbols; ++s) {
    const int symbol = text[static_cast<std::size_t>(s)] - 'a';
    for (int f = 0; f < frames_per[static_cast<std::size_t>(s)]; ++f, ++row) {
      for (int d = 0; d < spec.feat_dim; ++d) {
        feats(row, d) =
            templates.prototypes(symbol, d) + rng.normal(0.0, spec.noise_sigma);
      }
    }
  }

  Utterance utt;
  utt.id = id;
  utt.text = text;
  utt.duration = static_cast<double>(total_frames) / spec.fps;
  utt.lang = "syn";
  utt.features = std::move(feats);
  return utt;
}

Corpus gen_corpus(const SynthSpec& spec) {
  spec.validate();
  const SymbolTemplates templates = make_templates(spec);

  auto gen_split = [&](std::uint64_t split_tag, const char* prefix, int count) {
    Manifest m;
    m.entries.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      Rng rng = Rng::derive(spec.seed,
                            {split_tag, static_cast<std::uint64_t>(i)});
      m.entries.push_back(gen_utterance(templates, spec, rng,
                                        padded_id(prefix, i)));
    }
    return m;
  };

  Corpus corpus;
  corpus.labeled = gen_split(kSplitLabeled, "lab", spec.n_labeled);
  corpus.dev = gen_split(kSplitDev, "dev", spec.n_dev);
  corpus.test = gen_split(kSplitTest, "tst", spec.n_test);

  Manifest full_unlabeled = gen_split(kSplitUnlabeled, "unl", spec.n_unlabeled);
  for (auto& utt : full_unlabeled.entries) {
    Utterance ref;
    ref.id = utt.id;
    ref.text = utt.text;
    ref.duration = utt.duration;
    corpus.unlabeled_refs.entries.push_back(std::move(ref));
    utt.text.reset();
    corpus.unlabeled.entries.push_back(std::move(utt));
  }
  return corpus;
}

Corpus gen_corpus_to_dir(const SynthSpec& spec,
                         const std::filesystem::path& out_dir) {
  Corpus corpus = gen_corpus(spec);
  std::filesystem::create_directories(out_dir);
  write_manifest(corpus.labeled, out_dir / "labeled.jsonl");
  write_manifest(corpus.unlabeled, out_dir / "unlabeled.jsonl");
  write_manifest(corpus.dev, out_dir / "dev.jsonl");
  write_manifest(corpus.test, out_dir / "test.jsonl");
  write_manifest(corpus.unlabeled_refs, out_dir / "unlabeled.refs.jsonl");
  return corpus;
}

}  // namespace iplab
