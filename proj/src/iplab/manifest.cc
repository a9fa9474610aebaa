// iplab/manifest.cc

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

#include "iplab/manifest.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "iplab/metrics.hpp"

namespace iplab {

namespace {

Eigen::MatrixXd features_from_json(const nlohmann::json& rows) {
  if (!rows.is_array()) {
    throw std::runtime_error("features must be an array of frames");
  }
  const std::size_t t = rows.size();
  if (t == 0) return Eigen::MatrixXd(0, 0);
  const std::size_t d = rows[0].size();
  Eigen::MatrixXd feats(t, d);
  for (std::size_t i = 0; i < t; ++i) {
    if (!rows[i].is_array() || rows[i].size() != d) {
      throw std::runtime_error("features frames must all have equal width");
    }
    for (std::size_t j = 0; j < d; ++j) {
      feats(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j].get<double>();
    }
  }
  return feats;
}

nlohmann::json features_to_json(const Eigen::MatrixXd& feats) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < feats.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < feats.cols(); ++j) row.push_back(feats(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Final UTF-8 code point of a token.
std::string last_code_point(const std::string& token) {
  if (token.empty()) return {};
  std::size_t i = token.size();
  do {
    --i;
  } while (i > 0 && (static_cast<unsigned char>(token[i]) & 0xC0) == 0x80);
  return token.substr(i);
}

}  // namespace

bool operator==(const Utterance& a, const Utterance& b) {
  const bool features_equal =
      a.features.has_value() == b.features.has_value() &&
      (!a.features.has_value() ||
       (a.features->rows() == b.features->rows() &&
        a.features->cols() == b.features->cols() &&
        (a.features->size() == 0 ||
         (a.features->array() == b.features->array()).all())));
  return a.id == b.id && features_equal && a.features_path == b.features_path &&
         a.text == b.text && a.duration == b.duration && a.lang == b.lang &&
         a.words == b.words && a.source == b.source && a.extra == b.extra;
}

Utterance utterance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::runtime_error("entry is not a JSON object");
  Utterance utt;
  if (!j.contains("id") || !j.at("id").is_string()) {
    throw std::runtime_error("missing or non-string \"id\"");
  }
  utt.id = j.at("id").get<std::string>();
  if (!j.contains("duration") || !j.at("duration").is_number()) {
    throw std::runtime_error("missing or non-numeric \"duration\"");
  }
  utt.duration = j.at("duration").get<double>();
  if (!(utt.duration > 0.0)) {
    throw std::runtime_error("duration must be > 0");
  }
  if (j.contains("text")) utt.text = j.at("text").get<std::string>();
  if (j.contains("lang")) utt.lang = j.at("lang").get<std::string>();
  if (j.contains("source")) utt.source = j.at("source").get<std::string>();
  if (j.contains("features")) {
    const auto& f = j.at("features");
    if (f.is_string()) {
      utt.features_path = f.get<std::string>();
    } else {
      utt.features = features_from_json(f);
    }
  }
  if (j.contains("words")) {
    std::vector<WordStamp> words;
    for (const auto& w : j.at("words")) {
      WordStamp stamp{w.at("word").get<std::string>(),
                      w.at("start").get<double>(), w.at("end").get<double>()};
      if (!(stamp.start >= 0.0 && stamp.start <= stamp.end &&
            stamp.end <= utt.duration)) {
        throw std::runtime_error("word interval outside [0, duration]");
      }
      words.push_back(std::move(stamp));
    }
    utt.words = std::move(words);
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "id" && key != "duration" && key != "text" && key != "lang" &&
        key != "source" && key != "features" && key != "words") {
      utt.extra[key] = value;
    }
  }
  return utt;
}

nlohmann::json utterance_to_json(const Utterance& utt) {
  nlohmann::json j = utt.extra;
  j["id"] = utt.id;
  j["duration"] = utt.duration;
  if (utt.text) j["text"] = *utt.text;
  if (utt.lang) j["lang"] = *utt.lang;
  if (utt.source) j["source"] = *utt.source;
  if (utt.features) j["features"] = features_to_json(*utt.features);
  if (utt.features_path) j["features"] = *utt.features_path;
  if (utt.words) {
    nlohmann::json words = nlohmann::json::array();
    for (const auto& w : *utt.words) {
      words.push_back({{"word", w.word}, {"start", w.start}, {"end", w.end}});
    }
    j["words"] = std::move(words);
  }
  return j;
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open manifest: " + path.string());
  }
  Manifest manifest;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
      manifest.entries.push_back(utterance_from_json(j));
    } catch (const std::exception& e) {
      throw std::runtime_error(path.string() + ": line " +
                               std::to_string(line_no) + ": " + e.what());
    }
    const auto& id = manifest.entries.back().id;
    if (!seen_ids.insert(id).second) {
      throw std::runtime_error(path.string() + ": line " +
                               std::to_string(line_no) + ": duplicate id \"" +
                               id + "\"");
    }
  }
  return manifest;
}

void write_manifest(const Manifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write manifest: " + path.string());
  }
  for (const auto& utt : manifest.entries) {
    out << utterance_to_json(utt).dump() << '\n';
  }
  if (!out) {
    throw std::runtime_error("I/O error writing manifest: " + path.string());
  }
}

Eigen::MatrixXd resolve_features(const Utterance& utt,
                                 const std::filesystem::path& base_dir) {
  if (utt.features) return *utt.features;
  if (utt.features_path) {
    const auto path = base_dir / *utt.features_path;
    std::ifstream in(path);
    if (!in) {
      throw std::runtime_error("cannot open features file: " + path.string());
    }
    nlohmann::json j;
    in >> j;
    return features_from_json(j);
  }
  throw std::runtime_error("utterance \"" + utt.id + "\" has no features");
}

nlohmann::json FilterReport::to_json() const {
  nlohmann::json j;
  j["stage"] = stage;
  j["kept"] = kept;
  j["dropped"] = dropped;
  j["reasons"] = nlohmann::json::object();
  for (const auto& [reason, count] : reasons) j["reasons"][reason] = count;
  return j;
}

namespace {

// Shared selection loop: keep entries where `verdict` returns nullopt,
// otherwise drop with the returned reason.
template <typename Verdict>
std::pair<Manifest, FilterReport> apply_filter(const Manifest& m,
                                               std::string stage,
                                               Verdict&& verdict) {
  Manifest out;
  FilterReport report;
  report.stage = std::move(stage);
  for (const auto& utt : m.entries) {
    if (auto reason = verdict(utt)) {
      ++report.dropped;
      ++report.reasons[*reason];
    } else {
      ++report.kept;
      out.entries.push_back(utt);
    }
  }
  return {std::move(out), std::move(report)};
}

}  // namespace

std::pair<Manifest, FilterReport> filter_duration(const Manifest& m,
                                                  double max_seconds) {
  if (!(max_seconds > 0.0)) {
    throw std::invalid_argument("filter_duration: max_seconds must be > 0");
  }
  return apply_filter(m, "duration",
                      [&](const Utterance& u) -> std::optional<std::string> {
                        if (u.duration > max_seconds) return "too-long";
                        return std::nullopt;
                      });
}

std::pair<Manifest, FilterReport> filter_language(const Manifest& m,
                                                  const std::string& target) {
  return apply_filter(m, "lang",
                      [&](const Utterance& u) -> std::optional<std::string> {
                        if (!u.lang) return "no-lang";
                        if (*u.lang != target) return "lang-mismatch";
                        return std::nullopt;
                      });
}

std::pair<Manifest, FilterReport> filter_char_rate(const Manifest& m,
                                                   const HypMap& hyps,
                                                   double low, double high,
                                                   bool count_whitespace) {
  if (!(low < high)) {
    throw std::invalid_argument("filter_char_rate: low must be < high");
  }
  return apply_filter(m, "cr",
                      [&](const Utterance& u) -> std::optional<std::string> {
                        const auto it = hyps.find(u.id);
                        if (it == hyps.end()) return "no-hyp";
                        const double cr = character_rate(it->second, u.duration,
                                                         count_whitespace);
                        if (cr < low) return "cr-low";
                        if (cr > high) return "cr-high";
                        return std::nullopt;
                      });
}

std::pair<Manifest, FilterReport> filter_wer(const Manifest& m,
                                             const HypMap& hyps,
                                             double threshold) {
  if (threshold < 0.0) {
    throw std::invalid_argument("filter_wer: threshold must be >= 0");
  }
  return apply_filter(m, "wer",
                      [&](const Utterance& u) -> std::optional<std::string> {
                        if (!u.text) return "no-ref";
                        const auto it = hyps.find(u.id);
                        if (it == hyps.end()) return "no-hyp";
                        if (wer(*u.text, it->second) > threshold) {
                          return "wer-high";
                        }
                        return std::nullopt;
                      });
}

const std::set<std::string>& default_boundary_chars() {
  static const std::set<std::string> chars = {".", "!", "?", "…"};
  return chars;
}

std::vector<Utterance> segment_utterance(
    const Utterance& utt, double min_s, double max_s,
    const std::set<std::string>& boundary_chars) {
  if (!utt.words || utt.words->empty()) {
    throw std::runtime_error("no-timestamps: utterance \"" + utt.id +
                             "\" has no word timestamps");
  }
  if (!(min_s < max_s)) {
    throw std::invalid_argument("segment: min_s must be < max_s");
  }
  const auto& words = *utt.words;

  // Sentences: consecutive word runs, each ending at a word whose final
  // code point is a boundary marker; trailing words form a final sentence.
  std::vector<std::pair<std::size_t, std::size_t>> sentences;  // [first, last]
  std::size_t first = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const bool boundary =
        boundary_chars.count(last_code_point(words[i].word)) > 0;
    if (boundary || i + 1 == words.size()) {
      sentences.emplace_back(first, i);
      first = i + 1;
    }
  }

  const double fps =
      utt.features ? static_cast<double>(utt.features->rows()) / utt.duration
                   : 0.0;

  std::vector<Utterance> children;
  for (const auto& [lo, hi] : sentences) {
    const double start = words[lo].start;
    const double end = words[hi].end;
    const double duration = end - start;
    if (duration < min_s || duration > max_s) continue;

    Utterance child;
    child.id = utt.id + "-seg" + std::to_string(children.size());
    child.duration = duration;
    child.lang = utt.lang;
    child.source = utt.source;
    std::string text;
    for (std::size_t i = lo; i <= hi; ++i) {
      if (i > lo) text += ' ';
      text += words[i].word;
    }
    child.text = std::move(text);
    std::vector<WordStamp> child_words;
    for (std::size_t i = lo; i <= hi; ++i) {
      child_words.push_back(
          {words[i].word, words[i].start - start, words[i].end - start});
    }
    child.words = std::move(child_words);
    if (utt.features) {
      const auto total = utt.features->rows();
      const auto frame_lo = static_cast<Eigen::Index>(
          std::min<double>(std::floor(start * fps), total));
      const auto frame_hi = static_cast<Eigen::Index>(
          std::min<double>(std::ceil(end * fps), total));
      child.features =
          utt.features->middleRows(frame_lo, std::max<Eigen::Index>(
                                                 frame_hi - frame_lo, 0));
    }
    children.push_back(std::move(child));
  }
  return children;
}

}  // namespace iplab
