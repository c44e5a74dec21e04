// Copyright 2026 The papergraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "papergraph/synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "papergraph/error.hpp"
#include "papergraph/random.hpp"

namespace papergraph {
namespace {

// FNV-1a, used only to turn an id into a generator stream.
std::uint64_t hash_id(std::string_view id) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char c : id) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

// Five-letter consonant-vowel words; none collides with an abbreviation
// known to the sentence splitter.
std::string make_word(Rng& rng) {
  static constexpr std::string_view kConsonants = "bdfgklmnprstvz";
  static constexpr std::string_view kVowels = "aeiou";
  std::string w;
  for (int i = 0; i < 5; ++i) {
    const auto& set = i % 2 == 0 ? kConsonants : kVowels;
    w.push_back(set[rng.below(set.size())]);
  }
  return w;
}

std::string make_sentence(Rng& rng) {
  const std::size_t words = 6 + rng.below(9);
  std::string s;
  for (std::size_t i = 0; i < words; ++i) {
    auto w = make_word(rng);
    if (i == 0) w[0] = static_cast<char>(w[0] - 'a' + 'A');
    if (i > 0) s += ' ';
    s += w;
  }
  s += '.';
  return s;
}

std::size_t in_range(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
}

}  // namespace

std::vector<float> fake_unit_vector(std::string_view id, std::uint32_t dim, std::uint64_t seed) {
  Rng rng = Rng::derive(seed, hash_id(id));
  std::vector<double> v(dim);
  double norm = 0.0;
  for (auto& x : v) {
    x = rng.normal();
    norm += x * x;
  }
  norm = std::sqrt(norm);
  std::vector<float> out(dim);
  for (std::uint32_t i = 0; i < dim; ++i) out[i] = static_cast<float>(v[i] / norm);
  return out;
}

SyntheticCorpus make_planted_corpus(const SyntheticConfig& config) {
  if (config.min_passages == 0 || config.min_passages > config.max_passages ||
      config.min_sentences == 0 || config.min_sentences > config.max_sentences) {
    throw Error(ErrorKind::kInvalidConfig, "synthetic passage/sentence ranges");
  }
  SyntheticCorpus corpus;
  corpus.sentences = EmbeddingTable(EmbeddingRole::kSentence, config.dim);

  Rng structure = Rng::derive(config.seed, 10);
  Rng noise = Rng::derive(config.seed, 11);

  std::vector<double> direction(config.dim);
  double norm = 0.0;
  for (auto& x : direction) {
    x = noise.normal();
    norm += x * x;
  }
  for (auto& x : direction) x /= std::sqrt(norm);

  for (std::size_t d = 0; d < config.documents; ++d) {
    char id_buf[32];
    std::snprintf(id_buf, sizeof(id_buf), "synth-%03zu", d);
    const std::string doc_id = id_buf;

    const std::size_t passages = in_range(structure, config.min_passages, config.max_passages);
    const std::size_t headings = std::min<std::size_t>(in_range(structure, 2, 4), passages);

    ParsedDocument doc;
    doc.doc_id = doc_id;
    doc.title = "Synthetic paper " + std::to_string(d);
    std::vector<Section*> attach;
    for (std::size_t h = 0; h < headings; ++h) {
      Section s;
      s.heading_text = "Section " + std::to_string(h + 1);
      s.level = 1;
      doc.sections.push_back(std::move(s));
    }
    for (std::size_t h = 0; h < headings; ++h) {
      const std::size_t subs = structure.below(3);
      for (std::size_t k = 0; k < subs; ++k) {
        Section sub;
        sub.heading_text = "Part " + std::to_string(h + 1) + "." + std::to_string(k + 1);
        sub.level = 2;
        doc.sections[h].children.push_back(std::move(sub));
      }
    }
    for (auto& s : doc.sections) {
      if (s.children.empty()) {
        attach.push_back(&s);
      } else {
        for (auto& c : s.children) attach.push_back(&c);
      }
    }
    while (attach.size() > passages) attach.pop_back();

    std::vector<std::size_t> per_attach(attach.size(), 1);
    for (std::size_t extra = attach.size(); extra < passages; ++extra) {
      ++per_attach[structure.below(attach.size())];
    }

    std::vector<bool> salient(passages);
    std::size_t salient_count = 0;
    for (std::size_t p = 0; p < passages; ++p) {
      salient[p] = structure.uniform() < config.salient_fraction;
      salient_count += salient[p] ? 1 : 0;
    }
    if (salient_count == 0) salient[structure.below(passages)] = true;
    if (salient_count == passages) salient[structure.below(passages)] = false;

    LabelSet labels{doc_id, {}, 0, 0};
    std::size_t passage_id = 0;
    std::size_t sentence_id = 0;
    for (std::size_t a = 0; a < attach.size(); ++a) {
      for (std::size_t i = 0; i < per_attach[a]; ++i, ++passage_id) {
        const std::size_t sentences = in_range(structure, config.min_sentences, config.max_sentences);
        std::string text;
        for (std::size_t s = 0; s < sentences; ++s, ++sentence_id) {
          if (s > 0) text += ' ';
          text += make_sentence(structure);
          std::vector<float> vec(config.dim);
          for (std::uint32_t k = 0; k < config.dim; ++k) {
            double v = config.noise * noise.normal();
            if (salient[passage_id]) v += config.signal * direction[k];
            vec[k] = static_cast<float>(v);
          }
          corpus.sentences.insert(sentence_key(doc_id, sentence_id), std::move(vec));
        }
        if (!attach[a]->body.empty()) attach[a]->body += '\n';
        attach[a]->body += text;
        if (salient[passage_id]) labels.passages.insert(passage_id);
      }
    }

    FeedbackDocument fb;
    fb.doc_id = doc_id;
    for (auto& section : fb.sections) {
      const std::size_t n = in_range(structure, 1, 6);
      for (std::size_t i = 0; i < n; ++i) section.push_back(make_sentence(structure));
    }

    corpus.documents.push_back(std::move(doc));
    corpus.feedback.push_back(std::move(fb));
    corpus.labels.push_back(std::move(labels));
  }
  return corpus;
}

}  // namespace papergraph
