/* Copyright 2026 The stylprint Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stylprint/corpus.hpp"

namespace stylprint::testing {

inline Token word(std::string lemma, CoarsePos pos = CoarsePos::kCommonNoun,
                  std::optional<FinePos> fine = std::nullopt) {
  return {lemma, lemma, pos, fine};
}

inline Token punct(std::string mark = ".") { return {mark, mark, CoarsePos::kPunctuation, std::nullopt}; }

/// One sentence per inner list, each closed by a full stop.
inline AnnotatedText text_of(const std::string& id, const std::vector<std::vector<Token>>& sentences,
                             const std::string& author = "someone") {
  std::vector<Sentence> out;
  for (auto tokens : sentences) {
    tokens.push_back(punct());
    out.emplace_back(std::move(tokens));
  }
  return AnnotatedText(id, author, std::nullopt, std::move(out));
}

/// Lemma list cut into sentences of `sentence_length` words.
inline AnnotatedText text_of_lemmas(const std::string& id, const std::vector<std::string>& lemmas,
                                    std::size_t sentence_length = 10, const std::string& author = "someone",
                                    CoarsePos pos = CoarsePos::kCommonNoun) {
  std::vector<std::vector<Token>> sentences;
  for (std::size_t i = 0; i < lemmas.size(); ++i) {
    if (i % sentence_length == 0) sentences.emplace_back();
    sentences.back().push_back(word(lemmas[i], pos));
  }
  return text_of(id, sentences, author);
}

/// Lemma list from counts, keys in map order.
inline std::vector<std::string> expand(const std::map<std::string, std::size_t>& counts) {
  std::vector<std::string> out;
  for (const auto& [k, n] : counts) out.insert(out.end(), n, k);
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace stylprint::testing
