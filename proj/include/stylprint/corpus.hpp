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

// Annotated corpora: token/sentence/text values, the `.stc` file format,
// a naive raw-text segmenter, and text merging.
//
// File format (UTF-8):
//
//   #id <string>
//   #author <string>
//   #year <integer>              (optional)
//
//   SURFACE<TAB>LEMMA<TAB>COARSE_POS[<TAB>FINE_POS]
//   ...
//   <blank line between sentences>
//
// Lines starting with `//` are comments. Punctuation tokens are kept in
// sentences but never counted as words.

#pragma once

#include <algorithm>
#include <charconv>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stylprint/error.hpp"
#include "stylprint/pos.hpp"

namespace stylprint {

struct Token {
  std::string surface;  // may contain internal spaces (multiword units)
  std::string lemma;
  CoarsePos coarse = CoarsePos::kUnknown;
  std::optional<FinePos> fine;

  bool is_word() const { return coarse != CoarsePos::kPunctuation; }

  friend bool operator==(const Token&, const Token&) = default;
};

namespace detail {

// Characters that would not survive a round trip through the file format.
inline bool has_control_chars(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](char c) { return static_cast<unsigned char>(c) < 0x20 || c == 0x7f; });
}

inline std::string validate_token(const Token& t) {
  if (t.surface.empty()) return "empty surface";
  if (t.lemma.empty()) return "empty lemma";
  if (has_control_chars(t.surface) || has_control_chars(t.lemma))
    return "control character in token field";
  if (t.surface.starts_with("//")) return "surface may not start with '//'";
  if (t.fine && !refines(*t.fine, t.coarse))
    return std::string(tag_name(*t.fine)) + " does not refine " + std::string(tag_name(t.coarse));
  return {};
}

}  // namespace detail

class Sentence {
 public:
  /// Throws AnalysisError(kInvalidText) on an invalid token or when no token is a word.
  explicit Sentence(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
    for (const Token& t : tokens_) {
      if (auto why = detail::validate_token(t); !why.empty())
        throw AnalysisError(AnalysisError::Kind::kInvalidText, "invalid token: " + why);
      if (t.is_word()) ++word_length_;
    }
    if (word_length_ == 0)
      throw AnalysisError(AnalysisError::Kind::kInvalidText, "sentence has no word");
  }

  const std::vector<Token>& tokens() const { return tokens_; }
  std::size_t word_length() const { return word_length_; }

  friend bool operator==(const Sentence& a, const Sentence& b) { return a.tokens_ == b.tokens_; }

 private:
  std::vector<Token> tokens_;
  std::size_t word_length_ = 0;
};

class AnnotatedText {
 public:
  AnnotatedText(std::string id, std::string author, std::optional<int> year,
                std::vector<Sentence> sentences)
      : id_(std::move(id)), author_(std::move(author)), year_(year),
        sentences_(std::move(sentences)) {
    if (id_.empty()) throw AnalysisError(AnalysisError::Kind::kInvalidText, "empty text id");
    if (detail::has_control_chars(id_) || detail::has_control_chars(author_))
      throw AnalysisError(AnalysisError::Kind::kInvalidText, "control character in header");
    for (const Sentence& s : sentences_) word_count_ += s.word_length();
  }

  const std::string& id() const { return id_; }
  const std::string& author() const { return author_; }
  std::optional<int> year() const { return year_; }
  const std::vector<Sentence>& sentences() const { return sentences_; }
  std::size_t word_count() const { return word_count_; }

  std::size_t token_count() const {
    std::size_t n = 0;
    for (const Sentence& s : sentences_) n += s.tokens().size();
    return n;
  }

  friend bool operator==(const AnnotatedText& a, const AnnotatedText& b) {
    return a.id_ == b.id_ && a.author_ == b.author_ && a.year_ == b.year_ &&
           a.sentences_ == b.sentences_;
  }

 private:
  std::string id_;
  std::string author_;
  std::optional<int> year_;
  std::vector<Sentence> sentences_;
  std::size_t word_count_ = 0;
};

class Corpus {
 public:
  Corpus(std::string label, std::vector<AnnotatedText> texts)
      : label_(std::move(label)), texts_(std::move(texts)) {
    if (texts_.empty()) throw AnalysisError(AnalysisError::Kind::kEmptyCorpus, "corpus has no text");
    std::set<std::string_view> ids;
    for (const AnnotatedText& t : texts_) {
      if (!ids.insert(t.id()).second)
        throw AnalysisError(AnalysisError::Kind::kDuplicateId, "duplicate text id '" + t.id() + "'");
    }
  }

  const std::string& label() const { return label_; }
  const std::vector<AnnotatedText>& texts() const { return texts_; }
  std::span<const AnnotatedText> view() const { return texts_; }

  std::size_t word_count() const {
    std::size_t n = 0;
    for (const AnnotatedText& t : texts_) n += t.word_count();
    return n;
  }

 private:
  std::string label_;
  std::vector<AnnotatedText> texts_;
};

/// Anything the analyses accept as "a text or a corpus".
inline std::span<const AnnotatedText> texts_of(std::span<const AnnotatedText> texts) { return texts; }
inline std::span<const AnnotatedText> texts_of(const std::vector<AnnotatedText>& texts) { return texts; }
inline std::span<const AnnotatedText> texts_of(const AnnotatedText& text) { return {&text, 1}; }
inline std::span<const AnnotatedText> texts_of(const Corpus& corpus) { return corpus.view(); }

template <class T>
concept TextSource = requires(const T& t) {
  { texts_of(t) } -> std::convertible_to<std::span<const AnnotatedText>>;
};

inline std::size_t word_count(std::span<const AnnotatedText> texts) {
  std::size_t n = 0;
  for (const AnnotatedText& t : texts) n += t.word_count();
  return n;
}

namespace detail {

// Returns the byte offset of the first invalid UTF-8 sequence, or npos.
inline std::size_t find_invalid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return i;
    }
    if (i + len > s.size()) return i;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // overlong, surrogate, out of range
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF)
      return i;
    i += len;
  }
  return std::string_view::npos;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

inline ParseError parse_error(ParseError::Kind kind, std::size_t line, const std::string& msg) {
  std::string where = line > 0 ? "line " + std::to_string(line) + ": " : std::string();
  return ParseError(kind, line, where + msg);
}

}  // namespace detail

/// Parses one `.stc` file. Throws ParseError.
inline AnnotatedText parse_corpus_file(std::string_view bytes) {
  using Kind = ParseError::Kind;
  if (const std::size_t bad = detail::find_invalid_utf8(bytes); bad != std::string_view::npos) {
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(bytes.begin(), bytes.begin() + bad, '\n'));
    throw detail::parse_error(Kind::kMalformedLine, line, "invalid UTF-8");
  }

  std::vector<std::string_view> lines = detail::split(bytes, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();

  std::optional<std::string> id, author;
  std::optional<int> year;
  std::vector<Sentence> sentences;
  std::vector<Token> current;
  std::size_t current_start = 0;
  bool seen_token = false;
  bool after_sentence_break = false;
  std::size_t pending_empty = 0;  // line of a second consecutive blank line

  auto close_sentence = [&]() {
    const bool has_word = std::any_of(current.begin(), current.end(),
                                      [](const Token& t) { return t.is_word(); });
    if (!has_word)
      throw detail::parse_error(Kind::kEmptySentence, current_start,
                                "sentence has no word (only punctuation)");
    sentences.emplace_back(std::move(current));
    current.clear();
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.starts_with("//")) continue;

    if (line.empty()) {
      if (!current.empty()) {
        close_sentence();
        after_sentence_break = true;
      } else if (after_sentence_break && pending_empty == 0) {
        pending_empty = lineno;
      }
      continue;
    }

    if (line.front() == '#' && line.find('\t') == std::string_view::npos) {
      if (seen_token)
        throw detail::parse_error(Kind::kMalformedLine, lineno, "header line after first sentence");
      const std::size_t sp = line.find(' ');
      const std::string_view key = line.substr(1, sp == std::string_view::npos ? line.size() - 1 : sp - 1);
      const std::string_view value = sp == std::string_view::npos ? std::string_view() : line.substr(sp + 1);
      auto set_once = [&](std::optional<std::string>& slot) {
        if (slot) throw detail::parse_error(Kind::kMalformedLine, lineno, "duplicate header #" + std::string(key));
        if (value.empty())
          throw detail::parse_error(Kind::kMissingHeaderField, lineno, "empty header #" + std::string(key));
        slot = std::string(value);
      };
      if (key == "id") {
        set_once(id);
      } else if (key == "author") {
        set_once(author);
      } else if (key == "year") {
        if (year) throw detail::parse_error(Kind::kMalformedLine, lineno, "duplicate header #year");
        int y = 0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), y);
        if (ec != std::errc() || ptr != value.data() + value.size() || value.empty())
          throw detail::parse_error(Kind::kMalformedLine, lineno, "#year is not an integer");
        year = y;
      } else {
        throw detail::parse_error(Kind::kMalformedLine, lineno, "unknown header #" + std::string(key));
      }
      continue;
    }

    if (pending_empty != 0)
      throw detail::parse_error(Kind::kEmptySentence, pending_empty, "empty sentence (consecutive blank lines)");

    const std::vector<std::string_view> fields = detail::split(line, '\t');
    if (fields.size() < 3 || fields.size() > 4)
      throw detail::parse_error(Kind::kMalformedLine, lineno,
                                "expected 3 or 4 tab-separated fields, got " + std::to_string(fields.size()));
    if (fields[0].empty() || fields[1].empty())
      throw detail::parse_error(Kind::kMalformedLine, lineno, "empty surface or lemma");
    Token tok;
    tok.surface = std::string(fields[0]);
    tok.lemma = std::string(fields[1]);
    const auto coarse = parse_coarse(fields[2]);
    if (!coarse)
      throw detail::parse_error(Kind::kUnknownTag, lineno, "unknown tag '" + std::string(fields[2]) + "'");
    tok.coarse = *coarse;
    if (fields.size() == 4) {
      const auto fine = parse_fine(fields[3]);
      if (!fine)
        throw detail::parse_error(Kind::kUnknownTag, lineno, "unknown tag '" + std::string(fields[3]) + "'");
      if (!refines(*fine, *coarse))
        throw detail::parse_error(Kind::kUnknownTag, lineno,
                                  "tag '" + std::string(fields[3]) + "' does not refine " + std::string(fields[2]));
      tok.fine = *fine;
    }
    if (auto why = detail::validate_token(tok); !why.empty())
      throw detail::parse_error(Kind::kMalformedLine, lineno, why);
    if (current.empty()) current_start = lineno;
    current.push_back(std::move(tok));
    seen_token = true;
    after_sentence_break = false;
  }
  if (!current.empty()) close_sentence();

  if (!id) throw detail::parse_error(Kind::kMissingHeaderField, 0, "missing header #id");
  if (!author) throw detail::parse_error(Kind::kMissingHeaderField, 0, "missing header #author");
  return AnnotatedText(std::move(*id), std::move(*author), year, std::move(sentences));
}

inline std::string serialize_corpus_file(const AnnotatedText& text) {
  std::string out;
  out += "#id " + text.id() + "\n";
  out += "#author " + text.author() + "\n";
  if (text.year()) out += "#year " + std::to_string(*text.year()) + "\n";
  for (const Sentence& s : text.sentences()) {
    out += '\n';
    for (const Token& t : s.tokens()) {
      out += t.surface;
      out += '\t';
      out += t.lemma;
      out += '\t';
      out += tag_name(t.coarse);
      if (t.fine) {
        out += '\t';
        out += tag_name(*t.fine);
      }
      out += '\n';
    }
  }
  return out;
}

/// Reads and parses a file; I/O failures surface as ParseError at line 0.
inline AnnotatedText read_corpus_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(ParseError::Kind::kMalformedLine, 0, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_corpus_file(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(e.kind(), e.line(), path + ": " + e.what());
  } catch (const AnalysisError& e) {
    throw ParseError(ParseError::Kind::kMalformedLine, 0, path + ": " + e.what());
  }
}

namespace detail {

struct CodePoint {
  std::uint32_t value;
  std::size_t length;
};

// Input is assumed valid UTF-8; stray bytes decode as themselves.
inline CodePoint decode(std::string_view s, std::size_t i) {
  const auto c = static_cast<unsigned char>(s[i]);
  auto cont = [&](std::size_t k) { return static_cast<std::uint32_t>(static_cast<unsigned char>(s[i + k]) & 0x3F); };
  if (c >= 0xF0 && i + 3 < s.size())
    return {((c & 0x07u) << 18) | (cont(1) << 12) | (cont(2) << 6) | cont(3), 4};
  if (c >= 0xE0 && i + 2 < s.size()) return {((c & 0x0Fu) << 12) | (cont(1) << 6) | cont(2), 3};
  if (c >= 0xC0 && i + 1 < s.size()) return {((c & 0x1Fu) << 6) | cont(1), 2};
  return {c, 1};
}

inline void encode(std::uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Basic Latin, Latin-1 and Latin Extended-A only.
inline std::uint32_t to_lower(std::uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if ((cp >= 0x100 && cp <= 0x12F) || (cp >= 0x132 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177))
    return (cp % 2 == 0) ? cp + 1 : cp;
  if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp == 0x178) return 0xFF;
  return cp;
}

inline bool is_terminal(std::uint32_t cp) { return cp == '.' || cp == '!' || cp == '?' || cp == 0x2026; }

inline bool is_edge_punct(std::uint32_t cp) {
  switch (cp) {
    case ',': case ';': case ':': case '(': case ')': case '[': case ']': case '{': case '}':
    case '"': case '\'': case '-': case '/':
    case 0xAB: case 0xBB:                 // « »
    case 0x2013: case 0x2014:             // en/em dash
    case 0x2018: case 0x2019: case 0x201C: case 0x201D:
      return true;
    default:
      return is_terminal(cp);
  }
}

inline bool is_space(std::uint32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' || cp == '\v' ||
         cp == 0xA0 || cp == 0x202F;
}

}  // namespace detail

inline std::string utf8_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    const detail::CodePoint cp = detail::decode(s, i);
    detail::encode(detail::to_lower(cp.value), out);
    i += cp.length;
  }
  return out;
}

/// Segments unannotated text. Words get lemma = lowercased surface and coarse
/// tag UNKNOWN; punctuation gets PUNCTUATION. Lexicon entries (multiword
/// units such as "parce que") are matched greedily, longest first, among
/// adjacent words, case-insensitively.
inline AnnotatedText tokenize_raw(std::string_view text, std::span<const std::string> lexicon,
                                  std::string id = "raw", std::string author = "unknown") {
  struct Item {
    std::string surface;
    bool word;
    bool terminal;
  };
  std::vector<Item> items;

  // Whitespace-delimited chunks, with punctuation peeled from both edges.
  std::vector<std::pair<std::uint32_t, std::string>> chunk;  // code point + its bytes
  auto flush_chunk = [&]() {
    std::size_t lo = 0, hi = chunk.size();
    while (lo < hi && detail::is_edge_punct(chunk[lo].first)) ++lo;
    while (hi > lo && detail::is_edge_punct(chunk[hi - 1].first)) --hi;
    auto emit_punct = [&](std::size_t from, std::size_t to) {
      for (std::size_t k = from; k < to; ++k) {
        const bool term = detail::is_terminal(chunk[k].first);
        if (term && !items.empty() && !items.back().word && items.back().terminal &&
            k > from && detail::is_terminal(chunk[k - 1].first)) {
          items.back().surface += chunk[k].second;
        } else {
          items.push_back({chunk[k].second, false, term});
        }
      }
    };
    emit_punct(0, lo);
    if (lo < hi) {
      std::string w;
      for (std::size_t k = lo; k < hi; ++k) w += chunk[k].second;
      items.push_back({std::move(w), true, false});
    }
    emit_punct(hi, chunk.size());
    chunk.clear();
  };
  for (std::size_t i = 0; i < text.size();) {
    const detail::CodePoint cp = detail::decode(text, i);
    if (detail::is_space(cp.value)) {
      flush_chunk();
    } else {
      chunk.emplace_back(cp.value, std::string(text.substr(i, cp.length)));
    }
    i += cp.length;
  }
  flush_chunk();

  if (std::none_of(items.begin(), items.end(), [](const Item& it) { return it.word; }))
    throw AnalysisError(AnalysisError::Kind::kEmptyInput, "no word in input text");

  std::vector<std::vector<std::string>> entries;
  for (const std::string& e : lexicon) {
    std::vector<std::string> parts;
    std::istringstream ss(utf8_lower(e));
    for (std::string p; ss >> p;) parts.push_back(p);
    if (parts.size() >= 2) entries.push_back(std::move(parts));
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.size() > b.size(); });

  std::vector<Item> merged;
  for (std::size_t i = 0; i < items.size();) {
    std::size_t take = 1;
    if (items[i].word) {
      for (const auto& e : entries) {
        if (i + e.size() > items.size()) continue;
        bool ok = true;
        for (std::size_t k = 0; k < e.size() && ok; ++k)
          ok = items[i + k].word && utf8_lower(items[i + k].surface) == e[k];
        if (ok) {
          take = e.size();
          break;
        }
      }
    }
    Item it = items[i];
    for (std::size_t k = 1; k < take; ++k) it.surface += " " + items[i + k].surface;
    merged.push_back(std::move(it));
    i += take;
  }

  std::vector<std::vector<Token>> groups;
  std::vector<Token> current;
  bool has_word = false, ended = false;
  for (const Item& it : merged) {
    if (it.word) {
      if (ended) {
        groups.push_back(std::move(current));
        current.clear();
        ended = false;
      }
      current.push_back({it.surface, utf8_lower(it.surface), CoarsePos::kUnknown, std::nullopt});
      has_word = true;
    } else {
      current.push_back({it.surface, it.surface, CoarsePos::kPunctuation, std::nullopt});
      if (it.terminal && has_word) ended = true;
    }
  }
  groups.push_back(std::move(current));

  std::vector<Sentence> sentences;
  sentences.reserve(groups.size());
  for (auto& g : groups) sentences.emplace_back(std::move(g));

  return AnnotatedText(std::move(id), std::move(author), std::nullopt, std::move(sentences));
}

/// Concatenates texts in order. The year survives only if every input shares it.
inline AnnotatedText merge_texts(std::span<const AnnotatedText> texts, std::string id, std::string author) {
  if (texts.empty()) throw AnalysisError(AnalysisError::Kind::kEmptyList, "nothing to merge");
  std::vector<Sentence> sentences;
  std::optional<int> year = texts.front().year();
  for (const AnnotatedText& t : texts) {
    sentences.insert(sentences.end(), t.sentences().begin(), t.sentences().end());
    if (t.year() != year) year.reset();
  }
  return AnnotatedText(std::move(id), std::move(author), year, std::move(sentences));
}

}  // namespace stylprint
