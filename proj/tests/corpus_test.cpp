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

#include "stylprint/corpus.hpp"

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "test_util.hpp"

namespace stylprint {
namespace {

using testing::punct;
using testing::word;

const char* kHeader = "#id t1\n#author someone\n";

ParseError::Kind parse_failure(const std::string& data, std::size_t* line = nullptr) {
  try {
    parse_corpus_file(data);
  } catch (const ParseError& e) {
    if (line) *line = e.line();
    return e.kind();
  }
  ADD_FAILURE() << "no ParseError for:\n" << data;
  return ParseError::Kind::kMalformedLine;
}

TEST(ParseCorpusFile, OneSentenceCountsWordsOnly) {
  const AnnotatedText t = parse_corpus_file(std::string(kHeader) +
                                            "ce\tce\tDETERMINER\tDEMONSTRATIVE\n"
                                            "soir\tsoir\tCOMMON_NOUN\n"
                                            ".\t.\tPUNCTUATION\n");
  ASSERT_EQ(t.sentences().size(), 1u);
  EXPECT_EQ(t.word_count(), 2u);
  EXPECT_EQ(t.token_count(), 3u);
  EXPECT_EQ(t.id(), "t1");
  EXPECT_EQ(t.author(), "someone");
  EXPECT_FALSE(t.year().has_value());
  const Token& ce = t.sentences()[0].tokens()[0];
  EXPECT_EQ(ce.coarse, CoarsePos::kDeterminer);
  EXPECT_EQ(ce.fine, FinePos::kDemonstrative);
}

TEST(ParseCorpusFile, ApostropheWordIsOneWord) {
  const AnnotatedText t = parse_corpus_file(std::string(kHeader) + "aujourd'hui\taujourd'hui\tADVERB\n");
  ASSERT_EQ(t.sentences().size(), 1u);
  EXPECT_EQ(t.sentences()[0].tokens().size(), 1u);
  EXPECT_EQ(t.word_count(), 1u);
}

TEST(ParseCorpusFile, HeadersCommentsAndBlankLines) {
  const AnnotatedText t = parse_corpus_file(
      "// exported by hand\n#id speech-2002\n#author Chirac\n#year 2002\n\n"
      "Bonsoir\tbonsoir\tINTERJECTION\n!\t!\tPUNCTUATION\n\n"
      "// second sentence\n"
      "nous\tnous\tPRONOUN\tPERSONAL\nvivons\tvivre\tVERB\tPRESENT\n.\t.\tPUNCTUATION\n\n\n");
  EXPECT_EQ(t.year(), 2002);
  ASSERT_EQ(t.sentences().size(), 2u);
  EXPECT_EQ(t.sentences()[0].word_length(), 1u);
  EXPECT_EQ(t.sentences()[1].word_length(), 2u);
  EXPECT_EQ(t.word_count(), 3u);
}

TEST(ParseCorpusFile, AcceptsCrlf) {
  const AnnotatedText t = parse_corpus_file("#id a\r\n#author b\r\nx\tx\tVERB\r\n\r\ny\ty\tVERB\r\n");
  EXPECT_EQ(t.sentences().size(), 2u);
  EXPECT_EQ(t.sentences()[0].tokens()[0].surface, "x");
}

TEST(ParseCorpusFile, SingleFieldLineIsMalformed) {
  std::size_t line = 0;
  EXPECT_EQ(parse_failure(std::string(kHeader) + "soir\tsoir\tCOMMON_NOUN\nsoir\n", &line),
            ParseError::Kind::kMalformedLine);
  EXPECT_EQ(line, 4u);
}

TEST(ParseCorpusFile, FieldCountAndEmptyFields) {
  EXPECT_EQ(parse_failure(std::string(kHeader) + "a\tb\n"), ParseError::Kind::kMalformedLine);
  EXPECT_EQ(parse_failure(std::string(kHeader) + "a\tb\tVERB\tPRESENT\textra\n"), ParseError::Kind::kMalformedLine);
  EXPECT_EQ(parse_failure(std::string(kHeader) + "\tb\tVERB\n"), ParseError::Kind::kMalformedLine);
  EXPECT_EQ(parse_failure(std::string(kHeader) + "a\t\tVERB\n"), ParseError::Kind::kMalformedLine);
}

TEST(ParseCorpusFile, UnknownAndIllegalTags) {
  std::size_t line = 0;
  EXPECT_EQ(parse_failure(std::string(kHeader) + "a\ta\tNOUN\n", &line), ParseError::Kind::kUnknownTag);
  EXPECT_EQ(line, 3u);
  EXPECT_EQ(parse_failure(std::string(kHeader) + "a\ta\tVERB\tPLUPERFECT\n"), ParseError::Kind::kUnknownTag);
  // a tense refinement under a noun
  EXPECT_EQ(parse_failure(std::string(kHeader) + "a\ta\tCOMMON_NOUN\tPRESENT\n"), ParseError::Kind::kUnknownTag);
  EXPECT_EQ(parse_failure(std::string(kHeader) + "a\ta\tVERB\tARTICLE\n"), ParseError::Kind::kUnknownTag);
}

TEST(ParseCorpusFile, EmptySentences) {
  std::size_t line = 0;
  EXPECT_EQ(parse_failure(std::string(kHeader) + "a\ta\tVERB\n\n.\t.\tPUNCTUATION\n", &line),
            ParseError::Kind::kEmptySentence);
  EXPECT_EQ(line, 5u);
  EXPECT_EQ(parse_failure(std::string(kHeader) + "a\ta\tVERB\n\n\nb\tb\tVERB\n", &line),
            ParseError::Kind::kEmptySentence);
  EXPECT_EQ(line, 5u);
}

TEST(ParseCorpusFile, HeaderProblems) {
  EXPECT_EQ(parse_failure("#author x\na\ta\tVERB\n"), ParseError::Kind::kMissingHeaderField);
  EXPECT_EQ(parse_failure("#id x\na\ta\tVERB\n"), ParseError::Kind::kMissingHeaderField);
  EXPECT_EQ(parse_failure("#id\n#author x\n"), ParseError::Kind::kMissingHeaderField);
  EXPECT_EQ(parse_failure("#id x\n#author y\n#year 20x2\n"), ParseError::Kind::kMalformedLine);
  EXPECT_EQ(parse_failure("#id x\n#author y\n#genre speech\n"), ParseError::Kind::kMalformedLine);
  EXPECT_EQ(parse_failure("#id x\n#id z\n#author y\n"), ParseError::Kind::kMalformedLine);
  EXPECT_EQ(parse_failure("#id x\n#author y\na\ta\tVERB\n#year 2001\n"), ParseError::Kind::kMalformedLine);
  EXPECT_EQ(parse_failure(""), ParseError::Kind::kMissingHeaderField);
}

TEST(ParseCorpusFile, RejectsInvalidUtf8) {
  std::size_t line = 0;
  EXPECT_EQ(parse_failure(std::string(kHeader) + "caf\xC3\tcafe\tCOMMON_NOUN\n", &line),
            ParseError::Kind::kMalformedLine);
  EXPECT_EQ(line, 3u);
  EXPECT_EQ(parse_failure(std::string(kHeader) + "\xC0\xAF\tx\tVERB\n"), ParseError::Kind::kMalformedLine);
}

TEST(ParseCorpusFile, HeaderOnlyFileHasNoWords) {
  const AnnotatedText t = parse_corpus_file("#id empty\n#author nobody\n");
  EXPECT_TRUE(t.sentences().empty());
  EXPECT_EQ(t.word_count(), 0u);
}

TEST(SerializeCorpusFile, MultiwordSurfaceVerbatim) {
  const AnnotatedText t = testing::text_of(
      "x", {{Token{"parce que", "parce que", CoarsePos::kSubordConj, std::nullopt}, word("demain", CoarsePos::kAdverb)}});
  const std::string out = serialize_corpus_file(t);
  EXPECT_NE(out.find("parce que\tparce que\tSUBORD_CONJ\n"), std::string::npos);
  const AnnotatedText back = parse_corpus_file(out);
  EXPECT_EQ(back, t);
  EXPECT_EQ(back.word_count(), 2u);
}

TEST(SerializeCorpusFile, ParsedFileIsReproducedByteForByte) {
  const std::string data =
      "#id s\n#author a\n#year 2012\n\nje\tje\tPRONOUN\tPERSONAL\nsuis\têtre\tVERB\tPRESENT\n.\t.\tPUNCTUATION\n\n"
      "Merci\tmerci\tINTERJECTION\n!\t!\tPUNCTUATION\n";
  EXPECT_EQ(serialize_corpus_file(parse_corpus_file(data)), data);
}

TEST(Sentence, NeedsAWord) {
  EXPECT_THROW(Sentence({punct("."), punct("!")}), AnalysisError);
  EXPECT_THROW(Sentence({}), AnalysisError);
  EXPECT_THROW(Sentence({Token{"a", "a", CoarsePos::kVerb, FinePos::kArticle}}), AnalysisError);
  EXPECT_THROW(Sentence({Token{"a\tb", "a", CoarsePos::kVerb, std::nullopt}}), AnalysisError);
}

TEST(CorpusType, RejectsEmptyAndDuplicateIds) {
  EXPECT_THROW(Corpus("c", {}), AnalysisError);
  const AnnotatedText t = testing::text_of_lemmas("same", {"a"});
  try {
    Corpus("c", {t, t});
    FAIL();
  } catch (const AnalysisError& e) {
    EXPECT_EQ(e.kind(), AnalysisError::Kind::kDuplicateId);
  }
}

TEST(TokenizeRaw, SplitsOnTerminalPunctuation) {
  const AnnotatedText t = tokenize_raw("Bonsoir. Bonne année !", {});
  ASSERT_EQ(t.sentences().size(), 2u);
  EXPECT_EQ(t.sentences()[0].word_length(), 1u);
  EXPECT_EQ(t.sentences()[1].word_length(), 2u);
  const Token& bonne = t.sentences()[1].tokens()[0];
  EXPECT_EQ(bonne.lemma, "bonne");
  EXPECT_EQ(bonne.coarse, CoarsePos::kUnknown);
  EXPECT_EQ(t.sentences()[1].tokens().back().coarse, CoarsePos::kPunctuation);
}

TEST(TokenizeRaw, MultiwordLexicon) {
  const std::vector<std::string> lexicon{"parce que"};
  const AnnotatedText t = tokenize_raw("parce que demain", lexicon);
  ASSERT_EQ(t.sentences().size(), 1u);
  EXPECT_EQ(t.word_count(), 2u);
  EXPECT_EQ(t.sentences()[0].tokens()[0].surface, "parce que");
  // longest entry wins, case-insensitive match keeps the original surface
  const std::vector<std::string> nested{"tout", "tout à fait", "tout à"};
  const AnnotatedText u = tokenize_raw("Tout à fait.", nested);
  EXPECT_EQ(u.word_count(), 1u);
  EXPECT_EQ(u.sentences()[0].tokens()[0].surface, "Tout à fait");
  EXPECT_EQ(u.sentences()[0].tokens()[0].lemma, "tout à fait");
}

TEST(TokenizeRaw, EmptyInput) {
  EXPECT_THROW(tokenize_raw("", {}), AnalysisError);
  EXPECT_THROW(tokenize_raw("  \n\t ", {}), AnalysisError);
  EXPECT_THROW(tokenize_raw("... !", {}), AnalysisError);
}

TEST(TokenizeRaw, PunctuationDetails) {
  const AnnotatedText t = tokenize_raw("« Vive la République ! » Et l'État… Aujourd'hui, demain?!", {});
  ASSERT_EQ(t.sentences().size(), 3u);
  EXPECT_EQ(t.sentences()[0].word_length(), 3u);
  EXPECT_EQ(t.sentences()[0].tokens().back().surface, "»");  // closing quote stays with its sentence
  EXPECT_EQ(t.sentences()[1].word_length(), 2u);
  EXPECT_EQ(t.sentences()[1].tokens()[1].lemma, "l'état");
  EXPECT_EQ(t.sentences()[2].tokens().back().surface, "?!");
}

// Property: sentence count = terminal runs, plus one trailing fragment.
TEST(TokenizeRaw, SentenceCountMatchesTerminalRuns) {
  std::mt19937_64 rng(7);
  const std::vector<std::string> words{"nous", "Français", "année", "été", "pays", "l'avenir"};
  const std::vector<std::string> terminals{".", "!", "?", "…", "...", "?!", ". ."};
  for (int iter = 0; iter < 300; ++iter) {
    std::string text;
    std::size_t runs = 0;
    bool ends_terminal = false;
    const int segments = 1 + static_cast<int>(rng() % 6);
    for (int s = 0; s < segments; ++s) {
      const int n = 1 + static_cast<int>(rng() % 5);
      for (int w = 0; w < n; ++w) {
        text += words[rng() % words.size()];
        text += (rng() % 4 == 0) ? ", " : " ";
      }
      ends_terminal = (rng() % 3 != 0) || s + 1 < segments;
      if (ends_terminal) {
        text += terminals[rng() % terminals.size()] + " ";
        ++runs;
      }
    }
    const AnnotatedText t = tokenize_raw(text, {});
    EXPECT_EQ(t.sentences().size(), runs + (ends_terminal ? 0 : 1)) << text;
  }
}

TEST(MergeTexts, WordCountsAdd) {
  std::vector<AnnotatedText> years;
  int y = 2002;
  for (std::size_t n : {1026u, 1179u, 1304u, 980u, 1142u}) {
    std::vector<std::string> lemmas(n, "mot");
    years.push_back(testing::text_of_lemmas("chirac-" + std::to_string(y++), lemmas, 20, "Chirac"));
  }
  const AnnotatedText merged = merge_texts(years, "chirac", "Chirac");
  EXPECT_EQ(merged.word_count(), 5631u);
  EXPECT_EQ(merged.id(), "chirac");
}

TEST(MergeTexts, SingleAndPair) {
  const AnnotatedText a = testing::text_of("a", {{word("x"), word("y"), word("z")}});
  const AnnotatedText one = merge_texts(std::span(&a, 1), "a2", "someone");
  EXPECT_EQ(one.id(), "a2");
  EXPECT_EQ(one.sentences(), a.sentences());

  const AnnotatedText b = testing::text_of("b", {{word("u")}, {word("v"), word("w")}});
  const AnnotatedText c = testing::text_of("c", {{word("p"), word("q")}, {word("r")}});
  const std::vector<AnnotatedText> both{b, c};
  const AnnotatedText m = merge_texts(both, "bc", "x");
  EXPECT_EQ(m.word_count(), 6u);
  ASSERT_EQ(m.sentences().size(), 4u);
  EXPECT_EQ(m.sentences()[0], b.sentences()[0]);
  EXPECT_EQ(m.sentences()[3], c.sentences()[1]);
  EXPECT_THROW(merge_texts(std::span<const AnnotatedText>(), "e", "x"), AnalysisError);
}

// Property: parse(serialize(t)) == t, and N = tokens - punctuation.
TEST(CorpusProperties, RoundTripAndPunctuationExclusion) {
  std::mt19937_64 rng(11);
  const std::vector<Token> pool{
      word("être", CoarsePos::kVerb, FinePos::kPresent),
      word("le", CoarsePos::kDeterminer, FinePos::kArticle),
      word("pays", CoarsePos::kCommonNoun),
      Token{"parce que", "parce que", CoarsePos::kSubordConj, std::nullopt},
      Token{"Aujourd'hui", "aujourd'hui", CoarsePos::kAdverb, std::nullopt},
      word("nous", CoarsePos::kPronoun, FinePos::kPersonal),
      word("élu", CoarsePos::kAdjective, FinePos::kFromPastParticiple),
      Token{"#1", "#1", CoarsePos::kDeterminer, FinePos::kNumber},
      punct(","), punct("«"), punct("!"),
  };
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<Sentence> sentences;
    std::size_t tokens = 0, marks = 0;
    const int ns = static_cast<int>(rng() % 5);
    for (int s = 0; s < ns; ++s) {
      std::vector<Token> toks{pool[rng() % 8]};
      const int extra = static_cast<int>(rng() % 6);
      for (int k = 0; k < extra; ++k) toks.push_back(pool[rng() % pool.size()]);
      for (const Token& t : toks) marks += t.is_word() ? 0 : 1;
      tokens += toks.size();
      sentences.emplace_back(std::move(toks));
    }
    std::optional<int> year;
    if (rng() % 2) year = 1990 + static_cast<int>(rng() % 40);
    const AnnotatedText t("t" + std::to_string(iter), "Auteur Éponyme", year, std::move(sentences));
    EXPECT_EQ(t.word_count(), tokens - marks);
    const std::string bytes = serialize_corpus_file(t);
    EXPECT_EQ(parse_corpus_file(bytes), t);
    EXPECT_EQ(serialize_corpus_file(parse_corpus_file(bytes)), bytes);
  }
}

TEST(Utf8Lower, LatinLetters) {
  EXPECT_EQ(utf8_lower("ÉTAT Œuvre À Ÿ"), "état œuvre à ÿ");
  EXPECT_EQ(utf8_lower("×"), "×");
}

}  // namespace
}  // namespace stylprint
