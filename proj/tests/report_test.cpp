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

#include "stylprint/report.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <limits>
#include <sstream>

#include "test_util.hpp"

namespace stylprint {
namespace {

namespace fs = std::filesystem;

const std::string kData = STYLPRINT_TEST_DATA;

std::vector<std::string> stc_files(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(kData + "/" + dir))
    if (e.path().extension() == ".stc") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

// Markdown body rows, split into trimmed cells.
std::vector<std::vector<std::string>> md_rows(const std::string& md) {
  std::vector<std::vector<std::string>> rows;
  bool header_seen = false;
  for (const std::string& l : lines_of(md)) {
    if (l.empty() || l.front() != '|') continue;
    if (l.find("---") != std::string::npos) {
      header_seen = true;
      continue;
    }
    if (!header_seen) continue;
    std::vector<std::string> cells;
    std::string cell;
    for (std::size_t i = 1; i < l.size(); ++i) {
      if (l[i] == '|' && l[i - 1] != '\\') {
        cells.push_back(cell.substr(1, cell.size() - 2));
        cell.clear();
      } else {
        cell += l[i];
      }
    }
    rows.push_back(cells);
  }
  return rows;
}

TEST(Format, RelativeDifference) {
  EXPECT_EQ(fmtx::rel_diff({-1.43, false}), "-1.4");
  EXPECT_EQ(fmtx::rel_diff({4.8, false}), "+4.8");
  EXPECT_EQ(fmtx::rel_diff({-70.0, false}), "-70");
  EXPECT_EQ(fmtx::rel_diff({49.6, false}), "+50");
  EXPECT_EQ(fmtx::rel_diff({0.0, true}), "inf");
  EXPECT_EQ(fmtx::rel_diff({0.0, false}), "0.0");
  EXPECT_EQ(fmtx::rel_diff({-0.01, false}), "0.0");
  EXPECT_EQ(fmtx::rel_diff_csv({-1.4276, false}), "-1.43");
}

TEST(Format, SignificanceSuppressed) {
  const SignificanceScore s{0.03, Verdict::kUnderuse, Verdict::kNotSignificant};
  EXPECT_EQ(fmtx::s_display(s, SignificanceLevel::kFivePercent), "0.030");
  EXPECT_EQ(fmtx::s_display(s, SignificanceLevel::kOnePercent), "-");
  EXPECT_EQ(fmtx::s_display(std::nullopt, SignificanceLevel::kFivePercent), "-");
  EXPECT_EQ(fmtx::s_csv(s), "0.030000");
}

TEST(Format, Numbers) {
  EXPECT_EQ(fmtx::grouped(30935), "30,935");
  EXPECT_EQ(fmtx::grouped(980), "980");
  EXPECT_EQ(fmtx::grouped(1000000), "1,000,000");
  EXPECT_EQ(fmtx::fixed(-0.0001, 2), "0.00");
  EXPECT_EQ(fmtx::distance(0.5), "0.500000");
  EXPECT_EQ(fmtx::csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(fmtx::csv_field("say \"x\""), "\"say \"\"x\"\"\"");
  EXPECT_EQ(fmtx::md_cell("a|b"), "a\\|b");
}

TEST(Config, Parsing) {
  EXPECT_EQ(parse_key_mode("lemma"), KeyMode::kLemma);
  EXPECT_EQ(parse_linkage("complete"), Linkage::kComplete);
  EXPECT_EQ(parse_level("1"), SignificanceLevel::kOnePercent);
  EXPECT_EQ(parse_formats("csv,newick"), (std::set<OutputFormat>{OutputFormat::kCsv, OutputFormat::kNewick}));
  EXPECT_THROW(parse_key_mode("stems"), ConfigError);
  EXPECT_THROW(parse_formats("pdf"), ConfigError);
  EXPECT_THROW(parse_level("10"), ConfigError);
  AnalysisConfig c;
  c.threshold = 1.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c.threshold = 0.25;
  c.top_k = 0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(LengthTable, PrintedRatios) {
  const std::size_t chirac_nt[] = {1026, 1179, 1304, 980, 1142}, chirac_gpt[] = {552, 639, 446, 786, 420};
  std::vector<AnnotatedText> ref, other;
  for (std::size_t i = 0; i < 5; ++i) {
    const std::string id = std::to_string(2002 + i);
    ref.push_back(testing::text_of_lemmas(id, std::vector<std::string>(chirac_nt[i], "w"), 10, "Chirac"));
    other.push_back(testing::text_of_lemmas(id, std::vector<std::string>(chirac_gpt[i], "w"), 10, "Chirac"));
  }
  ref.push_back(testing::text_of_lemmas("2007", std::vector<std::string>(1552, "w"), 10, "Sarkozy"));
  other.push_back(testing::text_of_lemmas("2007", std::vector<std::string>(822, "w"), 10, "Sarkozy"));

  const std::vector<LengthRow> rows = length_table(ref, other);
  // five texts, Chirac total, a lone Sarkozy text, overall total
  ASSERT_EQ(rows.size(), 8u);
  const char* ratios[] = {"0.54", "0.54", "0.34", "0.80", "0.37"};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(fmtx::ratio(*rows[i].ratio), ratios[i]) << i;
  EXPECT_EQ(rows[5].label, "Total Chirac");
  EXPECT_EQ(*rows[5].n_ref, 5631u);
  EXPECT_EQ(*rows[5].n_other, 2843u);
  EXPECT_EQ(fmtx::ratio(*rows[5].ratio), "0.50");
  EXPECT_EQ(rows[6].label, "2007");
  EXPECT_EQ(rows[7].label, "Overall total");
  EXPECT_EQ(*rows[7].n_ref, 5631u + 1552u);
}

TEST(LengthTable, OverallTotal) {
  std::vector<AnnotatedText> ref{testing::text_of_lemmas("x", std::vector<std::string>(30935, "w"), 20, "a")};
  std::vector<AnnotatedText> other{testing::text_of_lemmas("x", std::vector<std::string>(16699, "w"), 20, "a")};
  const std::vector<LengthRow> rows = length_table(ref, other);
  EXPECT_EQ(fmtx::ratio(*rows.back().ratio), "0.54");
  EXPECT_EQ(fmtx::grouped(*rows.back().n_ref), "30,935");
}

TEST(LengthTable, UnpairedText) {
  std::vector<AnnotatedText> ref{testing::text_of_lemmas("a", {"w", "w"}), testing::text_of_lemmas("b", {"w"})};
  std::vector<AnnotatedText> other{testing::text_of_lemmas("a", {"w"})};
  const std::vector<LengthRow> rows = length_table(ref, other);
  EXPECT_FALSE(rows[1].n_other.has_value());
  EXPECT_FALSE(rows[1].ratio.has_value());
}

TEST(Bundle, SelfComparisonShowsNoDifference) {
  const NamedCorpus nt = load_corpus("ref", stc_files("nt"));
  const ReportBundle b = compare_bundle(nt, load_corpus("other", stc_files("nt")), AnalysisConfig{});
  const Artifact* pos = b.find("pos_comparison.md");
  ASSERT_NE(pos, nullptr);
  const auto rows = md_rows(pos->body);
  ASSERT_EQ(rows.size(), standard_pos_rows().size());
  for (const auto& r : rows) {
    ASSERT_EQ(r.size(), 5u);
    EXPECT_EQ(r[1], r[2]) << r[0];
    EXPECT_EQ(r[3], "0.0") << r[0];
    EXPECT_EQ(r[4], "-") << r[0];
  }
}

TEST(Bundle, FormatFilterKeepsManifest) {
  AnalysisConfig c;
  c.formats = {OutputFormat::kCsv};
  const ReportBundle b = compare_bundle(load_corpus("ref", stc_files("nt")), load_corpus("other", stc_files("gpt")), c);
  for (const Artifact& a : b.artifacts)
    EXPECT_TRUE(a.name.ends_with(".csv") || a.name == "manifest.txt") << a.name;
  ASSERT_NE(b.find("manifest.txt"), nullptr);
  EXPECT_NE(b.find("manifest.txt")->body.find("  pos_comparison.csv\n"), std::string::npos);
  EXPECT_EQ(b.find("manifest.txt")->body.find("pos_comparison.md"), std::string::npos);
}

TEST(Bundle, CompareArtifacts) {
  const ReportBundle b =
      compare_bundle(load_corpus("ref", stc_files("nt")), load_corpus("other", stc_files("gpt")), AnalysisConfig{});
  for (const char* name : {"lengths.md", "lengths.csv", "pos_comparison.csv", "groups.md", "topk_verb.md",
                           "topk_pronoun.csv", "sentence_summary.md", "histogram.svg", "histogram.csv"})
    EXPECT_NE(b.find(name), nullptr) << name;
  const std::string csv = b.find("pos_comparison.csv")->body;
  const auto ls = lines_of(csv);
  EXPECT_EQ(ls[0], "# stylprint compare");
  EXPECT_EQ(ls[1].rfind("# ref: nt_alpha_2001.stc", 0), 0u);
  EXPECT_EQ(ls[4], "key,f_ref,f_other,rel_diff_pct,s,verdict5,verdict1,rank_ref,rank_other");
  EXPECT_NE(b.find("histogram.svg")->body.find("<desc>"), std::string::npos);
}

TEST(Bundle, ProfileMarkdownLayout) {
  const ReportBundle b = profile_bundle(load_corpus("corpus", stc_files("hand")), AnalysisConfig{});
  const auto ls = lines_of(b.find("pos_profile.md")->body);
  ASSERT_GE(ls.size(), 8u);
  EXPECT_EQ(ls[0], "# Densities of grammatical categories (per thousand words)");
  EXPECT_EQ(ls[1], "");
  EXPECT_EQ(ls[2], "    stylprint profile");
  EXPECT_EQ(ls[3], "    corpus: hand_a.stc hand_b.stc");
  EXPECT_EQ(ls[4].rfind("    config: key_mode=lemma-pos top_k=20", 0), 0u);
  EXPECT_EQ(ls[5], "");
  EXPECT_EQ(ls[6], "| POS | Count | F (‰) |");
  EXPECT_EQ(ls[7], "| --- | ---: | ---: |");
  EXPECT_EQ(ls.back().rfind("- N = ", 0), 0u);
}

TEST(Bundle, Deterministic) {
  auto run = [] {
    return compare_bundle(load_corpus("ref", stc_files("nt")), load_corpus("other", stc_files("gpt")),
                          AnalysisConfig{});
  };
  const ReportBundle a = run(), b = run();
  ASSERT_EQ(a.artifacts.size(), b.artifacts.size());
  for (std::size_t i = 0; i < a.artifacts.size(); ++i) {
    EXPECT_EQ(a.artifacts[i].name, b.artifacts[i].name);
    EXPECT_EQ(a.artifacts[i].body, b.artifacts[i].body);
  }
}

TEST(Classify, TwoGroupsSkipTree) {
  std::vector<std::string> paths = stc_files("short");
  paths.pop_back();  // lebrun, morel
  const ClassifyResult r = classify_bundle(load_corpus("corpus", paths), AnalysisConfig{});
  EXPECT_FALSE(r.tree.has_value());
  EXPECT_EQ(r.bundle.find("tree.nwk"), nullptr);
  EXPECT_NE(r.bundle.find("dendrogram.nwk"), nullptr);
  EXPECT_TRUE(std::any_of(r.bundle.notices.begin(), r.bundle.notices.end(),
                          [](const std::string& n) { return n.find("tree skipped") != std::string::npos; }));
}

TEST(Classify, ShortGroupWarning) {
  const ClassifyResult r = classify_bundle(load_corpus("corpus", stc_files("short")), AnalysisConfig{});
  const std::string groups = r.bundle.find("groups.csv")->body;
  EXPECT_NE(groups.find(",600,SHORT_TEXT"), std::string::npos) << groups;
  EXPECT_EQ(lines_of(groups).size(), 7u);  // provenance, header, three groups
  EXPECT_EQ(std::count_if(r.bundle.notices.begin(), r.bundle.notices.end(),
                          [](const std::string& n) { return n.find("fewer than 1000") != std::string::npos; }),
            1);
  EXPECT_TRUE(r.tree.has_value());
}

TEST(Classify, SingleGroupIsArityError) {
  std::vector<std::string> arnaud;
  for (const std::string& p : stc_files("classify"))
    if (p.find("arnaud") != std::string::npos) arnaud.push_back(p);
  EXPECT_THROW(classify_bundle(load_corpus("corpus", arnaud), AnalysisConfig{}), ArityError);
  AnalysisConfig by_id;
  by_id.group_by = GroupBy::kId;
  const ClassifyResult r = classify_bundle(load_corpus("corpus", arnaud), by_id);
  EXPECT_EQ(r.groups.size(), 3u);
}

TEST(Classify, MergedGroupFiles) {
  const ClassifyResult r = classify_bundle(load_corpus("corpus", stc_files("classify")), AnalysisConfig{});
  ASSERT_NE(r.bundle.find("merged_Arnaud.stc"), nullptr);
  const AnnotatedText merged = parse_corpus_file(r.bundle.find("merged_Arnaud.stc")->body);
  EXPECT_EQ(merged.author(), "Arnaud");
  std::size_t words = 0;
  for (const std::string& p : stc_files("classify"))
    if (p.find("arnaud") != std::string::npos) words += read_corpus_file(p).word_count();
  EXPECT_EQ(merged.word_count(), words);
}

TEST(Detect, Verdicts) {
  const NamedCorpus a = load_corpus("model", {kData + "/hand/hand_a.stc"});
  const NamedCorpus b = load_corpus("candidate", {kData + "/hand/hand_b.stc"});
  AuthorshipVerdict v;
  detect_bundle(a, b, AnalysisConfig{}, &v);
  EXPECT_EQ(v.distance.exact, Rational(1, 2));
  EXPECT_EQ(v.verdict, AuthorshipDecision::kDistinct);
  EXPECT_TRUE(v.length_warning);

  const ReportBundle self = detect_bundle(a, a, AnalysisConfig{}, &v);
  EXPECT_EQ(v.distance.exact, Rational(0));
  EXPECT_EQ(v.verdict, AuthorshipDecision::kSingleAuthorPlausible);
  EXPECT_NE(self.find("detect.csv")->body.find(",0.000000,0.25,SINGLE_AUTHOR_PLAUSIBLE,true"), std::string::npos);
}

TEST(Detect, DisjointTexts) {
  const NamedCorpus a{"model", {"a"}, {testing::text_of_lemmas("a", {"x", "y", "z"})}};
  const NamedCorpus b{"candidate", {"b"}, {testing::text_of_lemmas("b", {"p", "q", "r"})}};
  AuthorshipVerdict v;
  detect_bundle(a, b, AnalysisConfig{}, &v);
  EXPECT_EQ(v.distance.exact, Rational(1));
  EXPECT_EQ(v.verdict, AuthorshipDecision::kDistinct);
}

TEST(Fixtures, SentenceShapes) {
  const SentenceLengthSummary nt = summarize(sentence_lengths(load_corpus("ref", stc_files("nt")).texts));
  const SentenceLengthSummary gpt = summarize(sentence_lengths(load_corpus("other", stc_files("gpt")).texts));
  // natural texts: right-skewed, wide; generated: symmetric, narrow
  EXPECT_LT(static_cast<double>(nt.mode), nt.median);
  EXPECT_LT(nt.median, nt.mean);
  EXPECT_GT(nt.cv_pct, gpt.cv_pct + 20);
  EXPECT_GT(nt.decile_spread, 2 * gpt.decile_spread);
  EXPECT_NEAR(gpt.mean, gpt.median, 1.5);
}

TEST(Fixtures, RoundTrip) {
  std::size_t n = 0;
  for (const auto& e : fs::recursive_directory_iterator(kData)) {
    if (e.path().extension() != ".stc" || e.path().filename() == "malformed.stc") continue;
    const std::string raw = testing::read_file(e.path().string());
    EXPECT_EQ(serialize_corpus_file(parse_corpus_file(raw)), raw) << e.path();
    ++n;
  }
  EXPECT_GT(n, 20u);
}

TEST(Fixtures, Malformed) {
  try {
    read_corpus_file(kData + "/malformed.stc");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseError::Kind::kMalformedLine);
    EXPECT_EQ(e.line(), 5u);
  }
}

TEST(Commands, ExitCodes) {
  const fs::path dir = fs::temp_directory_path() / "stylprint_report_test";
  fs::remove_all(dir);
  AnalysisConfig c;
  c.out_dir = dir.string();
  std::ostringstream out, err;
  EXPECT_EQ(cmd_detect({kData + "/hand/hand_a.stc"}, {kData + "/hand/hand_b.stc"}, c, out, err), 0);
  EXPECT_NE(out.str().find("verdict: DISTINCT"), std::string::npos);
  EXPECT_NE(err.str().find("warning: "), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "detect.md"));
  EXPECT_EQ(cmd_profile({kData + "/empty.stc"}, c, out, err), 1);
  EXPECT_EQ(cmd_classify({kData + "/classify/arnaud_1.stc", kData + "/classify/arnaud_2.stc"}, c, out, err), 3);
  c.top_k = 0;
  EXPECT_EQ(cmd_profile({kData + "/hand/hand_a.stc"}, c, out, err), 2);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace stylprint
