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

// Report emission: tables, histograms, trees and the four commands.
// All number formatting happens here and nowhere else.

#pragma once

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stylprint/classify.hpp"
#include "stylprint/corpus.hpp"
#include "stylprint/distance.hpp"
#include "stylprint/error.hpp"
#include "stylprint/lexstats.hpp"
#include "stylprint/pos.hpp"
#include "stylprint/sentlen.hpp"

namespace stylprint {

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Fewer groups than a command needs.
class ArityError : public Error {
 public:
  using Error::Error;
};

enum class OutputFormat { kMarkdown, kCsv, kSvg, kNewick };

enum class GroupBy { kAuthor, kId };

struct AnalysisConfig {
  KeyMode key_mode = KeyMode::kLemmaAndCoarse;
  std::size_t top_k = 20;
  SignificanceLevel level = SignificanceLevel::kFivePercent;
  double threshold = kDefaultAuthorThreshold;
  Linkage linkage = Linkage::kAverage;
  GroupBy group_by = GroupBy::kAuthor;
  std::string out_dir = "report";
  std::set<OutputFormat> formats = {OutputFormat::kMarkdown, OutputFormat::kCsv, OutputFormat::kSvg,
                                    OutputFormat::kNewick};

  void validate() const {
    if (top_k < 1) throw ConfigError("--top-k must be at least 1");
    if (!(threshold > 0.0 && threshold < 1.0)) throw ConfigError("--threshold must lie strictly between 0 and 1");
    if (key_mode != KeyMode::kLemma && key_mode != KeyMode::kLemmaAndCoarse)
      throw ConfigError("unsupported key mode");
    if (formats.empty()) throw ConfigError("--format names no output format");
    if (out_dir.empty()) throw ConfigError("--out is empty");
  }
};

inline std::string_view key_mode_name(KeyMode m) {
  switch (m) {
    case KeyMode::kLemma: return "lemma";
    case KeyMode::kLemmaAndCoarse: return "lemma-pos";
    case KeyMode::kCoarse: return "pos";
    case KeyMode::kFine: return "fine-pos";
  }
  return "";
}

inline std::string_view linkage_name(Linkage l) {
  switch (l) {
    case Linkage::kAverage: return "average";
    case Linkage::kSingle: return "single";
    case Linkage::kComplete: return "complete";
  }
  return "";
}

inline std::string_view format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::kMarkdown: return "markdown";
    case OutputFormat::kCsv: return "csv";
    case OutputFormat::kSvg: return "svg";
    case OutputFormat::kNewick: return "newick";
  }
  return "";
}

inline KeyMode parse_key_mode(std::string_view s) {
  if (s == "lemma") return KeyMode::kLemma;
  if (s == "lemma-pos") return KeyMode::kLemmaAndCoarse;
  throw ConfigError("unknown key mode '" + std::string(s) + "' (expected lemma or lemma-pos)");
}

inline Linkage parse_linkage(std::string_view s) {
  for (Linkage l : {Linkage::kAverage, Linkage::kSingle, Linkage::kComplete})
    if (linkage_name(l) == s) return l;
  throw ConfigError("unknown linkage '" + std::string(s) + "'");
}

inline SignificanceLevel parse_level(std::string_view s) {
  if (s == "5" || s == "5pct") return SignificanceLevel::kFivePercent;
  if (s == "1" || s == "1pct") return SignificanceLevel::kOnePercent;
  throw ConfigError("unknown significance level '" + std::string(s) + "' (expected 5 or 1)");
}

inline GroupBy parse_group_by(std::string_view s) {
  if (s == "author") return GroupBy::kAuthor;
  if (s == "id") return GroupBy::kId;
  throw ConfigError("unknown grouping key '" + std::string(s) + "'");
}

/// Comma-separated list, e.g. "markdown,csv".
inline std::set<OutputFormat> parse_formats(std::string_view s) {
  std::set<OutputFormat> out;
  for (std::string_view item : detail::split(s, ',')) {
    bool found = false;
    for (OutputFormat f : {OutputFormat::kMarkdown, OutputFormat::kCsv, OutputFormat::kSvg, OutputFormat::kNewick})
      if (format_name(f) == item) {
        out.insert(f);
        found = true;
      }
    if (!found) throw ConfigError("unknown format '" + std::string(item) + "'");
  }
  return out;
}

inline std::string describe(const AnalysisConfig& c) {
  std::string formats;
  for (OutputFormat f : c.formats) formats += (formats.empty() ? "" : ",") + std::string(format_name(f));
  return fmt::format("key_mode={} top_k={} level={} threshold={} linkage={} formats={}", key_mode_name(c.key_mode),
                     c.top_k, c.level == SignificanceLevel::kFivePercent ? "5pct" : "1pct", c.threshold,
                     linkage_name(c.linkage), formats);
}

// ---------------------------------------------------------------------------
// Number formatting

namespace fmtx {

inline std::string fixed(double x, int decimals) {
  if (x == 0.0) x = 0.0;  // no "-0.0"
  std::string s = fmt::format("{:.{}f}", x, decimals);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

inline std::string density(Density d, int decimals = 1) { return fixed(d.per_mille, decimals); }

/// Integer when |x| >= 10, one decimal otherwise; explicit plus sign.
inline std::string rel_diff(const RelativeDiff& r) {
  if (r.infinite) return "inf";
  const std::string body = fixed(r.percent, std::abs(r.percent) >= 10.0 ? 0 : 1);
  if (r.percent > 0 && body.find_first_not_of("0.") != std::string::npos) return "+" + body;
  return body;
}

inline std::string rel_diff_csv(const RelativeDiff& r) { return r.infinite ? "inf" : fixed(r.percent, 2); }

/// Blank ("-") unless significant at `level`.
inline std::string s_display(const std::optional<SignificanceScore>& s, SignificanceLevel level) {
  if (!s || s->at(level) == Verdict::kNotSignificant) return "-";
  return fixed(s->s, 3);
}

inline std::string s_csv(const std::optional<SignificanceScore>& s) { return s ? fmt::format("{:.6f}", s->s) : ""; }

inline std::string quality(double q) { return fixed(q, 1); }

inline std::string distance(double d) { return fmt::format("{:.6f}", d); }

inline std::string ratio(double r) { return fixed(r, 2); }

/// 30935 -> "30,935".
inline std::string grouped(std::size_t n) {
  std::string digits = std::to_string(n), out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace fmtx

// ---------------------------------------------------------------------------
// Artifacts

/// Where an artifact came from; printed at the top of every artifact.
struct Provenance {
  std::string command;
  std::vector<std::pair<std::string, std::vector<std::string>>> sources;  // role -> file basenames
  std::string config;

  std::vector<std::string> lines() const {
    std::vector<std::string> out{"stylprint " + command};
    for (const auto& [role, files] : sources) {
      std::string line = role + ":";
      for (const std::string& f : files) line += " " + f;
      out.push_back(line);
    }
    out.push_back("config: " + config);
    return out;
  }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

inline std::string render_csv(const Table& t, const Provenance& p) {
  std::string out;
  for (const std::string& l : p.lines()) out += "# " + l + "\n";
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + fmtx::csv_field(cells[i]);
    out += "\n";
  };
  emit(t.columns);
  for (const auto& r : t.rows) emit(r);
  return out;
}

inline std::string render_markdown_table(const Table& t) {
  std::string out;
  auto emit = [&](const std::vector<std::string>& cells) {
    out += "|";
    for (const std::string& c : cells) out += " " + fmtx::md_cell(c) + " |";
    out += "\n";
  };
  emit(t.columns);
  out += "|";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += i == 0 ? " --- |" : " ---: |";
  out += "\n";
  for (const auto& r : t.rows) emit(r);
  return out;
}

inline std::string render_markdown(const std::string& title, const Table& t, const Provenance& p,
                                   const std::vector<std::string>& notes = {}) {
  std::string out = "# " + title + "\n\n";
  for (const std::string& l : p.lines()) out += "    " + l + "\n";
  out += "\n" + render_markdown_table(t);
  if (!notes.empty()) {
    out += "\n";
    for (const std::string& n : notes) out += "- " + n + "\n";
  }
  return out;
}

struct Artifact {
  std::string name;  // file name inside the output directory
  std::string body;
};

struct ReportBundle {
  std::vector<Artifact> artifacts;
  std::vector<std::string> notices;

  void add(std::string name, std::string body) { artifacts.push_back({std::move(name), std::move(body)}); }

  const Artifact* find(std::string_view name) const {
    for (const Artifact& a : artifacts)
      if (a.name == name) return &a;
    return nullptr;
  }
};

namespace detail {

inline std::optional<OutputFormat> format_of(std::string_view name) {
  auto ends = [&](std::string_view ext) { return name.size() >= ext.size() && name.substr(name.size() - ext.size()) == ext; };
  if (ends(".md")) return OutputFormat::kMarkdown;
  if (ends(".csv")) return OutputFormat::kCsv;
  if (ends(".svg")) return OutputFormat::kSvg;
  if (ends(".nwk")) return OutputFormat::kNewick;
  return std::nullopt;  // manifest and corpus files are always written
}

inline std::string basename(const std::string& path) { return std::filesystem::path(path).filename().string(); }

inline std::vector<std::string> basenames(const std::vector<std::string>& paths) {
  std::vector<std::string> out;
  for (const std::string& p : paths) out.push_back(basename(p));
  return out;
}

/// Keeps [A-Za-z0-9._-], everything else becomes '_'.
inline std::string file_stem(std::string_view label) {
  std::string out;
  for (char c : label) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
                    c == '_' || c == '-';
    out += ok ? c : '_';
  }
  return out.empty() ? "_" : out;
}

}  // namespace detail

/// Drops artifacts whose format is not enabled and appends manifest.txt.
inline ReportBundle finalize(ReportBundle bundle, const AnalysisConfig& config, const Provenance& p) {
  ReportBundle out;
  out.notices = bundle.notices;
  for (Artifact& a : bundle.artifacts) {
    const auto f = detail::format_of(a.name);
    if (!f || config.formats.contains(*f)) out.artifacts.push_back(std::move(a));
  }
  std::string manifest;
  for (const std::string& l : p.lines()) manifest += l + "\n";
  manifest += "artifacts:\n";
  std::vector<std::string> names;
  for (const Artifact& a : out.artifacts) names.push_back(a.name);
  std::sort(names.begin(), names.end());
  for (const std::string& n : names) manifest += "  " + n + "\n";
  if (!out.notices.empty()) {
    manifest += "notices:\n";
    for (const std::string& n : out.notices) manifest += "  " + n + "\n";
  }
  out.add("manifest.txt", manifest);
  return out;
}

inline void write_bundle(const ReportBundle& bundle, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
  for (const Artifact& a : bundle.artifacts) {
    const std::filesystem::path path = std::filesystem::path(dir) / a.name;
    std::ofstream f(path, std::ios::binary);
    f << a.body;
    if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  }
}

// ---------------------------------------------------------------------------
// Tables

inline std::vector<std::string> comparison_csv_columns() {
  return {"key", "f_ref", "f_other", "rel_diff_pct", "s", "verdict5", "verdict1", "rank_ref", "rank_other"};
}

inline std::vector<std::string> comparison_csv_row(const ComparisonRow& r, std::string key) {
  auto rank = [](const std::optional<std::size_t>& x) { return x ? std::to_string(*x) : std::string(); };
  auto verdict = [&](SignificanceLevel level) {
    return r.s ? std::string(verdict_name(r.s->at(level))) : std::string();
  };
  return {std::move(key),
          fmtx::fixed(r.f_ref.per_mille, 4),
          fmtx::fixed(r.f_other.per_mille, 4),
          fmtx::rel_diff_csv(r.rel_diff),
          fmtx::s_csv(r.s),
          verdict(SignificanceLevel::kFivePercent),
          verdict(SignificanceLevel::kOnePercent),
          rank(r.rank_ref),
          rank(r.rank_other)};
}

/// One row per text pair, a subtotal after each run of one author, and the overall total.
struct LengthRow {
  std::string label;
  std::string author;
  std::optional<std::size_t> n_ref, n_other;
  std::optional<double> ratio;  // n_other / n_ref
  bool total = false;
};

inline std::optional<double> length_ratio(std::optional<std::size_t> n_ref, std::optional<std::size_t> n_other) {
  if (!n_ref || !n_other || *n_ref == 0) return std::nullopt;
  return static_cast<double>(*n_other) / static_cast<double>(*n_ref);
}

inline std::vector<LengthRow> length_table(std::span<const AnnotatedText> ref, std::span<const AnnotatedText> other) {
  std::vector<LengthRow> rows;
  const std::size_t n = std::max(ref.size(), other.size());
  std::size_t run_ref = 0, run_other = 0, all_ref = 0, all_other = 0;
  std::size_t run_len = 0;
  auto close_run = [&](const std::string& author) {
    if (run_len > 1)
      rows.push_back({"Total " + author, author, run_ref, run_other, length_ratio(run_ref, run_other), true});
    run_ref = run_other = run_len = 0;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const AnnotatedText* a = i < ref.size() ? &ref[i] : nullptr;
    const AnnotatedText* b = i < other.size() ? &other[i] : nullptr;
    const std::string author = a ? a->author() : b->author();
    if (!rows.empty() && rows.back().author != author) close_run(rows.back().author);
    LengthRow row;
    row.author = author;
    row.label = a ? a->id() : b->id();
    if (a && b && a->id() != b->id()) row.label += " / " + b->id();
    if (a) row.n_ref = a->word_count();
    if (b) row.n_other = b->word_count();
    row.ratio = length_ratio(row.n_ref, row.n_other);
    run_ref += a ? a->word_count() : 0;
    run_other += b ? b->word_count() : 0;
    all_ref += a ? a->word_count() : 0;
    all_other += b ? b->word_count() : 0;
    ++run_len;
    rows.push_back(row);
  }
  if (!rows.empty()) close_run(rows.back().author);
  rows.push_back({"Overall total", "", all_ref, all_other, length_ratio(all_ref, all_other), true});
  return rows;
}

namespace detail {

inline std::string opt_count(const std::optional<std::size_t>& n, bool grouped) {
  if (!n) return grouped ? "-" : "";
  return grouped ? fmtx::grouped(*n) : std::to_string(*n);
}

inline std::string title_case_tag(CoarsePos p) { return std::string(display_name(p)); }

}  // namespace detail

inline void add_length_table(ReportBundle& b, const std::vector<LengthRow>& rows, const Provenance& p) {
  Table csv{{"author", "text", "n_ref", "n_other", "ratio"}, {}};
  Table md{{"Author", "Text", "N ref", "N other", "N other / N ref"}, {}};
  for (const LengthRow& r : rows) {
    const std::string ratio_csv = r.ratio ? fmt::format("{:.4f}", *r.ratio) : "";
    csv.rows.push_back({r.author, r.label, detail::opt_count(r.n_ref, false), detail::opt_count(r.n_other, false),
                        ratio_csv});
    md.rows.push_back({r.total ? "" : r.author, r.label, detail::opt_count(r.n_ref, true),
                       detail::opt_count(r.n_other, true), r.ratio ? fmtx::ratio(*r.ratio) : "-"});
  }
  b.add("lengths.csv", render_csv(csv, p));
  b.add("lengths.md", render_markdown("Text lengths in words", md, p));
}

inline void add_pos_comparison(ReportBundle& b, const std::vector<PosTag>& tags, const std::vector<ComparisonRow>& rows,
                               SignificanceLevel level, const Provenance& p) {
  Table csv{comparison_csv_columns(), {}};
  Table md{{"POS", "F_ref", "F_other", "(F_other-F_ref)/F_ref %", "S"}, {}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ComparisonRow& r = rows[i];
    csv.rows.push_back(comparison_csv_row(r, r.key));
    md.rows.push_back({std::string(display_name(tags[i])), fmtx::density(r.f_ref), fmtx::density(r.f_other),
                       fmtx::rel_diff(r.rel_diff), fmtx::s_display(r.s, level)});
  }
  b.add("pos_comparison.csv", render_csv(csv, p));
  b.add("pos_comparison.md",
        render_markdown("Densities of grammatical categories (per thousand words)", md, p));
}

inline void add_group_comparison(ReportBundle& b, const std::vector<ComparisonRow>& rows, SignificanceLevel level,
                                 const Provenance& p) {
  Table csv{comparison_csv_columns(), {}};
  Table md{{"Categories", "F_ref", "F_other", "(F_other-F_ref)/F_ref %", "S"}, {}};
  for (const ComparisonRow& r : rows) {
    csv.rows.push_back(comparison_csv_row(r, r.key));
    md.rows.push_back({r.key == "VERB_GROUP" ? "Verb group of POS" : "Noun group of POS", fmtx::density(r.f_ref),
                       fmtx::density(r.f_other), fmtx::rel_diff(r.rel_diff), fmtx::s_display(r.s, level)});
  }
  b.add("groups.csv", render_csv(csv, p));
  b.add("groups.md", render_markdown("Verb and noun groups (per thousand words)", md, p));
}

inline void add_top_k(ReportBundle& b, CoarsePos tag, const std::vector<ComparisonRow>& rows, const Provenance& p) {
  Table csv{comparison_csv_columns(), {}};
  Table md{{"Rank ref", "Lemma", "F_ref (‰)", "Rank other", "F_other (‰)", "(F_other-F_ref)/F_ref %"}, {}};
  for (const ComparisonRow& r : rows) {
    csv.rows.push_back(comparison_csv_row(r, r.key));
    md.rows.push_back({std::to_string(*r.rank_ref), r.key, fmtx::density(r.f_ref, 2),
                       r.rank_other ? std::to_string(*r.rank_other) : "-", fmtx::density(r.f_other, 2),
                       fmtx::rel_diff(r.rel_diff)});
  }
  std::string name = "topk_" + std::string(tag_name(tag));
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  b.add(name + ".csv", render_csv(csv, p));
  b.add(name + ".md",
        render_markdown(fmt::format("{} most frequent in ref (per thousand words)", display_name(tag)), md, p));
}

inline void add_sentence_summary(ReportBundle& b, const std::vector<std::pair<std::string, LengthMultiset>>& corpora,
                                 const Provenance& p) {
  Table csv{{"corpus", "mode", "median", "mean", "std_dev", "cv_pct", "medial", "decile_spread"}, {}};
  Table md{{"", "Mode", "Median", "Mean", "Standard dev.", "CV%", "Medial", "(D9-D1)/D1"}, {}};
  for (const auto& [label, m] : corpora) {
    if (m.total_sentences < 2) {
      b.notices.push_back("sentence summary skipped for '" + label + "': fewer than two sentences");
      continue;
    }
    const SentenceLengthSummary s = summarize(m);
    csv.rows.push_back({label, std::to_string(s.mode), fmtx::fixed(s.median, 4), fmtx::fixed(s.mean, 4),
                        fmtx::fixed(s.std_dev, 4), fmtx::fixed(s.cv_pct, 4), fmtx::fixed(s.medial, 4),
                        fmtx::fixed(s.decile_spread, 4)});
    md.rows.push_back({label, std::to_string(s.mode), fmtx::fixed(s.median, 1), fmtx::fixed(s.mean, 1),
                       fmtx::fixed(s.std_dev, 1), fmtx::fixed(s.cv_pct, 1), fmtx::fixed(s.medial, 1),
                       fmtx::fixed(s.decile_spread, 2)});
  }
  if (csv.rows.empty()) return;
  b.add("sentence_summary.csv", render_csv(csv, p));
  b.add("sentence_summary.md", render_markdown("Sentence lengths in words", md, p));
}

/// Line chart, one polyline per corpus; x = length, y = percent of sentences.
inline std::string render_histogram_svg(const std::vector<std::pair<std::string, LengthHistogram>>& series,
                                        const Provenance& p) {
  constexpr double kW = 720, kH = 420, kLeft = 60, kRight = 20, kTop = 30, kBottom = 50;
  constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  std::size_t max_len = 1;
  double max_pct = 1;
  for (const auto& [_, h] : series)
    for (const auto& [len, pct] : h.bins) {
      max_len = std::max(max_len, len);
      max_pct = std::max(max_pct, pct);
    }
  max_pct = std::ceil(max_pct);
  auto x = [&](double len) { return kLeft + (kW - kLeft - kRight) * len / static_cast<double>(max_len); };
  auto y = [&](double pct) { return kH - kBottom - (kH - kTop - kBottom) * pct / max_pct; };

  std::string desc;
  for (const std::string& l : p.lines()) desc += (desc.empty() ? "" : "; ") + l;
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n", kW, kH);
  std::string esc;
  for (char c : desc) {
    if (c == '&') esc += "&amp;";
    else if (c == '<') esc += "&lt;";
    else if (c == '>') esc += "&gt;";
    else esc += c;
  }
  out += "<desc>" + esc + "</desc>\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", kLeft, kH - kBottom,
                     kW - kRight);
  out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", kLeft, kTop,
                     kH - kBottom);
  const std::size_t xstep = max_len <= 20 ? 1 : (max_len <= 100 ? 10 : 20);
  for (std::size_t t = 0; t <= max_len; t += xstep)
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"10\" text-anchor=\"middle\">{}</text>\n", x(t),
                       kH - kBottom + 15, t);
  const int ystep = max_pct <= 10 ? 1 : 5;
  for (int t = 0; t <= static_cast<int>(max_pct); t += ystep)
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"10\" text-anchor=\"end\">{}</text>\n", kLeft - 5,
                       y(t) + 3, t);
  out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"12\" text-anchor=\"middle\">sentence length (words)</text>\n",
                     (kLeft + kW - kRight) / 2, kH - 10);
  out += fmt::format("<text x=\"15\" y=\"{:.2f}\" font-size=\"12\" transform=\"rotate(-90 15 {:.2f})\" text-anchor=\"middle\">% of sentences</text>\n",
                     (kTop + kH - kBottom) / 2, (kTop + kH - kBottom) / 2);
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % 4];
    std::string points;
    for (std::size_t len = 1; len <= max_len; ++len)
      points += fmt::format("{}{:.2f},{:.2f}", points.empty() ? "" : " ", x(len), y(series[s].second.at(len)));
    out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", color, points);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"12\" fill=\"{}\">{}</text>\n", kW - kRight - 150,
                       kTop + 15 * static_cast<double>(s + 1), color, series[s].first);
  }
  return out + "</svg>\n";
}

inline void add_histogram(ReportBundle& b, const std::vector<std::pair<std::string, LengthMultiset>>& corpora,
                          const Provenance& p) {
  std::vector<std::pair<std::string, LengthHistogram>> series;
  std::set<std::size_t> lengths;
  for (const auto& [label, m] : corpora) {
    series.emplace_back(label, histogram_percent(m));
    for (const auto& [len, _] : m.counts) lengths.insert(len);
  }
  Table csv{{"length"}, {}};
  if (series.size() == 1) {
    csv.columns.push_back("percent");
  } else {
    for (const auto& [label, _] : series) csv.columns.push_back(label + "_percent");
  }
  for (std::size_t len : lengths) {
    std::vector<std::string> row{std::to_string(len)};
    for (const auto& [_, h] : series) row.push_back(fmtx::fixed(h.at(len), 4));
    csv.rows.push_back(row);
  }
  b.add("histogram.csv", render_csv(csv, p));
  b.add("histogram.svg", render_histogram_svg(series, p));
}

inline std::string newick_with_comment(const std::string& tree, const Provenance& p) {
  std::string comment;
  for (const std::string& l : p.lines()) {
    std::string clean;
    for (char c : l) clean += (c == '[' || c == ']') ? '_' : c;
    comment += "[" + clean + "]\n";
  }
  return comment + tree + "\n";
}

inline void add_quality(ReportBundle& b, const std::string& stem, const TreeQuality& q, const DistanceMatrix& m,
                        const Provenance& p) {
  Table csv{{"pair", "d_matrix", "d_tree", "index"}, {}};
  Table md{{"Pair", "d matrix", "d tree", "Index %"}, {}};
  for (const PairQuality& pq : q.pairs) {
    const std::string pair = m.labels()[pq.i] + " | " + m.labels()[pq.j];
    csv.rows.push_back({pair, fmtx::distance(pq.d_matrix), fmtx::distance(pq.d_tree),
                        pq.index ? fmtx::fixed(*pq.index, 4) : ""});
    md.rows.push_back({pair, fmtx::fixed(pq.d_matrix, 3), fmtx::fixed(pq.d_tree, 3),
                       pq.index ? fmtx::quality(*pq.index) : "-"});
  }
  csv.rows.push_back({"global", "", "", fmtx::fixed(q.global, 4)});
  b.add(stem + ".csv", render_csv(csv, p));
  b.add(stem + ".md", render_markdown("Tree quality", md, p,
                                      {"global quality: " + fmtx::quality(q.global) + "%",
                                       "smallest per-path index: " + fmtx::quality(q.min_index()) + "%"}));
}

inline void add_matrix(ReportBundle& b, const DistanceMatrix& m, const Provenance& p) {
  Table t{{""}, {}};
  for (const std::string& l : m.labels()) t.columns.push_back(l);
  Table md = t;
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::vector<std::string> row{m.labels()[i]}, mdrow{m.labels()[i]};
    for (std::size_t j = 0; j < m.size(); ++j) {
      row.push_back(fmtx::distance(m(i, j)));
      mdrow.push_back(fmtx::fixed(m(i, j), 3));
    }
    t.rows.push_back(row);
    md.rows.push_back(mdrow);
  }
  b.add("matrix.csv", render_csv(t, p));
  b.add("matrix.md", render_markdown("Intertextual distances", md, p));
}

// ---------------------------------------------------------------------------
// Bundles. These are pure; commands add file I/O and exit codes.

struct NamedCorpus {
  std::string label;
  std::vector<std::string> paths;
  std::vector<AnnotatedText> texts;
};

inline NamedCorpus load_corpus(std::string label, const std::vector<std::string>& paths) {
  NamedCorpus c{std::move(label), paths, {}};
  for (const std::string& path : paths) c.texts.push_back(read_corpus_file(path));
  return c;
}

inline const std::vector<CoarsePos>& top_k_tags() {
  static const std::vector<CoarsePos> tags{CoarsePos::kVerb,       CoarsePos::kPronoun,   CoarsePos::kAdverb,
                                           CoarsePos::kCommonNoun, CoarsePos::kAdjective, CoarsePos::kDeterminer};
  return tags;
}

inline ReportBundle profile_bundle(const NamedCorpus& c, const AnalysisConfig& config) {
  const Provenance p{"profile", {{c.label, detail::basenames(c.paths)}}, describe(config)};
  ReportBundle b;
  const PosProfile prof = pos_density_profile(c.texts);
  if (prof.unknown_warning)
    b.notices.push_back(fmt::format("{:.1f}% of words are tagged UNKNOWN", 100.0 * prof.unknown_share));

  Table csv{{"key", "count", "density"}, {}};
  Table md{{"POS", "Count", "F (‰)"}, {}};
  for (const PosTag& tag : standard_pos_rows()) {
    csv.rows.push_back({std::string(tag_name(tag)), std::to_string(prof.count(tag)),
                        fmtx::fixed(prof.density_of(tag).per_mille, 4)});
    md.rows.push_back({std::string(display_name(tag)), fmtx::grouped(prof.count(tag)),
                       fmtx::density(prof.density_of(tag))});
  }
  b.add("pos_profile.csv", render_csv(csv, p));
  b.add("pos_profile.md", render_markdown("Densities of grammatical categories (per thousand words)", md, p,
                                          {"N = " + fmtx::grouped(prof.total_words) + " words"}));

  const GroupDensities g = group_densities(prof);
  const GroupCounts gc = group_counts(prof);
  Table gcsv{{"key", "count", "density"},
             {{"VERB_GROUP", std::to_string(gc.verb_group), fmtx::fixed(g.verb_group.per_mille, 4)},
              {"NOUN_GROUP", std::to_string(gc.noun_group), fmtx::fixed(g.noun_group.per_mille, 4)}}};
  Table gmd{{"Categories", "Count", "F (‰)"},
            {{"Verb group of POS", fmtx::grouped(gc.verb_group), fmtx::density(g.verb_group)},
             {"Noun group of POS", fmtx::grouped(gc.noun_group), fmtx::density(g.noun_group)}}};
  b.add("groups.csv", render_csv(gcsv, p));
  b.add("groups.md", render_markdown("Verb and noun groups (per thousand words)", gmd, p));

  const std::vector<std::pair<std::string, LengthMultiset>> lengths{{c.label, sentence_lengths(c.texts)}};
  add_sentence_summary(b, lengths, p);
  add_histogram(b, lengths, p);
  return finalize(std::move(b), config, p);
}

inline ReportBundle compare_bundle(const NamedCorpus& ref, const NamedCorpus& other, const AnalysisConfig& config) {
  const Provenance p{"compare",
                     {{ref.label, detail::basenames(ref.paths)}, {other.label, detail::basenames(other.paths)}},
                     describe(config)};
  ReportBundle b;
  if (word_count(ref.texts) == 0) throw AnalysisError(AnalysisError::Kind::kEmptyCorpus, "reference corpus has no word");
  if (word_count(other.texts) == 0) throw AnalysisError(AnalysisError::Kind::kEmptyCorpus, "other corpus has no word");

  add_length_table(b, length_table(ref.texts, other.texts), p);
  const std::vector<PosTag> tags = standard_pos_rows();
  add_pos_comparison(b, tags, compare_profiles(ref.texts, other.texts, tags), config.level, p);
  add_group_comparison(b, compare_groups(ref.texts, other.texts), config.level, p);
  for (CoarsePos tag : top_k_tags()) {
    try {
      add_top_k(b, tag, top_k_comparison(ref.texts, other.texts, {tag}, config.top_k), p);
    } catch (const AnalysisError& e) {
      if (e.kind() != AnalysisError::Kind::kEmptyFilterResult) throw;
      b.notices.push_back(fmt::format("no {} in the reference corpus; table skipped", tag_name(tag)));
    }
  }
  for (const NamedCorpus* c : {&ref, &other}) {
    const PosProfile prof = pos_density_profile(c->texts);
    if (prof.unknown_warning)
      b.notices.push_back(fmt::format("{}: {:.1f}% of words are tagged UNKNOWN", c->label, 100.0 * prof.unknown_share));
  }
  const std::vector<std::pair<std::string, LengthMultiset>> lengths{{ref.label, sentence_lengths(ref.texts)},
                                                                    {other.label, sentence_lengths(other.texts)}};
  add_sentence_summary(b, lengths, p);
  add_histogram(b, lengths, p);
  return finalize(std::move(b), config, p);
}

struct ClassifyResult {
  ReportBundle bundle;
  std::vector<AnnotatedText> groups;
  DistanceMatrix matrix;
  Dendrogram dendrogram;
  std::optional<UnrootedTree> tree;
  std::optional<TreeQuality> tree_quality;
  TreeQuality dendrogram_quality;
};

/// Merges texts by the grouping key, then builds matrix, dendrogram and (for three
/// groups or more) the unrooted tree.
inline ClassifyResult classify_bundle(const NamedCorpus& corpus, const AnalysisConfig& config) {
  const Provenance p{"classify", {{corpus.label, detail::basenames(corpus.paths)}}, describe(config)};
  std::map<std::string, std::vector<AnnotatedText>> by_key;
  for (const AnnotatedText& t : corpus.texts) by_key[config.group_by == GroupBy::kAuthor ? t.author() : t.id()].push_back(t);
  if (by_key.size() < 2)
    throw ArityError(fmt::format("classification needs at least two groups, found {}", by_key.size()));

  ReportBundle b;
  std::vector<AnnotatedText> groups;
  Table gcsv{{"group", "texts", "words", "warning"}, {}};
  Table gmd{{"Group", "Texts", "N", "Warning"}, {}};
  for (const auto& [key, texts] : by_key) {
    groups.push_back(merge_texts(texts, key, config.group_by == GroupBy::kAuthor ? key : texts.front().author()));
    const std::size_t n = groups.back().word_count();
    const bool short_text = n < kMinReliableWords;
    if (short_text)
      b.notices.push_back(fmt::format("group '{}' has {} words (fewer than {})", key, n, kMinReliableWords));
    std::string ids;
    for (const AnnotatedText& t : texts) ids += (ids.empty() ? "" : " ") + t.id();
    gcsv.rows.push_back({key, ids, std::to_string(n), short_text ? "SHORT_TEXT" : ""});
    gmd.rows.push_back({key, ids, fmtx::grouped(n), short_text ? "fewer than 1,000 words" : ""});
    b.add("merged_" + detail::file_stem(key) + ".stc", serialize_corpus_file(groups.back()));
  }
  b.add("groups.csv", render_csv(gcsv, p));
  b.add("groups.md", render_markdown("Groups", gmd, p));

  DistanceMatrix matrix = distance_matrix(groups, config.key_mode);
  add_matrix(b, matrix, p);
  Dendrogram dendro = hac(matrix, config.linkage);
  b.add("dendrogram.nwk", newick_with_comment(to_newick(dendro), p));
  const TreeQuality dq = tree_quality(dendro, matrix);
  add_quality(b, "dendrogram_quality", dq, matrix, p);

  std::optional<UnrootedTree> tree;
  std::optional<TreeQuality> tq;
  if (matrix.size() >= 3) {
    tree = nj_tree(matrix);
    tq = tree_quality(*tree, matrix);
    b.add("tree.nwk", newick_with_comment(to_newick(*tree), p));
    add_quality(b, "quality", *tq, matrix, p);
    if (tree->clamped_branches > 0)
      b.notices.push_back(fmt::format("{} negative branch length(s) clamped to 0", tree->clamped_branches));
  } else {
    b.notices.push_back("tree skipped: neighbor-joining needs at least three groups");
  }
  ClassifyResult r{finalize(std::move(b), config, p), std::move(groups), std::move(matrix), std::move(dendro),
                   std::move(tree), std::move(tq), dq};
  return r;
}

inline ReportBundle detect_bundle(const NamedCorpus& model, const NamedCorpus& candidate, const AnalysisConfig& config,
                                  AuthorshipVerdict* verdict_out = nullptr) {
  const Provenance p{"detect",
                     {{model.label, detail::basenames(model.paths)}, {candidate.label, detail::basenames(candidate.paths)}},
                     describe(config)};
  const AnnotatedText a = model.texts.size() == 1 ? model.texts.front() : merge_texts(model.texts, "model", "model");
  const AnnotatedText c =
      candidate.texts.size() == 1 ? candidate.texts.front() : merge_texts(candidate.texts, "candidate", "candidate");
  const AuthorshipVerdict v = same_author_test(a, c, config.threshold, config.key_mode);
  if (verdict_out) *verdict_out = v;
  ReportBundle b;
  if (v.length_warning) b.notices.push_back("a text has fewer than 1,000 words; the distance is unreliable");
  Table csv{{"model", "candidate", "n_model", "n_candidate", "distance", "threshold", "verdict", "length_warning"},
            {{a.id(), c.id(), std::to_string(a.word_count()), std::to_string(c.word_count()),
              fmtx::distance(v.distance.value()), fmt::format("{}", v.threshold), std::string(decision_name(v.verdict)),
              v.length_warning ? "true" : "false"}}};
  Table md{{"Model", "Candidate", "N model", "N candidate", "Distance", "Threshold", "Verdict"},
           {{a.id(), c.id(), fmtx::grouped(a.word_count()), fmtx::grouped(c.word_count()),
             fmtx::fixed(v.distance.value(), 3), fmt::format("{}", v.threshold), std::string(decision_name(v.verdict))}}};
  b.add("detect.csv", render_csv(csv, p));
  b.add("detect.md", render_markdown("Authorship screening", md, p, b.notices));
  return finalize(std::move(b), config, p);
}

// ---------------------------------------------------------------------------
// Commands. Exit codes: 0 success, 1 parse or data error, 2 config error, 3 arity error.

namespace detail {

template <class F>
int run_command(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ArityError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const AnalysisError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

inline void print_notices(const ReportBundle& b, std::ostream& err) {
  for (const std::string& n : b.notices) err << "warning: " << n << "\n";
}

inline void print_written(const ReportBundle& b, const std::string& dir, std::ostream& out) {
  out << "wrote " << b.artifacts.size() << " artifacts to " << dir << "\n";
}

}  // namespace detail

inline int cmd_profile(const std::vector<std::string>& paths, const AnalysisConfig& config, std::ostream& out,
                       std::ostream& err) {
  return detail::run_command(err, [&] {
    config.validate();
    const ReportBundle b = profile_bundle(load_corpus("corpus", paths), config);
    write_bundle(b, config.out_dir);
    detail::print_notices(b, err);
    detail::print_written(b, config.out_dir, out);
    return 0;
  });
}

inline int cmd_compare(const std::vector<std::string>& ref, const std::vector<std::string>& other,
                       const AnalysisConfig& config, std::ostream& out, std::ostream& err) {
  return detail::run_command(err, [&] {
    config.validate();
    const ReportBundle b = compare_bundle(load_corpus("ref", ref), load_corpus("other", other), config);
    write_bundle(b, config.out_dir);
    detail::print_notices(b, err);
    detail::print_written(b, config.out_dir, out);
    return 0;
  });
}

inline int cmd_classify(const std::vector<std::string>& paths, const AnalysisConfig& config, std::ostream& out,
                        std::ostream& err) {
  return detail::run_command(err, [&] {
    config.validate();
    const ClassifyResult r = classify_bundle(load_corpus("corpus", paths), config);
    write_bundle(r.bundle, config.out_dir);
    detail::print_notices(r.bundle, err);
    out << "groups: " << r.groups.size() << "\n";
    out << "dendrogram quality: " << fmtx::quality(r.dendrogram_quality.global) << "\n";
    if (r.tree_quality) {
      out << "tree quality: " << fmtx::quality(r.tree_quality->global) << "\n";
      out << "smallest per-path index: " << fmtx::quality(r.tree_quality->min_index()) << "\n";
    }
    detail::print_written(r.bundle, config.out_dir, out);
    return 0;
  });
}

/// The verdict is data: a DISTINCT result still exits 0.
inline int cmd_detect(const std::vector<std::string>& model, const std::vector<std::string>& candidate,
                      const AnalysisConfig& config, std::ostream& out, std::ostream& err) {
  return detail::run_command(err, [&] {
    config.validate();
    AuthorshipVerdict v;
    const ReportBundle b = detect_bundle(load_corpus("model", model), load_corpus("candidate", candidate), config, &v);
    write_bundle(b, config.out_dir);
    detail::print_notices(b, err);
    out << "distance: " << fmtx::distance(v.distance.value()) << "\n";
    out << "threshold: " << v.threshold << "\n";
    out << "verdict: " << decision_name(v.verdict) << "\n";
    if (v.length_warning) out << "length warning: a text has fewer than " << kMinReliableWords << " words\n";
    return 0;
  });
}

}  // namespace stylprint
