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

// stylprint profile|compare|classify|detect

#include <iostream>
#include <string>
#include <vector>

#if __has_include("CLI11.hpp")
#include "CLI11.hpp"
#else
#include <CLI/CLI.hpp>
#endif
#include "stylprint/report.hpp"

namespace {

struct Flags {
  std::string out = "report";
  std::string format = "markdown,csv,svg,newick";
  std::string key_mode = "lemma-pos";
  std::size_t top_k = 20;
  double threshold = stylprint::kDefaultAuthorThreshold;
  std::string linkage = "average";
  std::string level = "5";
  std::string group_by = "author";
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--out", f.out, "output directory");
  app->add_option("--format", f.format, "comma-separated: markdown,csv,svg,newick");
  app->add_option("--key-mode", f.key_mode, "lemma or lemma-pos");
  app->add_option("--top-k", f.top_k, "rows per rank/frequency table");
  app->add_option("--threshold", f.threshold, "distance below which one author is plausible");
  app->add_option("--linkage", f.linkage, "average, single or complete");
  app->add_option("--level", f.level, "significance level in percent: 5 or 1");
}

stylprint::AnalysisConfig to_config(const Flags& f) {
  stylprint::AnalysisConfig c;
  c.out_dir = f.out;
  c.formats = stylprint::parse_formats(f.format);
  c.key_mode = stylprint::parse_key_mode(f.key_mode);
  c.top_k = f.top_k;
  c.threshold = f.threshold;
  c.linkage = stylprint::parse_linkage(f.linkage);
  c.level = stylprint::parse_level(f.level);
  c.group_by = stylprint::parse_group_by(f.group_by);
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corpus stylometry: category densities, rank tables, sentence lengths, distances and trees"};
  app.require_subcommand(1);
  Flags flags;

  std::vector<std::string> paths, ref, other;
  std::string model, candidate;

  CLI::App* profile = app.add_subcommand("profile", "profile one corpus");
  profile->add_option("paths", paths, "corpus files")->required();
  add_common(profile, flags);

  CLI::App* compare = app.add_subcommand("compare", "compare a reference corpus with another");
  compare->add_option("--ref", ref, "reference corpus files")->required();
  compare->add_option("--other", other, "compared corpus files")->required();
  add_common(compare, flags);

  CLI::App* classify = app.add_subcommand("classify", "distance matrix, dendrogram and tree over groups");
  classify->add_option("paths", paths, "corpus files")->required();
  classify->add_option("--group-by", flags.group_by, "author or id");
  add_common(classify, flags);

  CLI::App* detect = app.add_subcommand("detect", "same-author screening of a candidate against a model");
  detect->add_option("model", model, "model corpus file")->required();
  detect->add_option("candidate", candidate, "candidate corpus file")->required();
  add_common(detect, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  stylprint::AnalysisConfig config;
  try {
    config = to_config(flags);
  } catch (const stylprint::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (profile->parsed()) return stylprint::cmd_profile(paths, config, std::cout, std::cerr);
  if (compare->parsed()) return stylprint::cmd_compare(ref, other, config, std::cout, std::cerr);
  if (classify->parsed()) return stylprint::cmd_classify(paths, config, std::cout, std::cerr);
  return stylprint::cmd_detect({model}, {candidate}, config, std::cout, std::cerr);
}
