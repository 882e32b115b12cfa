// Copyright 2026 The VCodes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "test_support.hpp"
#include "vcodes/clone/dataset.hpp"
#include "vcodes/clone/transforms.hpp"
#include "vcodes/vhdl/lexer.hpp"
#include "vcodes/vhdl/parser.hpp"
#include "vcodes/vhdl/printer.hpp"

using namespace vcodes;
using namespace vcodes::clone;

namespace {

vhdl::DesignFile parse_corpus(const std::string& name) {
  return vhdl::parse(
      testsupport::read_file(testsupport::corpus_dir() + "/" + name));
}

ClonePair make_pair(const vhdl::DesignFile& original,
                    const TransformOutcome& outcome, CloneType type) {
  ClonePair pair;
  pair.clone_type = type;
  pair.original_code = vhdl::pretty_print(original);
  pair.transformed_code = vhdl::pretty_print(outcome.design);
  pair.transform_log = outcome.log;
  return pair;
}

std::set<std::string> identifier_token_set(const std::string& code) {
  std::set<std::string> out;
  for (const auto& token : vhdl::tokenize(code)) {
    if (token.kind == vhdl::TokenKind::Identifier)
      out.insert(vhdl::fold_name(token.text));
  }
  return out;
}

double identifier_jaccard(const std::string& a, const std::string& b) {
  std::set<std::string> sa = identifier_token_set(a);
  std::set<std::string> sb = identifier_token_set(b);
  size_t inter = 0;
  for (const auto& token : sa) inter += sb.count(token);
  size_t uni = sa.size() + sb.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

TEST_CASE("dictionary suggester follows its kind prefixes") {
  DictionarySuggester suggester;
  CHECK(suggester.suggest("a", vhdl::IdentifierKind::Port, "") == "operand_a");
  CHECK(suggester.suggest("s", vhdl::IdentifierKind::Signal, "") ==
        "internal_s");
}

TEST_CASE("type-2 renames single-char ports via the suggester") {
  vhdl::DesignFile design = parse_corpus("and2.vhd");
  TransformConfig config;
  config.seed = 42;
  DictionarySuggester suggester;
  TransformOutcome outcome = transform_type2(design, config, suggester);
  std::string transformed = vhdl::pretty_print(outcome.design);
  CHECK(transformed.find("operand_a") != std::string::npos);
  CHECK(transformed.find("operand_b") != std::string::npos);
  CHECK(!outcome.log.empty());
  vhdl::DesignFile reparsed = vhdl::parse(transformed);
  const auto& entity = std::get<vhdl::EntityDecl>(reparsed.units[0].node);
  CHECK(entity.ports.size() == 3);
}

TEST_CASE("type-2 permute strategy reorders identifier tokens") {
  vhdl::DesignFile design = parse_corpus("shift_register.vhd");
  TransformConfig config;
  config.type2_weights = {1.0, 0.0, 0.0};  // permute only
  config.seed = 3;
  DictionarySuggester suggester;
  TransformOutcome outcome = transform_type2(design, config, suggester);
  std::string transformed = vhdl::pretty_print(outcome.design);
  // "shift_register" has exactly two tokens, so permutation must swap them.
  CHECK(transformed.find("register_shift") != std::string::npos);
}

TEST_CASE("type-2 token-kind sequence is identical") {
  TransformConfig config;
  config.seed = 9;
  DictionarySuggester suggester;
  for (const char* name : {"and2.vhd", "counter2.vhd", "fulladder.vhd"}) {
    vhdl::DesignFile design = parse_corpus(name);
    TransformOutcome outcome = transform_type2(design, config, suggester);
    std::string original = vhdl::pretty_print(design);
    std::string transformed = vhdl::pretty_print(outcome.design);
    CHECK(original != transformed);
    std::vector<vhdl::Token> tok_a = vhdl::tokenize(original);
    std::vector<vhdl::Token> tok_b = vhdl::tokenize(transformed);
    REQUIRE(tok_a.size() == tok_b.size());
    for (size_t i = 0; i < tok_a.size(); ++i) {
      CHECK(tok_a[i].kind == tok_b[i].kind);
      if (tok_a[i].kind != vhdl::TokenKind::Identifier)
        CHECK(tok_a[i].text == tok_b[i].text);
    }
  }
}

TEST_CASE("type-2 pairs stay equivalent") {
  TransformConfig config;
  config.seed = 17;
  DictionarySuggester suggester;
  equiv::EquivBudget budget;
  for (const char* name : {"and2.vhd", "mux2.vhd", "counter2.vhd"}) {
    vhdl::DesignFile design = parse_corpus(name);
    TransformOutcome outcome = transform_type2(design, config, suggester);
    ClonePair pair = make_pair(design, outcome, CloneType::Type2);
    equiv::EquivalenceVerdict verdict = verify_pair(pair, budget);
    CAPTURE(name);
    CHECK(verdict.equivalent());
  }
}

TEST_CASE("type-2 determinism under a fixed seed") {
  vhdl::DesignFile design = parse_corpus("fulladder.vhd");
  TransformConfig config;
  config.seed = 1234;
  DictionarySuggester suggester;
  std::string first =
      vhdl::pretty_print(transform_type2(design, config, suggester).design);
  std::string second =
      vhdl::pretty_print(transform_type2(design, config, suggester).design);
  CHECK(first == second);
}

TEST_CASE("type-3 inert signal template") {
  vhdl::DesignFile design = parse_corpus("and2.vhd");
  TransformConfig config;
  config.type3_templates = {Type3Template::InertSignal};
  TransformOutcome outcome = transform_type3(design, config, 5);
  std::string transformed = vhdl::pretty_print(outcome.design);
  CHECK(transformed.find("unused_sig") != std::string::npos);
  ClonePair pair = make_pair(design, outcome, CloneType::Type3);
  CHECK(verify_pair(pair, equiv::EquivBudget{}).equivalent());
}

TEST_CASE("type-3 port reorder rewrites positional maps first") {
  vhdl::DesignFile design = parse_corpus("fulladder_struct.vhd");
  TransformConfig config;
  config.type3_templates = {Type3Template::ReorderPorts};
  bool saw_named_rewrite = false;
  // Some seeds pick the fulladder entity (no instances); find one that
  // reorders the instantiated `ha` entity.
  for (uint64_t seed = 0; seed < 16 && !saw_named_rewrite; ++seed) {
    TransformOutcome outcome = transform_type3(design, config, seed);
    ClonePair pair = make_pair(design, outcome, CloneType::Type3);
    CHECK(verify_pair(pair, equiv::EquivBudget{}).equivalent());
    for (const auto& entry : outcome.log) {
      if (entry.find("named association") != std::string::npos) {
        saw_named_rewrite = true;
        CHECK(vhdl::pretty_print(outcome.design).find("x =>") !=
              std::string::npos);
      }
    }
  }
  CHECK(saw_named_rewrite);
}

TEST_CASE("type-3 signal reorder is equivalence-preserving and deterministic") {
  vhdl::DesignFile design = parse_corpus("fulladder.vhd");
  TransformConfig config;
  config.type3_templates = {Type3Template::ReorderSignals};
  TransformOutcome first = transform_type3(design, config, 7);
  TransformOutcome second = transform_type3(design, config, 7);
  CHECK(vhdl::pretty_print(first.design) == vhdl::pretty_print(second.design));
  ClonePair pair = make_pair(design, first, CloneType::Type3);
  CHECK(verify_pair(pair, equiv::EquivBudget{}).equivalent());
  CHECK(vhdl::pretty_print(first.design) != vhdl::pretty_print(design));
}

TEST_CASE("type-3 with no applicable template") {
  vhdl::DesignFile design = parse_corpus("gates_pkg.vhd");  // package only
  TransformConfig config;
  config.type3_templates = {Type3Template::ReorderSignals};
  CHECK_THROWS_AS(transform_type3(design, config, 1), NoApplicableTransform);
}

TEST_CASE("type-4 converts if chains to case statements") {
  vhdl::DesignFile design = parse_corpus("mux4_if.vhd");
  TransformConfig config;
  config.seed = 21;
  DictionarySuggester suggester;
  TransformOutcome outcome = transform_type4(design, config, suggester);
  std::string transformed = vhdl::pretty_print(outcome.design);
  CHECK(transformed.find("case ") != std::string::npos);
  ClonePair pair = make_pair(design, outcome, CloneType::Type4);
  CHECK(verify_pair(pair, equiv::EquivBudget{}).equivalent());
}

TEST_CASE("type-4 applies boolean identities") {
  vhdl::DesignFile design = parse_corpus("and2.vhd");
  TransformConfig config;
  config.seed = 2;
  DictionarySuggester suggester;
  TransformOutcome outcome = transform_type4(design, config, suggester);
  std::string transformed = vhdl::pretty_print(outcome.design);
  CHECK(transformed.find("not") != std::string::npos);
  ClonePair pair = make_pair(design, outcome, CloneType::Type4);
  CHECK(verify_pair(pair, equiv::EquivBudget{}).equivalent());
}

TEST_CASE("type-4 lexical overlap is below the type-2 overlap") {
  TransformConfig config;
  config.seed = 33;
  DictionarySuggester suggester;
  for (const char* name : {"counter2.vhd", "majority3.vhd", "mux4_if.vhd"}) {
    vhdl::DesignFile design = parse_corpus(name);
    std::string original = vhdl::pretty_print(design);
    std::string type2 = vhdl::pretty_print(
        transform_type2(design, config, suggester).design);
    std::string type4 = vhdl::pretty_print(
        transform_type4(design, config, suggester).design);
    CAPTURE(name);
    CHECK(identifier_jaccard(original, type4) <
          identifier_jaccard(original, type2));
  }
}

TEST_CASE("type-4 external mode runs the command pipeline") {
  vhdl::DesignFile design = parse_corpus("and2.vhd");
  TransformConfig config;
  config.type4_mode = Type4Mode::ExternalBacktranslation;

  SUBCASE("failing command reports BacktranslationFailed") {
    config.to_verilog_cmd = "false";
    config.to_vhdl_cmd = "false";
    DictionarySuggester suggester;
    CHECK_THROWS_AS(transform_type4(design, config, suggester),
                    BacktranslationFailed);
  }
  SUBCASE("sed-based rewrite round-trips") {
    // Stand-in translators: a benign textual rewrite out and back.
    config.to_verilog_cmd =
        "sed -e 's/a and b/not ((not a) or (not b))/' {input} > {output}";
    config.to_vhdl_cmd = "cp {input} {output}";
    DictionarySuggester suggester;
    TransformOutcome outcome = transform_type4(design, config, suggester);
    ClonePair pair = make_pair(design, outcome, CloneType::Type4);
    CHECK(pair.transformed_code != pair.original_code);
    CHECK(verify_pair(pair, equiv::EquivBudget{}).equivalent());
  }
  SUBCASE("garbage output is RoundTripUnparseable") {
    config.to_verilog_cmd = "echo garbage > {output}";
    config.to_vhdl_cmd = "cp {input} {output}";
    DictionarySuggester suggester;
    CHECK_THROWS_AS(transform_type4(design, config, suggester),
                    RoundTripUnparseable);
  }
}

TEST_CASE("verify_pair flags corrupted and over-budget pairs") {
  ClonePair pair;
  pair.original_code =
      testsupport::read_file(testsupport::corpus_dir() + "/and2.vhd");
  pair.transformed_code =
      testsupport::read_file(testsupport::corpus_dir() + "/or2.vhd");
  equiv::EquivalenceVerdict verdict = verify_pair(pair, equiv::EquivBudget{});
  CHECK(verdict.kind == equiv::EquivalenceVerdict::Kind::Inequivalent);

  ClonePair wide;
  wide.original_code = R"(
entity w is
  port (a : in std_logic_vector(19 downto 0); y : out std_logic_vector(19 downto 0));
end entity w;
architecture rtl of w is
begin
  y <= a;
end architecture rtl;
)";
  wide.transformed_code = wide.original_code;
  equiv::EquivalenceVerdict budget_verdict =
      verify_pair(wide, equiv::EquivBudget{});
  CHECK(budget_verdict.kind == equiv::EquivalenceVerdict::Kind::Unknown);
}

TEST_CASE("largest remainder apportionment") {
  MixSpec mix;  // 30.2 / 39.4 / 30.4
  std::map<CloneType, int> counts = apportion_counts(mix, 100);
  CHECK(counts[CloneType::Type2] == 30);
  CHECK(counts[CloneType::Type3] == 40);
  CHECK(counts[CloneType::Type4] == 30);

  counts = apportion_counts(mix, 0);
  CHECK(counts[CloneType::Type2] + counts[CloneType::Type3] +
            counts[CloneType::Type4] ==
        0);

  for (int n : {1, 7, 13, 33, 101}) {
    counts = apportion_counts(mix, n);
    CHECK(counts[CloneType::Type2] + counts[CloneType::Type3] +
              counts[CloneType::Type4] ==
          n);
  }
}

TEST_CASE("ingest_corpus honors the license allowlist") {
  std::vector<std::string> log;
  std::vector<CorpusFile> allowed =
      ingest_corpus(testsupport::corpus_dir(), {"MIT"}, &log);
  CHECK(allowed.size() >= 20);

  std::vector<CorpusFile> denied =
      ingest_corpus(testsupport::corpus_dir(), {}, &log);
  CHECK(denied.empty());

  std::string scratch = testsupport::fresh_scratch_dir("ingest");
  {
    std::ofstream license(scratch + "/LICENSE");
    license << "MIT";
    std::ofstream good(scratch + "/good.vhd");
    good << testsupport::read_file(testsupport::corpus_dir() + "/and2.vhd");
    std::ofstream bad(scratch + "/bad.vhd");
    bad << "entity broken is port (;";
  }
  log.clear();
  std::vector<CorpusFile> mixed = ingest_corpus(scratch, {"MIT"}, &log);
  CHECK(mixed.size() == 1);
  REQUIRE(log.size() == 1);
  CHECK(log[0].find("parse failed") != std::string::npos);
}

TEST_CASE("build_dataset apportions, verifies, and is deterministic") {
  std::vector<CorpusFile> corpus =
      ingest_corpus(testsupport::corpus_dir(), {"MIT"}, nullptr);
  TransformConfig config;
  config.seed = 77;
  DictionarySuggester suggester;
  equiv::EquivBudget budget;
  MixSpec mix;

  DatasetResult first = build_dataset(corpus, mix, 10, config, suggester, budget);
  CHECK(first.stats.total_pairs == 10);
  CHECK(first.stats.per_type_counts[CloneType::Type2] == 3);
  CHECK(first.stats.per_type_counts[CloneType::Type3] == 4);
  CHECK(first.stats.per_type_counts[CloneType::Type4] == 3);
  for (const auto& record : first.pairs) {
    CHECK(record.verdict == "equivalent");
    CHECK(record.pair.original_code != record.pair.transformed_code);
    CHECK(!record.pair.transform_log.empty());
  }

  DatasetResult second = build_dataset(corpus, mix, 10, config, suggester, budget);
  REQUIRE(second.pairs.size() == first.pairs.size());
  std::string serial_a, serial_b;
  for (const auto& record : first.pairs) serial_a += pair_record_to_json(record);
  for (const auto& record : second.pairs) serial_b += pair_record_to_json(record);
  CHECK(serial_a == serial_b);

  DatasetResult empty = build_dataset(corpus, mix, 0, config, suggester, budget);
  CHECK(empty.pairs.empty());
  CHECK(empty.stats.total_pairs == 0);
}

TEST_CASE("pairs file round trip") {
  std::vector<CorpusFile> corpus =
      ingest_corpus(testsupport::corpus_dir(), {"MIT"}, nullptr);
  TransformConfig config;
  config.seed = 5;
  DictionarySuggester suggester;
  DatasetResult result = build_dataset(corpus, MixSpec{}, 3, config, suggester,
                                       equiv::EquivBudget{});
  std::string scratch = testsupport::fresh_scratch_dir("pairs");
  write_pairs_file(scratch + "/pairs.jsonl", result.pairs);
  std::vector<PairRecord> loaded = load_pairs_file(scratch + "/pairs.jsonl");
  REQUIRE(loaded.size() == result.pairs.size());
  for (size_t i = 0; i < loaded.size(); ++i) {
    CHECK(loaded[i].pair.pair_id == result.pairs[i].pair.pair_id);
    CHECK(loaded[i].pair.transformed_code ==
          result.pairs[i].pair.transformed_code);
  }
}
