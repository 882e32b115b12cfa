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

#ifndef VCODES_CLONE_DATASET_HPP
#define VCODES_CLONE_DATASET_HPP

#include <map>
#include <string>
#include <vector>

#include "vcodes/clone/transforms.hpp"

namespace vcodes::clone {

struct CorpusFile {
  std::string path;
  std::string content;
};

/// Scans `dir` for .vhd/.vhdl files whose license is allowlisted (sidecar
/// "<file>.license" or a LICENSE file in the directory tree up to `dir`).
/// Files that fail to parse are excluded; every exclusion is logged with a
/// reason.
std::vector<CorpusFile> ingest_corpus(
    const std::string& dir, const std::vector<std::string>& license_allowlist,
    std::vector<std::string>* exclusion_log = nullptr);

struct MixSpec {
  double type2_percent = 30.2;
  double type3_percent = 39.4;
  double type4_percent = 30.4;
};

/// Largest-remainder apportionment of n_pairs over the mix percentages.
std::map<CloneType, int> apportion_counts(const MixSpec& mix, int n_pairs);

struct CorpusStats {
  int total_pairs = 0;
  std::map<CloneType, int> per_type_counts;
  std::map<CloneType, double> per_type_percent;
};

struct PairRecord {
  ClonePair pair;
  std::string verdict;  // equivalent | inequivalent | unknown
  bool bounded = false;
};

struct CorpusExhausted : std::runtime_error {
  CorpusExhausted(CloneType type_, int obtained_, int requested_)
      : std::runtime_error(std::string("corpus exhausted for ") +
                           clone_type_name(type_) + ": obtained " +
                           std::to_string(obtained_) + " of " +
                           std::to_string(requested_)),
        type(type_),
        obtained(obtained_),
        requested(requested_) {}
  CloneType type;
  int obtained;
  int requested;
};

struct DatasetResult {
  std::vector<PairRecord> pairs;
  CorpusStats stats;
  std::vector<std::string> skip_log;  // rejected attempts, with reasons
};

/// Builds exactly n_pairs records with per-type counts from the mix; failed
/// or non-equivalent transforms are retried on other corpus files. Fully
/// deterministic for a given (corpus, config.seed).
DatasetResult build_dataset(const std::vector<CorpusFile>& corpus,
                            const MixSpec& mix, int n_pairs,
                            const TransformConfig& config,
                            NameSuggester& suggester,
                            const equiv::EquivBudget& budget);

// JSONL pair records and a JSON stats file.
std::string pair_record_to_json(const PairRecord& record);
PairRecord pair_record_from_json(const std::string& line);
void write_pairs_file(const std::string& path,
                      const std::vector<PairRecord>& pairs);
std::vector<PairRecord> load_pairs_file(const std::string& path);
void write_stats_file(const std::string& path, const CorpusStats& stats);
std::string stats_to_json(const CorpusStats& stats);

}  // namespace vcodes::clone

#endif  // VCODES_CLONE_DATASET_HPP
