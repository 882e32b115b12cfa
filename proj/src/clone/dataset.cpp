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

#include "vcodes/clone/dataset.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vcodes/util/rng.hpp"
#include "vcodes/util/strutil.hpp"
#include "vcodes/vhdl/lexer.hpp"
#include "vcodes/vhdl/parser.hpp"
#include "vcodes/vhdl/printer.hpp"

namespace vcodes::clone {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool license_matches(const std::string& text,
                     const std::vector<std::string>& allowlist) {
  for (const auto& id : allowlist) {
    if (contains_ci(text, id)) return true;
  }
  return false;
}

// License lookup: sidecar file first, then LICENSE files walking up to the
// corpus root.
bool file_is_allowlisted(const fs::path& file, const fs::path& root,
                         const std::vector<std::string>& allowlist,
                         std::string* reason) {
  if (allowlist.empty()) {
    *reason = "empty allowlist";
    return false;
  }
  fs::path sidecar = file;
  sidecar += ".license";
  if (fs::exists(sidecar)) {
    if (license_matches(read_file(sidecar), allowlist)) return true;
    *reason = "sidecar license not in allowlist";
    return false;
  }
  fs::path dir = file.parent_path();
  for (;;) {
    for (const char* name : {"LICENSE", "LICENSE.txt", "LICENSE.md"}) {
      fs::path candidate = dir / name;
      if (fs::exists(candidate)) {
        if (license_matches(read_file(candidate), allowlist)) return true;
        *reason = "LICENSE not in allowlist";
        return false;
      }
    }
    if (dir == root || dir == dir.parent_path()) break;
    dir = dir.parent_path();
  }
  *reason = "no license information found";
  return false;
}

}  // namespace

std::vector<CorpusFile> ingest_corpus(
    const std::string& dir, const std::vector<std::string>& license_allowlist,
    std::vector<std::string>* exclusion_log) {
  std::vector<CorpusFile> corpus;
  if (!fs::exists(dir)) throw std::invalid_argument("no such directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = to_lower(entry.path().extension().string());
    if (ext == ".vhd" || ext == ".vhdl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  auto log = [&](const fs::path& path, const std::string& reason) {
    if (exclusion_log != nullptr)
      exclusion_log->push_back(path.string() + ": " + reason);
  };
  for (const auto& path : files) {
    std::string reason;
    if (!file_is_allowlisted(path, dir, license_allowlist, &reason)) {
      log(path, reason);
      continue;
    }
    std::string content = read_file(path);
    try {
      vhdl::parse(content);
    } catch (const std::exception& e) {
      log(path, std::string("parse failed: ") + e.what());
      continue;
    }
    corpus.push_back({path.string(), std::move(content)});
  }
  return corpus;
}

std::map<CloneType, int> apportion_counts(const MixSpec& mix, int n_pairs) {
  struct Slot {
    CloneType type;
    double percent;
  };
  const Slot slots[3] = {{CloneType::Type2, mix.type2_percent},
                         {CloneType::Type3, mix.type3_percent},
                         {CloneType::Type4, mix.type4_percent}};
  double total = 0;
  for (const auto& slot : slots) total += slot.percent;
  if (total < 99.9 || total > 100.1)
    throw std::invalid_argument("mix percentages must sum to 100");

  std::map<CloneType, int> counts;
  double remainders[3];
  int assigned = 0;
  for (int i = 0; i < 3; ++i) {
    double exact = static_cast<double>(n_pairs) * slots[i].percent / 100.0;
    int floor_count = static_cast<int>(exact);
    counts[slots[i].type] = floor_count;
    remainders[i] = exact - floor_count;
    assigned += floor_count;
  }
  // Largest remainder; ties resolve in type order.
  while (assigned < n_pairs) {
    int best = -1;
    for (int i = 0; i < 3; ++i) {
      if (best < 0 || remainders[i] > remainders[best]) best = i;
    }
    counts[slots[best].type] += 1;
    remainders[best] = -1;
    ++assigned;
  }
  return counts;
}

DatasetResult build_dataset(const std::vector<CorpusFile>& corpus,
                            const MixSpec& mix, int n_pairs,
                            const TransformConfig& config,
                            NameSuggester& suggester,
                            const equiv::EquivBudget& budget) {
  DatasetResult result;
  std::map<CloneType, int> targets = apportion_counts(mix, n_pairs);
  result.stats.total_pairs = 0;
  for (const auto& [type, count] : targets) {
    result.stats.per_type_counts[type] = 0;
    (void)count;
  }
  if (n_pairs == 0) {
    for (const auto& [type, count] : targets) {
      result.stats.per_type_percent[type] = 0.0;
      (void)count;
    }
    return result;
  }
  if (corpus.empty())
    throw std::invalid_argument("corpus contains no usable files");

  // Pre-parsed, canonicalized sources; both sides of every pair print from
  // the same formatter so Type-2 pairs differ only in identifier tokens.
  std::vector<std::pair<std::string, vhdl::DesignFile>> parsed;
  for (const auto& file : corpus)
    parsed.emplace_back(file.path, vhdl::parse(file.content));

  uint64_t attempt_counter = 0;
  size_t cursor = 0;
  for (CloneType type :
       {CloneType::Type2, CloneType::Type3, CloneType::Type4}) {
    int wanted = targets.at(type);
    for (int produced = 0; produced < wanted; ++produced) {
      bool success = false;
      for (size_t tries = 0; tries < parsed.size() && !success; ++tries) {
        size_t file_index = (cursor + tries) % parsed.size();
        uint64_t seed = mix_seed(config.seed, (attempt_counter << 8) ^
                                                  (file_index + 1));
        ++attempt_counter;
        const auto& [path, design] = parsed[file_index];
        TransformConfig attempt_config = config;
        attempt_config.seed = seed;
        try {
          TransformOutcome outcome;
          switch (type) {
            case CloneType::Type2:
              outcome = transform_type2(design, attempt_config, suggester);
              break;
            case CloneType::Type3:
              outcome = transform_type3(design, attempt_config, seed);
              break;
            case CloneType::Type4:
              outcome = transform_type4(design, attempt_config, suggester);
              break;
          }
          PairRecord record;
          record.pair.clone_type = type;
          record.pair.original_code = vhdl::pretty_print(design);
          record.pair.transformed_code = vhdl::pretty_print(outcome.design);
          record.pair.transform_log = outcome.log;
          record.pair.source_path = path;
          record.pair.seed = seed;
          char id[32];
          std::snprintf(id, sizeof(id), "%s-%04d", clone_type_name(type),
                        produced + 1);
          record.pair.pair_id = id;
          if (record.pair.transformed_code == record.pair.original_code) {
            result.skip_log.push_back(path + ": transform was a no-op");
            continue;
          }
          equiv::EquivalenceVerdict verdict =
              verify_pair(record.pair, budget);
          if (verdict.kind != equiv::EquivalenceVerdict::Kind::Equivalent) {
            result.skip_log.push_back(
                path + ": verification " +
                equiv::verdict_kind_name(verdict.kind) + " (" +
                verdict.detail + ")");
            continue;
          }
          record.verdict = equiv::verdict_kind_name(verdict.kind);
          record.bounded = verdict.bounded;
          result.pairs.push_back(std::move(record));
          result.stats.per_type_counts[type] += 1;
          result.stats.total_pairs += 1;
          success = true;
          cursor = (file_index + 1) % parsed.size();
        } catch (const NoApplicableTransform& e) {
          result.skip_log.push_back(path + ": " + e.what());
        } catch (const vhdl::RenameCollision& e) {
          result.skip_log.push_back(path + ": " + e.what());
        } catch (const BacktranslationFailed& e) {
          result.skip_log.push_back(path + ": " + e.what());
        } catch (const RoundTripUnparseable& e) {
          result.skip_log.push_back(path + ": " + e.what());
        }
      }
      if (!success)
        throw CorpusExhausted(type, result.stats.per_type_counts.at(type),
                              wanted);
    }
  }
  for (const auto& [type, count] : result.stats.per_type_counts) {
    result.stats.per_type_percent[type] =
        result.stats.total_pairs > 0
            ? 100.0 * count / result.stats.total_pairs
            : 0.0;
  }
  return result;
}

std::string pair_record_to_json(const PairRecord& record) {
  nlohmann::json doc;
  doc["pair_id"] = record.pair.pair_id;
  doc["clone_type"] = clone_type_name(record.pair.clone_type);
  doc["original_code"] = record.pair.original_code;
  doc["transformed_code"] = record.pair.transformed_code;
  doc["transform_log"] = record.pair.transform_log;
  if (record.pair.source_path) doc["source_path"] = *record.pair.source_path;
  doc["seed"] = record.pair.seed;
  doc["verdict"] = record.verdict;
  doc["bounded"] = record.bounded;
  return doc.dump();
}

PairRecord pair_record_from_json(const std::string& line) {
  nlohmann::json doc = nlohmann::json::parse(line);
  PairRecord record;
  record.pair.pair_id = doc.at("pair_id").get<std::string>();
  auto type = clone_type_from_name(doc.at("clone_type").get<std::string>());
  if (!type) throw std::invalid_argument("bad clone_type in pair record");
  record.pair.clone_type = *type;
  record.pair.original_code = doc.at("original_code").get<std::string>();
  record.pair.transformed_code = doc.at("transformed_code").get<std::string>();
  for (const auto& entry : doc.value("transform_log", nlohmann::json::array()))
    record.pair.transform_log.push_back(entry.get<std::string>());
  if (doc.contains("source_path"))
    record.pair.source_path = doc["source_path"].get<std::string>();
  record.pair.seed = doc.value("seed", uint64_t{0});
  record.verdict = doc.value("verdict", "");
  record.bounded = doc.value("bounded", false);
  return record;
}

void write_pairs_file(const std::string& path,
                      const std::vector<PairRecord>& pairs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& record : pairs) out << pair_record_to_json(record) << "\n";
}

std::vector<PairRecord> load_pairs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<PairRecord> pairs;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    pairs.push_back(pair_record_from_json(line));
  }
  return pairs;
}

std::string stats_to_json(const CorpusStats& stats) {
  nlohmann::json doc;
  doc["total_pairs"] = stats.total_pairs;
  nlohmann::json per_type;
  for (const auto& [type, count] : stats.per_type_counts) {
    nlohmann::json entry;
    entry["count"] = count;
    auto it = stats.per_type_percent.find(type);
    entry["percent"] = it != stats.per_type_percent.end() ? it->second : 0.0;
    per_type[clone_type_name(type)] = entry;
  }
  doc["per_type"] = per_type;
  return doc.dump(2) + "\n";
}

void write_stats_file(const std::string& path, const CorpusStats& stats) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << stats_to_json(stats);
}

}  // namespace vcodes::clone
