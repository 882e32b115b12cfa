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

#include "vcodes/clone/transforms.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>

#include "vcodes/util/rng.hpp"
#include "vcodes/util/strutil.hpp"
#include "vcodes/util/subprocess.hpp"
#include "vcodes/vhdl/parser.hpp"
#include "vcodes/vhdl/printer.hpp"

namespace vcodes::clone {

using vhdl::ArchitectureBody;
using vhdl::ComponentDecl;
using vhdl::ComponentInstance;
using vhdl::DesignFile;
using vhdl::EntityDecl;
using vhdl::Expr;
using vhdl::fold_name;
using vhdl::IdentifierKind;
using vhdl::SeqStmt;

const char* clone_type_name(CloneType type) {
  switch (type) {
    case CloneType::Type2: return "type2";
    case CloneType::Type3: return "type3";
    case CloneType::Type4: return "type4";
  }
  return "?";
}

std::optional<CloneType> clone_type_from_name(const std::string& name) {
  std::string folded = to_lower(name);
  if (folded == "type2" || folded == "2") return CloneType::Type2;
  if (folded == "type3" || folded == "3") return CloneType::Type3;
  if (folded == "type4" || folded == "4") return CloneType::Type4;
  return std::nullopt;
}

namespace {

// ---------------------------------------------------------------------------
// identifier token helpers
// ---------------------------------------------------------------------------

std::vector<std::string> split_identifier_tokens(const std::string& spelling) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(to_lower(current));
    current.clear();
  };
  for (size_t i = 0; i < spelling.size(); ++i) {
    char c = spelling[i];
    if (c == '_') {
      flush();
      continue;
    }
    if (i > 0 && std::isupper(static_cast<unsigned char>(c)) &&
        std::islower(static_cast<unsigned char>(spelling[i - 1]))) {
      flush();
    }
    current += c;
  }
  flush();
  return tokens;
}

enum class RenamePolicy { SkipPlainWords, RenameEverything };

struct RenamePlanner {
  const TransformConfig& config;
  NameSuggester& suggester;
  const std::string& code_context;
  Rng& rng;
  std::set<std::string> used;  // folded names already taken
  std::vector<std::string>* log;

  std::string unique_candidate(std::string candidate,
                               const std::string& original) {
    auto acceptable = [&](const std::string& name) {
      std::string folded = fold_name(name);
      return vhdl::is_valid_identifier(name) &&
             !vhdl::is_reserved_word(name) &&
             !vhdl::is_predefined_name(folded) && used.count(folded) == 0 &&
             folded != fold_name(original);
    };
    if (acceptable(candidate)) return candidate;
    // One numeric-suffix retry; a second collision aborts the pair.
    std::string retried = candidate + "_2";
    if (acceptable(retried)) return retried;
    throw vhdl::RenameCollision(candidate);
  }

  std::optional<std::string> plan(const std::string& spelling,
                                  IdentifierKind kind, RenamePolicy policy) {
    std::vector<std::string> tokens = split_identifier_tokens(spelling);
    std::string strategy;
    std::string candidate;
    if (spelling.size() == 1) {
      strategy = "suggest";
      candidate = suggester.suggest(spelling, kind, code_context);
    } else if (tokens.size() >= 2) {
      const Type2Weights& w = config.type2_weights;
      double total = w.permute + w.abbreviate + w.llm_suggest;
      double draw = rng.unit() * (total > 0 ? total : 1.0);
      if (draw < w.permute) {
        strategy = "permute";
        std::vector<std::string> shuffled = tokens;
        rng.shuffle(shuffled);
        if (shuffled == tokens)
          std::rotate(shuffled.begin(), shuffled.begin() + 1, shuffled.end());
        candidate = join(shuffled, "_");
      } else if (draw < w.permute + w.abbreviate) {
        strategy = "abbreviate";
        for (const auto& token : tokens) candidate += token.substr(0, 1);
      } else {
        strategy = "suggest";
        candidate = suggester.suggest(spelling, kind, code_context);
      }
    } else if (policy == RenamePolicy::RenameEverything) {
      strategy = "suggest";
      candidate = suggester.suggest(spelling, kind, code_context);
    } else {
      return std::nullopt;  // plain single-word identifiers keep their name
    }
    std::string chosen = unique_candidate(candidate, spelling);
    used.insert(fold_name(chosen));
    if (log != nullptr)
      log->push_back("rename " +
                     std::string(vhdl::identifier_kind_name(kind)) + " \"" +
                     spelling + "\" -> \"" + chosen + "\" (" + strategy + ")");
    return chosen;
  }
};

std::map<std::string, std::string> plan_renames(const DesignFile& design,
                                                const TransformConfig& config,
                                                NameSuggester& suggester,
                                                Rng& rng, RenamePolicy policy,
                                                std::vector<std::string>* log) {
  vhdl::IdentifierTable table = vhdl::collect_identifiers(design);
  std::string context = vhdl::pretty_print(design);
  RenamePlanner planner{config, suggester, context, rng, {}, log};
  for (const auto& entry : table.entries)
    planner.used.insert(entry.canonical_name);

  std::map<std::string, std::string> mapping;
  for (const auto& entry : table.entries) {
    if (mapping.count(entry.canonical_name) > 0) continue;
    std::optional<std::string> chosen =
        planner.plan(entry.original_spelling, entry.kind, policy);
    if (chosen) mapping[entry.canonical_name] = *chosen;
  }
  if (mapping.empty() && !table.entries.empty()) {
    // Nothing qualified (all plain words): force one rename so the pair is
    // never textually identical.
    const auto& entry = table.entries.front();
    std::string forced = planner.unique_candidate(
        suggester.suggest(entry.original_spelling, entry.kind, context),
        entry.original_spelling);
    mapping[entry.canonical_name] = forced;
    if (log != nullptr)
      log->push_back("rename " +
                     std::string(vhdl::identifier_kind_name(entry.kind)) +
                     " \"" + entry.original_spelling + "\" -> \"" + forced +
                     "\" (forced)");
  }
  return mapping;
}

}  // namespace

TransformOutcome transform_type2(const DesignFile& design,
                                 const TransformConfig& config,
                                 NameSuggester& suggester) {
  TransformOutcome outcome;
  Rng rng(config.seed);
  std::map<std::string, std::string> mapping = plan_renames(
      design, config, suggester, rng, RenamePolicy::SkipPlainWords,
      &outcome.log);
  outcome.design = vhdl::rename(design, mapping);
  return outcome;
}

// ---------------------------------------------------------------------------
// Type-3
// ---------------------------------------------------------------------------

namespace {

std::set<std::string> all_canonical_names(const DesignFile& design) {
  std::set<std::string> names;
  for (const auto& entry : vhdl::collect_identifiers(design).entries)
    names.insert(entry.canonical_name);
  return names;
}

std::vector<size_t> architecture_indices(const DesignFile& design) {
  std::vector<size_t> indices;
  for (size_t i = 0; i < design.units.size(); ++i) {
    if (std::get_if<ArchitectureBody>(&design.units[i].node) != nullptr)
      indices.push_back(i);
  }
  return indices;
}

const EntityDecl* entity_of(const DesignFile& design,
                            const std::string& entity_name) {
  for (const auto& unit : design.units) {
    if (const auto* entity = std::get_if<EntityDecl>(&unit.node)) {
      if (fold_name(entity->name) == fold_name(entity_name)) return entity;
    }
  }
  return nullptr;
}

Expr name_expr(const std::string& name) {
  Expr e;
  e.node = vhdl::NameRef{name};
  return e;
}

Expr bit_literal(char bit) {
  Expr e;
  e.node = vhdl::Literal{vhdl::TokenKind::LiteralBit,
                         std::string("'") + bit + "'"};
  return e;
}

void apply_inert_signal(DesignFile& design, Rng& rng,
                        std::vector<std::string>& log) {
  std::vector<size_t> archs = architecture_indices(design);
  size_t unit_index = archs[static_cast<size_t>(rng.below(archs.size()))];
  auto& arch = std::get<ArchitectureBody>(design.units[unit_index].node);
  std::set<std::string> names = all_canonical_names(design);
  std::string name;
  for (int k = 1;; ++k) {
    name = "unused_sig" + std::to_string(k);
    if (names.count(name) == 0) break;
  }
  vhdl::SignalDecl decl;
  decl.name = name;
  decl.type.mark = vhdl::TypeMark::StdLogic;
  vhdl::Declaration wrapper;
  wrapper.node = std::move(decl);
  arch.declarations.push_back(std::move(wrapper));

  vhdl::ConcurrentAssign assign;
  assign.target = name_expr(name);
  assign.value = bit_literal('0');
  vhdl::ConcurrentStmt stmt;
  stmt.node = std::move(assign);
  arch.statements.push_back(std::move(stmt));
  log.push_back("insert inert signal \"" + name +
                "\" with constant driver in architecture " + arch.name);
}

bool null_process_candidates(const DesignFile& design,
                             const ArchitectureBody& arch,
                             std::vector<std::string>& names) {
  if (const EntityDecl* entity = entity_of(design, arch.entity_name)) {
    for (const auto& p : entity->ports)
      if (p.dir == vhdl::PortDir::In) names.push_back(p.name);
  }
  for (const auto& decl : arch.declarations) {
    if (const auto* sig = std::get_if<vhdl::SignalDecl>(&decl.node))
      names.push_back(sig->name);
  }
  return !names.empty();
}

bool apply_null_process(DesignFile& design, Rng& rng,
                        std::vector<std::string>& log) {
  std::vector<size_t> archs = architecture_indices(design);
  for (size_t unit_index : archs) {
    auto& arch = std::get<ArchitectureBody>(design.units[unit_index].node);
    std::vector<std::string> names;
    if (!null_process_candidates(design, arch, names)) continue;
    std::string chosen = names[static_cast<size_t>(rng.below(names.size()))];
    vhdl::ProcessStmt proc;
    proc.sensitivity.push_back({chosen, {}});
    vhdl::SeqStmt null_stmt;
    null_stmt.node = vhdl::NullStmt{};
    proc.body.push_back(std::move(null_stmt));
    vhdl::ConcurrentStmt stmt;
    stmt.node = std::move(proc);
    arch.statements.push_back(std::move(stmt));
    log.push_back("insert null process sensitive to \"" + chosen +
                  "\" in architecture " + arch.name);
    return true;
  }
  return false;
}

struct SignalRun {
  size_t unit_index;
  size_t start;
  size_t length;
};

std::vector<SignalRun> signal_runs(const DesignFile& design) {
  std::vector<SignalRun> runs;
  for (size_t u = 0; u < design.units.size(); ++u) {
    const auto* arch = std::get_if<ArchitectureBody>(&design.units[u].node);
    if (arch == nullptr) continue;
    size_t start = 0;
    size_t length = 0;
    for (size_t i = 0; i <= arch->declarations.size(); ++i) {
      bool is_signal =
          i < arch->declarations.size() &&
          std::get_if<vhdl::SignalDecl>(&arch->declarations[i].node) != nullptr;
      if (is_signal) {
        if (length == 0) start = i;
        ++length;
      } else {
        if (length >= 2) runs.push_back({u, start, length});
        length = 0;
      }
    }
  }
  return runs;
}

bool apply_reorder_signals(DesignFile& design, Rng& rng,
                           std::vector<std::string>& log) {
  std::vector<SignalRun> runs = signal_runs(design);
  if (runs.empty()) return false;
  const SignalRun& run = runs[static_cast<size_t>(rng.below(runs.size()))];
  auto& arch = std::get<ArchitectureBody>(design.units[run.unit_index].node);
  std::vector<size_t> order(run.length);
  for (size_t i = 0; i < run.length; ++i) order[i] = i;
  rng.shuffle(order);
  bool identity = true;
  for (size_t i = 0; i < run.length; ++i)
    if (order[i] != i) identity = false;
  if (identity) std::rotate(order.begin(), order.begin() + 1, order.end());
  std::vector<vhdl::Declaration> reordered;
  for (size_t i = 0; i < run.length; ++i)
    reordered.push_back(arch.declarations[run.start + order[i]]);
  for (size_t i = 0; i < run.length; ++i)
    arch.declarations[run.start + i] = std::move(reordered[i]);
  log.push_back("reorder " + std::to_string(run.length) +
                " signal declarations in architecture " + arch.name);
  return true;
}

// Rewrites positional port maps of instances bound to `component_name` to
// named association, using the component declaration's port order.
void rewrite_positional_maps(DesignFile& design,
                             const std::string& component_name,
                             std::vector<std::string>& log) {
  std::string wanted = fold_name(component_name);
  for (auto& unit : design.units) {
    auto* arch = std::get_if<ArchitectureBody>(&unit.node);
    if (arch == nullptr) continue;
    const ComponentDecl* comp = nullptr;
    for (const auto& decl : arch->declarations) {
      if (const auto* c = std::get_if<ComponentDecl>(&decl.node)) {
        if (fold_name(c->name) == wanted) comp = c;
      }
    }
    if (comp == nullptr) continue;
    for (auto& stmt : arch->statements) {
      auto* inst = std::get_if<ComponentInstance>(&stmt.node);
      if (inst == nullptr || fold_name(inst->component_name) != wanted)
        continue;
      bool positional = false;
      for (const auto& assoc : inst->port_map)
        if (!assoc.formal) positional = true;
      if (!positional) continue;
      for (size_t i = 0; i < inst->port_map.size(); ++i) {
        if (inst->port_map[i].formal) continue;
        if (i >= comp->ports.size())
          throw NoApplicableTransform("positional map longer than port list");
        inst->port_map[i].formal = comp->ports[i].name;
      }
      log.push_back("rewrite positional port map of instance \"" +
                    inst->label + "\" to named association");
    }
  }
}

bool apply_reorder_ports(DesignFile& design, Rng& rng,
                         std::vector<std::string>& log) {
  std::vector<size_t> candidates;
  for (size_t i = 0; i < design.units.size(); ++i) {
    const auto* entity = std::get_if<EntityDecl>(&design.units[i].node);
    if (entity != nullptr && entity->ports.size() >= 2)
      candidates.push_back(i);
  }
  if (candidates.empty()) return false;
  size_t unit_index =
      candidates[static_cast<size_t>(rng.below(candidates.size()))];
  auto& entity = std::get<EntityDecl>(design.units[unit_index].node);

  rewrite_positional_maps(design, entity.name, log);

  std::vector<size_t> order(entity.ports.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  bool identity = true;
  for (size_t i = 0; i < order.size(); ++i)
    if (order[i] != i) identity = false;
  if (identity) std::rotate(order.begin(), order.begin() + 1, order.end());

  std::vector<vhdl::PortDecl> reordered;
  for (size_t i : order) reordered.push_back(entity.ports[i]);
  entity.ports = std::move(reordered);
  log.push_back("reorder ports of entity " + entity.name);

  // Component declarations mirror the entity; keep them aligned.
  for (auto& unit : design.units) {
    auto* arch = std::get_if<ArchitectureBody>(&unit.node);
    if (arch == nullptr) continue;
    for (auto& decl : arch->declarations) {
      auto* comp = std::get_if<ComponentDecl>(&decl.node);
      if (comp == nullptr || fold_name(comp->name) != fold_name(entity.name))
        continue;
      std::vector<vhdl::PortDecl> aligned;
      for (const auto& entity_port : entity.ports) {
        for (const auto& comp_port : comp->ports) {
          if (fold_name(comp_port.name) == fold_name(entity_port.name))
            aligned.push_back(comp_port);
        }
      }
      if (aligned.size() == comp->ports.size()) comp->ports = std::move(aligned);
    }
  }
  return true;
}

}  // namespace

TransformOutcome transform_type3(const DesignFile& design,
                                 const TransformConfig& config, uint64_t seed) {
  TransformOutcome outcome;
  outcome.design = design;
  Rng rng(seed);

  std::vector<std::pair<Type3Template, std::function<bool()>>> applicable;
  auto consider = [&](Type3Template which, std::function<bool()> fn) {
    if (config.type3_templates.count(which) > 0)
      applicable.emplace_back(which, std::move(fn));
  };
  consider(Type3Template::InertSignal, [&] {
    if (architecture_indices(outcome.design).empty()) return false;
    apply_inert_signal(outcome.design, rng, outcome.log);
    return true;
  });
  consider(Type3Template::NullProcess,
           [&] { return apply_null_process(outcome.design, rng, outcome.log); });
  consider(Type3Template::ReorderSignals, [&] {
    return apply_reorder_signals(outcome.design, rng, outcome.log);
  });
  consider(Type3Template::ReorderPorts,
           [&] { return apply_reorder_ports(outcome.design, rng, outcome.log); });

  if (applicable.empty())
    throw NoApplicableTransform("no enabled templates");

  size_t primary = static_cast<size_t>(rng.below(applicable.size()));
  bool any = applicable[primary].second();
  // Optionally stack a second, different template.
  if (applicable.size() > 1 && rng.coin()) {
    size_t second =
        (primary + 1 + static_cast<size_t>(rng.below(applicable.size() - 1))) %
        applicable.size();
    any = applicable[second].second() || any;
  }
  if (!any) {
    // The drawn templates did not apply to this design; try the rest.
    for (auto& [which, fn] : applicable) {
      (void)which;
      if (fn()) {
        any = true;
        break;
      }
    }
  }
  if (!any) throw NoApplicableTransform("design admits none of the templates");
  return outcome;
}

// ---------------------------------------------------------------------------
// Type-4
// ---------------------------------------------------------------------------

namespace {

using vhdl::BinaryExpr;
using vhdl::BinaryOp;
using vhdl::UnaryExpr;
using vhdl::UnaryOp;

Expr make_not(Expr operand) {
  Expr e;
  e.node = UnaryExpr{UnaryOp::Not, Box<Expr>(std::move(operand))};
  return e;
}

Expr make_binary(BinaryOp op, Expr lhs, Expr rhs) {
  Expr e;
  e.node = BinaryExpr{op, Box<Expr>(std::move(lhs)), Box<Expr>(std::move(rhs))};
  return e;
}

// Bitwise-valid De Morgan style rewrites, applied in one pass bottom-up.
Expr demorgan_rewrite(const Expr& expr, int* edits) {
  Expr out = expr;
  std::visit(
      [&](auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, UnaryExpr>) {
          *node.operand = demorgan_rewrite(*node.operand, edits);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          *node.lhs = demorgan_rewrite(*node.lhs, edits);
          *node.rhs = demorgan_rewrite(*node.rhs, edits);
        } else if constexpr (std::is_same_v<T, vhdl::CallExpr>) {
          for (auto& arg : node.args) arg = demorgan_rewrite(arg, edits);
        }
      },
      out.node);
  const auto* bin = std::get_if<BinaryExpr>(&out.node);
  if (bin == nullptr) return out;
  Expr lhs = *bin->lhs;
  Expr rhs = *bin->rhs;
  switch (bin->op) {
    case BinaryOp::And:
      ++*edits;
      return make_not(make_binary(BinaryOp::Or, make_not(std::move(lhs)),
                                  make_not(std::move(rhs))));
    case BinaryOp::Or:
      ++*edits;
      return make_not(make_binary(BinaryOp::And, make_not(std::move(lhs)),
                                  make_not(std::move(rhs))));
    case BinaryOp::Nand:
      ++*edits;
      return make_binary(BinaryOp::Or, make_not(std::move(lhs)),
                         make_not(std::move(rhs)));
    case BinaryOp::Nor:
      ++*edits;
      return make_binary(BinaryOp::And, make_not(std::move(lhs)),
                         make_not(std::move(rhs)));
    case BinaryOp::Xor:
      ++*edits;
      return make_not(make_binary(BinaryOp::Xnor, std::move(lhs),
                                  std::move(rhs)));
    case BinaryOp::Xnor:
      ++*edits;
      return make_not(make_binary(BinaryOp::Xor, std::move(lhs),
                                  std::move(rhs)));
    default:
      return out;
  }
}

bool is_selector_eq(const Expr& cond, std::string* selector, Expr* literal) {
  const auto* bin = std::get_if<BinaryExpr>(&cond.node);
  if (bin == nullptr || bin->op != BinaryOp::Eq) return false;
  const auto* name = std::get_if<vhdl::NameRef>(&bin->lhs->node);
  const auto* lit = std::get_if<vhdl::Literal>(&bin->rhs->node);
  if (name == nullptr || lit == nullptr) return false;
  if (lit->kind == vhdl::TokenKind::LiteralString) return false;
  if (selector != nullptr) *selector = name->name;
  if (literal != nullptr) *literal = *bin->rhs;
  return true;
}

void if_case_rewrite_stmts(std::vector<SeqStmt>& stmts, bool to_case,
                           int* edits);

void if_case_rewrite_stmt(SeqStmt& stmt, bool to_case, int* edits) {
  if (to_case) {
    if (auto* ifstmt = std::get_if<vhdl::IfStmt>(&stmt.node)) {
      std::string selector;
      bool convertible = !ifstmt->arms.empty();
      std::set<std::string> seen_choices;
      for (const auto& arm : ifstmt->arms) {
        std::string s;
        Expr lit;
        if (!is_selector_eq(arm.condition, &s, &lit) ||
            (!selector.empty() && fold_name(s) != fold_name(selector))) {
          convertible = false;
          break;
        }
        const auto& lit_node = std::get<vhdl::Literal>(lit.node);
        if (!seen_choices.insert(lit_node.text).second) {
          convertible = false;  // duplicate choice literal
          break;
        }
        if (selector.empty()) selector = s;
      }
      if (convertible && !ifstmt->arms.empty()) {
        vhdl::CaseStmt cases;
        cases.selector = name_expr(selector);
        for (auto& arm : ifstmt->arms) {
          vhdl::CaseArm case_arm;
          Expr lit;
          is_selector_eq(arm.condition, nullptr, &lit);
          case_arm.choices.push_back(std::move(lit));
          case_arm.body = std::move(arm.body);
          cases.arms.push_back(std::move(case_arm));
        }
        vhdl::CaseArm others;
        others.is_others = true;
        if (ifstmt->else_body) others.body = std::move(*ifstmt->else_body);
        cases.arms.push_back(std::move(others));
        stmt.node = std::move(cases);
        ++*edits;
      }
    }
  } else {
    if (auto* casestmt = std::get_if<vhdl::CaseStmt>(&stmt.node)) {
      const auto* selector = std::get_if<vhdl::NameRef>(&casestmt->selector.node);
      bool convertible = selector != nullptr && !casestmt->arms.empty();
      if (convertible) {
        vhdl::IfStmt ifstmt;
        for (auto& arm : casestmt->arms) {
          if (arm.is_others) {
            ifstmt.else_body = std::move(arm.body);
            continue;
          }
          vhdl::CondArm cond_arm;
          Expr cond;
          bool first = true;
          for (auto& choice : arm.choices) {
            Expr eq = make_binary(BinaryOp::Eq, name_expr(selector->name),
                                  std::move(choice));
            cond = first ? std::move(eq)
                         : make_binary(BinaryOp::Or, std::move(cond),
                                       std::move(eq));
            first = false;
          }
          cond_arm.condition = std::move(cond);
          cond_arm.body = std::move(arm.body);
          ifstmt.arms.push_back(std::move(cond_arm));
        }
        if (!ifstmt.arms.empty()) {
          stmt.node = std::move(ifstmt);
          ++*edits;
          return;
        }
      }
    }
  }
  // Recurse into nested bodies.
  std::visit(
      [&](auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, vhdl::IfStmt>) {
          for (auto& arm : node.arms)
            if_case_rewrite_stmts(arm.body, to_case, edits);
          if (node.else_body)
            if_case_rewrite_stmts(*node.else_body, to_case, edits);
        } else if constexpr (std::is_same_v<T, vhdl::CaseStmt>) {
          for (auto& arm : node.arms)
            if_case_rewrite_stmts(arm.body, to_case, edits);
        }
      },
      stmt.node);
}

void if_case_rewrite_stmts(std::vector<SeqStmt>& stmts, bool to_case,
                           int* edits) {
  for (auto& stmt : stmts) if_case_rewrite_stmt(stmt, to_case, edits);
}

bool design_has_convertible_if(const DesignFile& design) {
  // Cheap scan: count if->case conversions on a copy.
  DesignFile copy = design;
  int edits = 0;
  for (auto& unit : copy.units) {
    auto* arch = std::get_if<ArchitectureBody>(&unit.node);
    if (arch == nullptr) continue;
    for (auto& stmt : arch->statements) {
      if (auto* proc = std::get_if<vhdl::ProcessStmt>(&stmt.node))
        if_case_rewrite_stmts(proc->body, /*to_case=*/true, &edits);
    }
  }
  return edits > 0;
}

std::optional<vhdl::SubtypeSpec> leaf_type(const ArchitectureBody& arch,
                                           const EntityDecl* entity,
                                           const Expr& expr) {
  if (const auto* name = std::get_if<vhdl::NameRef>(&expr.node)) {
    std::string folded = fold_name(name->name);
    if (entity != nullptr) {
      for (const auto& p : entity->ports)
        if (fold_name(p.name) == folded) return p.type;
    }
    for (const auto& decl : arch.declarations) {
      if (const auto* sig = std::get_if<vhdl::SignalDecl>(&decl.node))
        if (fold_name(sig->name) == folded) return sig->type;
    }
    return std::nullopt;
  }
  if (const auto* un = std::get_if<UnaryExpr>(&expr.node)) {
    if (un->op == UnaryOp::Not) return leaf_type(arch, entity, *un->operand);
    return std::nullopt;
  }
  if (const auto* bin = std::get_if<BinaryExpr>(&expr.node)) {
    switch (bin->op) {
      case BinaryOp::And:
      case BinaryOp::Or:
      case BinaryOp::Nand:
      case BinaryOp::Nor:
      case BinaryOp::Xor:
      case BinaryOp::Xnor:
      case BinaryOp::Add:
      case BinaryOp::Sub: {
        auto lhs = leaf_type(arch, entity, *bin->lhs);
        if (lhs) return lhs;
        return leaf_type(arch, entity, *bin->rhs);
      }
      default:
        return std::nullopt;
    }
  }
  return std::nullopt;
}

int hoist_intermediate_signals(DesignFile& design,
                               std::vector<std::string>& log) {
  int added = 0;
  std::set<std::string> names = all_canonical_names(design);
  for (auto& unit : design.units) {
    auto* arch = std::get_if<ArchitectureBody>(&unit.node);
    if (arch == nullptr) continue;
    const EntityDecl* entity = entity_of(design, arch->entity_name);
    std::vector<vhdl::ConcurrentStmt> new_stmts;
    for (auto& stmt : arch->statements) {
      auto* assign = std::get_if<vhdl::ConcurrentAssign>(&stmt.node);
      if (assign != nullptr && added < 4) {
        if (auto* bin = std::get_if<BinaryExpr>(&assign->value.node)) {
          auto hoist = [&](Box<Expr>& operand) {
            if (added >= 4) return;
            if (std::get_if<BinaryExpr>(&operand->node) == nullptr) return;
            std::optional<vhdl::SubtypeSpec> type =
                leaf_type(*arch, entity, *operand);
            if (!type) return;
            std::string temp_name;
            for (int k = 1;; ++k) {
              temp_name = "stage_sig" + std::to_string(k);
              if (names.count(temp_name) == 0) break;
            }
            names.insert(temp_name);
            vhdl::SignalDecl decl;
            decl.name = temp_name;
            decl.type = *type;
            vhdl::Declaration wrapper;
            wrapper.node = std::move(decl);
            arch->declarations.push_back(std::move(wrapper));

            vhdl::ConcurrentAssign temp_assign;
            temp_assign.target = name_expr(temp_name);
            temp_assign.value = *operand;
            vhdl::ConcurrentStmt temp_stmt;
            temp_stmt.node = std::move(temp_assign);
            new_stmts.push_back(std::move(temp_stmt));
            *operand = name_expr(temp_name);
            ++added;
            log.push_back("hoist subexpression into intermediate signal \"" +
                          temp_name + "\"");
          };
          hoist(bin->lhs);
          hoist(bin->rhs);
        }
      }
      new_stmts.push_back(std::move(stmt));
    }
    arch->statements = std::move(new_stmts);
  }
  return added;
}

void rewrite_seq_exprs(std::vector<SeqStmt>& stmts, int& edits);

void rewrite_process(vhdl::ProcessStmt& proc, int& edits) {
  rewrite_seq_exprs(proc.body, edits);
}

void rewrite_seq_exprs(std::vector<SeqStmt>& stmts, int& edits) {
  for (auto& stmt : stmts) {
    std::visit(
        [&](auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, vhdl::SignalAssignStmt> ||
                        std::is_same_v<T, vhdl::VariableAssignStmt>) {
            node.value = demorgan_rewrite(node.value, &edits);
          } else if constexpr (std::is_same_v<T, vhdl::IfStmt>) {
            for (auto& arm : node.arms) rewrite_seq_exprs(arm.body, edits);
            if (node.else_body) rewrite_seq_exprs(*node.else_body, edits);
          } else if constexpr (std::is_same_v<T, vhdl::CaseStmt>) {
            for (auto& arm : node.arms) rewrite_seq_exprs(arm.body, edits);
          }
        },
        stmt.node);
  }
}

int demorgan_pass(DesignFile& design, std::vector<std::string>& log) {
  int edits = 0;
  for (auto& unit : design.units) {
    auto* arch = std::get_if<ArchitectureBody>(&unit.node);
    if (arch == nullptr) continue;
    for (auto& stmt : arch->statements) {
      std::visit(
          [&](auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, vhdl::ConcurrentAssign>) {
              node.value = demorgan_rewrite(node.value, &edits);
            } else if constexpr (std::is_same_v<T, vhdl::ConditionalAssign>) {
              for (auto& branch : node.branches) {
                branch.value = demorgan_rewrite(branch.value, &edits);
                if (branch.condition)
                  *branch.condition = demorgan_rewrite(*branch.condition, &edits);
              }
            } else if constexpr (std::is_same_v<T, vhdl::ProcessStmt>) {
              rewrite_process(node, edits);
            }
          },
          stmt.node);
    }
  }
  if (edits > 0)
    log.push_back("apply " + std::to_string(edits) +
                  " boolean-identity rewrites");
  return edits;
}

TransformOutcome backtranslate_external(const DesignFile& design,
                                        const TransformConfig& config) {
  if (!config.to_verilog_cmd || !config.to_vhdl_cmd)
    throw std::invalid_argument(
        "external back-translation requires both command templates");
  namespace fs = std::filesystem;
  fs::path workdir =
      fs::temp_directory_path() /
      ("vcodes-bt-" + std::to_string(
                          fnv1a64(vhdl::pretty_print(design)) & 0xffffff));
  fs::create_directories(workdir);
  fs::path input = workdir / "input.vhd";
  fs::path middle = workdir / "middle.v";
  fs::path output = workdir / "output.vhd";
  {
    std::ofstream out(input);
    out << vhdl::pretty_print(design);
  }
  auto run_stage = [&](const std::string& tmpl, const fs::path& in,
                       const fs::path& out_path) {
    std::string cmd = replace_all(tmpl, "{input}", in.string());
    cmd = replace_all(cmd, "{output}", out_path.string());
    CommandResult result =
        run_command(cmd, config.command_timeout_s, workdir.string());
    if (result.timed_out || result.exit_code != 0) {
      std::string excerpt = result.output.size() > 400
                                ? result.output.substr(result.output.size() - 400)
                                : result.output;
      throw BacktranslationFailed(result.exit_code, excerpt);
    }
    if (!fs::exists(out_path))
      throw BacktranslationFailed(-1, "command produced no output file");
  };
  run_stage(*config.to_verilog_cmd, input, middle);
  run_stage(*config.to_vhdl_cmd, middle, output);

  std::ifstream in(output);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  TransformOutcome outcome;
  try {
    outcome.design = vhdl::parse(text);
  } catch (const std::exception& e) {
    throw RoundTripUnparseable(e.what());
  }
  outcome.log.push_back("external back-translation via configured commands");
  std::error_code ec;
  fs::remove_all(workdir, ec);
  return outcome;
}

}  // namespace

TransformOutcome transform_type4(const DesignFile& design,
                                 const TransformConfig& config,
                                 NameSuggester& suggester) {
  if (config.type4_mode == Type4Mode::ExternalBacktranslation)
    return backtranslate_external(design, config);

  TransformOutcome outcome;
  outcome.design = design;
  int edits = 0;

  bool to_case = design_has_convertible_if(design);
  for (auto& unit : outcome.design.units) {
    auto* arch = std::get_if<ArchitectureBody>(&unit.node);
    if (arch == nullptr) continue;
    for (auto& stmt : arch->statements) {
      if (auto* proc = std::get_if<vhdl::ProcessStmt>(&stmt.node))
        if_case_rewrite_stmts(proc->body, to_case, &edits);
    }
  }
  if (edits > 0)
    outcome.log.push_back(
        to_case ? "convert if/elsif selector chains to case statements"
                : "convert case statements to if/elsif chains");

  edits += demorgan_pass(outcome.design, outcome.log);
  edits += hoist_intermediate_signals(outcome.design, outcome.log);

  if (edits == 0)
    throw NoApplicableTransform("no semantic rewrite applies to this design");

  // Full rename pass to minimize lexical overlap.
  Rng rng(mix_seed(config.seed, 0x7447));
  std::map<std::string, std::string> mapping =
      plan_renames(outcome.design, config, suggester, rng,
                   RenamePolicy::RenameEverything, &outcome.log);
  outcome.design = vhdl::rename(outcome.design, mapping);
  return outcome;
}

equiv::EquivalenceVerdict verify_pair(const ClonePair& pair,
                                      const equiv::EquivBudget& budget) {
  return equiv::check_source_equivalence(pair.original_code,
                                         pair.transformed_code, budget);
}

}  // namespace vcodes::clone
