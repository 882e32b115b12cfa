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

#include "vcodes/vhdl/outline.hpp"

#include "vcodes/vhdl/printer.hpp"

namespace vcodes::vhdl {

const char* outline_kind_name(OutlineKind kind) {
  switch (kind) {
    case OutlineKind::Entity: return "entity";
    case OutlineKind::Architecture: return "architecture";
    case OutlineKind::Process: return "process";
    case OutlineKind::Component: return "component";
    case OutlineKind::Procedure: return "procedure";
    case OutlineKind::Function: return "function";
  }
  return "?";
}

namespace {

std::string generated_process_name(int ordinal) {
  return "process_" + std::to_string(ordinal);
}

}  // namespace

std::vector<OutlineRow> ast_outline(const DesignFile& design) {
  std::vector<OutlineRow> rows;
  for (const auto& unit : design.units) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, EntityDecl>) {
            rows.push_back({OutlineKind::Entity, node.name, std::nullopt,
                            node.name_span});
          } else if constexpr (std::is_same_v<T, ArchitectureBody>) {
            rows.push_back({OutlineKind::Architecture, node.name,
                            node.entity_name, node.name_span});
            for (const auto& decl : node.declarations) {
              if (const auto* fn = std::get_if<FunctionDecl>(&decl.node)) {
                rows.push_back({OutlineKind::Function, fn->name, node.name,
                                fn->name_span});
              } else if (const auto* proc_decl =
                             std::get_if<ProcedureDecl>(&decl.node)) {
                rows.push_back({OutlineKind::Procedure, proc_decl->name,
                                node.name, proc_decl->name_span});
              }
            }
            int process_ordinal = 0;
            for (const auto& stmt : node.statements) {
              if (const auto* proc = std::get_if<ProcessStmt>(&stmt.node)) {
                ++process_ordinal;
                std::string name = proc->label.value_or(
                    generated_process_name(process_ordinal));
                rows.push_back(
                    {OutlineKind::Process, name, node.name, stmt.span});
              } else if (const auto* inst =
                             std::get_if<ComponentInstance>(&stmt.node)) {
                rows.push_back({OutlineKind::Component, inst->label, node.name,
                                inst->label_span});
              }
            }
          } else {
            static_assert(std::is_same_v<T, PackageDecl>);
            for (const auto& decl : node.declarations) {
              if (const auto* fn = std::get_if<FunctionDecl>(&decl.node)) {
                rows.push_back({OutlineKind::Function, fn->name, node.name,
                                fn->name_span});
              } else if (const auto* proc_decl =
                             std::get_if<ProcedureDecl>(&decl.node)) {
                rows.push_back({OutlineKind::Procedure, proc_decl->name,
                                node.name, proc_decl->name_span});
              }
            }
          }
        },
        unit.node);
  }
  return rows;
}

std::string outline_node_source(const DesignFile& design,
                                const OutlineRow& row) {
  std::string folded = fold_name(row.name);
  for (const auto& unit : design.units) {
    if (row.kind == OutlineKind::Entity) {
      if (const auto* entity = std::get_if<EntityDecl>(&unit.node)) {
        if (fold_name(entity->name) == folded) return pretty_print(unit);
      }
      continue;
    }
    const auto* arch = std::get_if<ArchitectureBody>(&unit.node);
    if (arch == nullptr) {
      if (const auto* pkg = std::get_if<PackageDecl>(&unit.node)) {
        if (row.parent_name && fold_name(pkg->name) == fold_name(*row.parent_name)) {
          for (const auto& decl : pkg->declarations) {
            if (const auto* fn = std::get_if<FunctionDecl>(&decl.node)) {
              if (fold_name(fn->name) == folded) return pretty_print_decl(decl);
            } else if (const auto* pd = std::get_if<ProcedureDecl>(&decl.node)) {
              if (fold_name(pd->name) == folded) return pretty_print_decl(decl);
            }
          }
        }
      }
      continue;
    }
    if (row.kind == OutlineKind::Architecture) {
      if (fold_name(arch->name) == folded) return pretty_print(unit);
      continue;
    }
    if (!row.parent_name || fold_name(arch->name) != fold_name(*row.parent_name))
      continue;
    if (row.kind == OutlineKind::Function || row.kind == OutlineKind::Procedure) {
      for (const auto& decl : arch->declarations) {
        if (const auto* fn = std::get_if<FunctionDecl>(&decl.node)) {
          if (row.kind == OutlineKind::Function && fold_name(fn->name) == folded)
            return pretty_print_decl(decl);
        } else if (const auto* pd = std::get_if<ProcedureDecl>(&decl.node)) {
          if (row.kind == OutlineKind::Procedure && fold_name(pd->name) == folded)
            return pretty_print_decl(decl);
        }
      }
    } else if (row.kind == OutlineKind::Process) {
      int ordinal = 0;
      for (const auto& stmt : arch->statements) {
        if (const auto* proc = std::get_if<ProcessStmt>(&stmt.node)) {
          ++ordinal;
          std::string name =
              proc->label.value_or(generated_process_name(ordinal));
          if (fold_name(name) == folded) return pretty_print_stmt(stmt);
        }
      }
    } else if (row.kind == OutlineKind::Component) {
      for (const auto& stmt : arch->statements) {
        if (const auto* inst = std::get_if<ComponentInstance>(&stmt.node)) {
          if (fold_name(inst->label) == folded) return pretty_print_stmt(stmt);
        }
      }
    }
  }
  return "";
}

}  // namespace vcodes::vhdl
