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

#include "vcodes/clone/suggest.hpp"

#include <cctype>

#include "vcodes/util/strutil.hpp"
#include "vcodes/vhdl/parser.hpp"

namespace vcodes::clone {

namespace {

const char* kind_prefix(vhdl::IdentifierKind kind) {
  using vhdl::IdentifierKind;
  switch (kind) {
    case IdentifierKind::Port: return "operand";
    case IdentifierKind::Signal: return "internal";
    case IdentifierKind::Entity: return "unit";
    case IdentifierKind::Architecture: return "impl";
    case IdentifierKind::Constant: return "const";
    case IdentifierKind::Component: return "block";
    case IdentifierKind::Function: return "calc";
    case IdentifierKind::Procedure: return "task";
    case IdentifierKind::Variable: return "local";
    case IdentifierKind::Process: return "step";
    case IdentifierKind::Label: return "inst";
    case IdentifierKind::Package: return "pkg";
  }
  return "named";
}

bool usable_identifier(const std::string& name) {
  return vhdl::is_valid_identifier(name) && !vhdl::is_reserved_word(name) &&
         !vhdl::is_predefined_name(vhdl::fold_name(name));
}

}  // namespace

std::string DictionarySuggester::suggest(const std::string& identifier,
                                         vhdl::IdentifierKind kind,
                                         const std::string& code_context) {
  (void)code_context;
  std::string candidate =
      std::string(kind_prefix(kind)) + "_" + vhdl::fold_name(identifier);
  if (usable_identifier(candidate)) return candidate;
  return "named_" + vhdl::fold_name(identifier);
}

std::string LlmSuggester::suggest(const std::string& identifier,
                                  vhdl::IdentifierKind kind,
                                  const std::string& code_context) {
  std::string prompt = "Suggest a descriptive VHDL identifier for a " +
                       std::string(vhdl::identifier_kind_name(kind)) +
                       " currently named '" + identifier +
                       "' in the following code. Reply with the identifier "
                       "only.\n" +
                       code_context;
  std::string reply;
  try {
    reply = gateway_.complete(prompt, llm::SamplingParams{}).text;
  } catch (const llm::ProviderError&) {
    return fallback_.suggest(identifier, kind, code_context);
  }
  // First identifier-shaped token of the reply.
  std::string token;
  for (char c : reply) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      token += c;
    } else if (!token.empty()) {
      break;
    }
  }
  if (usable_identifier(token) && vhdl::fold_name(token) != vhdl::fold_name(identifier))
    return token;
  return fallback_.suggest(identifier, kind, code_context);
}

}  // namespace vcodes::clone
