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

#include "test_support.hpp"
#include "vcodes/util/rng.hpp"
#include "vcodes/vhdl/identifiers.hpp"
#include "vcodes/vhdl/lexer.hpp"
#include "vcodes/vhdl/outline.hpp"
#include "vcodes/vhdl/parser.hpp"
#include "vcodes/vhdl/printer.hpp"

using namespace vcodes;
using namespace vcodes::vhdl;

TEST_CASE("tokenize classifies basic lexical classes") {
  std::vector<Token> tokens = tokenize("entity AND2 is");
  REQUIRE(tokens.size() == 3);
  CHECK(tokens[0].kind == TokenKind::Keyword);
  CHECK(tokens[0].text == "entity");
  CHECK(tokens[1].kind == TokenKind::Identifier);
  CHECK(tokens[1].text == "AND2");
  CHECK(tokens[2].kind == TokenKind::Keyword);

  tokens = tokenize("x <= '1';");
  REQUIRE(tokens.size() == 4);
  CHECK(tokens[0].kind == TokenKind::Identifier);
  CHECK(tokens[1].kind == TokenKind::Symbol);
  CHECK(tokens[1].text == "<=");
  CHECK(tokens[2].kind == TokenKind::LiteralBit);
  CHECK(tokens[3].text == ";");

  tokens = tokenize("-- comment\nsignal s");
  REQUIRE(tokens.size() == 3);
  CHECK(tokens[0].kind == TokenKind::Comment);
  CHECK(tokens[1].kind == TokenKind::Keyword);
  CHECK(tokens[2].kind == TokenKind::Identifier);
}

TEST_CASE("tokenize literal classes") {
  CHECK(tokenize("\"0101\"")[0].kind == TokenKind::LiteralBitVector);
  CHECK(tokenize("\"hello\"")[0].kind == TokenKind::LiteralString);
  CHECK(tokenize("'Z'")[0].kind == TokenKind::LiteralChar);
  CHECK(tokenize("42")[0].kind == TokenKind::LiteralInt);
}

TEST_CASE("tokenize errors and totality") {
  // Unknown characters become error tokens with positions inside the input.
  std::vector<Token> tokens = tokenize("a @ b");
  REQUIRE(tokens.size() == 3);
  CHECK(tokens[1].kind == TokenKind::Error);
  CHECK(tokens[1].span.start_col == 3);

  CHECK_THROWS_AS(tokenize("\"unterminated"), LexError);
  CHECK_THROWS_AS(tokenize("x <= 'a"), LexError);

  // Fuzz: arbitrary bytes never crash; error spans stay in range.
  Rng rng(7);
  for (int round = 0; round < 200; ++round) {
    std::string input;
    size_t len = rng.below(60);
    for (size_t i = 0; i < len; ++i)
      input += static_cast<char>(rng.below(96) + 32);
    try {
      std::vector<Token> out = tokenize(input);
      for (const auto& tok : out) {
        CHECK(tok.span.start_line >= 1);
        CHECK(tok.span.start_col >= 1);
      }
    } catch (const LexError&) {
      // acceptable outcome for unterminated literals
    }
  }
}

TEST_CASE("token texts reconstruct the input") {
  for (const auto& source : testsupport::corpus_sources()) {
    std::vector<Token> tokens = tokenize(source.content);
    // Verify each token matches the original text at its span and that gaps
    // contain only whitespace.
    std::vector<std::string> lines;
    {
      std::string line;
      std::istringstream in(source.content);
      while (std::getline(in, line)) lines.push_back(line);
    }
    auto offset_of = [&](int line, int col) -> size_t {
      size_t offset = 0;
      for (int l = 1; l < line; ++l) offset += lines[l - 1].size() + 1;
      return offset + static_cast<size_t>(col - 1);
    };
    size_t prev_end = 0;
    for (const auto& tok : tokens) {
      size_t start = offset_of(tok.span.start_line, tok.span.start_col);
      for (size_t i = prev_end; i < start; ++i) {
        CHECK(std::isspace(static_cast<unsigned char>(source.content[i])));
      }
      REQUIRE(start + tok.text.size() <= source.content.size());
      CHECK(source.content.substr(start, tok.text.size()) == tok.text);
      prev_end = start + tok.text.size();
    }
    for (size_t i = prev_end; i < source.content.size(); ++i)
      CHECK(std::isspace(static_cast<unsigned char>(source.content[i])));
  }
}

TEST_CASE("parse minimal AND gate") {
  DesignFile design =
      parse(testsupport::read_file(testsupport::corpus_dir() + "/and2.vhd"));
  REQUIRE(design.units.size() == 2);
  const auto& entity = std::get<EntityDecl>(design.units[0].node);
  CHECK(entity.name == "and2");
  REQUIRE(entity.ports.size() == 3);
  CHECK(entity.ports[0].dir == PortDir::In);
  CHECK(entity.ports[2].dir == PortDir::Out);
  const auto& arch = std::get<ArchitectureBody>(design.units[1].node);
  REQUIRE(arch.statements.size() == 1);
  CHECK(std::get_if<ConcurrentAssign>(&arch.statements[0].node) != nullptr);
}

TEST_CASE("parse clocked shift register shape") {
  DesignFile design = parse(testsupport::read_file(testsupport::corpus_dir() +
                                                   "/shift_register.vhd"));
  const auto& arch = std::get<ArchitectureBody>(design.units[1].node);
  const ProcessStmt* proc = nullptr;
  for (const auto& stmt : arch.statements) {
    if (const auto* p = std::get_if<ProcessStmt>(&stmt.node)) proc = p;
  }
  REQUIRE(proc != nullptr);
  REQUIRE(proc->sensitivity.size() == 1);
  CHECK(fold_name(proc->sensitivity[0].name) == "clk");
  REQUIRE(proc->body.size() == 1);
  const auto& guard = std::get<IfStmt>(proc->body[0].node);
  const auto& call = std::get<CallExpr>(guard.arms[0].condition.node);
  CHECK(fold_name(call.callee) == "rising_edge");
}

TEST_CASE("out-of-subset constructs are rejected as unsupported") {
  const char* with_generate = R"(
entity g is
  port (a : in std_logic; y : out std_logic);
end entity g;
architecture rtl of g is
begin
  gen : for i in 0 to 3 generate
    y <= a;
  end generate;
end architecture rtl;
)";
  CHECK_THROWS_AS(parse(with_generate), UnsupportedConstruct);

  CHECK_THROWS_AS(parse("configuration cfg of top is end;"),
                  UnsupportedConstruct);

  const char* dual_edge = R"(
entity d is
  port (clk : in std_logic; a : in std_logic; y : out std_logic);
end entity d;
architecture rtl of d is
begin
  process (clk)
  begin
    if rising_edge(clk) then
      y <= a;
    end if;
    if falling_edge(clk) then
      y <= not a;
    end if;
  end process;
end architecture rtl;
)";
  CHECK_THROWS_AS(parse(dual_edge), UnsupportedConstruct);

  const char* wait_stmt = R"(
entity w is
  port (a : in std_logic; y : out std_logic);
end entity w;
architecture rtl of w is
begin
  process (a)
  begin
    wait for 10 ns;
  end process;
end architecture rtl;
)";
  CHECK_THROWS_AS(parse(wait_stmt), UnsupportedConstruct);
}

TEST_CASE("parse errors carry expected/found") {
  try {
    parse("entity x is port (a : in std_logic) end entity x;");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(!e.expected.empty());
    CHECK(!e.found.empty());
  }
}

TEST_CASE("duplicate case choices are rejected") {
  const char* duplicated = R"(
entity c is
  port (s : in std_logic; y : out std_logic);
end entity c;
architecture rtl of c is
begin
  process (s)
  begin
    case s is
      when '0' => y <= '0';
      when '0' => y <= '1';
      when others => y <= '1';
    end case;
  end process;
end architecture rtl;
)";
  CHECK_THROWS_AS(parse(duplicated), ParseError);
}

TEST_CASE("round-trip over the corpus") {
  for (const auto& source : testsupport::corpus_sources()) {
    CAPTURE(source.name);
    DesignFile first = parse(source.content);
    std::string printed = pretty_print(first);
    DesignFile second = parse(printed);
    CHECK(struct_equal(first, second));
    // Printing is idempotent.
    CHECK(pretty_print(second) == printed);
  }
}

TEST_CASE("empty design prints empty") {
  DesignFile empty;
  CHECK(pretty_print(empty).empty());
}

TEST_CASE("comments survive the round trip") {
  const char* with_comments = R"(
-- file header note
entity cgate is
  port (a : in std_logic; y : out std_logic);
end entity cgate;
architecture rtl of cgate is
  -- invert the input
  signal t : std_logic;
begin
  t <= not a; -- drive temp
  y <= t;
end architecture rtl;
)";
  DesignFile first = parse(with_comments);
  DesignFile second = parse(pretty_print(first));
  CHECK(struct_equal(first, second));
  CHECK(pretty_print(first).find("-- invert the input") != std::string::npos);
}

namespace {

// Random expression ASTs over a fixed symbol pool; printing then parsing
// must reproduce the tree exactly (parenthesization is the printer's job).
Expr random_expr(Rng& rng, int depth) {
  auto name = [&](const char* n) {
    Expr e;
    e.node = NameRef{n};
    return e;
  };
  const char* names[] = {"a", "b", "c", "sel", "data_bus"};
  if (depth <= 0 || rng.below(5) == 0) {
    switch (rng.below(4)) {
      case 0:
        return name(names[rng.below(5)]);
      case 1: {
        Expr e;
        e.node = Literal{TokenKind::LiteralBit,
                         rng.coin() ? "'1'" : "'0'"};
        return e;
      }
      case 2: {
        Expr e;
        e.node = Literal{TokenKind::LiteralInt,
                         std::to_string(rng.below(100))};
        return e;
      }
      default: {
        Expr e;
        e.node = Literal{TokenKind::LiteralBitVector, "\"0101\""};
        return e;
      }
    }
  }
  switch (rng.below(8)) {
    case 0: {
      Expr e;
      e.node = UnaryExpr{UnaryOp::Not, Box<Expr>(random_expr(rng, depth - 1))};
      return e;
    }
    case 1: {
      Expr e;
      e.node = UnaryExpr{UnaryOp::Minus, Box<Expr>(random_expr(rng, depth - 1))};
      return e;
    }
    case 2:
    case 3:
    case 4: {
      static const BinaryOp ops[] = {
          BinaryOp::And, BinaryOp::Or,  BinaryOp::Nand, BinaryOp::Nor,
          BinaryOp::Xor, BinaryOp::Xnor, BinaryOp::Add, BinaryOp::Sub,
          BinaryOp::Eq,  BinaryOp::Ne,  BinaryOp::Lt,   BinaryOp::Le,
          BinaryOp::Gt,  BinaryOp::Ge,  BinaryOp::Concat};
      Expr e;
      e.node = BinaryExpr{ops[rng.below(15)],
                          Box<Expr>(random_expr(rng, depth - 1)),
                          Box<Expr>(random_expr(rng, depth - 1))};
      return e;
    }
    case 5: {
      // single-argument calls must use builtin names or the parser reads
      // them back as indexing
      Expr e;
      e.node = CallExpr{rng.coin() ? "rising_edge" : "resize",
                        {random_expr(rng, depth - 1)}};
      if (std::get<CallExpr>(e.node).callee == "resize") {
        Expr width;
        width.node = Literal{TokenKind::LiteralInt, "4"};
        std::get<CallExpr>(e.node).args.push_back(width);
      }
      return e;
    }
    case 6: {
      Expr idx;
      idx.node = Literal{TokenKind::LiteralInt, std::to_string(rng.below(4))};
      Expr e;
      e.node = IndexExpr{Box<Expr>(name("data_bus")), Box<Expr>(idx)};
      return e;
    }
    default: {
      Expr hi, lo;
      hi.node = Literal{TokenKind::LiteralInt, "3"};
      lo.node = Literal{TokenKind::LiteralInt, "0"};
      Expr e;
      e.node = SliceExpr{Box<Expr>(name("data_bus")), Box<Expr>(hi),
                         Box<Expr>(lo), RangeDir::Downto};
      return e;
    }
  }
}

}  // namespace

TEST_CASE("random expression ASTs survive print/parse round trips") {
  Rng rng(20260810);
  for (int round = 0; round < 500; ++round) {
    Expr original = random_expr(rng, 4);
    std::string source = "entity t is\n  port (y : out std_logic);\nend entity t;\n"
                         "architecture rtl of t is\nbegin\n  y <= " +
                         pretty_print(original) + ";\nend architecture rtl;\n";
    CAPTURE(round);
    CAPTURE(pretty_print(original));
    DesignFile parsed = parse(source);
    const auto& arch = std::get<ArchitectureBody>(parsed.units[1].node);
    const auto& assign = std::get<ConcurrentAssign>(arch.statements[0].node);
    REQUIRE(struct_equal(assign.value, original));
  }
}

TEST_CASE("collect_identifiers on the AND gate") {
  DesignFile design =
      parse(testsupport::read_file(testsupport::corpus_dir() + "/and2.vhd"));
  IdentifierTable table = collect_identifiers(design);
  CHECK(table.find("and2", IdentifierKind::Entity) != nullptr);
  CHECK(table.find("rtl", IdentifierKind::Architecture) != nullptr);
  CHECK(table.find("a", IdentifierKind::Port) != nullptr);
  CHECK(table.find("b", IdentifierKind::Port) != nullptr);
  CHECK(table.find("y", IdentifierKind::Port) != nullptr);
  REQUIRE(table.entries.size() == 5);
}

TEST_CASE("occurrences count declaration plus uses") {
  const char* three_uses = R"(
entity u is
  port (a : in std_logic; x : out std_logic; y : out std_logic; z : out std_logic);
end entity u;
architecture rtl of u is
  signal s : std_logic;
begin
  s <= a;
  x <= s;
  y <= s and a;
  z <= s;
end architecture rtl;
)";
  IdentifierTable table = collect_identifiers(parse(three_uses));
  const IdentifierEntry* entry = table.find("s", IdentifierKind::Signal);
  REQUIRE(entry != nullptr);
  // one declaration + one driving target + three reads
  CHECK(entry->occurrences.size() == 5);
}

TEST_CASE("case-variant spellings share one entry") {
  const char* variant = R"(
entity v is
  port (Clk : in std_logic; q : out std_logic);
end entity v;
architecture rtl of v is
begin
  process (CLK)
  begin
    if rising_edge(clk) then
      q <= '1';
    end if;
  end process;
end architecture rtl;
)";
  IdentifierTable table = collect_identifiers(parse(variant));
  const IdentifierEntry* entry = table.find("clk", IdentifierKind::Port);
  REQUIRE(entry != nullptr);
  CHECK(entry->original_spelling == "Clk");
  bool saw_upper = false;
  for (const auto& occurrence : entry->occurrences) {
    if (occurrence.spelling == "CLK") saw_upper = true;
  }
  CHECK(saw_upper);
}

TEST_CASE("rename identity and consistency") {
  DesignFile design =
      parse(testsupport::read_file(testsupport::corpus_dir() + "/and2.vhd"));
  DesignFile same = rename(design, {});
  CHECK(struct_equal(design, same));

  DesignFile renamed = rename(design, {{"a", "operand_left"}});
  std::string printed = pretty_print(renamed);
  CHECK(printed.find("operand_left") != std::string::npos);
  CHECK(printed.find(" a ") == std::string::npos);
  DesignFile reparsed = parse(printed);
  const auto& entity = std::get<EntityDecl>(reparsed.units[0].node);
  CHECK(entity.ports.size() == 3);

  CHECK_THROWS_AS(rename(design, {{"a", "signal"}}), ReservedWordError);
  CHECK_THROWS_AS(rename(design, {{"a", "b"}}), RenameCollision);
  CHECK_THROWS_AS(rename(design, {{"a", "rising_edge"}}), RenameCollision);
}

TEST_CASE("rename composition with disjoint domains") {
  DesignFile design =
      parse(testsupport::read_file(testsupport::corpus_dir() + "/fulladder.vhd"));
  std::map<std::string, std::string> m1 = {{"a", "in_left"}};
  std::map<std::string, std::string> m2 = {{"b", "in_right"}};
  std::map<std::string, std::string> both = {{"a", "in_left"},
                                             {"b", "in_right"}};
  DesignFile combined = rename(design, both);
  DesignFile sequential = rename(rename(design, m2), m1);
  CHECK(struct_equal(combined, sequential));
}

TEST_CASE("ast_outline rows in source order") {
  const char* mixed = R"(
entity top is
  port (clk : in std_logic; q : out std_logic);
end entity top;
architecture rtl of top is
begin
  main : process (clk)
  begin
    if rising_edge(clk) then
      q <= '1';
    end if;
  end process;
end architecture rtl;
)";
  std::vector<OutlineRow> rows = ast_outline(parse(mixed));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].kind == OutlineKind::Entity);
  CHECK(rows[1].kind == OutlineKind::Architecture);
  CHECK(rows[2].kind == OutlineKind::Process);
  CHECK(rows[2].name == "main");
  REQUIRE(rows[2].parent_name.has_value());
  CHECK(*rows[2].parent_name == "rtl");

  DesignFile with_instance = parse(testsupport::read_file(
      testsupport::corpus_dir() + "/fulladder_struct.vhd"));
  bool found_component = false;
  for (const auto& row : ast_outline(with_instance)) {
    if (row.kind == OutlineKind::Component && row.name == "u1")
      found_component = true;
  }
  CHECK(found_component);

  CHECK(ast_outline(DesignFile{}).empty());
}
