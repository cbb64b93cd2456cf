#include "doctest.h"

#include <random>

#include "propsplit/tree.hpp"

using namespace propsplit;

TEST_SUITE_BEGIN("tree");

TEST_CASE("single preterminal") {
  ParseTree t = parse_ptb("(NN dog)");
  CHECK(t.label() == "ROOT");
  REQUIRE(t.children().size() == 1);
  const ParseTree& nn = t.children().front();
  CHECK(nn.label() == "NN");
  REQUIRE(nn.is_preterminal());
  CHECK(nn.token().text == "dog");
  CHECK(nn.token().index == 0);
  CHECK(yield_text(t) == "dog");
}

TEST_CASE("hand-traced four token tree") {
  ParseTree t = parse_ptb(
      "(ROOT (S (NP (DT The) (NN usage)) (VP (MD can) (VP (VB impede)))))");
  CHECK(t.label() == "ROOT");
  REQUIRE(t.children().size() == 1);
  const ParseTree& s = t.children().front();
  CHECK(s.label() == "S");
  CHECK(s.children().size() == 2);
  CHECK(t.token_count() == 4);
  auto toks = token_texts(t);
  CHECK(toks == std::vector<std::string>{"The", "usage", "can", "impede"});
  auto tokens = t.tokens();
  for (std::size_t i = 0; i < tokens.size(); ++i) CHECK(tokens[i].index == i);
}

TEST_CASE("malformed inputs raise typed errors") {
  CHECK_THROWS_AS(parse_ptb("((S"), TreeParseError);
  try {
    parse_ptb("((S");
  } catch (const TreeParseError& e) {
    CHECK(e.kind() == TreeParseError::Kind::UnbalancedBrackets);
  }
  try {
    parse_ptb("   ");
  } catch (const TreeParseError& e) {
    CHECK(e.kind() == TreeParseError::Kind::EmptyInput);
  }
  try {
    parse_ptb("(NP ())");
  } catch (const TreeParseError& e) {
    CHECK(e.kind() == TreeParseError::Kind::EmptyNode);
  }
  CHECK_THROWS_AS(parse_ptb("(NN dog) (NN cat)"), TreeParseError);
}

TEST_CASE("serialize round trip") {
  std::string src = "(ROOT (S (NP (DT The) (NN usage)) (VP (MD can) (VP (VB impede)))))";
  ParseTree t = parse_ptb(src);
  CHECK(serialize(t) == src);
  CHECK(parse_ptb(serialize(t)) == t);

  ParseTree pre = ParseTree::preterminal("NN", Token{"dog", 0});
  CHECK(serialize(pre) == "(NN dog)");
}

TEST_CASE("escapes survive serialization") {
  ParseTree t = parse_ptb("(NP (-LRB- -LRB-) (NN barium) (-RRB- -RRB-))");
  CHECK(serialize(t).find("-LRB-") != std::string::npos);
  CHECK(parse_ptb(serialize(t)) == t);
}

TEST_CASE("functional tags and traces") {
  ParseTree t = parse_ptb("(S (NP-SBJ (NN dog)) (VP (VBZ barks) (NP (-NONE- *T*))))");
  const ParseTree& s = t.children().front();
  CHECK(s.children().front().label() == "NP");
  CHECK(t.token_count() == 2);  // the trace and its empty NP are gone
  auto toks = token_texts(t);
  CHECK(toks == std::vector<std::string>{"dog", "barks"});
}

TEST_CASE("detokenization") {
  CHECK(detokenize({"Volvulus", "is", "suspected"}) == "Volvulus is suspected");
  CHECK(detokenize({"mandatory", ",", "although"}) == "mandatory, although");
  CHECK(detokenize({"-LRB-", "barium", "-RRB-"}) == "(barium)");
  CHECK(detokenize({"He", "left", "."}) == "He left.");
}

TEST_CASE("reindexed assigns a gapless order") {
  ParseTree t = parse_ptb("(S (NP (NN a)) (VP (VB b) (NN c)))");
  const ParseTree& vp = t.children().front().children().back();
  ParseTree sub = reindexed(vp);
  auto tokens = sub.tokens();
  REQUIRE(tokens.size() == 2);
  CHECK(tokens[0].index == 0);
  CHECK(tokens[1].index == 1);
}

namespace {

// Random balanced bracketings, not necessarily well-formed trees.
std::string random_bracketing(std::mt19937& rng) {
  std::uniform_int_distribution<int> piece(0, 5);
  std::string out;
  int depth = 0;
  int steps = std::uniform_int_distribution<int>(1, 40)(rng);
  for (int i = 0; i < steps; ++i) {
    switch (piece(rng)) {
      case 0: out += '('; ++depth; break;
      case 1:
        if (depth > 0) { out += ')'; --depth; }
        break;
      case 2: out += " NP"; break;
      case 3: out += " dog"; break;
      case 4: out += " -NONE-"; break;
      default: out += ' '; break;
    }
  }
  while (depth-- > 0) out += ')';
  return out;
}

void check_invariants(const ParseTree& t) {
  std::size_t i = 0;
  for (const ParseTree* pre : t.preterminals()) {
    CHECK(pre->token().index == i++);
    CHECK(!pre->token().text.empty());
  }
  CHECK(t.token_count() == i);
}

}  // namespace

TEST_CASE("parser is total over random balanced bracketings") {
  std::mt19937 rng(20240811);
  int parsed = 0;
  for (int i = 0; i < 2000; ++i) {
    std::string s = random_bracketing(rng);
    try {
      ParseTree t = parse_ptb(s);
      check_invariants(t);
      ParseTree again = parse_ptb(serialize(t));
      CHECK(again == t);
      ++parsed;
    } catch (const TreeParseError&) {
      // typed rejection is fine
    }
  }
  CHECK(parsed > 0);
}

TEST_SUITE_END();
