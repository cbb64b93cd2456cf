#include "propsplit/pattern.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace propsplit {

namespace {

std::string ascii_lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// ---------------------------------------------------------------------------
// Lexer

struct Lexeme {
  enum class Kind { LParen, RParen, Pipe, Bang, CaptureEq, Op, Atom, QuotedAtom, Wildcard, End };
  Kind kind;
  std::string text;  // atom text or operator spelling
  std::size_t pos;
};

bool atom_char(char c) {
  if (std::isspace(static_cast<unsigned char>(c))) return false;
  switch (c) {
    case '(': case ')': case '|': case '!': case '=': case '<': case '.': case '"':
      return false;
    default:
      return true;
  }
}

std::vector<Lexeme> lex(const std::string& src) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  auto peek = [&](std::size_t ahead) -> char {
    return i + ahead < src.size() ? src[i + ahead] : '\0';
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    std::size_t start = i;
    if (c == '(') { out.push_back({Lexeme::Kind::LParen, "(", start}); ++i; continue; }
    if (c == ')') { out.push_back({Lexeme::Kind::RParen, ")", start}); ++i; continue; }
    if (c == '|') { out.push_back({Lexeme::Kind::Pipe, "|", start}); ++i; continue; }
    if (c == '!') { out.push_back({Lexeme::Kind::Bang, "!", start}); ++i; continue; }
    if (c == '=') {
      if (peek(1) == '=') { out.push_back({Lexeme::Kind::Op, "==", start}); i += 2; }
      else { out.push_back({Lexeme::Kind::CaptureEq, "=", start}); ++i; }
      continue;
    }
    if (c == '<') {
      if (peek(1) == '<') { out.push_back({Lexeme::Kind::Op, "<<", start}); i += 2; }
      else if (peek(1) == ':') { out.push_back({Lexeme::Kind::Op, "<:", start}); i += 2; }
      else { out.push_back({Lexeme::Kind::Op, "<", start}); ++i; }
      continue;
    }
    if (c == '.') { out.push_back({Lexeme::Kind::Op, ".", start}); ++i; continue; }
    if (c == '$' && peek(1) == '+') { out.push_back({Lexeme::Kind::Op, "$+", start}); i += 2; continue; }
    if (c == '$' && peek(1) == '.' && peek(2) == '.') {
      out.push_back({Lexeme::Kind::Op, "$..", start}); i += 3; continue;
    }
    if (c == '"') {
      std::string text;
      ++i;
      while (i < src.size() && src[i] != '"') text.push_back(src[i++]);
      if (i >= src.size()) throw PatternSyntaxError(start, "unterminated quoted literal");
      ++i;
      if (text.empty()) throw PatternSyntaxError(start, "empty quoted literal");
      out.push_back({Lexeme::Kind::QuotedAtom, text, start});
      continue;
    }
    // Atom; '$' stays inside atoms unless it starts $+ or $..
    std::string text;
    while (i < src.size()) {
      char a = src[i];
      if (a == '$') {
        if (peek(1) == '+' || (peek(1) == '.' && peek(2) == '.')) break;
        text.push_back(a); ++i; continue;
      }
      if (!atom_char(a)) break;
      text.push_back(a); ++i;
    }
    if (text.empty()) throw PatternSyntaxError(start, std::string("unexpected character '") + c + "'");
    if (text == "__") out.push_back({Lexeme::Kind::Wildcard, text, start});
    else out.push_back({Lexeme::Kind::Atom, text, start});
  }
  out.push_back({Lexeme::Kind::End, "", src.size()});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

RelOp op_from(const std::string& spelling) {
  if (spelling == "<") return RelOp::Child;
  if (spelling == "<<") return RelOp::Descendant;
  if (spelling == "<:") return RelOp::OnlyChild;
  if (spelling == "$+") return RelOp::ImmediateSister;
  if (spelling == "$..") return RelOp::Sister;
  if (spelling == ".") return RelOp::Precedes;
  return RelOp::Equals;
}

class Parser {
 public:
  Parser(const std::string& src) : lexemes_(lex(src)) {}

  std::unique_ptr<PatternNode> parse(std::vector<std::string>& captures) {
    captures_ = &captures;
    auto node = parse_node();
    expect(Lexeme::Kind::End, "end of pattern");
    return node;
  }

 private:
  const Lexeme& cur() const { return lexemes_[pos_]; }
  void advance() { ++pos_; }
  void expect(Lexeme::Kind kind, const std::string& what) {
    if (cur().kind != kind) {
      throw PatternSyntaxError(cur().pos, "expected " + what);
    }
    advance();
  }

  void assign_capture(PatternNode& node) {
    if (cur().kind != Lexeme::Kind::CaptureEq) return;
    std::size_t eq_pos = cur().pos;
    advance();
    if (cur().kind != Lexeme::Kind::Atom) {
      throw PatternSyntaxError(cur().pos, "expected capture name after '='");
    }
    if (!node.capture.empty()) {
      throw PatternSyntaxError(eq_pos, "node is already captured as '" + node.capture + "'");
    }
    std::string name = cur().text;
    advance();
    if (std::find(captures_->begin(), captures_->end(), name) != captures_->end()) {
      throw DuplicateCaptureError(name);
    }
    node.capture = name;
    node.capture_index = static_cast<int>(captures_->size());
    captures_->push_back(name);
  }

  std::unique_ptr<PatternNode> parse_test() {
    auto node = std::make_unique<PatternNode>();
    while (true) {
      PatternNode::Atom atom;
      switch (cur().kind) {
        case Lexeme::Kind::Atom:
          atom.text = ascii_lower(cur().text);
          break;
        case Lexeme::Kind::QuotedAtom:
          atom.text = cur().text;
          atom.quoted = true;
          break;
        case Lexeme::Kind::Wildcard:
          atom.wildcard = true;
          break;
        default:
          throw PatternSyntaxError(cur().pos, "expected a node test");
      }
      advance();
      node->atoms.push_back(std::move(atom));
      if (cur().kind != Lexeme::Kind::Pipe) break;
      advance();
    }
    return node;
  }

  // target := test [=name] | '(' node ')' [=name]
  std::unique_ptr<PatternNode> parse_target() {
    if (cur().kind == Lexeme::Kind::LParen) {
      advance();
      auto node = parse_node();
      expect(Lexeme::Kind::RParen, "')'");
      assign_capture(*node);
      return node;
    }
    auto node = parse_test();
    assign_capture(*node);
    return node;
  }

  // node := (test [=name] | '(' node ')' [=name]) rel*
  std::unique_ptr<PatternNode> parse_node() {
    std::unique_ptr<PatternNode> node;
    if (cur().kind == Lexeme::Kind::LParen) {
      advance();
      node = parse_node();
      expect(Lexeme::Kind::RParen, "')'");
      assign_capture(*node);
    } else {
      node = parse_test();
      assign_capture(*node);
    }
    while (cur().kind == Lexeme::Kind::Bang || cur().kind == Lexeme::Kind::Op) {
      PatternNode::Relation rel;
      if (cur().kind == Lexeme::Kind::Bang) {
        rel.negated = true;
        advance();
        if (cur().kind != Lexeme::Kind::Op) {
          throw PatternSyntaxError(cur().pos, "expected a relation after '!'");
        }
      }
      std::size_t op_pos = cur().pos;
      rel.op = op_from(cur().text);
      advance();
      std::size_t captures_before = captures_->size();
      rel.target = parse_target();
      if (rel.negated && captures_->size() != captures_before) {
        throw PatternSyntaxError(op_pos, "captures are not allowed inside a negated relation");
      }
      node->relations.push_back(std::move(rel));
    }
    return node;
  }

  std::vector<Lexeme> lexemes_;
  std::size_t pos_ = 0;
  std::vector<std::string>* captures_ = nullptr;
};

// ---------------------------------------------------------------------------
// Matching

struct AugNode {
  NodeRef ref;
  std::string name;  // label, or token text for word leaves
  int parent = -1;
  int child_pos = -1;
  std::vector<int> children;
  int tok_begin = 0;
  int tok_end = 0;
  int subtree_end = 0;  // one past the last descendant in preorder
};

// Preorder array over the tree plus one virtual word leaf per preterminal.
std::vector<AugNode> build_index(const ParseTree& root) {
  std::vector<AugNode> nodes;
  int leaf_counter = 0;
  std::function<int(const ParseTree&, int)> walk = [&](const ParseTree& t, int parent) -> int {
    int idx = static_cast<int>(nodes.size());
    nodes.push_back({});
    nodes[idx].ref = {&t, false};
    nodes[idx].name = t.label();
    nodes[idx].parent = parent;
    if (t.is_preterminal()) {
      int word = static_cast<int>(nodes.size());
      nodes.push_back({});
      nodes[word].ref = {&t, true};
      nodes[word].name = t.token().text;
      nodes[word].parent = idx;
      nodes[word].child_pos = 0;
      nodes[word].tok_begin = leaf_counter;
      nodes[word].tok_end = leaf_counter + 1;
      nodes[word].subtree_end = word + 1;
      nodes[idx].children = {word};
      nodes[idx].tok_begin = leaf_counter;
      nodes[idx].tok_end = ++leaf_counter;
    } else {
      std::vector<int> children;
      for (const auto& child : t.children()) {
        int c = walk(child, idx);
        nodes[c].child_pos = static_cast<int>(children.size());
        children.push_back(c);
      }
      nodes[idx].children = std::move(children);
      nodes[idx].tok_begin = nodes[nodes[idx].children.front()].tok_begin;
      nodes[idx].tok_end = nodes[nodes[idx].children.back()].tok_end;
    }
    nodes[idx].subtree_end = static_cast<int>(nodes.size());
    return idx;
  };
  walk(root, -1);
  return nodes;
}

bool name_matches(const PatternNode& p, const AugNode& n) {
  for (const auto& atom : p.atoms) {
    if (atom.wildcard) return true;
    if (atom.quoted) {
      if (n.name == atom.text) return true;
    } else if (ascii_lower(n.name) == atom.text) {
      return true;
    }
  }
  return false;
}

class Matcher {
 public:
  Matcher(const std::vector<AugNode>& nodes, std::size_t ncaptures)
      : nodes_(nodes), ncaptures_(ncaptures) {}

  // Candidate witnesses for `op` relative to node t, in preorder.
  std::vector<int> candidates(RelOp op, int t) const {
    const AugNode& n = nodes_[t];
    std::vector<int> out;
    switch (op) {
      case RelOp::Child:
        return n.children;
      case RelOp::OnlyChild:
        if (n.children.size() == 1) out.push_back(n.children.front());
        return out;
      case RelOp::Descendant:
        for (int i = t + 1; i < n.subtree_end; ++i) out.push_back(i);
        return out;
      case RelOp::ImmediateSister: {
        if (n.parent < 0) return out;
        const auto& sibs = nodes_[n.parent].children;
        if (n.child_pos + 1 < static_cast<int>(sibs.size())) {
          out.push_back(sibs[n.child_pos + 1]);
        }
        return out;
      }
      case RelOp::Sister: {
        if (n.parent < 0) return out;
        const auto& sibs = nodes_[n.parent].children;
        for (std::size_t i = n.child_pos + 1; i < sibs.size(); ++i) out.push_back(sibs[i]);
        return out;
      }
      case RelOp::Precedes:
        for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
          if (nodes_[i].tok_begin == n.tok_end) out.push_back(i);
        }
        return out;
      case RelOp::Equals:
        out.push_back(t);
        return out;
    }
    return out;
  }

  // Pure satisfiability, used for negated targets and capture-free matching.
  bool exists(const PatternNode& p, int t) const {
    if (!name_matches(p, nodes_[t])) return false;
    for (const auto& rel : p.relations) {
      bool found = false;
      for (int w : candidates(rel.op, t)) {
        if (exists(*rel.target, w)) { found = true; break; }
      }
      if (found == rel.negated) return false;
    }
    return true;
  }

  // Best (leftmost-capture) assignment of p anchored at t, as a full
  // capture vector with -1 for captures outside this subtree. Relation
  // targets are independent constraint subtrees, so each relation's block
  // can be minimized on its own.
  std::optional<std::vector<int>> best_assignment(const PatternNode& p, int t) const {
    if (!name_matches(p, nodes_[t])) return std::nullopt;
    std::vector<int> result(ncaptures_, -1);
    if (p.capture_index >= 0) result[p.capture_index] = t;
    for (const auto& rel : p.relations) {
      if (rel.negated) {
        for (int w : candidates(rel.op, t)) {
          if (exists(*rel.target, w)) return std::nullopt;
        }
        continue;
      }
      std::optional<std::vector<int>> best;
      for (int w : candidates(rel.op, t)) {
        auto block = best_assignment(*rel.target, w);
        if (!block) continue;
        if (!best || *block < *best) best = std::move(block);
        if (ncaptures_ == 0) break;
      }
      if (!best) return std::nullopt;
      for (std::size_t i = 0; i < ncaptures_; ++i) {
        if ((*best)[i] >= 0) result[i] = (*best)[i];
      }
    }
    return result;
  }

 private:
  const std::vector<AugNode>& nodes_;
  std::size_t ncaptures_;
};

}  // namespace

Pattern Pattern::compile(const std::string& source) {
  Pattern p;
  p.source_ = source;
  Parser parser(source);
  p.root_ = std::shared_ptr<const PatternNode>(parser.parse(p.captures_).release());
  return p;
}

std::vector<MatchBindings> match_all(const Pattern& pattern, const ParseTree& tree) {
  std::vector<AugNode> nodes = build_index(tree);
  Matcher matcher(nodes, pattern.captures().size());
  std::vector<MatchBindings> out;
  for (int t = 0; t < static_cast<int>(nodes.size()); ++t) {
    auto assignment = matcher.best_assignment(pattern.root(), t);
    if (!assignment) continue;
    MatchBindings m;
    m.root = nodes[t].ref;
    for (std::size_t i = 0; i < pattern.captures().size(); ++i) {
      m.bindings[pattern.captures()[i]] = nodes[(*assignment)[i]].ref;
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::optional<MatchBindings> match_first(const Pattern& pattern, const ParseTree& tree) {
  auto all = match_all(pattern, tree);
  if (all.empty()) return std::nullopt;
  return all.front();
}

}  // namespace propsplit
