#include "propsplit/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace propsplit {

namespace {

bool is_space_char(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

struct RawToken {
  enum class Kind { Open, Close, Atom };
  Kind kind;
  std::string text;
};

std::vector<RawToken> lex(const std::string& text) {
  std::vector<RawToken> out;
  std::string atom;
  auto flush = [&] {
    if (!atom.empty()) {
      out.push_back({RawToken::Kind::Atom, atom});
      atom.clear();
    }
  };
  for (char c : text) {
    if (c == '(') {
      flush();
      out.push_back({RawToken::Kind::Open, "("});
    } else if (c == ')') {
      flush();
      out.push_back({RawToken::Kind::Close, ")"});
    } else if (is_space_char(c)) {
      flush();
    } else {
      atom.push_back(c);
    }
  }
  flush();
  return out;
}

// Mutable node used only while reading; converted to ParseTree afterwards.
struct RawNode {
  std::string label;
  std::vector<RawNode> children;
  std::optional<std::string> word;
};

RawNode parse_node(const std::vector<RawToken>& toks, std::size_t& pos) {
  if (pos >= toks.size() || toks[pos].kind != RawToken::Kind::Open) {
    throw TreeParseError(TreeParseError::Kind::UnbalancedBrackets,
                         "expected '('");
  }
  ++pos;
  RawNode node;
  if (pos < toks.size() && toks[pos].kind == RawToken::Kind::Atom) {
    node.label = toks[pos].text;
    ++pos;
  }
  while (pos < toks.size() && toks[pos].kind != RawToken::Kind::Close) {
    if (toks[pos].kind == RawToken::Kind::Open) {
      node.children.push_back(parse_node(toks, pos));
    } else {
      if (node.word.has_value() || !node.children.empty()) {
        throw TreeParseError(TreeParseError::Kind::MixedNode,
                             "node '" + node.label +
                                 "' mixes tokens and subtrees");
      }
      node.word = toks[pos].text;
      ++pos;
    }
  }
  if (pos >= toks.size()) {
    throw TreeParseError(TreeParseError::Kind::UnbalancedBrackets,
                         "missing ')' for node '" + node.label + "'");
  }
  ++pos;  // consume ')'
  if (!node.word.has_value() && node.children.empty()) {
    throw TreeParseError(TreeParseError::Kind::EmptyNode,
                         "node '" + node.label + "' has no children or token");
  }
  if (node.word.has_value() && node.label.empty()) {
    throw TreeParseError(TreeParseError::Kind::EmptyNode,
                         "token '" + *node.word + "' has no preterminal label");
  }
  return node;
}

// NP-SBJ -> NP, PP=2 -> PP. Labels that start with '-' (e.g. -NONE-,
// -LRB- used as a tag) are kept verbatim.
std::string strip_function_tags(const std::string& label) {
  if (label.empty() || label[0] == '-') return label;
  std::size_t cut = label.find_first_of("-=|");
  return cut == std::string::npos ? label : label.substr(0, cut);
}

// Drops trace subtrees and prunes nodes emptied by the removal.
// Returns false when the whole subtree vanished.
bool clean(RawNode& node) {
  node.label = strip_function_tags(node.label);
  if (node.word.has_value()) {
    return node.label != "-NONE-";
  }
  std::vector<RawNode> kept;
  for (auto& child : node.children) {
    if (clean(child)) kept.push_back(std::move(child));
  }
  node.children = std::move(kept);
  return !node.children.empty();
}

ParseTree to_tree(const RawNode& node, std::size_t& next_index) {
  if (node.word.has_value()) {
    return ParseTree::preterminal(node.label, Token{*node.word, next_index++});
  }
  std::vector<ParseTree> children;
  children.reserve(node.children.size());
  for (const auto& child : node.children) {
    children.push_back(to_tree(child, next_index));
  }
  return ParseTree::internal(node.label, std::move(children));
}

void collect_preterminals(const ParseTree& node,
                          std::vector<const ParseTree*>& out) {
  if (node.is_preterminal()) {
    out.push_back(&node);
    return;
  }
  for (const auto& child : node.children()) collect_preterminals(child, out);
}

bool no_space_before(const std::string& tok) {
  static const std::vector<std::string> tight = {
      ",", ".", ";", ":", "?", "!", "n't", "'s", "'re", "'ll", "'ve", "'d", "'m"};
  return std::find(tight.begin(), tight.end(), tok) != tight.end();
}

}  // namespace

ParseTree ParseTree::internal(std::string label, std::vector<ParseTree> children) {
  if (label.empty()) throw std::invalid_argument("internal node needs a label");
  if (children.empty()) {
    throw std::invalid_argument("internal node needs at least one child");
  }
  ParseTree t;
  t.label_ = std::move(label);
  t.children_ = std::move(children);
  return t;
}

ParseTree ParseTree::preterminal(std::string label, Token token) {
  if (label.empty()) throw std::invalid_argument("preterminal needs a label");
  if (token.text.empty()) throw std::invalid_argument("token text is empty");
  ParseTree t;
  t.label_ = std::move(label);
  t.token_ = std::move(token);
  return t;
}

std::size_t ParseTree::token_count() const {
  if (is_preterminal()) return 1;
  std::size_t n = 0;
  for (const auto& child : children_) n += child.token_count();
  return n;
}

std::vector<const ParseTree*> ParseTree::preterminals() const {
  std::vector<const ParseTree*> out;
  collect_preterminals(*this, out);
  return out;
}

std::vector<Token> ParseTree::tokens() const {
  std::vector<Token> out;
  for (const ParseTree* pt : preterminals()) out.push_back(pt->token());
  return out;
}

ParseTree parse_ptb(const std::string& text) {
  std::vector<RawToken> toks = lex(text);
  if (toks.empty()) {
    throw TreeParseError(TreeParseError::Kind::EmptyInput, "empty input");
  }
  std::size_t pos = 0;
  RawNode root = parse_node(toks, pos);
  if (pos != toks.size()) {
    throw TreeParseError(TreeParseError::Kind::UnbalancedBrackets,
                         "trailing content after the closing bracket");
  }
  if (!clean(root) && !root.word.has_value()) {
    throw TreeParseError(TreeParseError::Kind::EmptyNode,
                         "tree is empty after trace removal");
  }
  // Unwrap a label-less outer bracket "( (S ...) )", then guarantee ROOT.
  if (root.label.empty() && !root.word.has_value() && root.children.size() == 1) {
    root = std::move(root.children.front());
  }
  if (root.label.empty()) root.label = "ROOT";
  if (root.label != "ROOT") {
    RawNode wrapper;
    wrapper.label = "ROOT";
    wrapper.children.push_back(std::move(root));
    root = std::move(wrapper);
  }
  std::size_t next_index = 0;
  return to_tree(root, next_index);
}

std::string serialize(const ParseTree& tree) {
  std::ostringstream out;
  std::function<void(const ParseTree&)> walk = [&](const ParseTree& node) {
    out << '(' << node.label();
    if (node.is_preterminal()) {
      out << ' ' << node.token().text;
    } else {
      for (const auto& child : node.children()) {
        out << ' ';
        walk(child);
      }
    }
    out << ')';
  };
  walk(tree);
  return out.str();
}

std::vector<std::string> token_texts(const ParseTree& node) {
  std::vector<std::string> out;
  for (const ParseTree* pt : node.preterminals()) out.push_back(pt->token().text);
  return out;
}

std::string detokenize(const std::vector<std::string>& tokens) {
  std::string out;
  bool suppress_space = false;
  for (const std::string& raw : tokens) {
    std::string tok = raw;
    bool open_bracket = false;
    if (tok == "-LRB-") {
      tok = "(";
      open_bracket = true;
    } else if (tok == "-RRB-") {
      tok = ")";
    }
    bool tight = no_space_before(raw) || raw == "-RRB-";
    if (!out.empty() && !tight && !suppress_space) out += ' ';
    out += tok;
    suppress_space = open_bracket;
  }
  return out;
}

std::string yield_text(const ParseTree& node) {
  return detokenize(token_texts(node));
}

ParseTree reindexed(const ParseTree& tree) {
  std::size_t next = 0;
  std::function<ParseTree(const ParseTree&)> walk =
      [&](const ParseTree& node) -> ParseTree {
    if (node.is_preterminal()) {
      return ParseTree::preterminal(node.label(), Token{node.token().text, next++});
    }
    std::vector<ParseTree> children;
    children.reserve(node.children().size());
    for (const auto& child : node.children()) children.push_back(walk(child));
    return ParseTree::internal(node.label(), std::move(children));
  };
  return walk(tree);
}

}  // namespace propsplit
