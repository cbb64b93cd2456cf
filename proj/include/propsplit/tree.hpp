#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace propsplit {

// One surface token. Indices are 0-based sentence positions and strictly
// increase left-to-right within a tree.
struct Token {
  std::string text;
  std::size_t index = 0;

  bool operator==(const Token&) const = default;
};

class TreeParseError : public std::runtime_error {
 public:
  enum class Kind { UnbalancedBrackets, EmptyNode, EmptyInput, MixedNode };

  TreeParseError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Ordered labeled constituency tree. A node carries either children
// (internal node) or a token (preterminal), never both. Values are
// immutable after construction and cheap to share by const reference.
class ParseTree {
 public:
  static ParseTree internal(std::string label, std::vector<ParseTree> children);
  static ParseTree preterminal(std::string label, Token token);

  const std::string& label() const { return label_; }
  bool is_preterminal() const { return token_.has_value(); }
  const std::vector<ParseTree>& children() const { return children_; }
  const Token& token() const { return *token_; }

  std::size_t token_count() const;
  // Preterminal nodes left-to-right.
  std::vector<const ParseTree*> preterminals() const;
  std::vector<Token> tokens() const;

  bool operator==(const ParseTree&) const = default;

 private:
  ParseTree() = default;

  std::string label_;
  std::vector<ParseTree> children_;
  std::optional<Token> token_;
};

// Reads one Penn-Treebank bracketed expression. Functional tags are
// stripped (NP-SBJ -> NP), trace subtrees (-NONE-) are dropped, and the
// result is always wrapped in a single ROOT node.
ParseTree parse_ptb(const std::string& text);

// Single-line bracketed form of any subtree; inverse of parse_ptb up to
// whitespace and the ROOT wrapper.
std::string serialize(const ParseTree& tree);

// Token texts of a subtree, left-to-right.
std::vector<std::string> token_texts(const ParseTree& node);

// Space-joined tokens with detokenization repairs: no space before
// closing punctuation, PTB bracket escapes rendered as ( ).
std::string yield_text(const ParseTree& node);
std::string detokenize(const std::vector<std::string>& tokens);

// Structural copy with token indices reassigned 0..n-1.
ParseTree reindexed(const ParseTree& tree);

}  // namespace propsplit
