#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "propsplit/tree.hpp"

namespace propsplit {

// Reference into a matched tree. Words are addressed as virtual leaf
// nodes below their preterminal: `node` is the preterminal and
// `is_word` is set.
struct NodeRef {
  const ParseTree* node = nullptr;
  bool is_word = false;

  bool operator==(const NodeRef&) const = default;
  bool operator<(const NodeRef& other) const {
    return node != other.node ? node < other.node : is_word < other.is_word;
  }
};

class PatternSyntaxError : public std::runtime_error {
 public:
  PatternSyntaxError(std::size_t position, const std::string& message)
      : std::runtime_error("pattern syntax error at " +
                           std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class DuplicateCaptureError : public std::runtime_error {
 public:
  explicit DuplicateCaptureError(const std::string& name)
      : std::runtime_error("duplicate capture name: " + name), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

enum class RelOp {
  Child,            // <   immediate dominance
  Descendant,       // <<  dominance
  OnlyChild,        // <:  immediate dominance, single child
  ImmediateSister,  // $+  immediately-following sister
  Sister,           // $.. following sister
  Precedes,         // .   yield of lhs ends where yield of rhs begins
  Equals            // ==  same node
};

struct PatternNode {
  struct Atom {
    std::string text;     // lowercased unless quoted
    bool quoted = false;  // exact, case-sensitive
    bool wildcard = false;
  };
  struct Relation {
    RelOp op;
    bool negated = false;
    std::unique_ptr<PatternNode> target;
  };

  std::vector<Atom> atoms;  // alternatives; node matches if any atom does
  std::string capture;      // empty when not captured
  int capture_index = -1;   // position in declaration order
  std::vector<Relation> relations;
};

// Compiled tree query. Grammar (a strict Tregex subset):
//
//   pattern  := node
//   node     := test [=name] rel*  |  '(' node ')' [=name]
//   test     := atom ('|' atom)*   atom := NAME | "literal" | __
//   rel      := ['!'] op target    target := test [=name] | '(' node ')' [=name]
//   op       := '<' | '<<' | '<:' | '$+' | '$..' | '.' | '=='
//
// A test matches a node's name: the label of a phrase/preterminal node
// or the text of a word leaf. Unquoted atoms compare case-insensitively,
// quoted ones exactly; __ matches anything. '!' negates one relation;
// captures are not allowed inside a negated target.
class Pattern {
 public:
  static Pattern compile(const std::string& source);

  const std::string& source() const { return source_; }
  // Capture names in order of appearance in the source.
  const std::vector<std::string>& captures() const { return captures_; }
  const PatternNode& root() const { return *root_; }

 private:
  Pattern() = default;

  std::string source_;
  std::vector<std::string> captures_;
  std::shared_ptr<const PatternNode> root_;
};

struct MatchBindings {
  NodeRef root;
  std::map<std::string, NodeRef> bindings;

  const NodeRef& at(const std::string& name) const { return bindings.at(name); }
};

// All matches, one per tree node that can anchor the pattern root,
// ordered by pre-order position of that node. When several witness
// assignments exist for one anchor, the one whose captured nodes are
// leftmost (lexicographically smallest pre-order positions, in capture
// declaration order) is kept.
std::vector<MatchBindings> match_all(const Pattern& pattern, const ParseTree& tree);
std::optional<MatchBindings> match_first(const Pattern& pattern, const ParseTree& tree);

}  // namespace propsplit
