#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "propsplit/pattern.hpp"
#include "propsplit/relations.hpp"
#include "propsplit/tree.hpp"

namespace propsplit {

// CORE parts carry the key information of the input (RST nuclei);
// CONTEXT parts disclose additional information about a core (satellites).
enum class ConstituencyType { Core, Context };

std::string constituency_name(ConstituencyType t);

enum class RuleStructure { Subordination, Coordination };

// One finished split part: a grammatical sentence with its synthesized
// parse tree. `inserted` lists the token texts contributed by the rule's
// rephrasing template (referents, copulas, copied subjects, added periods).
struct AppliedPart {
  ParseTree tree;
  std::string text;
  ConstituencyType type = ConstituencyType::Core;
  std::vector<std::string> inserted;
};

struct RuleApplication {
  std::string rule_name;
  RuleStructure structure = RuleStructure::Subordination;
  std::vector<AppliedPart> parts;  // textual order of the source constituents
  CuePhrase cue;
  bool cue_clause_initial = false;
  std::vector<std::string> deleted;  // token texts dropped by the rule
};

// A pattern matched but a required capture was unusable; this signals a
// bug in the rule catalog, not bad user input.
class ExtractionFailure : public std::runtime_error {
 public:
  explicit ExtractionFailure(const std::string& message)
      : std::runtime_error(message) {}
};

class CatalogError : public std::runtime_error {
 public:
  CatalogError(std::size_t line, const std::string& message)
      : std::runtime_error("catalog line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Rule;

// Builds a RuleApplication from one match site, or rejects the site.
using Extractor = std::function<std::optional<RuleApplication>(
    const MatchBindings&, const ParseTree&, const Rule&)>;

struct Rule {
  std::string name;
  RuleStructure structure = RuleStructure::Subordination;
  int priority = 0;  // position in application order
  Pattern pattern;
  std::string extractor_id;
  std::string template_id;
  std::string cue_capture;  // "-" when the extractor derives the cue itself
  Extractor extractor;
};

// Tries match sites in match_all order until the extractor accepts one.
// Every produced part is checked to have strictly fewer tokens than the
// input; a violating site is skipped.
std::optional<RuleApplication> apply(const Rule& rule, const ParseTree& tree);

// Insertion spec for rephrase: tokens placed before the extracted part.
struct InsertionTemplate {
  std::vector<std::string> prefix;
};

// Reconstructs a proper sentence from part tokens: applies the template
// prefix, trims dangling edge punctuation, uppercases the first
// alphabetic character and guarantees a terminal period.
std::string rephrase(const std::vector<std::string>& part_tokens,
                     const InsertionTemplate& tmpl = {});

// Checks the token bookkeeping of one application against its input:
//   multiset(input) = multiset(parts) - inserted + cue + deleted
// Comparison is case-insensitive (rephrasing recases sentence-initial
// tokens). On failure `diagnostic` (when given) receives the imbalance.
bool check_lexical_accounting(const ParseTree& input, const RuleApplication& app,
                              std::string* diagnostic = nullptr);

// The ordered transformation-rule inventory, loaded from the catalog
// data file. Loading validates every record: patterns must compile,
// names must be unique, extractor/template ids must be known and the
// cue capture must exist in the pattern.
class Catalog {
 public:
  static Catalog load(const std::string& source);
  static Catalog load_file(const std::string& path);

  const std::vector<Rule>& inventory() const { return rules_; }

 private:
  std::vector<Rule> rules_;
};

}  // namespace propsplit
