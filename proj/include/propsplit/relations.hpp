#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "propsplit/tree.hpp"

namespace propsplit {

enum class RhetoricalRelation {
  Elaboration,
  Contrast,
  Condition,
  Background,
  Cause,
  Result,
  List,
  Disjunction,
  Purpose,
  TemporalBefore,
  TemporalAfter,
  Attribution,
  UnknownSubordination,
  UnknownCoordination,
};

// Uppercase wire names, e.g. ELABORATION, TEMPORAL_BEFORE.
std::string relation_name(RhetoricalRelation r);
std::optional<RhetoricalRelation> relation_from_name(const std::string& name);

// Multinuclear relations may label coordinations; everything else labels
// subordinations. CONTRAST and RESULT occur on both sides.
bool is_coordination_relation(RhetoricalRelation r);
bool is_subordination_relation(RhetoricalRelation r);

enum class CueOrigin { Subordinator, Coordinator, RelativePronoun, Punctuation, None };

std::string cue_origin_name(CueOrigin origin);

// Lexical marker extracted by a rule, used to classify the rhetorical
// relation between the split parts.
struct CuePhrase {
  std::vector<Token> tokens;  // possibly empty
  CueOrigin origin = CueOrigin::None;

  bool empty() const { return tokens.empty(); }
  std::vector<std::string> texts() const;
};

class LexiconError : public std::runtime_error {
 public:
  enum class Kind { DuplicateEntry, UnknownRelationName, MalformedLine };

  LexiconError(Kind kind, std::size_t line, const std::string& message)
      : std::runtime_error("lexicon line " + std::to_string(line) + ": " + message),
        kind_(kind),
        line_(line) {}

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

struct LexiconEntry {
  std::vector<std::string> cue;             // lowercase tokens
  std::optional<CueOrigin> required_origin; // nullopt = ANY
  bool clause_initial_only = false;         // position constraint
  RhetoricalRelation relation;
  int specificity = 0;                      // cue token count; longer wins
};

// Cue-word table mapping markers to rhetorical relations. Entries match a
// cue phrase when their token sequence occurs contiguously inside it; the
// most specific (longest) match wins, earlier entries break ties.
class Lexicon {
 public:
  static Lexicon load(const std::string& source);
  static Lexicon load_file(const std::string& path);

  const std::vector<LexiconEntry>& entries() const { return entries_; }

  // clause_initial: the cue tokens begin the extracted clause/phrase.
  RhetoricalRelation classify_subordination(const CuePhrase& cue,
                                            bool clause_initial) const;
  RhetoricalRelation classify_coordination(const CuePhrase& cue) const;

 private:
  std::optional<RhetoricalRelation> lookup(const CuePhrase& cue,
                                           bool clause_initial) const;

  std::vector<LexiconEntry> entries_;
};

}  // namespace propsplit
