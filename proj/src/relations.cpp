#include "propsplit/relations.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace propsplit {

namespace {

std::string ascii_lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

const std::map<RhetoricalRelation, std::string>& name_table() {
  static const std::map<RhetoricalRelation, std::string> table = {
      {RhetoricalRelation::Elaboration, "ELABORATION"},
      {RhetoricalRelation::Contrast, "CONTRAST"},
      {RhetoricalRelation::Condition, "CONDITION"},
      {RhetoricalRelation::Background, "BACKGROUND"},
      {RhetoricalRelation::Cause, "CAUSE"},
      {RhetoricalRelation::Result, "RESULT"},
      {RhetoricalRelation::List, "LIST"},
      {RhetoricalRelation::Disjunction, "DISJUNCTION"},
      {RhetoricalRelation::Purpose, "PURPOSE"},
      {RhetoricalRelation::TemporalBefore, "TEMPORAL_BEFORE"},
      {RhetoricalRelation::TemporalAfter, "TEMPORAL_AFTER"},
      {RhetoricalRelation::Attribution, "ATTRIBUTION"},
      {RhetoricalRelation::UnknownSubordination, "UNKNOWN_SUBORDINATION"},
      {RhetoricalRelation::UnknownCoordination, "UNKNOWN_COORDINATION"},
  };
  return table;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string relation_name(RhetoricalRelation r) { return name_table().at(r); }

std::optional<RhetoricalRelation> relation_from_name(const std::string& name) {
  for (const auto& [rel, rel_name] : name_table()) {
    if (rel_name == name) return rel;
  }
  return std::nullopt;
}

bool is_coordination_relation(RhetoricalRelation r) {
  switch (r) {
    case RhetoricalRelation::List:
    case RhetoricalRelation::Disjunction:
    case RhetoricalRelation::Contrast:
    case RhetoricalRelation::Result:
    case RhetoricalRelation::UnknownCoordination:
      return true;
    default:
      return false;
  }
}

bool is_subordination_relation(RhetoricalRelation r) {
  switch (r) {
    case RhetoricalRelation::List:
    case RhetoricalRelation::Disjunction:
    case RhetoricalRelation::UnknownCoordination:
      return false;
    default:
      return true;
  }
}

std::string cue_origin_name(CueOrigin origin) {
  switch (origin) {
    case CueOrigin::Subordinator: return "SUBORDINATOR";
    case CueOrigin::Coordinator: return "COORDINATOR";
    case CueOrigin::RelativePronoun: return "RELATIVE_PRONOUN";
    case CueOrigin::Punctuation: return "PUNCTUATION";
    case CueOrigin::None: return "NONE";
  }
  return "NONE";
}

std::vector<std::string> CuePhrase::texts() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) out.push_back(t.text);
  return out;
}

Lexicon Lexicon::load(const std::string& source) {
  Lexicon lex;
  std::istringstream in(source);
  std::string line;
  std::size_t line_no = 0;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    std::vector<std::string> fields = split_fields(body, '|');
    if (fields.size() != 4) {
      throw LexiconError(LexiconError::Kind::MalformedLine, line_no,
                         "expected cue|origin|position|RELATION");
    }
    LexiconEntry entry;
    entry.cue = split_ws(ascii_lower(trim(fields[0])));
    if (entry.cue.empty()) {
      throw LexiconError(LexiconError::Kind::MalformedLine, line_no, "empty cue");
    }
    std::string origin = trim(fields[1]);
    if (origin == "ANY") entry.required_origin = std::nullopt;
    else if (origin == "SUBORDINATOR") entry.required_origin = CueOrigin::Subordinator;
    else if (origin == "COORDINATOR") entry.required_origin = CueOrigin::Coordinator;
    else if (origin == "RELATIVE_PRONOUN") entry.required_origin = CueOrigin::RelativePronoun;
    else if (origin == "PUNCTUATION") entry.required_origin = CueOrigin::Punctuation;
    else if (origin == "NONE") entry.required_origin = CueOrigin::None;
    else {
      throw LexiconError(LexiconError::Kind::MalformedLine, line_no,
                         "unknown origin '" + origin + "'");
    }
    std::string position = trim(fields[2]);
    if (position == "CLAUSE_INITIAL") entry.clause_initial_only = true;
    else if (position == "ANY") entry.clause_initial_only = false;
    else {
      throw LexiconError(LexiconError::Kind::MalformedLine, line_no,
                         "unknown position '" + position + "'");
    }
    std::string rel_name = trim(fields[3]);
    auto rel = relation_from_name(rel_name);
    if (!rel) {
      throw LexiconError(LexiconError::Kind::UnknownRelationName, line_no,
                         "unknown relation '" + rel_name + "'");
    }
    entry.relation = *rel;
    entry.specificity = static_cast<int>(entry.cue.size());

    std::string key;
    for (const auto& t : entry.cue) key += t + " ";
    key += "|" + trim(fields[1]) + "|" + position;
    if (!seen.insert(key).second) {
      throw LexiconError(LexiconError::Kind::DuplicateEntry, line_no,
                         "duplicate entry for cue '" + trim(fields[0]) + "'");
    }
    lex.entries_.push_back(std::move(entry));
  }
  return lex;
}

Lexicon Lexicon::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lexicon file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load(buf.str());
}

std::optional<RhetoricalRelation> Lexicon::lookup(const CuePhrase& cue,
                                                  bool clause_initial) const {
  std::vector<std::string> tokens;
  tokens.reserve(cue.tokens.size());
  for (const Token& t : cue.tokens) tokens.push_back(ascii_lower(t.text));

  const LexiconEntry* best = nullptr;
  for (const auto& entry : entries_) {
    if (entry.required_origin && *entry.required_origin != cue.origin) continue;
    if (entry.clause_initial_only && !clause_initial) continue;
    if (entry.cue.size() > tokens.size()) continue;
    bool found = false;
    for (std::size_t i = 0; i + entry.cue.size() <= tokens.size(); ++i) {
      if (std::equal(entry.cue.begin(), entry.cue.end(), tokens.begin() + i)) {
        found = true;
        break;
      }
    }
    if (!found) continue;
    if (!best || entry.specificity > best->specificity) best = &entry;
  }
  if (!best) return std::nullopt;
  return best->relation;
}

RhetoricalRelation Lexicon::classify_subordination(const CuePhrase& cue,
                                                   bool clause_initial) const {
  if (cue.empty()) {
    if (cue.origin == CueOrigin::RelativePronoun) return RhetoricalRelation::Elaboration;
    return RhetoricalRelation::UnknownSubordination;
  }
  auto rel = lookup(cue, clause_initial);
  return rel.value_or(RhetoricalRelation::UnknownSubordination);
}

RhetoricalRelation Lexicon::classify_coordination(const CuePhrase& cue) const {
  if (cue.empty()) return RhetoricalRelation::List;
  auto rel = lookup(cue, true);
  if (rel) return *rel;
  return RhetoricalRelation::UnknownCoordination;
}

}  // namespace propsplit
