#include "signphon/lexicon.hpp"

#include <fstream>
#include <sstream>

#include "signphon/errors.hpp"

namespace signphon {
namespace {

constexpr std::string_view kHeader =
    "gloss\thandedness\tdom_start\tdom_end\tndh_start\tndh_end\tboth_hands_move\t"
    "movement_relation\tcontacts_body\tndh_is_location\torientation_relation\tsign_class";

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

std::optional<bool> parse_bool(std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  return std::nullopt;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

void check_label(const Inventory& inv, std::string_view label, const std::string& source,
                 std::size_t line_no) {
  if (!inv.find(label)) {
    throw ParseError(source, line_no, "unknown handshape '" + std::string(label) + "'");
  }
}

}  // namespace

CheckResult check_symmetry(const LexiconEntry& entry, const Inventory&) {
  if (!entry.both_hands_move) return {CheckStatus::NotApplicable, ""};
  std::vector<std::string> faults;
  if (!entry.ndh_start || !entry.ndh_end) {
    faults.push_back("missing non-dominant handshapes");
  } else if (entry.dom_start != *entry.ndh_start || entry.dom_end != *entry.ndh_end) {
    faults.push_back("handshape mismatch between hands");
  }
  if (entry.movement_relation == MovementRelation::None) {
    faults.push_back("movement neither simultaneous nor alternating");
  }
  if (entry.orientation_relation == OrientationRelation::Other) {
    faults.push_back("orientation neither identical nor mirror");
  }
  if (faults.empty()) return {CheckStatus::Ok, ""};
  return {CheckStatus::Violated, join(faults, "; ")};
}

CheckResult check_dominance(const LexiconEntry& entry, const Inventory& inv) {
  if (!entry.ndh_is_location) return {CheckStatus::NotApplicable, ""};
  if (!entry.ndh_start || !entry.ndh_end) {
    return {CheckStatus::Violated, "missing non-dominant handshapes"};
  }
  if (*entry.ndh_start != *entry.ndh_end) {
    return {CheckStatus::Violated, "non-static location hand"};
  }
  bool start_ok = inv.base_equal(*entry.ndh_start, entry.dom_start) ||
                  inv.is_unmarked(*entry.ndh_start);
  bool end_ok =
      inv.base_equal(*entry.ndh_end, entry.dom_end) || inv.is_unmarked(*entry.ndh_end);
  if (start_ok && end_ok) return {CheckStatus::Ok, ""};
  return {CheckStatus::Violated, "marked non-dominant handshape"};
}

ValidationReport validate_entry(const LexiconEntry& entry, const Inventory& inv) {
  ValidationReport report;
  if (entry.handedness == Handedness::Two) {
    if (!entry.ndh_start || !entry.ndh_end) {
      report.structural.push_back("two-handed entry missing non-dominant handshapes");
    }
    if (!entry.both_hands_move && !entry.ndh_is_location) {
      report.structural.push_back(
          "two-handed entry neither moves both hands nor uses the non-dominant hand as a "
          "location");
    }
  } else {
    if (entry.ndh_start || entry.ndh_end) {
      report.structural.push_back("one-handed entry carries non-dominant handshapes");
    }
    if (entry.both_hands_move) {
      report.structural.push_back("both_hands_move on a one-handed entry");
    }
    if (entry.ndh_is_location) {
      report.structural.push_back("ndh_is_location on a one-handed entry");
    }
  }
  if (entry.ndh_is_location && entry.both_hands_move) {
    report.structural.push_back("ndh_is_location with both hands moving");
  }
  report.symmetry = check_symmetry(entry, inv);
  report.dominance = check_dominance(entry, inv);
  return report;
}

SignTypeResult classify_sign_type(const LexiconEntry& entry, const Inventory& inv) {
  SignTypeResult result;
  result.report = validate_entry(entry, inv);
  if (!result.report.ok()) return result;
  if (entry.handedness == Handedness::One) {
    result.type = entry.contacts_body ? SignType::TypeX : SignType::Type0;
  } else if (entry.both_hands_move) {
    result.type = SignType::Type1;
  } else {
    bool same_base = inv.base_equal(*entry.ndh_start, entry.dom_start) &&
                     inv.base_equal(*entry.ndh_end, entry.dom_end);
    result.type = same_base ? SignType::Type2 : SignType::Type3;
  }
  return result;
}

CanonicalShapes canonical_shapes(const LexiconEntry& entry, std::optional<Handedness> override) {
  CanonicalShapes shapes;
  shapes.dom_start = entry.dom_start;
  shapes.dom_end = entry.dom_end;
  Handedness effective = override.value_or(entry.handedness);
  if (effective == Handedness::Two) {
    // A one-handed sign promoted to two hands mirrors the dominant shapes.
    shapes.ndh_start = entry.ndh_start ? *entry.ndh_start : entry.dom_start;
    shapes.ndh_end = entry.ndh_end ? *entry.ndh_end : entry.dom_end;
  }
  return shapes;
}

std::pair<std::string_view, std::optional<Handedness>> split_gloss_prefix(
    std::string_view gloss) {
  if (gloss.rfind("(1h)", 0) == 0) return {gloss.substr(4), Handedness::One};
  if (gloss.rfind("(2h)", 0) == 0) return {gloss.substr(4), Handedness::Two};
  return {gloss, std::nullopt};
}

Lexicon Lexicon::parse(std::istream& in, const Inventory& inv) {
  Lexicon lex;
  const std::string source = "lexicon";
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {
      if (line != kHeader) throw ParseError(source, line_no, "unexpected header line");
      saw_header = true;
      continue;
    }

    auto fields = split_tabs(line);
    if (fields.size() != 12) {
      throw ParseError(source, line_no,
                       "expected 12 columns, got " + std::to_string(fields.size()));
    }

    LexiconEntry e;
    e.gloss = std::string(fields[0]);
    if (e.gloss.empty()) throw ParseError(source, line_no, "empty gloss");

    auto handedness = parse_handedness(fields[1]);
    if (!handedness) throw ParseError(source, line_no, "bad handedness value");
    e.handedness = *handedness;

    check_label(inv, fields[2], source, line_no);
    check_label(inv, fields[3], source, line_no);
    e.dom_start = std::string(fields[2]);
    e.dom_end = std::string(fields[3]);
    if (!fields[4].empty()) {
      check_label(inv, fields[4], source, line_no);
      e.ndh_start = std::string(fields[4]);
    }
    if (!fields[5].empty()) {
      check_label(inv, fields[5], source, line_no);
      e.ndh_end = std::string(fields[5]);
    }

    auto bhm = parse_bool(fields[6]);
    if (!bhm) throw ParseError(source, line_no, "bad both_hands_move value");
    e.both_hands_move = *bhm;
    auto movement = parse_movement_relation(fields[7]);
    if (!movement) throw ParseError(source, line_no, "bad movement_relation value");
    e.movement_relation = *movement;
    auto contacts = parse_bool(fields[8]);
    if (!contacts) throw ParseError(source, line_no, "bad contacts_body value");
    e.contacts_body = *contacts;
    auto location = parse_bool(fields[9]);
    if (!location) throw ParseError(source, line_no, "bad ndh_is_location value");
    e.ndh_is_location = *location;
    auto orientation = parse_orientation_relation(fields[10]);
    if (!orientation) throw ParseError(source, line_no, "bad orientation_relation value");
    e.orientation_relation = *orientation;
    auto cls = parse_sign_class(fields[11]);
    if (!cls) throw ParseError(source, line_no, "bad sign_class value");
    e.sign_class = *cls;

    if (e.handedness == Handedness::Two && (!e.ndh_start || !e.ndh_end)) {
      throw ParseError(source, line_no, "two-handed entry missing non-dominant handshapes");
    }
    if (e.handedness == Handedness::One && (e.ndh_start || e.ndh_end)) {
      throw ParseError(source, line_no, "one-handed entry carries non-dominant handshapes");
    }
    if (e.both_hands_move && e.handedness == Handedness::One) {
      throw ParseError(source, line_no, "both_hands_move on a one-handed entry");
    }
    if (e.ndh_is_location && (e.handedness == Handedness::One || e.both_hands_move)) {
      throw ParseError(source, line_no, "ndh_is_location requires a static two-handed entry");
    }
    if (lex.index_.count(e.gloss) != 0) {
      throw ParseError(source, line_no, "duplicate gloss '" + e.gloss + "'");
    }
    lex.index_.emplace(e.gloss, lex.entries_.size());
    lex.entries_.push_back(std::move(e));
  }
  if (!saw_header) throw ParseError(source, line_no, "missing header line");
  return lex;
}

Lexicon Lexicon::parse_file(const std::string& path, const Inventory& inv) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open lexicon file '" + path + "'");
  return parse(in, inv);
}

void Lexicon::save(std::ostream& out) const {
  out << kHeader << '\n';
  for (const auto& e : entries_) {
    out << e.gloss << '\t' << to_string(e.handedness) << '\t' << e.dom_start << '\t' << e.dom_end
        << '\t' << (e.ndh_start ? *e.ndh_start : "") << '\t' << (e.ndh_end ? *e.ndh_end : "")
        << '\t' << (e.both_hands_move ? "true" : "false") << '\t'
        << to_string(e.movement_relation) << '\t' << (e.contacts_body ? "true" : "false") << '\t'
        << (e.ndh_is_location ? "true" : "false") << '\t' << to_string(e.orientation_relation)
        << '\t' << to_string(e.sign_class) << '\n';
  }
}

std::string Lexicon::save_string() const {
  std::ostringstream out;
  save(out);
  return out.str();
}

const LexiconEntry* Lexicon::find(std::string_view gloss) const {
  auto it = index_.find(gloss);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

Lexicon::Resolved Lexicon::resolve(std::string_view gloss_with_prefix) const {
  auto resolved = try_resolve(gloss_with_prefix);
  if (!resolved) throw UnknownGloss(std::string(gloss_with_prefix));
  return *resolved;
}

std::optional<Lexicon::Resolved> Lexicon::try_resolve(std::string_view gloss_with_prefix) const {
  auto [base, override] = split_gloss_prefix(gloss_with_prefix);
  const LexiconEntry* entry = find(base);
  if (!entry) return std::nullopt;
  Resolved r{entry, override, false};
  r.redundant_prefix = override.has_value() && *override == entry->handedness;
  return r;
}

std::string_view to_string(Handedness h) { return h == Handedness::One ? "one" : "two"; }

std::string_view to_string(MovementRelation m) {
  switch (m) {
    case MovementRelation::Simultaneous: return "simultaneous";
    case MovementRelation::Alternating: return "alternating";
    case MovementRelation::None: return "none";
  }
  return "?";
}

std::string_view to_string(OrientationRelation o) {
  switch (o) {
    case OrientationRelation::Identical: return "identical";
    case OrientationRelation::Mirror: return "mirror";
    case OrientationRelation::Other: return "other";
  }
  return "?";
}

std::string_view to_string(SignClass c) {
  switch (c) {
    case SignClass::Lexical: return "lexical";
    case SignClass::Loan: return "loan";
    case SignClass::Fingerspelled: return "fingerspelled";
    case SignClass::Classifier: return "classifier";
    case SignClass::Gesture: return "gesture";
    case SignClass::Index: return "index";
    case SignClass::PartIndef: return "part_indef";
  }
  return "?";
}

std::string_view to_string(SignType t) {
  switch (t) {
    case SignType::Type0: return "Type0";
    case SignType::TypeX: return "TypeX";
    case SignType::Type1: return "Type1";
    case SignType::Type2: return "Type2";
    case SignType::Type3: return "Type3";
  }
  return "?";
}

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Ok: return "ok";
    case CheckStatus::Violated: return "violated";
    case CheckStatus::NotApplicable: return "not_applicable";
  }
  return "?";
}

std::optional<Handedness> parse_handedness(std::string_view text) {
  if (text == "one") return Handedness::One;
  if (text == "two") return Handedness::Two;
  return std::nullopt;
}

std::optional<MovementRelation> parse_movement_relation(std::string_view text) {
  if (text == "simultaneous") return MovementRelation::Simultaneous;
  if (text == "alternating") return MovementRelation::Alternating;
  if (text == "none") return MovementRelation::None;
  return std::nullopt;
}

std::optional<OrientationRelation> parse_orientation_relation(std::string_view text) {
  if (text == "identical") return OrientationRelation::Identical;
  if (text == "mirror") return OrientationRelation::Mirror;
  if (text == "other") return OrientationRelation::Other;
  return std::nullopt;
}

std::optional<SignClass> parse_sign_class(std::string_view text) {
  if (text == "lexical") return SignClass::Lexical;
  if (text == "loan") return SignClass::Loan;
  if (text == "fingerspelled") return SignClass::Fingerspelled;
  if (text == "classifier") return SignClass::Classifier;
  if (text == "gesture") return SignClass::Gesture;
  if (text == "index") return SignClass::Index;
  if (text == "part_indef") return SignClass::PartIndef;
  return std::nullopt;
}

}  // namespace signphon
