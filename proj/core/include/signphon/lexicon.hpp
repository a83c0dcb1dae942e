#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "signphon/inventory.hpp"

namespace signphon {

enum class Handedness { One, Two };

// Relation between the two hands' movements in a citation form.
enum class MovementRelation { Simultaneous, Alternating, None };

enum class OrientationRelation { Identical, Mirror, Other };

enum class SignClass { Lexical, Loan, Fingerspelled, Classifier, Gesture, Index, PartIndef };

// Battison-style sign types: Type0/TypeX one-handed (without/with body contact),
// Type1 both hands move, Type2/Type3 passive non-dominant hand with the
// same/a different base handshape.
enum class SignType { Type0, TypeX, Type1, Type2, Type3 };

// A citation-form sign. Non-dominant-hand shapes are present exactly when the
// sign is two-handed.
struct LexiconEntry {
  std::string gloss;
  Handedness handedness = Handedness::One;
  std::string dom_start;
  std::string dom_end;
  std::optional<std::string> ndh_start;
  std::optional<std::string> ndh_end;
  bool both_hands_move = false;
  MovementRelation movement_relation = MovementRelation::None;
  bool contacts_body = false;
  bool ndh_is_location = false;
  OrientationRelation orientation_relation = OrientationRelation::Other;
  SignClass sign_class = SignClass::Lexical;
};

enum class CheckStatus { Ok, Violated, NotApplicable };

struct CheckResult {
  CheckStatus status = CheckStatus::NotApplicable;
  std::string reason;  // nonempty only when Violated
};

struct ValidationReport {
  CheckResult symmetry;
  CheckResult dominance;
  std::vector<std::string> structural;

  bool ok() const {
    return symmetry.status != CheckStatus::Violated &&
           dominance.status != CheckStatus::Violated && structural.empty();
  }
};

// Symmetry check: applies only when both hands move. Requires identical start
// and end handshape labels on both hands, simultaneous or alternating
// movement, and identical or mirror orientation.
CheckResult check_symmetry(const LexiconEntry& entry, const Inventory& inv);

// Dominance check: applies only when the non-dominant hand serves as a
// location. The location hand must be static and its handshape must match the
// dominant hand at base level or come from the unmarked set.
CheckResult check_dominance(const LexiconEntry& entry, const Inventory& inv);

// Structural consistency plus both condition checks.
ValidationReport validate_entry(const LexiconEntry& entry, const Inventory& inv);

struct SignTypeResult {
  std::optional<SignType> type;  // present iff report.ok()
  ValidationReport report;
};

// Total on well-formed entries; refuses classification (type absent) when
// validation finds a violation.
SignTypeResult classify_sign_type(const LexiconEntry& entry, const Inventory& inv);

// Canonical handshapes for a production, after applying a handedness override
// from a gloss prefix. Override to one hand drops the ndh shapes; override to
// two hands copies the dominant shapes onto the ndh (mirrored production).
struct CanonicalShapes {
  std::string dom_start;
  std::string dom_end;
  std::optional<std::string> ndh_start;
  std::optional<std::string> ndh_end;
};

CanonicalShapes canonical_shapes(const LexiconEntry& entry,
                                 std::optional<Handedness> override = std::nullopt);

// Splits a "(1h)"/"(2h)" production prefix off a gloss. Returns the bare gloss
// and the override, if any.
std::pair<std::string_view, std::optional<Handedness>> split_gloss_prefix(std::string_view gloss);

class Lexicon {
 public:
  // Tab-separated with a fixed header line; see the data directory for the
  // column list. All handshape labels must exist in the inventory.
  static Lexicon parse(std::istream& in, const Inventory& inv);
  static Lexicon parse_file(const std::string& path, const Inventory& inv);

  void save(std::ostream& out) const;
  std::string save_string() const;

  std::size_t size() const { return entries_.size(); }
  const std::vector<LexiconEntry>& entries() const { return entries_; }

  const LexiconEntry* find(std::string_view gloss) const;

  struct Resolved {
    const LexiconEntry* entry;
    std::optional<Handedness> handedness_override;
    // Set when the prefix restates the entry's normal handedness; a warning
    // condition, not an error.
    bool redundant_prefix = false;
  };

  // Accepts a gloss with an optional (1h)/(2h) prefix. Throws UnknownGloss
  // when the bare gloss is absent.
  Resolved resolve(std::string_view gloss_with_prefix) const;
  std::optional<Resolved> try_resolve(std::string_view gloss_with_prefix) const;

 private:
  std::vector<LexiconEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

std::string_view to_string(Handedness h);
std::string_view to_string(MovementRelation m);
std::string_view to_string(OrientationRelation o);
std::string_view to_string(SignClass c);
std::string_view to_string(SignType t);
std::string_view to_string(CheckStatus s);
std::optional<Handedness> parse_handedness(std::string_view text);
std::optional<MovementRelation> parse_movement_relation(std::string_view text);
std::optional<OrientationRelation> parse_orientation_relation(std::string_view text);
std::optional<SignClass> parse_sign_class(std::string_view text);

}  // namespace signphon
