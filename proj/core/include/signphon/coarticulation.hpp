#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "signphon/corpus.hpp"
#include "signphon/inventory.hpp"
#include "signphon/lexicon.hpp"

namespace signphon {

// Perseverative: the start handshape pulled toward the preceding sign.
// Anticipatory: the end handshape pulled toward the following sign.
enum class Direction { Perseverative, Anticipatory, Both };

enum class AffectedHands { Dom, Ndh, Both };

enum class Severity { Subtle, Major };

struct DetectorThresholds {
  // A deviation at or below this feature distance counts as subtle.
  double tau_subtle = 0.5;
  // When set, a deviation only qualifies if the observed shape is strictly
  // closer to the trigger than the canonical shape is. When cleared, any
  // deviation with a trigger present qualifies (sensitivity mode).
  bool require_movement_toward = true;
};

struct CoarticRecord {
  const SignToken* token = nullptr;
  Direction direction = Direction::Perseverative;
  AffectedHands hands = AffectedHands::Dom;
  // Subtle iff every qualifying deviation is within tau_subtle.
  Severity severity = Severity::Subtle;
  std::optional<std::string> trigger_prev;
  std::optional<std::string> trigger_next;
  bool spread_to_both_hands = false;
  bool effective_two_handed = false;
  double min_deviation = 0.0;
  double max_deviation = 0.0;
};

// Raw-tier neighbors of the token; excluded tokens stay eligible as triggers.
struct TokenContext {
  const SignToken* prev_dom = nullptr;
  const SignToken* next_dom = nullptr;
  const SignToken* prev_ndh = nullptr;
  const SignToken* next_ndh = nullptr;
};

// Compares observed endpoint handshapes against the citation form and keeps
// deviations that moved toward a neighboring shape. Returns absent when no
// deviation qualifies. Throws UnknownGloss for tokens outside the lexicon.
std::optional<CoarticRecord> detect(const SignToken& token, const TokenContext& ctx,
                                    const Lexicon& lex, const Inventory& inv,
                                    const DetectorThresholds& thresholds = {});

struct DirectionSplit {
  long long persev = 0;
  long long antic = 0;
  long long both = 0;
  long long affected() const { return persev + antic - both; }
};

struct DirectionBlock {
  DirectionSplit one_handed;
  DirectionSplit two_handed_dom;   // two-handed signs, dominant hand only
  DirectionSplit ndh_affected;     // any record touching the non-dominant hand
};

DirectionBlock direction_breakdown(const std::vector<CoarticRecord>& records);

struct ClassPrevalence {
  long long coartic = 0;
  long long occurrences = 0;
  double rate() const { return occurrences == 0 ? 0.0 : double(coartic) / double(occurrences); }
};

struct PrevalenceReport {
  long long total_examined = 0;
  long long total_coarticulated = 0;
  double overall_rate = 0.0;
  // Keyed by the class of the canonical dominant start handshape; a token
  // contributes only when its observed dominant start was annotated.
  std::map<HandshapeClass, ClassPrevalence> per_class;
  DirectionBlock direction;
  // Records are uniform when all their deviations fall in one severity
  // bucket; otherwise mixed.
  long long severity_subtle = 0;
  long long severity_major = 0;
  long long severity_mixed = 0;
  long long skipped_unresolved = 0;  // retained tokens with no lexicon entry
  std::vector<CoarticRecord> records;
};

// Runs detect over every coarticulation-retained token in the corpus.
// Neighbor triggers come from the raw tiers, before filtering.
PrevalenceReport scan(const std::vector<Utterance>& corpus, const Lexicon& lex,
                      const Inventory& inv, const ExclusionPolicy& policy = {},
                      const DetectorThresholds& thresholds = {});

std::string_view to_string(Direction d);
std::string_view to_string(AffectedHands h);
std::string_view to_string(Severity s);

}  // namespace signphon
