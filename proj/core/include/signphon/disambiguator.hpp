#pragma once

#include <optional>
#include <string>
#include <vector>

#include "signphon/corpus.hpp"
#include "signphon/inventory.hpp"
#include "signphon/lexicon.hpp"

namespace signphon {

enum class SegmentMovement { Simultaneous, Alternating, Unrelated, None };

struct HandState {
  bool moving = false;
  std::optional<std::string> shape_start;
  std::optional<std::string> shape_end;
  bool held_since_previous = false;  // implies !moving
};

// Everything the rule cascade can see about one stretch of signing.
struct HandActivity {
  HandState dom;
  HandState ndh;
  OrientationRelation orientation = OrientationRelation::Other;
  SegmentMovement movement = SegmentMovement::None;
  bool contact_between_hands = false;
  bool ndh_points_at_dom = false;
  bool ndh_vertical_index_held = false;
  bool concurrent_dom_is_fingerspelled = false;
};

enum class Verdict {
  TwoHanded,
  OneHandedWithConfound,
  TwoIndependent,
  MarkedTwoHandVariant,
  MarkedOneHandVariant,
  PlainOneHanded,
};

enum class ConfoundTag {
  HoldH2Spread,
  AnticipatoryPositioning,
  Mirroring,
  FocusMarker,
  ThemeBuoy,
};

struct SegmentInterpretation {
  Verdict verdict = Verdict::PlainOneHanded;
  std::optional<SignType> sign_type;      // set for TwoHanded verdicts
  std::optional<ConfoundTag> confound;    // set for OneHandedWithConfound
  std::optional<Verdict> secondary;       // alternative reading, if any
  double confidence = 0.5;                // 1.0 when the lexicon confirms
  std::vector<int> fired_rules;           // every matching rule, ascending
};

// First-match cascade over rules 1..8, from most context-specific evidence to
// most generic:
//   1 non-dominant hand holds the previous segment's handshape
//   2 non-dominant hand pre-positions for the next two-handed segment
//   3 persistent raised-index hold across neighboring segments (theme buoy)
//   4 index pointing at the dominant hand during fingerspelling
//   5 mirrored production of a one-handed sign
//   6 both hands active, symmetry and dominance both fail: independent signs
//   7 both hands active, a condition holds: genuine two-handed sign
//   8 one hand active: plain one-handed, or a dropped-hand variant
// fired_rules records every rule whose guard matched; the verdict comes from
// the first.
SegmentInterpretation interpret(const HandActivity& segment, const HandActivity* prev,
                                const HandActivity* next, const LexiconEntry* lexicon_hint,
                                const Inventory& inv);

struct UtteranceInterpretation {
  struct Segment {
    const SignToken* token = nullptr;
    HandActivity activity;
    SegmentInterpretation interpretation;
  };
  std::vector<Segment> segments;
};

// Builds one segment per dominant-tier token, pairing each with the
// non-dominant-tier token that overlaps it most, then runs the cascade with
// real neighbors. Non-dominant tokens that never pair become segments of
// their own.
UtteranceInterpretation interpret_utterance(const Utterance& utterance, const Lexicon& lex,
                                            const Inventory& inv);

std::string_view to_string(Verdict v);
std::string_view to_string(ConfoundTag t);

}  // namespace signphon
