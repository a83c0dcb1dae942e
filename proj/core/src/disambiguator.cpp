#include "signphon/disambiguator.hpp"

#include <algorithm>

namespace signphon {
namespace {

std::optional<std::string> effective_end(const HandState& hand) {
  return hand.shape_end ? hand.shape_end : hand.shape_start;
}

bool base_equal_opt(const Inventory& inv, const std::optional<std::string>& a,
                    const std::optional<std::string>& b) {
  return a && b && inv.find(*a) && inv.find(*b) && inv.base_equal(*a, *b);
}

MovementRelation to_entry_movement(SegmentMovement m) {
  switch (m) {
    case SegmentMovement::Simultaneous: return MovementRelation::Simultaneous;
    case SegmentMovement::Alternating: return MovementRelation::Alternating;
    default: return MovementRelation::None;
  }
}

SegmentMovement from_entry_movement(MovementRelation m) {
  switch (m) {
    case MovementRelation::Simultaneous: return SegmentMovement::Simultaneous;
    case MovementRelation::Alternating: return SegmentMovement::Alternating;
    default: return SegmentMovement::None;
  }
}

bool base_is_index(const Inventory& inv, const std::optional<std::string>& shape) {
  return shape && inv.find(*shape) && inv.base_of(*shape) == "1";
}

}  // namespace

SegmentInterpretation interpret(const HandActivity& segment, const HandActivity* prev,
                                const HandActivity* next, const LexiconEntry* lexicon_hint,
                                const Inventory& inv) {
  const bool dom_active = segment.dom.moving || segment.dom.shape_start.has_value();
  const bool ndh_active = segment.ndh.moving || segment.ndh.shape_start.has_value();
  const bool hint_two = lexicon_hint && lexicon_hint->handedness == Handedness::Two;
  const bool hint_one = lexicon_hint && lexicon_hint->handedness == Handedness::One;

  // The non-dominant hand keeps the shape it had in the previous segment.
  // Buoy-flagged holds are routed to rule 3 instead, on either side.
  const bool r1 = !segment.ndh.moving && segment.ndh.held_since_previous &&
                  !segment.ndh_vertical_index_held && prev && prev->ndh.shape_end &&
                  !prev->ndh_vertical_index_held &&
                  base_equal_opt(inv, segment.ndh.shape_start, prev->ndh.shape_end);

  // The non-dominant hand already shows the shape the next genuinely
  // two-handed segment will need.
  const bool r2 = !segment.ndh.moving && !segment.ndh_vertical_index_held && next &&
                  next->ndh.shape_start && !next->ndh.held_since_previous &&
                  !next->ndh_vertical_index_held &&
                  base_equal_opt(inv, segment.ndh.shape_start, next->ndh.shape_start);

  const bool r3 = segment.ndh_vertical_index_held &&
                  ((prev && prev->ndh_vertical_index_held) ||
                   (next && next->ndh_vertical_index_held));

  const bool r4 = segment.ndh_points_at_dom && segment.concurrent_dom_is_fingerspelled;

  const bool r5 = segment.dom.moving && segment.ndh.moving &&
                  segment.orientation == OrientationRelation::Mirror && hint_one &&
                  base_equal_opt(inv, segment.dom.shape_start, segment.ndh.shape_start) &&
                  base_equal_opt(inv, effective_end(segment.dom), effective_end(segment.ndh));

  bool sym_ok = false;
  bool dom_ok = false;
  bool type2 = false;
  if (dom_active && ndh_active && segment.dom.shape_start && segment.ndh.shape_start) {
    LexiconEntry pseudo;
    pseudo.handedness = Handedness::Two;
    pseudo.dom_start = *segment.dom.shape_start;
    pseudo.dom_end = *effective_end(segment.dom);
    pseudo.ndh_start = segment.ndh.shape_start;
    pseudo.ndh_end = effective_end(segment.ndh);
    pseudo.both_hands_move = segment.dom.moving && segment.ndh.moving;
    pseudo.movement_relation = to_entry_movement(segment.movement);
    pseudo.orientation_relation = segment.orientation;
    pseudo.ndh_is_location =
        !segment.ndh.moving && segment.dom.moving && segment.contact_between_hands;
    sym_ok = check_symmetry(pseudo, inv).status == CheckStatus::Ok;
    dom_ok = check_dominance(pseudo, inv).status == CheckStatus::Ok;
    type2 = base_equal_opt(inv, pseudo.ndh_start, std::optional(pseudo.dom_start)) &&
            base_equal_opt(inv, pseudo.ndh_end, std::optional(pseudo.dom_end));
  }
  const bool r6 = dom_active && ndh_active && !sym_ok && !dom_ok;
  const bool r7 = dom_active && ndh_active && (sym_ok || dom_ok);
  const bool r8 = !(dom_active && ndh_active);

  SegmentInterpretation out;
  const bool rules[9] = {false, r1, r2, r3, r4, r5, r6, r7, r8};
  for (int i = 1; i <= 8; ++i) {
    if (rules[i]) out.fired_rules.push_back(i);
  }
  if (out.fired_rules.empty()) out.fired_rules.push_back(8);

  switch (out.fired_rules.front()) {
    case 1:
      out.verdict = Verdict::OneHandedWithConfound;
      out.confound = ConfoundTag::HoldH2Spread;
      out.confidence = 0.5;
      break;
    case 2:
      out.verdict = Verdict::OneHandedWithConfound;
      out.confound = ConfoundTag::AnticipatoryPositioning;
      out.confidence = 0.5;
      break;
    case 3:
      out.verdict = Verdict::OneHandedWithConfound;
      out.confound = ConfoundTag::ThemeBuoy;
      out.confidence = 0.5;
      break;
    case 4:
      out.verdict = Verdict::OneHandedWithConfound;
      out.confound = ConfoundTag::FocusMarker;
      out.confidence = 0.5;
      break;
    case 5:
      out.verdict = Verdict::OneHandedWithConfound;
      out.confound = ConfoundTag::Mirroring;
      out.secondary = Verdict::MarkedTwoHandVariant;
      out.confidence = 1.0;
      break;
    case 6:
      out.verdict = Verdict::TwoIndependent;
      out.confidence = 0.5;
      break;
    case 7:
      out.verdict = Verdict::TwoHanded;
      out.sign_type = sym_ok ? SignType::Type1 : (type2 ? SignType::Type2 : SignType::Type3);
      out.confidence = hint_two ? 1.0 : 0.5;
      break;
    default:
      if (hint_two) {
        out.verdict = Verdict::MarkedOneHandVariant;
        out.confidence = 1.0;
      } else {
        out.verdict = Verdict::PlainOneHanded;
        out.confidence = lexicon_hint ? 1.0 : 0.5;
      }
      break;
  }
  return out;
}

UtteranceInterpretation interpret_utterance(const Utterance& utterance, const Lexicon& lex,
                                            const Inventory& inv) {
  struct Pending {
    const SignToken* token;
    const SignToken* paired_ndh = nullptr;  // for dominant-tier anchors
    bool lone_ndh = false;
    HandActivity activity;
    const LexiconEntry* hint = nullptr;
  };

  auto anchors = utterance.tier_view(Tier::Dominant);
  std::vector<const SignToken*> ndh_only;
  for (const SignToken& t : utterance.tokens) {
    if (t.tier == Tier::Nondominant) ndh_only.push_back(&t);
  }

  auto overlap = [](const SignToken* a, const SignToken* b) {
    return std::min(a->end_frame, b->end_frame) - std::max(a->start_frame, b->start_frame);
  };

  std::vector<Pending> pending;
  std::vector<const SignToken*> paired;
  for (const SignToken* a : anchors) {
    Pending p;
    p.token = a;
    if (a->tier == Tier::Dominant) {
      const SignToken* best = nullptr;
      for (const SignToken* t : ndh_only) {
        if (overlap(a, t) <= 0) continue;
        if (!best || overlap(a, t) > overlap(a, best)) best = t;
      }
      p.paired_ndh = best;
      if (best) paired.push_back(best);
    }
    pending.push_back(p);
  }
  for (const SignToken* t : ndh_only) {
    if (std::find(paired.begin(), paired.end(), t) == paired.end()) {
      Pending p;
      p.token = t;
      p.lone_ndh = true;
      pending.push_back(p);
    }
  }
  std::stable_sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
    if (a.token->start_frame != b.token->start_frame) {
      return a.token->start_frame < b.token->start_frame;
    }
    return !a.lone_ndh && b.lone_ndh;
  });

  // A non-dominant token continuing the shape of an overlapping or directly
  // preceding two-handed token is a hold, not a buoy.
  auto is_hold_continuation = [&](const SignToken* t) {
    for (const SignToken& b : utterance.tokens) {
      if (b.tier == Tier::Both && b.gloss == t->gloss &&
          b.start_frame <= t->start_frame && b.end_frame + 1 >= t->start_frame) {
        return true;
      }
    }
    return false;
  };

  auto ndh_shape = [&](const SignToken* t, bool start) -> std::optional<std::string> {
    const auto& obs = start ? t->obs_ndh_start : t->obs_ndh_end;
    if (obs) return obs;
    auto r = lex.try_resolve(t->gloss);
    if (!r) return std::nullopt;
    CanonicalShapes cs = canonical_shapes(*r->entry, r->handedness_override);
    if (start) return cs.ndh_start ? *cs.ndh_start : cs.dom_start;
    return cs.ndh_end ? *cs.ndh_end : cs.dom_end;
  };

  for (Pending& p : pending) {
    HandActivity& act = p.activity;
    const SignToken* tok = p.token;
    auto resolved = lex.try_resolve(tok->gloss);
    if (resolved) p.hint = resolved->entry;

    if (p.lone_ndh) {
      act.ndh.moving = true;
      act.ndh.shape_start = ndh_shape(tok, true);
      act.ndh.shape_end = ndh_shape(tok, false);
      continue;
    }

    act.dom.moving = true;
    std::optional<CanonicalShapes> canon;
    if (resolved) canon = canonical_shapes(*resolved->entry, resolved->handedness_override);
    act.dom.shape_start = tok->obs_dom_start
                              ? tok->obs_dom_start
                              : (canon ? std::optional(canon->dom_start) : std::nullopt);
    act.dom.shape_end = tok->obs_dom_end
                            ? tok->obs_dom_end
                            : (canon ? std::optional(canon->dom_end) : std::nullopt);
    act.concurrent_dom_is_fingerspelled =
        tok->class_tags.count(SignClass::Fingerspelled) != 0;

    if (tok->tier == Tier::Both) {
      if (resolved) {
        act.ndh.moving = resolved->entry->both_hands_move;
        act.orientation = resolved->entry->orientation_relation;
        act.movement = from_entry_movement(resolved->entry->movement_relation);
        act.contact_between_hands = resolved->entry->ndh_is_location;
      }
      act.ndh.shape_start =
          tok->obs_ndh_start ? tok->obs_ndh_start
                             : (canon && canon->ndh_start ? canon->ndh_start : std::nullopt);
      act.ndh.shape_end = tok->obs_ndh_end
                              ? tok->obs_ndh_end
                              : (canon && canon->ndh_end ? canon->ndh_end : std::nullopt);
      continue;
    }

    const SignToken* partner = p.paired_ndh;
    if (!partner) continue;
    act.ndh.shape_start = ndh_shape(partner, true);
    act.ndh.shape_end = ndh_shape(partner, false);

    auto partner_resolved = lex.try_resolve(partner->gloss);
    bool mirrored = partner->gloss == tok->gloss &&
                    partner->start_frame == tok->start_frame &&
                    partner->end_frame == tok->end_frame && partner_resolved &&
                    partner_resolved->entry->handedness == Handedness::One;
    if (mirrored) {
      act.ndh.moving = true;
      act.orientation = OrientationRelation::Mirror;
      act.movement = SegmentMovement::Simultaneous;
    } else {
      act.ndh.held_since_previous = partner->start_frame < tok->start_frame;
      bool index_shape = base_is_index(inv, act.ndh.shape_start);
      act.ndh_vertical_index_held = act.ndh.held_since_previous && index_shape &&
                                    !is_hold_continuation(partner);
      act.ndh_points_at_dom = !act.ndh.moving && index_shape;
    }
  }

  UtteranceInterpretation result;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    const HandActivity* prev = i > 0 ? &pending[i - 1].activity : nullptr;
    const HandActivity* next = i + 1 < pending.size() ? &pending[i + 1].activity : nullptr;
    UtteranceInterpretation::Segment seg;
    seg.token = pending[i].token;
    seg.activity = pending[i].activity;
    seg.interpretation = interpret(pending[i].activity, prev, next, pending[i].hint, inv);
    result.segments.push_back(std::move(seg));
  }
  return result;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::TwoHanded: return "two_handed";
    case Verdict::OneHandedWithConfound: return "one_handed_with_confound";
    case Verdict::TwoIndependent: return "two_independent";
    case Verdict::MarkedTwoHandVariant: return "marked_two_hand_variant";
    case Verdict::MarkedOneHandVariant: return "marked_one_hand_variant";
    case Verdict::PlainOneHanded: return "plain_one_handed";
  }
  return "?";
}

std::string_view to_string(ConfoundTag t) {
  switch (t) {
    case ConfoundTag::HoldH2Spread: return "hold_h2_spread";
    case ConfoundTag::AnticipatoryPositioning: return "anticipatory_positioning";
    case ConfoundTag::Mirroring: return "mirroring";
    case ConfoundTag::FocusMarker: return "focus_marker";
    case ConfoundTag::ThemeBuoy: return "theme_buoy";
  }
  return "?";
}

}  // namespace signphon
