#include "signphon/coarticulation.hpp"

#include <algorithm>
#include <unordered_map>

#include "signphon/errors.hpp"

namespace signphon {
namespace {

enum class Endpoint { Start, End };

struct Deviation {
  Hand hand;
  Endpoint endpoint;
  double dist;
  std::string trigger;
};

const std::optional<std::string>& observed(const SignToken& t, Hand hand, Endpoint ep) {
  if (hand == Hand::Dom) return ep == Endpoint::Start ? t.obs_dom_start : t.obs_dom_end;
  return ep == Endpoint::Start ? t.obs_ndh_start : t.obs_ndh_end;
}

// The shape a neighbor presents on one hand at one endpoint: observed when
// annotated, canonical otherwise. A one-handed sign produced on the
// non-dominant hand presents its dominant citation shapes there.
std::optional<std::string> neighbor_shape(const SignToken* nb, Hand hand, Endpoint ep,
                                          const Lexicon& lex) {
  if (!nb) return std::nullopt;
  const std::optional<std::string>& obs = observed(*nb, hand, ep);
  if (obs) return obs;
  auto resolved = lex.try_resolve(nb->gloss);
  if (!resolved) return std::nullopt;
  CanonicalShapes cs = canonical_shapes(*resolved->entry, resolved->handedness_override);
  if (hand == Hand::Dom) return ep == Endpoint::Start ? cs.dom_start : cs.dom_end;
  if (ep == Endpoint::Start) return cs.ndh_start ? *cs.ndh_start : cs.dom_start;
  return cs.ndh_end ? *cs.ndh_end : cs.dom_end;
}

bool trigger_is_one_handed(const SignToken* nb, const Lexicon& lex) {
  if (!nb) return false;
  auto resolved = lex.try_resolve(nb->gloss);
  if (!resolved) return false;
  Handedness effective =
      resolved->handedness_override.value_or(resolved->entry->handedness);
  return effective == Handedness::One;
}

}  // namespace

std::optional<CoarticRecord> detect(const SignToken& token, const TokenContext& ctx,
                                    const Lexicon& lex, const Inventory& inv,
                                    const DetectorThresholds& thresholds) {
  Lexicon::Resolved resolved = lex.resolve(token.gloss);
  Handedness effective =
      resolved.handedness_override.value_or(resolved.entry->handedness);
  CanonicalShapes canon = canonical_shapes(*resolved.entry, resolved.handedness_override);

  std::vector<Hand> hands_in_scope;
  if (token.tier == Tier::Dominant) {
    hands_in_scope = {Hand::Dom};
  } else if (token.tier == Tier::Nondominant) {
    hands_in_scope = {Hand::Ndh};
  } else {
    hands_in_scope = {Hand::Dom};
    if (canon.ndh_start) hands_in_scope.push_back(Hand::Ndh);
  }

  auto canonical_for = [&](Hand hand, Endpoint ep) -> std::string {
    if (hand == Hand::Dom) return ep == Endpoint::Start ? canon.dom_start : canon.dom_end;
    if (ep == Endpoint::Start) return canon.ndh_start ? *canon.ndh_start : canon.dom_start;
    return canon.ndh_end ? *canon.ndh_end : canon.dom_end;
  };
  auto trigger_token = [&](Hand hand, Endpoint ep) -> const SignToken* {
    if (hand == Hand::Dom) return ep == Endpoint::Start ? ctx.prev_dom : ctx.next_dom;
    return ep == Endpoint::Start ? ctx.prev_ndh : ctx.next_ndh;
  };

  std::vector<Deviation> devs;
  auto has_dev = [&](Hand hand, Endpoint ep) {
    return std::any_of(devs.begin(), devs.end(), [&](const Deviation& d) {
      return d.hand == hand && d.endpoint == ep;
    });
  };

  for (Hand hand : hands_in_scope) {
    for (Endpoint ep : {Endpoint::Start, Endpoint::End}) {
      const std::optional<std::string>& obs = observed(token, hand, ep);
      if (!obs) continue;
      std::string can = canonical_for(hand, ep);
      if (*obs == can) continue;
      const SignToken* nb = trigger_token(hand, ep);
      // A start deviation answers to the preceding sign's ending shape, an
      // end deviation to the following sign's starting shape.
      auto trig = neighbor_shape(nb, hand, ep == Endpoint::Start ? Endpoint::End : Endpoint::Start, lex);
      if (!trig) continue;
      if (thresholds.require_movement_toward &&
          !(inv.distance(*obs, *trig) < inv.distance(can, *trig))) {
        continue;
      }
      devs.push_back({hand, ep, inv.distance(*obs, can), *trig});
    }
  }

  // A one-handed neighbor can drag both hands of a symmetric sign with it.
  bool spread = false;
  if (effective == Handedness::Two && token.tier == Tier::Both && canon.ndh_start) {
    for (Endpoint ep : {Endpoint::Start, Endpoint::End}) {
      bool dom_dev = std::any_of(devs.begin(), devs.end(), [&](const Deviation& d) {
        return d.hand == Hand::Dom && d.endpoint == ep;
      });
      if (!dom_dev) continue;
      std::string canon_dom = canonical_for(Hand::Dom, ep);
      std::string canon_ndh = canonical_for(Hand::Ndh, ep);
      if (canon_dom != canon_ndh) continue;
      if (!trigger_is_one_handed(trigger_token(Hand::Dom, ep), lex)) continue;
      const std::optional<std::string>& obs_ndh = observed(token, Hand::Ndh, ep);
      const std::optional<std::string>& obs_dom = observed(token, Hand::Dom, ep);
      if (!obs_ndh || *obs_ndh == canon_ndh || *obs_ndh != *obs_dom) continue;
      if (!has_dev(Hand::Ndh, ep)) {
        auto it = std::find_if(devs.begin(), devs.end(), [&](const Deviation& d) {
          return d.hand == Hand::Dom && d.endpoint == ep;
        });
        devs.push_back({Hand::Ndh, ep, inv.distance(*obs_ndh, canon_ndh), it->trigger});
      }
      spread = true;
    }
  }

  if (devs.empty()) return std::nullopt;

  CoarticRecord rec;
  rec.token = &token;
  rec.effective_two_handed = effective == Handedness::Two;
  rec.spread_to_both_hands = spread;

  bool start_side = false, end_side = false, dom_hand = false, ndh_hand = false;
  rec.min_deviation = devs.front().dist;
  rec.max_deviation = devs.front().dist;
  for (const Deviation& d : devs) {
    rec.min_deviation = std::min(rec.min_deviation, d.dist);
    rec.max_deviation = std::max(rec.max_deviation, d.dist);
    if (d.endpoint == Endpoint::Start) {
      start_side = true;
      if (!rec.trigger_prev || d.hand == Hand::Dom) rec.trigger_prev = d.trigger;
    } else {
      end_side = true;
      if (!rec.trigger_next || d.hand == Hand::Dom) rec.trigger_next = d.trigger;
    }
    (d.hand == Hand::Dom ? dom_hand : ndh_hand) = true;
  }
  rec.direction = start_side && end_side ? Direction::Both
                  : start_side          ? Direction::Perseverative
                                        : Direction::Anticipatory;
  rec.hands = dom_hand && ndh_hand ? AffectedHands::Both
              : dom_hand           ? AffectedHands::Dom
                                   : AffectedHands::Ndh;
  rec.severity =
      rec.max_deviation <= thresholds.tau_subtle ? Severity::Subtle : Severity::Major;
  return rec;
}

DirectionBlock direction_breakdown(const std::vector<CoarticRecord>& records) {
  DirectionBlock block;
  for (const CoarticRecord& rec : records) {
    DirectionSplit& split = rec.hands != AffectedHands::Dom ? block.ndh_affected
                            : rec.effective_two_handed      ? block.two_handed_dom
                                                            : block.one_handed;
    switch (rec.direction) {
      case Direction::Perseverative: ++split.persev; break;
      case Direction::Anticipatory: ++split.antic; break;
      case Direction::Both:
        ++split.persev;
        ++split.antic;
        ++split.both;
        break;
    }
  }
  return block;
}

PrevalenceReport scan(const std::vector<Utterance>& corpus, const Lexicon& lex,
                      const Inventory& inv, const ExclusionPolicy& policy,
                      const DetectorThresholds& thresholds) {
  PrevalenceReport rep;
  for (HandshapeClass c :
       {HandshapeClass::Class1, HandshapeClass::Class2, HandshapeClass::Class3,
        HandshapeClass::Class4, HandshapeClass::ClassY, HandshapeClass::ClassPK,
        HandshapeClass::Other}) {
    rep.per_class[c];
  }

  for (const Utterance& u : corpus) {
    auto dom_view = u.tier_view(Tier::Dominant);
    auto ndh_view = u.tier_view(Tier::Nondominant);
    std::unordered_map<const SignToken*, std::size_t> dom_pos, ndh_pos;
    for (std::size_t i = 0; i < dom_view.size(); ++i) dom_pos[dom_view[i]] = i;
    for (std::size_t i = 0; i < ndh_view.size(); ++i) ndh_pos[ndh_view[i]] = i;

    for (const SignToken& t : u.tokens) {
      if (!retained(t, policy, FilterPurpose::Coarticulation)) continue;
      auto resolved = lex.try_resolve(t.gloss);
      if (!resolved) {
        ++rep.skipped_unresolved;
        continue;
      }
      ++rep.total_examined;

      bool classed = t.obs_dom_start.has_value();
      HandshapeClass cls = HandshapeClass::Other;
      if (classed) {
        CanonicalShapes canon =
            canonical_shapes(*resolved->entry, resolved->handedness_override);
        cls = inv.class_of(canon.dom_start);
        ++rep.per_class[cls].occurrences;
      }

      TokenContext ctx;
      if (auto it = dom_pos.find(&t); it != dom_pos.end()) {
        if (it->second > 0) ctx.prev_dom = dom_view[it->second - 1];
        if (it->second + 1 < dom_view.size()) ctx.next_dom = dom_view[it->second + 1];
      }
      if (auto it = ndh_pos.find(&t); it != ndh_pos.end()) {
        if (it->second > 0) ctx.prev_ndh = ndh_view[it->second - 1];
        if (it->second + 1 < ndh_view.size()) ctx.next_ndh = ndh_view[it->second + 1];
      }

      auto rec = detect(t, ctx, lex, inv, thresholds);
      if (!rec) continue;
      ++rep.total_coarticulated;
      if (classed) ++rep.per_class[cls].coartic;
      if (rec->max_deviation <= thresholds.tau_subtle) {
        ++rep.severity_subtle;
      } else if (rec->min_deviation > thresholds.tau_subtle) {
        ++rep.severity_major;
      } else {
        ++rep.severity_mixed;
      }
      rep.records.push_back(*rec);
    }
  }

  rep.direction = direction_breakdown(rep.records);
  rep.overall_rate = rep.total_examined == 0
                         ? 0.0
                         : double(rep.total_coarticulated) / double(rep.total_examined);
  return rep;
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Perseverative: return "perseverative";
    case Direction::Anticipatory: return "anticipatory";
    case Direction::Both: return "both";
  }
  return "?";
}

std::string_view to_string(AffectedHands h) {
  switch (h) {
    case AffectedHands::Dom: return "dom";
    case AffectedHands::Ndh: return "ndh";
    case AffectedHands::Both: return "both";
  }
  return "?";
}

std::string_view to_string(Severity s) {
  return s == Severity::Subtle ? "subtle" : "major";
}

}  // namespace signphon
