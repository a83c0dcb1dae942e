#pragma once

// A second, independently written decision procedure for two-hand
// well-formedness, used to cross-check the library over an enumerated space
// of synthetic entries. It keeps its own base and markedness tables for a
// small handshape subset on purpose; nothing here may call into the
// library's inventory or validation code, or the cross-check proves nothing.

#include <map>
#include <optional>
#include <set>
#include <string>

#include "signphon/lexicon.hpp"

namespace oracle {

// Labels the enumeration draws from, with their base forms.
inline const std::map<std::string, std::string>& base_table() {
  static const std::map<std::string, std::string> t = {
      {"1", "1"}, {"5", "5"},     {"A", "A"},        {"B", "B"},
      {"B-L", "B"}, {"bent-B-L", "B"}, {"C", "C"},    {"O", "O"},
      {"flat-O", "flat-O"}, {"S", "S"}, {"X", "X"},   {"Y", "Y"},
  };
  return t;
}

inline bool same_base(const std::string& a, const std::string& b) {
  return base_table().at(a) == base_table().at(b);
}

inline bool unmarked(const std::string& shape) {
  static const std::set<std::string> bases = {"1", "5", "A", "B", "C", "O"};
  return bases.count(base_table().at(shape)) != 0;
}

enum class Status { Ok, Violated, NotApplicable };

// Two moving hands must share their handshapes at both endpoints, move
// simultaneously or in alternation, and face identically or as mirror images.
inline Status symmetry(const signphon::LexiconEntry& e) {
  if (!e.both_hands_move) return Status::NotApplicable;
  if (!e.ndh_start || !e.ndh_end) return Status::Violated;
  if (e.dom_start != *e.ndh_start || e.dom_end != *e.ndh_end) return Status::Violated;
  if (e.movement_relation != signphon::MovementRelation::Simultaneous &&
      e.movement_relation != signphon::MovementRelation::Alternating) {
    return Status::Violated;
  }
  if (e.orientation_relation == signphon::OrientationRelation::Other) return Status::Violated;
  return Status::Ok;
}

// A hand serving as a location must hold one shape, and at each endpoint that
// shape must either share the active hand's base or come from the unmarked set.
inline Status dominance(const signphon::LexiconEntry& e) {
  if (!e.ndh_is_location) return Status::NotApplicable;
  if (!e.ndh_start || !e.ndh_end) return Status::Violated;
  if (*e.ndh_start != *e.ndh_end) return Status::Violated;
  bool start_ok = same_base(*e.ndh_start, e.dom_start) || unmarked(*e.ndh_start);
  bool end_ok = same_base(*e.ndh_end, e.dom_end) || unmarked(*e.ndh_end);
  return start_ok && end_ok ? Status::Ok : Status::Violated;
}

inline bool structurally_sound(const signphon::LexiconEntry& e) {
  bool full_ndh = e.ndh_start.has_value() && e.ndh_end.has_value();
  bool any_ndh = e.ndh_start.has_value() || e.ndh_end.has_value();
  if (e.handedness == signphon::Handedness::Two) {
    if (!full_ndh) return false;
    if (!e.both_hands_move && !e.ndh_is_location) return false;
  } else {
    if (any_ndh || e.both_hands_move || e.ndh_is_location) return false;
  }
  if (e.both_hands_move && e.ndh_is_location) return false;
  return true;
}

struct Decision {
  Status symmetry = Status::NotApplicable;
  Status dominance = Status::NotApplicable;
  bool structurally_sound = false;
  std::optional<signphon::SignType> type;  // absent when the entry is ill-formed
};

inline Decision decide(const signphon::LexiconEntry& e) {
  Decision d;
  d.symmetry = symmetry(e);
  d.dominance = dominance(e);
  d.structurally_sound = structurally_sound(e);
  if (!d.structurally_sound || d.symmetry == Status::Violated ||
      d.dominance == Status::Violated) {
    return d;
  }
  if (e.handedness == signphon::Handedness::One) {
    d.type = e.contacts_body ? signphon::SignType::TypeX : signphon::SignType::Type0;
  } else if (e.both_hands_move) {
    d.type = signphon::SignType::Type1;
  } else if (same_base(*e.ndh_start, e.dom_start) && same_base(*e.ndh_end, e.dom_end)) {
    d.type = signphon::SignType::Type2;
  } else {
    d.type = signphon::SignType::Type3;
  }
  return d;
}

inline bool agrees(Status o, signphon::CheckStatus s) {
  switch (o) {
    case Status::Ok: return s == signphon::CheckStatus::Ok;
    case Status::Violated: return s == signphon::CheckStatus::Violated;
    case Status::NotApplicable: return s == signphon::CheckStatus::NotApplicable;
  }
  return false;
}

}  // namespace oracle
