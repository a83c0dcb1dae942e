#include <sstream>
#include <vector>

#include "doctest.h"
#include "signphon/disambiguator.hpp"
#include "support/fixtures.hpp"

using namespace signphon;

namespace {

HandActivity dom_moving(const std::string& start, const std::string& end) {
  HandActivity a;
  a.dom.moving = true;
  a.dom.shape_start = start;
  a.dom.shape_end = end;
  return a;
}

std::vector<int> rules(const SegmentInterpretation& s) { return s.fired_rules; }

// Flattens everything observable about an interpretation, for determinism
// comparisons.
std::string render(const UtteranceInterpretation& u) {
  std::ostringstream out;
  for (const auto& seg : u.segments) {
    out << seg.token->gloss << '|' << to_string(seg.interpretation.verdict) << '|';
    if (seg.interpretation.confound) out << to_string(*seg.interpretation.confound);
    out << '|';
    if (seg.interpretation.sign_type) out << to_string(*seg.interpretation.sign_type);
    out << '|' << seg.interpretation.confidence << '|';
    for (int r : seg.interpretation.fired_rules) out << r << ',';
    out << '\n';
  }
  return out.str();
}

}  // namespace

TEST_CASE("one active hand is plain unless the lexicon disagrees") {
  const Inventory& inv = testutil::inventory();
  const Lexicon& lex = testutil::demo_lexicon();
  HandActivity solo = dom_moving("B-L", "B-L");

  auto bare = interpret(solo, nullptr, nullptr, nullptr, inv);
  CHECK(bare.verdict == Verdict::PlainOneHanded);
  CHECK(bare.confidence == 0.5);
  CHECK(rules(bare) == std::vector<int>{8});

  auto confirmed = interpret(solo, nullptr, nullptr, lex.find("KNOW"), inv);
  CHECK(confirmed.verdict == Verdict::PlainOneHanded);
  CHECK(confirmed.confidence == 1.0);

  // One visible hand where the citation form wants two: a dropped hand.
  auto dropped = interpret(dom_moving("crvd-5", "crvd-5"), nullptr, nullptr,
                           lex.find("ANGRY"), inv);
  CHECK(dropped.verdict == Verdict::MarkedOneHandVariant);
  CHECK(dropped.confidence == 1.0);
  CHECK(rules(dropped) == std::vector<int>{8});

  HandActivity ndh_only;
  ndh_only.ndh.moving = true;
  ndh_only.ndh.shape_start = "Y";
  auto lone = interpret(ndh_only, nullptr, nullptr, lex.find("PHONE"), inv);
  CHECK(lone.verdict == Verdict::PlainOneHanded);
  CHECK(rules(lone) == std::vector<int>{8});
}

TEST_CASE("a held non-dominant shape from the last segment reads as a hold") {
  const Inventory& inv = testutil::inventory();
  HandActivity prev = dom_moving("S", "S");
  prev.ndh.shape_start = "S";
  prev.ndh.shape_end = "S";
  prev.ndh.moving = true;

  HandActivity seg = dom_moving("B-L", "B-L");
  seg.ndh.shape_start = "S";
  seg.ndh.held_since_previous = true;

  auto hold = interpret(seg, &prev, nullptr, nullptr, inv);
  CHECK(hold.verdict == Verdict::OneHandedWithConfound);
  CHECK(hold.confound == ConfoundTag::HoldH2Spread);
  CHECK(rules(hold) == std::vector<int>{1, 6});

  SUBCASE("a raised-index flag reroutes the hold") {
    HandActivity flagged = seg;
    flagged.ndh.shape_start = "1";
    flagged.ndh_vertical_index_held = true;
    HandActivity prev_flagged = prev;
    prev_flagged.ndh.shape_end = "1";
    prev_flagged.ndh_vertical_index_held = true;
    auto buoy = interpret(flagged, &prev_flagged, nullptr, nullptr, inv);
    CHECK(buoy.confound == ConfoundTag::ThemeBuoy);
    CHECK(rules(buoy) == std::vector<int>{3, 6});
  }

  SUBCASE("a freshly placed hand is not a hold") {
    HandActivity fresh = seg;
    fresh.ndh.held_since_previous = false;
    auto r = interpret(fresh, &prev, nullptr, nullptr, inv);
    CHECK(r.fired_rules.front() != 1);
  }

  SUBCASE("a hold of an unrelated shape is not a hold") {
    HandActivity other = seg;
    other.ndh.shape_start = "Y";
    auto r = interpret(other, &prev, nullptr, nullptr, inv);
    CHECK(r.fired_rules.front() != 1);
  }
}

TEST_CASE("pre-positioning for the next two-handed sign") {
  const Inventory& inv = testutil::inventory();
  HandActivity seg = dom_moving("B-L", "B-L");
  seg.ndh.shape_start = "S";  // already in place, not held from before

  HandActivity next = dom_moving("S", "S");
  next.ndh.shape_start = "S";
  next.ndh.moving = true;

  auto r = interpret(seg, nullptr, &next, nullptr, inv);
  CHECK(r.verdict == Verdict::OneHandedWithConfound);
  CHECK(r.confound == ConfoundTag::AnticipatoryPositioning);
  CHECK(rules(r) == std::vector<int>{2, 6});

  SUBCASE("no match, no anticipation") {
    HandActivity other_next = next;
    other_next.ndh.shape_start = "Y";
    auto miss = interpret(seg, nullptr, &other_next, nullptr, inv);
    CHECK(miss.fired_rules.front() == 6);
  }

  SUBCASE("a next segment that merely holds does not count") {
    HandActivity held_next = next;
    held_next.ndh.held_since_previous = true;
    auto miss = interpret(seg, nullptr, &held_next, nullptr, inv);
    CHECK(miss.fired_rules.front() == 6);
  }
}

TEST_CASE("pointing at a fingerspelling hand is a focus marker") {
  const Inventory& inv = testutil::inventory();
  HandActivity seg = dom_moving("I", "bent-V");
  seg.ndh.shape_start = "1";
  seg.ndh_points_at_dom = true;
  seg.concurrent_dom_is_fingerspelled = true;

  auto r = interpret(seg, nullptr, nullptr, nullptr, inv);
  CHECK(r.confound == ConfoundTag::FocusMarker);
  CHECK(rules(r) == std::vector<int>{4, 6});

  seg.concurrent_dom_is_fingerspelled = false;
  CHECK(interpret(seg, nullptr, nullptr, nullptr, inv).fired_rules.front() == 6);
}

TEST_CASE("mirrored production of a one-handed sign") {
  const Inventory& inv = testutil::inventory();
  const Lexicon& lex = testutil::demo_lexicon();
  HandActivity seg = dom_moving("1", "1");
  seg.ndh.moving = true;
  seg.ndh.shape_start = "1";
  seg.ndh.shape_end = "1";
  seg.orientation = OrientationRelation::Mirror;
  seg.movement = SegmentMovement::Simultaneous;

  auto r = interpret(seg, nullptr, nullptr, lex.find("IX-3p"), inv);
  CHECK(r.verdict == Verdict::OneHandedWithConfound);
  CHECK(r.confound == ConfoundTag::Mirroring);
  CHECK(r.secondary == Verdict::MarkedTwoHandVariant);
  CHECK(r.confidence == 1.0);
  CHECK(rules(r) == std::vector<int>{5, 7});

  // Without the one-handed citation form the same activity is two-handed.
  auto unhinted = interpret(seg, nullptr, nullptr, nullptr, inv);
  CHECK(unhinted.fired_rules.front() == 7);
  CHECK(unhinted.verdict == Verdict::TwoHanded);
}

TEST_CASE("two active hands that satisfy neither condition are independent") {
  const Inventory& inv = testutil::inventory();
  const Lexicon& lex = testutil::demo_lexicon();
  HandActivity seg = dom_moving("5", "flat-O");
  seg.ndh.shape_start = "Y";  // static, marked, unrelated

  auto r = interpret(seg, nullptr, nullptr, nullptr, inv);
  CHECK(r.verdict == Verdict::TwoIndependent);
  CHECK(rules(r) == std::vector<int>{6});

  // A two-handed lexicon hint must not rescue an ill-formed configuration.
  auto hinted = interpret(seg, nullptr, nullptr, lex.find("DRIVE"), inv);
  CHECK(hinted.verdict == Verdict::TwoIndependent);
  CHECK(hinted.confidence == 0.5);

  // Two moving hands with different shapes are two signs, not one.
  HandActivity split = dom_moving("S", "S");
  split.ndh.moving = true;
  split.ndh.shape_start = "A";
  split.ndh.shape_end = "A";
  split.movement = SegmentMovement::Simultaneous;
  split.orientation = OrientationRelation::Identical;
  CHECK(interpret(split, nullptr, nullptr, nullptr, inv).verdict ==
        Verdict::TwoIndependent);
}

TEST_CASE("well-formed two-hand configurations classify by type") {
  const Inventory& inv = testutil::inventory();
  const Lexicon& lex = testutil::demo_lexicon();

  HandActivity sym = dom_moving("S", "S");
  sym.ndh.moving = true;
  sym.ndh.shape_start = "S";
  sym.ndh.shape_end = "S";
  sym.movement = SegmentMovement::Simultaneous;
  sym.orientation = OrientationRelation::Identical;
  auto type1 = interpret(sym, nullptr, nullptr, lex.find("DRIVE"), inv);
  CHECK(type1.verdict == Verdict::TwoHanded);
  CHECK(type1.sign_type == SignType::Type1);
  CHECK(type1.confidence == 1.0);
  CHECK(rules(type1) == std::vector<int>{7});
  CHECK(interpret(sym, nullptr, nullptr, nullptr, inv).confidence == 0.5);

  HandActivity alternating = sym;
  alternating.movement = SegmentMovement::Alternating;
  CHECK(interpret(alternating, nullptr, nullptr, nullptr, inv).sign_type == SignType::Type1);

  HandActivity same_base = dom_moving("X", "X");
  same_base.ndh.shape_start = "X";
  same_base.ndh.shape_end = "X";
  same_base.contact_between_hands = true;
  auto type2 = interpret(same_base, nullptr, nullptr, nullptr, inv);
  CHECK(type2.sign_type == SignType::Type2);

  HandActivity unmarked_base = dom_moving("1", "1");
  unmarked_base.ndh.shape_start = "B";
  unmarked_base.ndh.shape_end = "B";
  unmarked_base.contact_between_hands = true;
  auto type3 = interpret(unmarked_base, nullptr, nullptr, nullptr, inv);
  CHECK(type3.sign_type == SignType::Type3);

  // Without contact the static hand is not a location, so nothing holds.
  HandActivity contactless = unmarked_base;
  contactless.contact_between_hands = false;
  CHECK(interpret(contactless, nullptr, nullptr, nullptr, inv).verdict ==
        Verdict::TwoIndependent);
}

TEST_CASE("every matching rule is recorded in ascending order") {
  const Inventory& inv = testutil::inventory();
  HandActivity seg = dom_moving("I", "I");
  seg.ndh.shape_start = "1";
  seg.ndh_points_at_dom = true;
  seg.concurrent_dom_is_fingerspelled = true;
  HandActivity next = dom_moving("1", "1");
  next.ndh.shape_start = "1";
  next.ndh.moving = true;

  auto r = interpret(seg, nullptr, &next, nullptr, inv);
  CHECK(rules(r) == std::vector<int>{2, 4, 6});
  CHECK(r.confound == ConfoundTag::AnticipatoryPositioning);  // earliest wins
}

TEST_CASE("interpretation is a pure function of its inputs") {
  const Inventory& inv = testutil::inventory();
  HandActivity seg = dom_moving("B-L", "B-L");
  seg.ndh.shape_start = "S";
  seg.ndh.held_since_previous = true;
  HandActivity prev = dom_moving("S", "S");
  prev.ndh.shape_end = "S";

  auto a = interpret(seg, &prev, nullptr, nullptr, inv);
  auto b = interpret(seg, &prev, nullptr, nullptr, inv);
  CHECK(a.fired_rules == b.fired_rules);
  CHECK(a.verdict == b.verdict);
  CHECK(a.confidence == b.confidence);
}

TEST_CASE("utterance segmentation pairs each anchor with its best overlap") {
  const Inventory& inv = testutil::inventory();
  const Lexicon& lex = testutil::demo_lexicon();
  Utterance u;
  u.id = "u";
  u.signer = "s";
  SignToken a;
  a.gloss = "KNOW";
  a.start_frame = 0;
  a.end_frame = 5;
  SignToken b;
  b.gloss = "TRUE";
  b.start_frame = 6;
  b.end_frame = 10;
  SignToken n1;
  n1.gloss = "PHONE";
  n1.tier = Tier::Nondominant;
  n1.start_frame = 0;
  n1.end_frame = 4;
  n1.obs_ndh_start = "S";
  n1.obs_ndh_end = "S";
  SignToken n2;
  n2.gloss = "PHONE";
  n2.tier = Tier::Nondominant;
  n2.start_frame = 5;
  n2.end_frame = 8;
  n2.obs_ndh_start = "5";
  n2.obs_ndh_end = "5";
  u.tokens = {a, b, n1, n2};

  auto result = interpret_utterance(u, lex, inv);
  REQUIRE(result.segments.size() == 2);  // both partners paired, none lone
  CHECK(result.segments[0].token->gloss == "KNOW");
  CHECK(result.segments[0].activity.ndh.shape_start == "S");
  CHECK(result.segments[1].token->gloss == "TRUE");
  CHECK(result.segments[1].activity.ndh.shape_start == "5");
  CHECK_FALSE(result.segments[0].activity.ndh.held_since_previous);
  CHECK(result.segments[1].activity.ndh.held_since_previous);  // partner starts earlier
}

TEST_CASE("an unpaired non-dominant token becomes its own segment") {
  const Inventory& inv = testutil::inventory();
  const Lexicon& lex = testutil::demo_lexicon();
  Utterance u;
  u.id = "u";
  u.signer = "s";
  SignToken my;
  my.gloss = "MY";
  my.start_frame = 0;
  my.end_frame = 1;
  SignToken phone;
  phone.gloss = "PHONE";
  phone.tier = Tier::Nondominant;
  phone.start_frame = 3;
  phone.end_frame = 8;
  u.tokens = {my, phone};

  auto result = interpret_utterance(u, lex, inv);
  REQUIRE(result.segments.size() == 2);
  CHECK(result.segments[0].token->gloss == "MY");
  CHECK(result.segments[0].interpretation.verdict == Verdict::PlainOneHanded);
  const auto& lone = result.segments[1];
  CHECK(lone.token->gloss == "PHONE");
  CHECK(lone.activity.ndh.moving);
  CHECK_FALSE(lone.activity.dom.shape_start);
  CHECK(lone.activity.ndh.shape_start == "Y");  // citation form fills the gap
  CHECK(lone.interpretation.verdict == Verdict::PlainOneHanded);
  CHECK(lone.interpretation.confidence == 1.0);
}

TEST_CASE("scenario corpus interpretations match the expected readings") {
  const Inventory& inv = testutil::inventory();
  const Lexicon& lex = testutil::demo_lexicon();

  struct Expect {
    const char* gloss;
    Verdict verdict;
    std::optional<ConfoundTag> confound;
    std::vector<int> fired;
    double confidence;
  };
  struct Scenario {
    const char* id;
    std::vector<Expect> segments;
  };
  const std::vector<Scenario> expectations = {
      {"hold-spread",
       {{"DRIVE", Verdict::TwoHanded, std::nullopt, {7}, 1.0},
        {"KNOW", Verdict::OneHandedWithConfound, ConfoundTag::HoldH2Spread, {1, 6}, 0.5},
        {"THINK", Verdict::OneHandedWithConfound, ConfoundTag::HoldH2Spread, {1, 6}, 0.5}}},
      {"mirroring",
       {{"SAY", Verdict::PlainOneHanded, std::nullopt, {8}, 1.0},
        {"IX-3p", Verdict::OneHandedWithConfound, ConfoundTag::Mirroring, {5, 7}, 1.0}}},
      {"independent",
       {{"MY", Verdict::PlainOneHanded, std::nullopt, {8}, 1.0},
        {"EXPERIENCE", Verdict::TwoIndependent, std::nullopt, {6}, 0.5}}},
      {"focus",
       {{"SAY", Verdict::PlainOneHanded, std::nullopt, {8}, 1.0},
        {"fs-JOHN", Verdict::OneHandedWithConfound, ConfoundTag::FocusMarker, {4, 6}, 0.5}}},
      {"buoy",
       {{"SELF", Verdict::OneHandedWithConfound, ConfoundTag::ThemeBuoy, {3, 6}, 0.5},
        {"TRUE", Verdict::OneHandedWithConfound, ConfoundTag::ThemeBuoy, {3, 6}, 0.5}}},
      {"weak-drop",
       {{"(1h)ANGRY", Verdict::MarkedOneHandVariant, std::nullopt, {8}, 1.0},
        {"KNOW", Verdict::PlainOneHanded, std::nullopt, {8}, 1.0}}},
  };

  const auto& corpus = testutil::scenario_corpus();
  REQUIRE(corpus.size() == expectations.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Scenario& want = expectations[i];
    CAPTURE(want.id);
    REQUIRE(corpus[i].id == want.id);
    auto result = interpret_utterance(corpus[i], lex, inv);
    REQUIRE(result.segments.size() == want.segments.size());
    for (std::size_t s = 0; s < want.segments.size(); ++s) {
      const Expect& e = want.segments[s];
      CAPTURE(e.gloss);
      CHECK(result.segments[s].token->gloss == e.gloss);
      CHECK(result.segments[s].interpretation.verdict == e.verdict);
      CHECK(result.segments[s].interpretation.confound == e.confound);
      CHECK(result.segments[s].interpretation.fired_rules == e.fired);
      CHECK(result.segments[s].interpretation.confidence == e.confidence);
    }
  }

  // The hold-spread reading keeps the genuine two-handed sign's type.
  auto hold = interpret_utterance(corpus[0], lex, inv);
  CHECK(hold.segments[0].interpretation.sign_type == SignType::Type1);
  // The mirrored pointer keeps its alternative reading.
  auto mirror = interpret_utterance(corpus[1], lex, inv);
  CHECK(mirror.segments[1].interpretation.secondary == Verdict::MarkedTwoHandVariant);
}

TEST_CASE("utterance interpretation is deterministic") {
  const Inventory& inv = testutil::inventory();
  const Lexicon& lex = testutil::demo_lexicon();
  for (const Utterance& u : testutil::scenario_corpus()) {
    CHECK(render(interpret_utterance(u, lex, inv)) == render(interpret_utterance(u, lex, inv)));
  }
}
