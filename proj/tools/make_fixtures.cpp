// Regenerates the synthetic fixture files under data/fixtures:
//
//   stats_top3.json       transition counts for three high-frequency starts
//   coartic_lexicon.tsv   citation forms for the synthetic corpus
//   coartic_corpus.jsonl  corpus with planted handshape assimilation
//   scenarios.jsonl       utterances exercising the hand-role cascade
//
// Output is deterministic; a regeneration must reproduce the checked-in
// files byte for byte.  Before exiting the generator re-reads everything it
// wrote and verifies the headline numbers, so a drift between the plan and
// the library fails here rather than in a downstream test.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "signphon/coarticulation.hpp"
#include "signphon/corpus.hpp"
#include "signphon/disambiguator.hpp"
#include "signphon/inventory.hpp"
#include "signphon/lexicon.hpp"
#include "signphon/transitions.hpp"

using namespace signphon;

namespace {

[[noreturn]] void die(const std::string& msg) {
  std::cerr << "make_fixtures: " << msg << '\n';
  std::exit(1);
}

void expect(bool ok, const std::string& what) {
  if (!ok) die("self-check failed: " + what);
}

// ---------------------------------------------------------------------------
// Corpus plan

struct Spec {
  std::string gloss;
  Tier tier = Tier::Dominant;
  std::optional<std::string> ds, de, ns, ne;
  std::set<SignClass> tags;
};

Spec clean_token(const std::string& shape) {
  Spec s;
  s.gloss = "ONE-" + shape;
  s.ds = shape;
  s.de = shape;
  return s;
}

Spec filler(const std::string& shape) {
  Spec s;
  s.gloss = "F-" + shape;
  return s;
}

Spec filler2(const std::string& shape) {
  Spec s;
  s.gloss = "F2-" + shape;
  s.tier = Tier::Both;
  return s;
}

Spec extra(const std::string& gloss, SignClass tag) {
  Spec s;
  s.gloss = gloss;
  s.tags.insert(tag);
  return s;
}

// Packs token groups into utterances of at most 280 tokens.  A group never
// straddles an utterance boundary, so a planted deviation always keeps the
// in-group neighbor it answers to.
class Builder {
 public:
  void group(std::vector<Spec> specs) {
    if (cur_.size() + specs.size() > kMaxTokens) flush();
    for (Spec& s : specs) cur_.push_back(std::move(s));
  }
  void one(Spec spec) {
    std::vector<Spec> g;
    g.push_back(std::move(spec));
    group(std::move(g));
  }
  void flush() {
    if (!cur_.empty()) {
      planned_.push_back(std::move(cur_));
      cur_.clear();
    }
  }
  std::vector<Utterance> finish() {
    flush();
    std::vector<Utterance> out;
    for (std::size_t i = 0; i < planned_.size(); ++i) {
      Utterance u;
      char id[16];
      std::snprintf(id, sizeof id, "synth-%04zu", i + 1);
      u.id = id;
      u.signer = "synth";
      u.fps = 30;
      int frame = 0;
      for (Spec& spec : planned_[i]) {
        SignToken t;
        t.gloss = std::move(spec.gloss);
        t.tier = spec.tier;
        t.start_frame = frame;
        t.end_frame = frame + 2;
        frame += 4;
        t.obs_dom_start = std::move(spec.ds);
        t.obs_dom_end = std::move(spec.de);
        t.obs_ndh_start = std::move(spec.ns);
        t.obs_ndh_end = std::move(spec.ne);
        t.class_tags = std::move(spec.tags);
        u.tokens.push_back(std::move(t));
      }
      out.push_back(std::move(u));
    }
    return out;
  }

 private:
  static constexpr std::size_t kMaxTokens = 280;
  std::vector<Spec> cur_;
  std::vector<std::vector<Spec>> planned_;
};

struct Tally {
  long long targets = 0;
  long long trigger_fillers = 0;
  long long clean = 0;
  long long padding = 0;
  long long extras = 0;
};

// Citation shape of each articulatory class plus its near and far
// assimilation partners.  The Y class has no near partner.
struct ClassInfo {
  const char* canon;
  const char* subtle;
  const char* major;
};

const ClassInfo kC1{"1", "D", "B"};
const ClassInfo kC2{"B-L", "bent-B-L", "S"};
const ClassInfo kC3{"O", "flat-O", "5"};
const ClassInfo kC4{"A", "cocked-S", "O"};
const ClassInfo kCY{"Y", nullptr, "5"};
const ClassInfo kCPK{"P/K", "V", "A"};

const char* partner(const ClassInfo& c, bool major) {
  const char* p = major ? c.major : c.subtle;
  if (!p) die("class has no partner at this severity");
  return p;
}

// Every trigger token presents exactly the deviated shape, so the deviation
// is always strictly closer to the trigger than the citation form is.

void persev_one(Builder& b, Tally& t, const ClassInfo& c, bool major) {
  const char* dev = partner(c, major);
  Spec target;
  target.gloss = std::string("ONE-") + c.canon;
  target.ds = dev;
  target.de = c.canon;
  std::vector<Spec> g;
  g.push_back(filler(dev));
  g.push_back(std::move(target));
  b.group(std::move(g));
  ++t.targets;
  ++t.trigger_fillers;
}

void antic_one(Builder& b, Tally& t, const ClassInfo& c, bool major) {
  const char* dev = partner(c, major);
  Spec target;
  target.gloss = std::string("ONE-") + c.canon;
  target.ds = c.canon;
  target.de = dev;
  std::vector<Spec> g;
  g.push_back(std::move(target));
  g.push_back(filler(dev));
  b.group(std::move(g));
  ++t.targets;
  ++t.trigger_fillers;
}

// Variant of antic_one where the trigger is a pointing sign whose own
// handshape already assimilated; the pointer is excluded from examination
// but still serves as a trigger.
void antic_one_pointer(Builder& b, Tally& t) {
  Spec target;
  target.gloss = "ONE-B-L";
  target.ds = "B-L";
  target.de = "S";
  Spec pointer;
  pointer.gloss = "IX-1p";
  pointer.ds = "S";
  pointer.de = "S";
  pointer.tags.insert(SignClass::Index);
  std::vector<Spec> g;
  g.push_back(std::move(target));
  g.push_back(std::move(pointer));
  b.group(std::move(g));
  ++t.targets;
  ++t.extras;
}

void antic_one_unclassed(Builder& b, Tally& t, bool major) {
  const char* dev = partner(kC2, major);
  Spec target;
  target.gloss = "ONE-B-L";
  target.de = dev;
  std::vector<Spec> g;
  g.push_back(std::move(target));
  g.push_back(filler(dev));
  b.group(std::move(g));
  ++t.targets;
  ++t.trigger_fillers;
}

void both_dir_one(Builder& b, Tally& t, const ClassInfo& c) {
  const char* s = partner(c, false);
  const char* e = partner(c, true);
  Spec target;
  target.gloss = std::string("ONE-") + c.canon;
  target.ds = s;
  target.de = e;
  std::vector<Spec> g;
  g.push_back(filler(s));
  g.push_back(std::move(target));
  g.push_back(filler(e));
  b.group(std::move(g));
  ++t.targets;
  t.trigger_fillers += 2;
}

void persev_two(Builder& b, Tally& t, const ClassInfo& c, bool major) {
  const char* dev = partner(c, major);
  Spec target;
  target.gloss = std::string("TWO-") + c.canon;
  target.tier = Tier::Both;
  target.ds = dev;
  target.de = c.canon;
  std::vector<Spec> g;
  g.push_back(filler(dev));
  g.push_back(std::move(target));
  b.group(std::move(g));
  ++t.targets;
  ++t.trigger_fillers;
}

void antic_two(Builder& b, Tally& t, const ClassInfo& c, bool major) {
  const char* dev = partner(c, major);
  Spec target;
  target.gloss = std::string("TWO-") + c.canon;
  target.tier = Tier::Both;
  target.ds = c.canon;
  target.de = dev;
  std::vector<Spec> g;
  g.push_back(std::move(target));
  g.push_back(filler(dev));
  b.group(std::move(g));
  ++t.targets;
  ++t.trigger_fillers;
}

void antic_two_unclassed(Builder& b, Tally& t, bool major) {
  const char* dev = partner(kC2, major);
  Spec target;
  target.gloss = "TWO-B-L";
  target.tier = Tier::Both;
  target.de = dev;
  std::vector<Spec> g;
  g.push_back(std::move(target));
  g.push_back(filler(dev));
  b.group(std::move(g));
  ++t.targets;
  ++t.trigger_fillers;
}

void both_dir_two(Builder& b, Tally& t, const ClassInfo& c) {
  const char* s = partner(c, false);
  const char* e = partner(c, true);
  Spec target;
  target.gloss = std::string("TWO-") + c.canon;
  target.tier = Tier::Both;
  target.ds = s;
  target.de = e;
  std::vector<Spec> g;
  g.push_back(filler(s));
  g.push_back(std::move(target));
  g.push_back(filler(e));
  b.group(std::move(g));
  ++t.targets;
  t.trigger_fillers += 2;
}

// A one-handed sign produced on the non-dominant hand, deviating toward the
// two-handed fillers around it on both sides.
void ndh_both_dir(Builder& b, Tally& t) {
  Spec target;
  target.gloss = "ONE-A";
  target.tier = Tier::Nondominant;
  target.ns = "cocked-S";
  target.ne = "O";
  std::vector<Spec> g;
  g.push_back(filler2("cocked-S"));
  g.push_back(std::move(target));
  g.push_back(filler2("O"));
  b.group(std::move(g));
  ++t.targets;
  t.trigger_fillers += 2;
}

// A two-handed sign whose hands end in different deviated shapes, each
// closer to the upcoming filler than the citation form is.
void both_hands_antic(Builder& b, Tally& t) {
  Spec target;
  target.gloss = "TWO-A";
  target.tier = Tier::Both;
  target.de = "O";
  target.ne = "cocked-S";
  std::vector<Spec> g;
  g.push_back(std::move(target));
  g.push_back(filler2("O"));
  b.group(std::move(g));
  ++t.targets;
  ++t.trigger_fillers;
}

void ndh_antic(Builder& b, Tally& t, bool major) {
  const char* dev = major ? "O" : "cocked-S";
  Spec target;
  target.gloss = "ONE-A";
  target.tier = Tier::Nondominant;
  target.ne = dev;
  std::vector<Spec> g;
  g.push_back(std::move(target));
  g.push_back(filler2(dev));
  b.group(std::move(g));
  ++t.targets;
  ++t.trigger_fillers;
}

struct SeverityRow {
  const ClassInfo* cls;
  int subtle;
  int major;
};

template <typename Emit>
void emit_rows(Builder& b, Tally& t, const std::vector<SeverityRow>& rows, Emit emit) {
  for (const SeverityRow& r : rows) {
    for (int i = 0; i < r.subtle; ++i) emit(b, t, *r.cls, false);
    for (int i = 0; i < r.major; ++i) emit(b, t, *r.cls, true);
  }
}

std::vector<Utterance> build_corpus(Tally& tally) {
  Builder b;

  emit_rows(b, tally,
            {{&kC1, 3, 3}, {&kC2, 4, 8}, {&kC3, 1, 0}, {&kC4, 0, 2}, {&kCY, 0, 1}},
            persev_one);

  emit_rows(b, tally, {{&kC1, 6, 3}, {&kC2, 12, 4}}, antic_one);
  for (int i = 0; i < 3; ++i) antic_one_pointer(b, tally);
  emit_rows(b, tally, {{&kC3, 2, 1}, {&kC4, 2, 1}, {&kCY, 0, 3}, {&kCPK, 2, 1}}, antic_one);

  for (int i = 0; i < 9; ++i) antic_one_unclassed(b, tally, false);
  for (int i = 0; i < 12; ++i) antic_one_unclassed(b, tally, true);

  for (int i = 0; i < 2; ++i) both_dir_one(b, tally, kC1);
  for (int i = 0; i < 4; ++i) both_dir_one(b, tally, kC2);
  both_dir_one(b, tally, kC3);

  for (int i = 0; i < 10; ++i) {
    b.one(extra("CL:vehicle", SignClass::Classifier));
    ++tally.extras;
  }

  emit_rows(b, tally, {{&kC1, 1, 2}, {&kC2, 3, 4}, {&kC3, 0, 1}, {&kC4, 0, 1}}, persev_two);
  emit_rows(b, tally, {{&kC1, 1, 2}, {&kC2, 4, 7}, {&kC4, 2, 3}}, antic_two);

  for (int i = 0; i < 3; ++i) antic_two_unclassed(b, tally, false);
  for (int i = 0; i < 10; ++i) antic_two_unclassed(b, tally, true);

  both_dir_two(b, tally, kC1);
  for (int i = 0; i < 2; ++i) both_dir_two(b, tally, kC2);

  for (int i = 0; i < 10; ++i) {
    b.one(extra("CL:vehicle", SignClass::Classifier));
    ++tally.extras;
  }

  for (int i = 0; i < 2; ++i) ndh_both_dir(b, tally);
  for (int i = 0; i < 15; ++i) both_hands_antic(b, tally);
  ndh_antic(b, tally, false);
  for (int i = 0; i < 3; ++i) ndh_antic(b, tally, true);

  for (int i = 0; i < 15; ++i) {
    b.one(extra("G:well", SignClass::Gesture));
    ++tally.extras;
  }

  // Clean tokens, annotated at their citation shapes, emitted round-robin
  // with the remaining excluded extras sprinkled through the stream.
  struct CleanRow {
    const char* shape;
    int remaining;
  };
  std::vector<CleanRow> clean_rows = {
      {"1", 200}, {"X", 120},   {"D", 61},  {"B-L", 500}, {"5", 300}, {"B", 137},
      {"O", 100}, {"flat-O", 85}, {"A", 250}, {"S", 150},   {"10", 48}, {"Y", 6},
      {"P/K", 11}, {"C", 100},  {"V", 80},  {"E", 60}};
  std::vector<Spec> extra_queue;
  for (int i = 0; i < 12; ++i) extra_queue.push_back(extra("fs-JOHN", SignClass::Fingerspelled));
  for (int i = 0; i < 10; ++i) extra_queue.push_back(extra("part:indef", SignClass::PartIndef));
  std::size_t next_extra = 0;
  long long emitted = 0;
  bool any = true;
  while (any) {
    any = false;
    for (CleanRow& row : clean_rows) {
      if (row.remaining == 0) continue;
      any = true;
      --row.remaining;
      b.one(clean_token(row.shape));
      ++tally.clean;
      ++emitted;
      if (emitted % 90 == 0 && next_extra < extra_queue.size()) {
        b.one(extra_queue[next_extra++]);
        ++tally.extras;
      }
    }
  }
  if (next_extra != extra_queue.size()) die("extra queue not drained");

  // Filler padding up to the examined-token budget.
  long long examined = tally.targets + tally.trigger_fillers + tally.clean;
  const long long kExamined = 11077;
  if (examined > kExamined) die("plan exceeds the examined-token budget");
  while (examined + tally.padding < kExamined) {
    b.one(filler("5"));
    ++tally.padding;
  }

  return b.finish();
}

// ---------------------------------------------------------------------------
// Coarticulation lexicon

std::string coartic_lexicon_tsv() {
  std::ostringstream out;
  out << "# Citation forms for the synthetic coarticulation corpus.\n";
  out << "gloss\thandedness\tdom_start\tdom_end\tndh_start\tndh_end\tboth_hands_move\t"
         "movement_relation\tcontacts_body\tndh_is_location\torientation_relation\t"
         "sign_class\n";
  auto one = [&](const std::string& gloss, const std::string& shape, const char* cls) {
    out << gloss << "\tone\t" << shape << '\t' << shape
        << "\t\t\tfalse\tnone\tfalse\tfalse\tother\t" << cls << '\n';
  };
  auto two = [&](const std::string& gloss, const std::string& shape) {
    out << gloss << "\ttwo\t" << shape << '\t' << shape << '\t' << shape << '\t' << shape
        << "\ttrue\tsimultaneous\tfalse\tfalse\tidentical\tlexical\n";
  };
  for (const char* s : {"1", "X", "D", "B-L", "5", "B", "O", "flat-O", "A", "S", "10", "Y",
                        "P/K", "C", "V", "E"}) {
    one(std::string("ONE-") + s, s, "lexical");
  }
  for (const char* s : {"1", "B-L", "O", "A"}) two(std::string("TWO-") + s, s);
  for (const char* s : {"D", "B", "bent-B-L", "S", "flat-O", "5", "cocked-S", "O", "V", "A"}) {
    one(std::string("F-") + s, s, "lexical");
  }
  for (const char* s : {"cocked-S", "O"}) two(std::string("F2-") + s, s);
  one("IX-1p", "1", "index");
  one("part:indef", "5", "part_indef");
  return out.str();
}

// ---------------------------------------------------------------------------
// Transition statistics

TransitionTable stats_table() {
  TransitionTable t(40);
  t.add("B-L", "B-L", 917);
  t.add("B-L", "bent-B-L", 89);
  t.add("B-L", "flat-O", 28);
  t.add("B-L", "10", 27);
  t.add("B-L", "crvd-B", 12);
  t.add("B-L", "A", 4);
  t.add("B-L", "5", 3);
  t.add("B-L", "Y", 2);
  t.add("B-L", "flat-O/2", 2);
  t.add("B-L", "tight-C", 2);
  t.add("B-L", "baby-O", 1);
  t.add("B-L", "bent-B", 1);
  t.add("B-L", "crvd-5", 1);
  t.add("1", "1", 867);
  t.add("1", "X", 71);
  t.add("1", "bent-1", 18);
  t.add("1", "V", 9);
  t.add("1", "5", 7);
  t.add("1", "S", 5);
  t.add("1", "3", 4);
  t.add("1", "4", 4);
  t.add("1", "cocked-S", 3);
  t.add("1", "B-L", 1);
  t.add("1", "X-over-thumb", 1);
  t.add("1", "Y", 1);
  t.add("1", "A", 1);
  t.add("5", "5", 557);
  t.add("5", "S", 71);
  t.add("5", "flat-O", 58);
  t.add("5", "5-C", 22);
  t.add("5", "A", 17);
  t.add("5", "crvd-5", 14);
  t.add("5", "8", 11);
  t.add("5", "10", 6);
  t.add("5", "crvd-sprd-B", 5);
  t.add("5", "fanned-flat-O", 4);
  t.add("5", "5-C-L", 3);
  t.add("5", "25", 2);
  t.add("5", "B-L", 2);
  t.add("5", "4", 1);
  t.add("5", "O", 1);
  t.add("5", "5-C-tt", 1);
  t.add("5", "bent-B", 1);
  t.add("5", "crvd-B", 1);
  return t;
}

// ---------------------------------------------------------------------------
// Hand-role scenarios

std::vector<Utterance> scenario_corpus() {
  auto tok = [](const char* gloss, Tier tier, int s, int e) {
    SignToken t;
    t.gloss = gloss;
    t.tier = tier;
    t.start_frame = s;
    t.end_frame = e;
    return t;
  };
  auto utt = [](const char* id, std::vector<SignToken> tokens) {
    Utterance u;
    u.id = id;
    u.signer = "demo";
    u.fps = 30;
    u.tokens = std::move(tokens);
    return u;
  };

  std::vector<Utterance> out;
  out.push_back(utt("hold-spread", {
      tok("DRIVE", Tier::Both, 0, 3),
      tok("DRIVE", Tier::Nondominant, 4, 10),
      tok("KNOW", Tier::Dominant, 5, 7),
      tok("THINK", Tier::Dominant, 8, 10),
  }));
  out.push_back(utt("mirroring", {
      tok("SAY", Tier::Dominant, 0, 2),
      tok("IX-3p", Tier::Dominant, 3, 5),
      tok("IX-3p", Tier::Nondominant, 3, 5),
  }));
  out.push_back(utt("independent", {
      tok("MY", Tier::Dominant, 0, 1),
      tok("PHONE", Tier::Nondominant, 1, 8),
      tok("EXPERIENCE", Tier::Dominant, 2, 6),
  }));
  {
    std::vector<SignToken> tokens = {
        tok("SAY", Tier::Dominant, 0, 1),
        tok("1\"focus\"", Tier::Nondominant, 1, 7),
        tok("fs-JOHN", Tier::Dominant, 2, 6),
    };
    tokens[2].class_tags.insert(SignClass::Fingerspelled);
    out.push_back(utt("focus", std::move(tokens)));
  }
  out.push_back(utt("buoy", {
      tok("THEME", Tier::Nondominant, 1, 9),
      tok("SELF", Tier::Dominant, 2, 4),
      tok("TRUE", Tier::Dominant, 5, 8),
  }));
  out.push_back(utt("weak-drop", {
      tok("(1h)ANGRY", Tier::Dominant, 0, 3),
      tok("KNOW", Tier::Dominant, 4, 6),
  }));
  return out;
}

// ---------------------------------------------------------------------------
// Self-checks

void check_corpus(const std::string& corpus_text, const std::string& lexicon_text,
                  const Inventory& inv) {
  std::istringstream lex_in(lexicon_text);
  Lexicon lex = Lexicon::parse(lex_in, inv);
  std::istringstream corpus_in(corpus_text);
  std::vector<Utterance> corpus = parse_corpus(corpus_in, inv);

  PrevalenceReport rep = scan(corpus, lex, inv);
  expect(rep.total_examined == 11077, "examined token count");
  expect(rep.total_coarticulated == 158, "assimilation record count");
  expect(rep.skipped_unresolved == 0, "unresolved token count");
  expect(rep.severity_subtle == 56 && rep.severity_major == 75 && rep.severity_mixed == 27,
         "severity breakdown");

  auto cls = [&](HandshapeClass c, long long coartic, long long occurrences) {
    const ClassPrevalence& p = rep.per_class.at(c);
    expect(p.coartic == coartic && p.occurrences == occurrences,
           std::string("class prevalence for ") + std::string(to_string(c)));
  };
  cls(HandshapeClass::Class1, 24, 405);
  cls(HandshapeClass::Class2, 55, 992);
  cls(HandshapeClass::Class3, 6, 191);
  cls(HandshapeClass::Class4, 11, 459);
  cls(HandshapeClass::ClassY, 4, 10);
  cls(HandshapeClass::ClassPK, 3, 14);
  cls(HandshapeClass::Other, 0, 240);

  auto split = [&](const DirectionSplit& s, long long p, long long a, long long b,
                   const char* name) {
    expect(s.persev == p && s.antic == a && s.both == b,
           std::string("direction split: ") + name);
  };
  split(rep.direction.one_handed, 29, 68, 7, "one-handed");
  split(rep.direction.two_handed_dom, 15, 35, 3, "two-handed dominant");
  split(rep.direction.ndh_affected, 2, 21, 2, "non-dominant affected");
  expect(rep.overall_rate > 0.014 && rep.overall_rate < 0.015, "overall rate");
}

void check_stats(const TransitionTable& table, const Inventory& inv) {
  FrequencyReport rep = report(table);
  expect(rep.rows.size() == 3, "row count");
  expect(rep.rows[0].start == "B-L" && rep.rows[0].total == 1089, "first row");
  expect(rep.rows[1].start == "1" && rep.rows[1].total == 992, "second row");
  expect(rep.rows[2].start == "5" && rep.rows[2].total == 777, "third row");
  expect(rep.rows[0].non_identity_ends_over_1pct == 4, "B-L spread count");
  expect(rep.rows[1].non_identity_ends_over_1pct == 2, "1 spread count");
  expect(rep.rows[2].non_identity_ends_over_1pct == 6, "5 spread count");
  expect(rep.grand_total == 2858, "grand total");

  SmoothingConfig raw{0.0};
  CondProb p = cond_prob(table, "B-L", "B-L", inv, raw);
  expect(!p.undefined_row && p.value == 917.0 / 1089.0, "unsmoothed conditional");
}

void check_scenarios(const std::string& text, const std::string& lexicon_path,
                     const Inventory& inv) {
  Lexicon lex = Lexicon::parse_file(lexicon_path, inv);
  std::istringstream in(text);
  std::vector<Utterance> corpus = parse_corpus(in, inv);
  expect(corpus.size() == 6, "scenario count");

  auto seg = [&](const UtteranceInterpretation& u, const char* gloss)
      -> const UtteranceInterpretation::Segment& {
    for (const auto& s : u.segments) {
      if (s.token->gloss == gloss) return s;
    }
    die(std::string("scenario segment not found: ") + gloss);
  };

  auto interp = [&](const Utterance& u) { return interpret_utterance(u, lex, inv); };

  {
    auto u = interp(corpus[0]);
    expect(u.segments.size() == 3, "hold-spread segment count");
    expect(seg(u, "DRIVE").interpretation.fired_rules.front() == 7 &&
               seg(u, "DRIVE").interpretation.sign_type == SignType::Type1,
           "hold-spread: DRIVE");
    expect(seg(u, "KNOW").interpretation.fired_rules.front() == 1 &&
               seg(u, "KNOW").interpretation.confound == ConfoundTag::HoldH2Spread,
           "hold-spread: KNOW");
    expect(seg(u, "THINK").interpretation.fired_rules.front() == 1, "hold-spread: THINK");
  }
  {
    auto u = interp(corpus[1]);
    const auto& ix = seg(u, "IX-3p").interpretation;
    expect(ix.fired_rules.front() == 5 && ix.confound == ConfoundTag::Mirroring &&
               ix.secondary == Verdict::MarkedTwoHandVariant,
           "mirroring: IX-3p");
  }
  {
    auto u = interp(corpus[2]);
    expect(seg(u, "EXPERIENCE").interpretation.verdict == Verdict::TwoIndependent,
           "independent: EXPERIENCE");
  }
  {
    auto u = interp(corpus[3]);
    expect(seg(u, "fs-JOHN").interpretation.confound == ConfoundTag::FocusMarker,
           "focus: fs-JOHN");
  }
  {
    auto u = interp(corpus[4]);
    expect(seg(u, "SELF").interpretation.confound == ConfoundTag::ThemeBuoy, "buoy: SELF");
    expect(seg(u, "TRUE").interpretation.confound == ConfoundTag::ThemeBuoy, "buoy: TRUE");
  }
  {
    auto u = interp(corpus[5]);
    expect(seg(u, "(1h)ANGRY").interpretation.verdict == Verdict::MarkedOneHandVariant,
           "weak-drop: (1h)ANGRY");
    expect(seg(u, "KNOW").interpretation.verdict == Verdict::PlainOneHanded,
           "weak-drop: KNOW");
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) die("cannot open " + path.string() + " for writing");
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regenerate the fixture files under data/fixtures"};
  std::string inventory_path;
  std::string scenario_lexicon_path;
  std::string out_dir;
  app.add_option("--inventory", inventory_path, "handshape inventory file")->required();
  app.add_option("--scenario-lexicon", scenario_lexicon_path,
                 "lexicon the scenario fixtures resolve against")
      ->required();
  app.add_option("--output", out_dir, "output directory")->required();
  CLI11_PARSE(app, argc, argv);

  try {
    Inventory inv = Inventory::load_file(inventory_path);

    Tally tally;
    std::vector<Utterance> corpus = build_corpus(tally);
    expect(tally.targets == 158, "planned target count");
    expect(tally.trigger_fillers == 167, "planned trigger filler count");
    expect(tally.clean == 2208, "planned clean count");
    expect(tally.extras == 60, "planned excluded-extra count");
    expect(tally.targets + tally.trigger_fillers + tally.clean + tally.padding == 11077,
           "planned examined total");

    std::string lexicon_text = coartic_lexicon_tsv();
    std::string corpus_text = save_corpus_string(corpus);
    std::string stats_text = save_stats_string(stats_table());
    std::string scenario_text = save_corpus_string(scenario_corpus());

    check_corpus(corpus_text, lexicon_text, inv);
    check_stats(stats_table(), inv);
    check_scenarios(scenario_text, scenario_lexicon_path, inv);

    std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "coartic_lexicon.tsv", lexicon_text);
    write_file(dir / "coartic_corpus.jsonl", corpus_text);
    write_file(dir / "stats_top3.json", stats_text);
    write_file(dir / "scenarios.jsonl", scenario_text);
  } catch (const std::exception& e) {
    die(e.what());
  }
  return 0;
}
