// Acceptance checklist for the toolkit. Each criterion prints one PASS/FAIL
// line; the exit code is the number of failures. Tolerances and time budgets
// are pinned here on purpose so regressions are loud.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "signphon/coarticulation.hpp"
#include "signphon/corpus.hpp"
#include "signphon/disambiguator.hpp"
#include "signphon/inventory.hpp"
#include "signphon/lexicon.hpp"
#include "signphon/reranker.hpp"
#include "signphon/transitions.hpp"
#include "support/battison_oracle.hpp"
#include "support/fixtures.hpp"

using namespace signphon;

namespace {

struct Checker {
  std::vector<std::string> problems;

  void truth(const std::string& what, bool ok) {
    if (!ok) problems.push_back(what);
  }

  template <class A, class B>
  void eq(const std::string& what, const A& got, const B& want) {
    if (!(got == static_cast<A>(want))) {
      std::ostringstream msg;
      msg << what << ": got " << got << ", want " << want;
      problems.push_back(msg.str());
    }
  }

  void close(const std::string& what, double got, double want, double tol) {
    if (!(std::abs(got - want) <= tol)) {
      std::ostringstream msg;
      msg.precision(12);
      msg << what << ": got " << got << ", want " << want << " within " << tol;
      problems.push_back(msg.str());
    }
  }
};

int g_failures = 0;

void criterion(int id, const std::string& name, double budget_seconds,
               const std::function<void(Checker&)>& body) {
  Checker c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.problems.push_back(std::string("unexpected exception: ") + e.what());
  }
  auto t1 = std::chrono::steady_clock::now();
  double elapsed = std::chrono::duration<double>(t1 - t0).count();
  if (elapsed > budget_seconds) {
    std::ostringstream msg;
    msg << "took " << elapsed << "s, budget " << budget_seconds << "s";
    c.problems.push_back(msg.str());
  }
  std::printf("%s  %d %s (%.0f ms)\n", c.problems.empty() ? "PASS" : "FAIL", id,
              name.c_str(), elapsed * 1000.0);
  for (const std::string& p : c.problems) std::printf("      %s\n", p.c_str());
  if (!c.problems.empty()) ++g_failures;
}

const PrevalenceReport& fixture_scan() {
  static PrevalenceReport rep = [] {
    std::vector<Utterance> corpus = testutil::fixture_corpus();
    return scan(corpus, testutil::fixture_lexicon(), testutil::inventory());
  }();
  return rep;
}

// Reference argmax over endpoint-likelihood products, written without the
// reranker so the two can disagree.
std::optional<std::pair<std::string, std::string>> likelihood_argmax(
    const ObservationPair& o) {
  std::optional<std::pair<std::string, std::string>> best;
  double best_score = 0.0;
  for (const auto& [s, ws] : o.start_scores) {
    if (ws <= 0) continue;
    for (const auto& [e, we] : o.end_scores) {
      if (we <= 0) continue;
      double score = ws * we;
      std::pair<std::string, std::string> key{s, e};
      if (!best || score > best_score || (score == best_score && key < *best)) {
        best = key;
        best_score = score;
      }
    }
  }
  return best;
}

std::string score_argmax(const ScoreMap& m) {
  std::string best;
  double best_score = -1.0;
  for (const auto& [label, score] : m) {
    if (score > best_score) {
      best = label;
      best_score = score;
    }
  }
  return best;
}

void check_criterion_1(Checker& c) {
  const TransitionTable& t = testutil::fixture_stats();
  c.eq("row total B-L", t.start_total("B-L"), 1089);
  c.eq("row total 1", t.start_total("1"), 992);
  c.eq("row total 5", t.start_total("5"), 777);
  c.eq("count B-L to B-L", t.count("B-L", "B-L"), 917);
  c.eq("count 1 to X", t.count("1", "X"), 71);
  c.eq("count 5 to S", t.count("5", "S"), 71);
}

void check_criterion_2(Checker& c) {
  const TransitionTable& t = testutil::fixture_stats();
  const Inventory& inv = testutil::inventory();
  CondProb p = cond_prob(t, "B-L", "B-L", inv, {0.0});
  c.truth("self transition defined", !p.undefined_row);
  c.close("self transition probability", p.value, 917.0 / 1089.0, 1e-6);

  FrequencyReport rep = report(t);
  const ReportRow* row = nullptr;
  for (const ReportRow& r : rep.rows) {
    if (r.start == "B-L") row = &r;
  }
  c.truth("report has a B-L row", row != nullptr);
  if (row) c.eq("confusions above one percent", row->non_identity_ends_over_1pct, 4);
}

void check_criterion_3(Checker& c) {
  const PrevalenceReport& rep = fixture_scan();
  c.eq("tokens examined", rep.total_examined, 11077);
  c.eq("tokens with assimilation", rep.total_coarticulated, 158);
  c.close("overall rate", rep.overall_rate, 158.0 / 11077.0, 1e-12);
  c.close("overall rate rounds to 1.43%", 100.0 * rep.overall_rate, 1.43, 0.005);
  c.eq("skipped unresolved glosses", rep.skipped_unresolved, 0);

  struct Want {
    HandshapeClass cls;
    long long coartic;
    long long occurrences;
  };
  const Want wants[] = {
      {HandshapeClass::Class1, 24, 405}, {HandshapeClass::Class2, 55, 992},
      {HandshapeClass::Class3, 6, 191},  {HandshapeClass::Class4, 11, 459},
      {HandshapeClass::ClassY, 4, 10},   {HandshapeClass::ClassPK, 3, 14},
      {HandshapeClass::Other, 0, 240},
  };
  for (const Want& w : wants) {
    std::string name(to_string(w.cls));
    auto it = rep.per_class.find(w.cls);
    if (it == rep.per_class.end()) {
      c.problems.push_back("missing class " + name);
      continue;
    }
    c.eq("class " + name + " assimilated", it->second.coartic, w.coartic);
    c.eq("class " + name + " occurrences", it->second.occurrences, w.occurrences);
  }

  c.eq("tokens with only subtle deviations", rep.severity_subtle, 56);
  c.eq("tokens with only major deviations", rep.severity_major, 75);
  c.eq("tokens with mixed severities", rep.severity_mixed, 27);
}

void check_criterion_4(Checker& c) {
  const DirectionBlock& d = fixture_scan().direction;
  c.eq("one-handed perseverative", d.one_handed.persev, 29);
  c.eq("one-handed anticipatory", d.one_handed.antic, 68);
  c.eq("one-handed bidirectional", d.one_handed.both, 7);
  c.eq("one-handed affected", d.one_handed.affected(), 90);
  c.eq("two-handed dominant perseverative", d.two_handed_dom.persev, 15);
  c.eq("two-handed dominant anticipatory", d.two_handed_dom.antic, 35);
  c.eq("two-handed dominant bidirectional", d.two_handed_dom.both, 3);
  c.eq("two-handed dominant affected", d.two_handed_dom.affected(), 47);
  c.eq("non-dominant perseverative", d.ndh_affected.persev, 2);
  c.eq("non-dominant anticipatory", d.ndh_affected.antic, 21);
  c.eq("non-dominant bidirectional", d.ndh_affected.both, 2);
  c.eq("non-dominant affected", d.ndh_affected.affected(), 21);
}

void check_criterion_5(Checker& c) {
  const Inventory& inv = testutil::inventory();
  const std::vector<std::string> shapes = {"1", "5",      "A", "B", "B-L", "bent-B-L",
                                           "C", "O",      "S", "X", "Y",   "flat-O"};
  long long cases = 0;
  long long disagreements = 0;

  auto compare = [&](const LexiconEntry& e) {
    ++cases;
    ValidationReport rep = validate_entry(e, inv);
    SignTypeResult typed = classify_sign_type(e, inv);
    oracle::Decision want = oracle::decide(e);
    bool ok = oracle::agrees(want.symmetry, rep.symmetry.status) &&
              oracle::agrees(want.dominance, rep.dominance.status) &&
              want.structurally_sound == rep.structural.empty() &&
              want.type == typed.type;
    if (!ok && ++disagreements <= 3) {
      c.problems.push_back("disagreement on gloss variant #" + std::to_string(cases));
    }
  };

  LexiconEntry e;
  e.gloss = "ENUM";
  e.handedness = Handedness::Two;
  for (const std::string& ds : shapes) {
    for (const std::string& de : shapes) {
      for (const std::string& ns : shapes) {
        for (const std::string& ne : shapes) {
          e.dom_start = ds;
          e.dom_end = de;
          e.ndh_start = ns;
          e.ndh_end = ne;
          for (bool bhm : {false, true}) {
            for (bool loc : {false, true}) {
              for (MovementRelation mov :
                   {MovementRelation::Simultaneous, MovementRelation::Alternating,
                    MovementRelation::None}) {
                for (OrientationRelation ori :
                     {OrientationRelation::Identical, OrientationRelation::Mirror,
                      OrientationRelation::Other}) {
                  e.both_hands_move = bhm;
                  e.ndh_is_location = loc;
                  e.movement_relation = mov;
                  e.orientation_relation = ori;
                  compare(e);
                }
              }
            }
          }
        }
      }
    }
  }

  e.handedness = Handedness::One;
  e.movement_relation = MovementRelation::None;
  e.orientation_relation = OrientationRelation::Other;
  for (const std::string& ds : shapes) {
    for (const std::string& de : shapes) {
      e.dom_start = ds;
      e.dom_end = de;
      for (bool bhm : {false, true}) {
        for (bool loc : {false, true}) {
          for (bool contact : {false, true}) {
            for (bool stray_ndh : {false, true}) {
              e.both_hands_move = bhm;
              e.ndh_is_location = loc;
              e.contacts_body = contact;
              if (stray_ndh) {
                e.ndh_start = ds;
                e.ndh_end = de;
              } else {
                e.ndh_start.reset();
                e.ndh_end.reset();
              }
              compare(e);
            }
          }
        }
      }
    }
  }
  e.contacts_body = false;

  c.truth("at least 40000 enumerated conditions (got " + std::to_string(cases) + ")",
          cases >= 40000);
  c.eq("oracle disagreements", disagreements, 0);
}

void check_criterion_6(Checker& c) {
  const Inventory& inv = testutil::inventory();
  JointPrior prior = joint_prior(testutil::fixture_stats(), inv, {0.1});
  const std::uint64_t seed = 20260823;

  auto noisy = synth_generate(prior, NoiseModel{0.5, 0.5, seed}, 10000);
  long long argmax_mismatches = 0;
  for (const Sample& s : noisy) {
    RerankResult r = rerank(s.obs, prior, 0.0);
    auto want = likelihood_argmax(s.obs);
    if (!want || r.ranked.empty() || r.ranked.front().start != want->first ||
        r.ranked.front().end != want->second) {
      ++argmax_mismatches;
    }
  }
  c.eq("prior-free top answers differing from plain likelihood", argmax_mismatches, 0);

  auto clean = synth_generate(prior, NoiseModel{0.0, 0.5, seed}, 10000);
  c.eq("noise-free rank-1 accuracy", evaluate(clean, prior, 0.0).rank1_accuracy, 1.0);
  c.eq("noise-free rank-1 accuracy with prior",
       evaluate(clean, prior, 1.0).rank1_accuracy, 1.0);

  double without = evaluate(noisy, prior, 0.0).rank1_accuracy;
  double with_prior = evaluate(noisy, prior, 1.0).rank1_accuracy;
  std::ostringstream what;
  what.precision(4);
  what << "accuracy gain from the prior (" << without << " -> " << with_prior << ")";
  c.truth(what.str(), with_prior - without >= 0.03);
}

void check_criterion_7(Checker& c) {
  const Inventory& inv = testutil::inventory();
  std::mt19937_64 rng(20260823);
  std::uniform_real_distribution<double> unif(0.05, 1.0);

  auto random_obs = [&] {
    ObservationPair o;
    for (const HandshapeEntry& entry : inv.entries()) {
      o.start_scores[entry.label] = unif(rng);
      o.end_scores[entry.label] = unif(rng);
    }
    return o;
  };

  long long masked_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    ObservationPair dom = random_obs();
    ObservationPair ndh = random_obs();
    PooledObservations pooled = pool_two_hands(dom, ndh, SignType::Type3, inv);
    bool ok = pooled.dom.start_scores == dom.start_scores &&
              pooled.dom.end_scores == dom.end_scores;
    double start_mass = 0.0;
    double end_mass = 0.0;
    for (const auto& [label, score] : pooled.ndh.start_scores) {
      if (!inv.is_unmarked(label) && score != 0.0) ok = false;
      start_mass += score;
    }
    for (const auto& [label, score] : pooled.ndh.end_scores) {
      if (!inv.is_unmarked(label) && score != 0.0) ok = false;
      end_mass += score;
    }
    if (std::abs(start_mass - 1.0) > 1e-9 || std::abs(end_mass - 1.0) > 1e-9) ok = false;
    if (!ok) ++masked_failures;
  }
  c.eq("placed-hand poolings leaking marked shapes", masked_failures, 0);

  long long argmax_failures = 0;
  for (int i = 0; i < 1000; ++i) {
    ObservationPair v = random_obs();
    PooledObservations pooled = pool_two_hands(v, v, SignType::Type1, inv);
    if (score_argmax(pooled.dom.start_scores) != score_argmax(v.start_scores) ||
        score_argmax(pooled.dom.end_scores) != score_argmax(v.end_scores) ||
        pooled.ndh.start_scores != pooled.dom.start_scores) {
      ++argmax_failures;
    }
  }
  c.eq("shared-shape poolings moving the top answer", argmax_failures, 0);
}

std::string render_interpretations(const std::vector<Utterance>& corpus,
                                   const Lexicon& lex, const Inventory& inv) {
  std::ostringstream out;
  for (const Utterance& u : corpus) {
    UtteranceInterpretation interp = interpret_utterance(u, lex, inv);
    for (const auto& seg : interp.segments) {
      const SegmentInterpretation& si = seg.interpretation;
      out << u.id << '|' << seg.token->gloss << '|' << to_string(si.verdict) << '|'
          << (si.confound ? to_string(*si.confound) : "-") << '|' << si.confidence
          << '|';
      for (int r : si.fired_rules) out << r << ',';
      out << '\n';
    }
  }
  return out.str();
}

void check_criterion_8(Checker& c) {
  const Inventory& inv = testutil::inventory();
  const Lexicon& lex = testutil::demo_lexicon();
  std::vector<Utterance> corpus = testutil::scenario_corpus();

  struct Want {
    std::string utterance;
    std::string gloss;
    Verdict verdict;
    std::optional<ConfoundTag> confound;
  };
  const std::vector<Want> wants = {
      {"hold-spread", "DRIVE", Verdict::TwoHanded, std::nullopt},
      {"hold-spread", "KNOW", Verdict::OneHandedWithConfound,
       ConfoundTag::HoldH2Spread},
      {"hold-spread", "THINK", Verdict::OneHandedWithConfound,
       ConfoundTag::HoldH2Spread},
      {"mirroring", "SAY", Verdict::PlainOneHanded, std::nullopt},
      {"mirroring", "IX-3p", Verdict::OneHandedWithConfound, ConfoundTag::Mirroring},
      {"independent", "MY", Verdict::PlainOneHanded, std::nullopt},
      {"independent", "EXPERIENCE", Verdict::TwoIndependent, std::nullopt},
      {"focus", "SAY", Verdict::PlainOneHanded, std::nullopt},
      {"focus", "fs-JOHN", Verdict::OneHandedWithConfound, ConfoundTag::FocusMarker},
      {"buoy", "SELF", Verdict::OneHandedWithConfound, ConfoundTag::ThemeBuoy},
      {"buoy", "TRUE", Verdict::OneHandedWithConfound, ConfoundTag::ThemeBuoy},
      {"weak-drop", "(1h)ANGRY", Verdict::MarkedOneHandVariant, std::nullopt},
      {"weak-drop", "KNOW", Verdict::PlainOneHanded, std::nullopt},
  };

  std::size_t cursor = 0;
  long long mismatches = 0;
  for (const Utterance& u : corpus) {
    UtteranceInterpretation interp = interpret_utterance(u, lex, inv);
    for (const auto& seg : interp.segments) {
      if (cursor >= wants.size()) {
        ++mismatches;
        continue;
      }
      const Want& w = wants[cursor++];
      const SegmentInterpretation& si = seg.interpretation;
      if (u.id != w.utterance || seg.token->gloss != w.gloss ||
          si.verdict != w.verdict || si.confound != w.confound) {
        ++mismatches;
        c.problems.push_back("unexpected reading for " + u.id + " " +
                             seg.token->gloss);
      }
    }
  }
  c.eq("scenario segments seen", static_cast<long long>(cursor),
       static_cast<long long>(wants.size()));
  c.eq("scenario verdict mismatches", mismatches, 0);

  std::string once = render_interpretations(corpus, lex, inv);
  std::string twice = render_interpretations(corpus, lex, inv);
  c.truth("re-running interpretation changes nothing", once == twice);
}

void check_criterion_9(Checker& c) {
  const Inventory& inv = testutil::inventory();

  std::string inv_once = inv.save_string();
  std::istringstream inv_in(inv_once);
  c.truth("inventory survives a save/load cycle",
          Inventory::load(inv_in).save_string() == inv_once);

  std::string lex_once = testutil::demo_lexicon().save_string();
  std::istringstream lex_in(lex_once);
  c.truth("lexicon survives a save/load cycle",
          Lexicon::parse(lex_in, inv).save_string() == lex_once);

  for (const char* rel : {"demo.jsonl", "fixtures/scenarios.jsonl",
                          "fixtures/coartic_corpus.jsonl"}) {
    std::string bytes = testutil::slurp(testutil::data_path(rel));
    std::istringstream in(bytes);
    std::vector<Utterance> corpus = parse_corpus(in, inv);
    c.truth(std::string(rel) + " reserializes byte for byte",
            save_corpus_string(corpus) == bytes);
  }

  std::string stats_bytes = testutil::slurp(testutil::data_path("fixtures/stats_top3.json"));
  std::istringstream stats_in(stats_bytes);
  TransitionTable t = load_stats(stats_in, inv);
  c.truth("stats file reserializes byte for byte",
          save_stats_string(t) == stats_bytes);
}

}  // namespace

int main() {
  criterion(1, "frozen corpus counts load exactly", 1.0, check_criterion_1);
  criterion(2, "conditional probabilities and prominent confusions", 1.0,
            check_criterion_2);
  criterion(3, "assimilation prevalence scan", 10.0, check_criterion_3);
  criterion(4, "assimilation direction splits", 10.0, check_criterion_4);
  criterion(5, "well-formedness agreement with an independent oracle", 30.0,
            check_criterion_5);
  criterion(6, "transition prior lifts noisy recognition", 30.0, check_criterion_6);
  criterion(7, "two-hand pooling respects sign-type constraints", 30.0,
            check_criterion_7);
  criterion(8, "scenario hand-role verdicts", 10.0, check_criterion_8);
  criterion(9, "formats round trip", 10.0, check_criterion_9);
  std::printf("%d of 9 criteria failed\n", g_failures);
  return g_failures;
}
