#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "signphon/corpus.hpp"
#include "signphon/inventory.hpp"
#include "signphon/lexicon.hpp"
#include "signphon/transitions.hpp"

#ifndef SIGNPHON_DATA_DIR
#error "SIGNPHON_DATA_DIR must name the repository data directory"
#endif

namespace testutil {

inline std::string data_path(const std::string& rel) {
  return std::string(SIGNPHON_DATA_DIR "/") + rel;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Shared read-only fixtures, loaded once per test binary.

inline const signphon::Inventory& inventory() {
  static const signphon::Inventory inv =
      signphon::Inventory::load_file(data_path("inventory.tsv"));
  return inv;
}

inline const signphon::Lexicon& demo_lexicon() {
  static const signphon::Lexicon lex =
      signphon::Lexicon::parse_file(data_path("lexicon.tsv"), inventory());
  return lex;
}

inline const signphon::Lexicon& fixture_lexicon() {
  static const signphon::Lexicon lex =
      signphon::Lexicon::parse_file(data_path("fixtures/coartic_lexicon.tsv"), inventory());
  return lex;
}

inline const std::vector<signphon::Utterance>& fixture_corpus() {
  static const std::vector<signphon::Utterance> corpus =
      signphon::parse_corpus_file(data_path("fixtures/coartic_corpus.jsonl"), inventory());
  return corpus;
}

inline const std::vector<signphon::Utterance>& scenario_corpus() {
  static const std::vector<signphon::Utterance> corpus =
      signphon::parse_corpus_file(data_path("fixtures/scenarios.jsonl"), inventory());
  return corpus;
}

inline const signphon::TransitionTable& fixture_stats() {
  static const signphon::TransitionTable table =
      signphon::load_stats_file(data_path("fixtures/stats_top3.json"), inventory());
  return table;
}

}  // namespace testutil
