#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "signphon/inventory.hpp"
#include "signphon/lexicon.hpp"
#include "signphon/transitions.hpp"

namespace signphon {

using ScoreMap = std::map<std::string, double, std::less<>>;

// Per-endpoint handshape likelihoods from an upstream recognizer. Each map
// needs at least one strictly positive entry; keys must be inventory labels.
struct ObservationPair {
  ScoreMap start_scores;
  ScoreMap end_scores;
};

struct RankedPair {
  std::string start;
  std::string end;
  double score = 0.0;
};

// Pairs with nonzero fused score, by descending score; ties broken by
// (start, end) label order.
struct RerankResult {
  std::vector<RankedPair> ranked;
};

// score(s, e) = start(s) * end(e) * prior(s, e)^lambda. lambda = 0 is
// likelihood-only (a zero prior does not veto). lambda outside [0, 1] throws.
RerankResult rerank(const ObservationPair& obs, const JointPrior& prior, double lambda);

struct PooledObservations {
  ObservationPair dom;
  ObservationPair ndh;
};

// Combines two-hand evidence under the sign-type constraint. Types 1 and 2
// force one shared handshape, so both hands get the renormalized geometric
// mean; a zero on either hand vetoes. Type 3 passes the dominant hand through
// and masks the non-dominant hand to the unmarked set. Other types throw
// std::invalid_argument; a mask or mean that leaves no mass throws
// DegenerateDistribution.
PooledObservations pool_two_hands(const ObservationPair& dom, const ObservationPair& ndh,
                                  SignType type, const Inventory& inv);

// Synthetic observation noise: with probability mass kappa the score shifts
// onto one confusable neighbor, drawn with weight exp(-distance / sigma).
struct NoiseModel {
  double kappa = 0.0;   // in [0, 1]
  double sigma = 0.5;
  std::uint64_t seed = 0;
};

struct Sample {
  std::string true_start;
  std::string true_end;
  ObservationPair obs;
};

// Draws true pairs from the prior, then perturbs each endpoint independently.
// Fully determined by the seed.
std::vector<Sample> synth_generate(const JointPrior& prior, const NoiseModel& noise,
                                   std::size_t n);

struct EvalMetrics {
  double rank1_accuracy = 0.0;
  double mean_reciprocal_rank = 0.0;
  std::size_t n = 0;
};

// Rank of the truth under rerank's ordering; a truth that scores zero
// contributes zero reciprocal rank. Empty dataset throws.
EvalMetrics evaluate(const std::vector<Sample>& dataset, const JointPrior& prior, double lambda);

// JSON Lines, one sample per line.
void save_samples(std::ostream& out, const std::vector<Sample>& samples);
std::vector<Sample> load_samples(std::istream& in, const Inventory& inv);

}  // namespace signphon
