#include "signphon/reranker.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "signphon/errors.hpp"
#include "signphon/rng.hpp"

namespace signphon {
namespace {

using nlohmann::json;

void validate_scores(const ScoreMap& scores, const Inventory& inv, const char* which) {
  bool any_positive = false;
  for (const auto& [label, score] : scores) {
    inv.require(label);
    if (score < 0) {
      throw std::invalid_argument(std::string(which) + " scores must be non-negative");
    }
    if (score > 0) any_positive = true;
  }
  if (!any_positive) {
    throw std::invalid_argument(std::string(which) + " scores need a positive entry");
  }
}

ScoreMap renormalized(ScoreMap scores) {
  double total = 0;
  for (auto it = scores.begin(); it != scores.end();) {
    if (it->second <= 0) {
      it = scores.erase(it);
    } else {
      total += it->second;
      ++it;
    }
  }
  if (total == 0) throw DegenerateDistribution("no probability mass left after pooling");
  for (auto& [label, score] : scores) score /= total;
  return scores;
}

ScoreMap geometric_mean(const ScoreMap& a, const ScoreMap& b) {
  ScoreMap out;
  for (const auto& [label, score] : a) {
    auto it = b.find(label);
    if (it == b.end()) continue;  // absent on the other hand counts as zero
    double g = std::sqrt(score * it->second);
    if (g > 0) out[label] = g;
  }
  return out;
}

ScoreMap masked_unmarked(const ScoreMap& scores, const Inventory& inv) {
  ScoreMap out;
  for (const auto& [label, score] : scores) {
    if (score > 0 && inv.is_unmarked(label)) out[label] = score;
  }
  return out;
}

// One confusable neighbor of the truth, weighted by exp(-distance / sigma).
HandshapeIndex draw_confusor(const Inventory& inv, HandshapeIndex truth, double sigma,
                             Rng& rng) {
  const std::size_t n = inv.size();
  std::vector<double> weights(n, 0.0);
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == truth) continue;
    double w = std::exp(-inv.distance(truth, static_cast<HandshapeIndex>(i)) / sigma);
    weights[i] = w;
    total += w;
  }
  double u = rng.uniform() * total;
  double acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += weights[i];
    if (u < acc && weights[i] > 0) return static_cast<HandshapeIndex>(i);
  }
  // Rounding can push u past the last positive weight.
  for (std::size_t i = n; i-- > 0;) {
    if (weights[i] > 0) return static_cast<HandshapeIndex>(i);
  }
  throw std::invalid_argument("inventory too small to draw a confusor");
}

ScoreMap perturb(const Inventory& inv, HandshapeIndex truth, const NoiseModel& noise,
                 Rng& rng) {
  ScoreMap scores;
  if (noise.kappa == 0.0) {
    scores[inv.entry(truth).label] = 1.0;
    return scores;
  }
  HandshapeIndex confusor = draw_confusor(inv, truth, noise.sigma, rng);
  if (noise.kappa < 1.0) scores[inv.entry(truth).label] = 1.0 - noise.kappa;
  scores[inv.entry(confusor).label] += noise.kappa;
  return scores;
}

}  // namespace

RerankResult rerank(const ObservationPair& obs, const JointPrior& prior, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("lambda must lie in [0, 1]");
  }
  const Inventory& inv = prior.inventory();
  validate_scores(obs.start_scores, inv, "start");
  validate_scores(obs.end_scores, inv, "end");

  RerankResult result;
  for (const auto& [start, ws] : obs.start_scores) {
    if (ws <= 0) continue;
    HandshapeIndex si = inv.require(start);
    for (const auto& [end, we] : obs.end_scores) {
      if (we <= 0) continue;
      HandshapeIndex ei = inv.require(end);
      double weight = lambda == 0.0 ? 1.0 : std::pow(prior.prob(si, ei), lambda);
      double score = ws * we * weight;
      if (score > 0) result.ranked.push_back({start, end, score});
    }
  }
  std::sort(result.ranked.begin(), result.ranked.end(),
            [](const RankedPair& a, const RankedPair& b) {
              if (a.score != b.score) return a.score > b.score;
              if (a.start != b.start) return a.start < b.start;
              return a.end < b.end;
            });
  return result;
}

PooledObservations pool_two_hands(const ObservationPair& dom, const ObservationPair& ndh,
                                  SignType type, const Inventory& inv) {
  validate_scores(dom.start_scores, inv, "dominant start");
  validate_scores(dom.end_scores, inv, "dominant end");
  validate_scores(ndh.start_scores, inv, "non-dominant start");
  validate_scores(ndh.end_scores, inv, "non-dominant end");

  PooledObservations out;
  switch (type) {
    case SignType::Type1:
    case SignType::Type2: {
      ObservationPair pooled;
      pooled.start_scores = renormalized(geometric_mean(dom.start_scores, ndh.start_scores));
      pooled.end_scores = renormalized(geometric_mean(dom.end_scores, ndh.end_scores));
      out.dom = pooled;
      out.ndh = std::move(pooled);
      return out;
    }
    case SignType::Type3:
      out.dom = dom;
      out.ndh.start_scores = renormalized(masked_unmarked(ndh.start_scores, inv));
      out.ndh.end_scores = renormalized(masked_unmarked(ndh.end_scores, inv));
      return out;
    default:
      throw std::invalid_argument("pooling requires a two-handed sign type");
  }
}

std::vector<Sample> synth_generate(const JointPrior& prior, const NoiseModel& noise,
                                   std::size_t n) {
  if (noise.kappa < 0.0 || noise.kappa > 1.0) {
    throw std::invalid_argument("kappa must lie in [0, 1]");
  }
  if (noise.sigma <= 0.0) throw std::invalid_argument("sigma must be positive");
  const Inventory& inv = prior.inventory();
  const std::size_t count = inv.size();
  Rng rng(noise.seed);

  std::vector<Sample> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double u = rng.uniform();
    double acc = 0;
    HandshapeIndex s = 0, e = 0;
    bool picked = false;
    for (std::size_t a = 0; a < count && !picked; ++a) {
      for (std::size_t b = 0; b < count && !picked; ++b) {
        acc += prior.prob(static_cast<HandshapeIndex>(a), static_cast<HandshapeIndex>(b));
        if (u < acc) {
          s = static_cast<HandshapeIndex>(a);
          e = static_cast<HandshapeIndex>(b);
          picked = true;
        }
      }
    }
    if (!picked) {
      s = static_cast<HandshapeIndex>(count - 1);
      e = static_cast<HandshapeIndex>(count - 1);
    }
    Sample sample;
    sample.true_start = inv.entry(s).label;
    sample.true_end = inv.entry(e).label;
    sample.obs.start_scores = perturb(inv, s, noise, rng);
    sample.obs.end_scores = perturb(inv, e, noise, rng);
    samples.push_back(std::move(sample));
  }
  return samples;
}

EvalMetrics evaluate(const std::vector<Sample>& dataset, const JointPrior& prior,
                     double lambda) {
  if (dataset.empty()) throw std::invalid_argument("empty dataset");
  EvalMetrics metrics;
  metrics.n = dataset.size();
  std::size_t hits = 0;
  double mrr_sum = 0;
  for (const Sample& sample : dataset) {
    RerankResult result = rerank(sample.obs, prior, lambda);
    for (std::size_t i = 0; i < result.ranked.size(); ++i) {
      if (result.ranked[i].start == sample.true_start &&
          result.ranked[i].end == sample.true_end) {
        if (i == 0) ++hits;
        mrr_sum += 1.0 / double(i + 1);
        break;
      }
    }
  }
  metrics.rank1_accuracy = double(hits) / double(metrics.n);
  metrics.mean_reciprocal_rank = mrr_sum / double(metrics.n);
  return metrics;
}

void save_samples(std::ostream& out, const std::vector<Sample>& samples) {
  for (const Sample& s : samples) {
    json obj;
    obj["end_scores"] = s.obs.end_scores;
    obj["start_scores"] = s.obs.start_scores;
    obj["true"] = json::array({s.true_start, s.true_end});
    out << obj.dump() << '\n';
  }
}

std::vector<Sample> load_samples(std::istream& in, const Inventory& inv) {
  const std::string source = "samples";
  std::vector<Sample> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(source, line_no, e.what());
    }
    if (!obj.is_object() || !obj.contains("true") || !obj.contains("start_scores") ||
        !obj.contains("end_scores") || !obj["true"].is_array() || obj["true"].size() != 2) {
      throw ParseError(source, line_no, "sample needs true, start_scores, end_scores");
    }
    Sample s;
    s.true_start = obj["true"][0].get<std::string>();
    s.true_end = obj["true"][1].get<std::string>();
    inv.require(s.true_start);
    inv.require(s.true_end);
    for (const auto& [label, score] : obj["start_scores"].items()) {
      inv.require(label);
      s.obs.start_scores[label] = score.get<double>();
    }
    for (const auto& [label, score] : obj["end_scores"].items()) {
      inv.require(label);
      s.obs.end_scores[label] = score.get<double>();
    }
    samples.push_back(std::move(s));
  }
  return samples;
}

}  // namespace signphon
