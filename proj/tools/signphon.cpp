// Command line front end. Subcommands:
//
//   validate      check lexicon entries for structural and two-hand faults
//   fit           count start/end handshape transitions from corpora
//   report        render a fitted transition table with derived columns
//   coartic       scan corpora for handshape assimilation
//   disambiguate  interpret hand roles per segment
//   rerank-sim    synthetic noisy-recognition rescoring benchmark
//
// Machine output goes to stdout, diagnostics to stderr. Exit codes: 0 on
// success, 1 when the run completed but found domain-level findings (lexicon
// violations, nothing to fit), 2 on unusable input or bad usage. Identical
// inputs and flags produce byte-identical output.
//
// Every flag can also be supplied through a SIGNPHON_* environment variable
// or a --config file; explicit flags win.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "signphon/coarticulation.hpp"
#include "signphon/corpus.hpp"
#include "signphon/disambiguator.hpp"
#include "signphon/errors.hpp"
#include "signphon/inventory.hpp"
#include "signphon/lexicon.hpp"
#include "signphon/reranker.hpp"
#include "signphon/transitions.hpp"

using nlohmann::json;
using namespace signphon;

namespace {

constexpr int kFindings = 1;
constexpr int kBadInput = 2;

std::string fixed(double value, int decimals) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::vector<Utterance> load_corpora(const std::vector<std::string>& paths,
                                    const Inventory& inv) {
  std::vector<Utterance> corpus;
  for (const std::string& path : paths) {
    std::vector<Utterance> part = parse_corpus_file(path, inv);
    corpus.insert(corpus.end(), std::make_move_iterator(part.begin()),
                  std::make_move_iterator(part.end()));
  }
  return corpus;
}

// ---------------------------------------------------------------------------

struct ValidateOpts {
  std::string inventory;
  std::string lexicon;
  std::string format = "json";
};

int run_validate(const ValidateOpts& o) {
  Inventory inv = Inventory::load_file(o.inventory);
  Lexicon lex = Lexicon::parse_file(o.lexicon, inv);

  struct Finding {
    std::string gloss;
    std::vector<std::string> faults;
  };
  std::vector<Finding> findings;
  for (const LexiconEntry& e : lex.entries()) {
    ValidationReport rep = validate_entry(e, inv);
    if (rep.ok()) continue;
    Finding f{e.gloss, {}};
    for (const std::string& s : rep.structural) f.faults.push_back("structural: " + s);
    if (rep.symmetry.status == CheckStatus::Violated) {
      f.faults.push_back("symmetry: " + rep.symmetry.reason);
    }
    if (rep.dominance.status == CheckStatus::Violated) {
      f.faults.push_back("dominance: " + rep.dominance.reason);
    }
    findings.push_back(std::move(f));
  }

  if (o.format == "json") {
    json out;
    out["checked"] = lex.size();
    out["ok"] = findings.empty();
    json v = json::array();
    for (const Finding& f : findings) {
      v.push_back({{"faults", f.faults}, {"gloss", f.gloss}});
    }
    out["violations"] = std::move(v);
    std::cout << out.dump(2) << '\n';
  } else {
    for (const Finding& f : findings) {
      std::string joined;
      for (std::size_t i = 0; i < f.faults.size(); ++i) {
        if (i) joined += "; ";
        joined += f.faults[i];
      }
      std::cout << f.gloss << ": " << joined << '\n';
    }
    std::cout << "checked " << lex.size() << " entries, " << findings.size()
              << " with violations\n";
  }
  return findings.empty() ? 0 : kFindings;
}

// ---------------------------------------------------------------------------

struct FitOpts {
  std::string inventory;
  std::vector<std::string> corpora;
  std::string output;
  std::string ndh_output;
  std::string format = "json";
};

int run_fit(const FitOpts& o) {
  Inventory inv = Inventory::load_file(o.inventory);
  std::vector<Utterance> corpus = load_corpora(o.corpora, inv);
  std::vector<const SignToken*> tokens =
      filter_tokens(corpus, ExclusionPolicy{}, FilterPurpose::Statistics);

  FitStats stats;
  TransitionTable table = fit(tokens, inv, Hand::Dom, &stats);
  if (table.empty()) {
    std::cerr << "signphon fit: no usable tokens ("
              << stats.skipped_missing << " lacked endpoint annotations)\n";
    return kFindings;
  }
  {
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + o.output + "' for writing");
    save_stats(out, table);
  }
  std::cerr << "signphon fit: wrote " << o.output << '\n';
  if (!o.ndh_output.empty()) {
    TransitionTable ndh = fit(tokens, inv, Hand::Ndh);
    std::ofstream out(o.ndh_output, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + o.ndh_output + "' for writing");
    save_stats(out, ndh);
    std::cerr << "signphon fit: wrote " << o.ndh_output << '\n';
  }

  FrequencyReport rep = report(table);
  if (o.format == "json") {
    json row_totals = json::object();
    for (const ReportRow& row : rep.rows) row_totals[row.start] = row.total;
    json out;
    out["row_totals"] = std::move(row_totals);
    out["skipped_missing"] = stats.skipped_missing;
    out["total"] = rep.grand_total;
    out["used"] = stats.used;
    std::cout << out.dump(2) << '\n';
  } else {
    for (const ReportRow& row : rep.rows) {
      std::cout << row.start << ' ' << row.total << '\n';
    }
    std::cout << "total " << rep.grand_total << " transitions from " << stats.used
              << " tokens (" << stats.skipped_missing << " skipped)\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct ReportOpts {
  std::string inventory;
  std::string stats;
  std::string format = "json";
};

int run_report(const ReportOpts& o) {
  Inventory inv = Inventory::load_file(o.inventory);
  TransitionTable table = load_stats_file(o.stats, inv);
  FrequencyReport rep = report(table);

  if (o.format == "json") {
    json rows = json::array();
    for (const ReportRow& row : rep.rows) {
      json ends = json::array();
      for (const auto& [end, count] : row.ends) {
        ends.push_back({{"count", count}, {"end", end}});
      }
      rows.push_back({{"ends", std::move(ends)},
                      {"non_identity_ends_over_1pct", row.non_identity_ends_over_1pct},
                      {"start", row.start},
                      {"total", row.total}});
    }
    json out;
    out["grand_total"] = rep.grand_total;
    out["rows"] = std::move(rows);
    std::cout << out.dump(2) << '\n';
  } else {
    for (const ReportRow& row : rep.rows) {
      std::cout << row.start << "  total " << row.total
                << "  non-identity ends over 1%: " << row.non_identity_ends_over_1pct
                << '\n';
      for (const auto& [end, count] : row.ends) {
        char line[64];
        std::snprintf(line, sizeof line, "  %-14s %6lld  %6.2f%%", end.c_str(), count,
                      100.0 * double(count) / double(row.total));
        std::cout << line << '\n';
      }
    }
    std::cout << "grand total " << rep.grand_total << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct CoarticOpts {
  std::string inventory;
  std::string lexicon;
  std::vector<std::string> corpora;
  double tau_subtle = 0.5;
  bool any_deviation = false;
  std::string format = "json";
};

json split_json(const DirectionSplit& s) {
  return {{"affected", s.affected()},
          {"antic", s.antic},
          {"both", s.both},
          {"persev", s.persev}};
}

int run_coartic(const CoarticOpts& o) {
  Inventory inv = Inventory::load_file(o.inventory);
  Lexicon lex = Lexicon::parse_file(o.lexicon, inv);
  std::vector<Utterance> corpus = load_corpora(o.corpora, inv);

  DetectorThresholds thresholds;
  thresholds.tau_subtle = o.tau_subtle;
  thresholds.require_movement_toward = !o.any_deviation;
  PrevalenceReport rep = scan(corpus, lex, inv, ExclusionPolicy{}, thresholds);

  if (o.format == "json") {
    json per_class = json::object();
    for (const auto& [cls, p] : rep.per_class) {
      per_class[std::string(to_string(cls))] = {
          {"coartic", p.coartic}, {"occurrences", p.occurrences}, {"rate", p.rate()}};
    }
    json out;
    out["direction"] = {{"ndh_affected", split_json(rep.direction.ndh_affected)},
                        {"one_handed", split_json(rep.direction.one_handed)},
                        {"two_handed_dom", split_json(rep.direction.two_handed_dom)}};
    out["overall_rate"] = rep.overall_rate;
    out["per_class"] = std::move(per_class);
    out["severity"] = {{"major", rep.severity_major},
                       {"mixed", rep.severity_mixed},
                       {"subtle", rep.severity_subtle}};
    out["skipped_unresolved"] = rep.skipped_unresolved;
    out["total_coarticulated"] = rep.total_coarticulated;
    out["total_examined"] = rep.total_examined;
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "class   coartic/occurrences   rate\n";
    for (const auto& [cls, p] : rep.per_class) {
      char line[80];
      std::string frac = std::to_string(p.coartic) + "/" + std::to_string(p.occurrences);
      std::snprintf(line, sizeof line, "%-7s %-21s %6.2f%%",
                    std::string(to_string(cls)).c_str(), frac.c_str(), 100.0 * p.rate());
      std::cout << line << '\n';
    }
    std::cout << "severity: " << rep.severity_subtle << " subtle, " << rep.severity_major
              << " major, " << rep.severity_mixed << " mixed\n";
    auto split_line = [](const char* name, const DirectionSplit& s) {
      std::cout << name << ": persev " << s.persev << ", antic " << s.antic << ", both "
                << s.both << ", affected " << s.affected() << '\n';
    };
    split_line("one-handed", rep.direction.one_handed);
    split_line("two-handed (dominant hand)", rep.direction.two_handed_dom);
    split_line("non-dominant affected", rep.direction.ndh_affected);
    std::cout << "overall: " << rep.total_coarticulated << '/' << rep.total_examined
              << " = " << fixed(100.0 * rep.overall_rate, 2) << '%';
    if (rep.overall_rate < 0.015) std::cout << " (less than 1.5% of tokens examined)";
    std::cout << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct DisambiguateOpts {
  std::string inventory;
  std::string lexicon;
  std::vector<std::string> corpora;
  std::string format = "json";
};

int run_disambiguate(const DisambiguateOpts& o) {
  Inventory inv = Inventory::load_file(o.inventory);
  Lexicon lex = Lexicon::parse_file(o.lexicon, inv);
  std::vector<Utterance> corpus = load_corpora(o.corpora, inv);

  for (const Utterance& u : corpus) {
    UtteranceInterpretation interp = interpret_utterance(u, lex, inv);
    for (const auto& seg : interp.segments) {
      const SegmentInterpretation& si = seg.interpretation;
      if (o.format == "json") {
        json rec;
        rec["confidence"] = si.confidence;
        rec["confound"] =
            si.confound ? json(std::string(to_string(*si.confound))) : json(nullptr);
        rec["end_frame"] = seg.token->end_frame;
        rec["fired_rules"] = si.fired_rules;
        rec["gloss"] = seg.token->gloss;
        rec["secondary"] =
            si.secondary ? json(std::string(to_string(*si.secondary))) : json(nullptr);
        rec["sign_type"] =
            si.sign_type ? json(std::string(to_string(*si.sign_type))) : json(nullptr);
        rec["start_frame"] = seg.token->start_frame;
        rec["utterance"] = u.id;
        rec["verdict"] = std::string(to_string(si.verdict));
        std::cout << rec.dump() << '\n';
      } else {
        std::cout << u.id << ' ' << seg.token->gloss << " [" << seg.token->start_frame
                  << ',' << seg.token->end_frame << "] " << to_string(si.verdict);
        if (si.confound) std::cout << " (" << to_string(*si.confound) << ')';
        if (si.sign_type) std::cout << " (" << to_string(*si.sign_type) << ')';
        std::cout << " conf " << fixed(si.confidence, 1) << " rules";
        for (int r : si.fired_rules) std::cout << ' ' << r;
        std::cout << '\n';
      }
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct RerankSimOpts {
  std::string inventory;
  std::string stats;
  double alpha = 0.1;
  double lambda = 1.0;
  double kappa = 0.0;
  double sigma = 0.5;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  std::string format = "json";
};

int run_rerank_sim(const RerankSimOpts& o) {
  Inventory inv = Inventory::load_file(o.inventory);
  TransitionTable table = load_stats_file(o.stats, inv);
  JointPrior prior = joint_prior(table, inv, SmoothingConfig{o.alpha});

  NoiseModel noise;
  noise.kappa = o.kappa;
  noise.sigma = o.sigma;
  noise.seed = o.seed;
  std::vector<Sample> dataset = synth_generate(prior, noise, o.samples);
  EvalMetrics metrics = evaluate(dataset, prior, o.lambda);

  if (o.format == "json") {
    json out;
    out["kappa"] = o.kappa;
    out["lambda"] = o.lambda;
    out["mean_reciprocal_rank"] = metrics.mean_reciprocal_rank;
    out["n"] = metrics.n;
    out["rank1_accuracy"] = metrics.rank1_accuracy;
    out["seed"] = o.seed;
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "rank-1 accuracy " << fixed(metrics.rank1_accuracy, 4) << " (n="
              << metrics.n << ", lambda=" << fixed(o.lambda, 2) << ", kappa="
              << fixed(o.kappa, 2) << ", seed=" << o.seed << ")\n";
    std::cout << "mean reciprocal rank " << fixed(metrics.mean_reciprocal_rank, 4) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------

void add_format(CLI::App* cmd, std::string& target) {
  cmd->add_option("--output-format", target, "output format: json or text")
      ->envname("SIGNPHON_OUTPUT_FORMAT")
      ->check(CLI::IsMember({"json", "text"}));
}

void add_inventory(CLI::App* cmd, std::string& target) {
  cmd->add_option("--inventory", target, "handshape inventory file")
      ->envname("SIGNPHON_INVENTORY")
      ->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sign phonology corpus toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read option defaults from a TOML/INI file");

  ValidateOpts validate_opts;
  CLI::App* validate_cmd = app.add_subcommand("validate", "check lexicon well-formedness");
  add_inventory(validate_cmd, validate_opts.inventory);
  validate_cmd->add_option("--lexicon", validate_opts.lexicon, "lexicon file")
      ->envname("SIGNPHON_LEXICON")
      ->required();
  add_format(validate_cmd, validate_opts.format);

  FitOpts fit_opts;
  CLI::App* fit_cmd = app.add_subcommand("fit", "fit a transition table from corpora");
  add_inventory(fit_cmd, fit_opts.inventory);
  fit_cmd->add_option("--corpus", fit_opts.corpora, "corpus file (repeatable)")
      ->envname("SIGNPHON_CORPUS")
      ->required();
  fit_cmd->add_option("--output", fit_opts.output, "stats file to write")
      ->envname("SIGNPHON_OUTPUT")
      ->required();
  fit_cmd->add_option("--ndh-output", fit_opts.ndh_output,
                      "also fit the non-dominant hand into this stats file")
      ->envname("SIGNPHON_NDH_OUTPUT");
  add_format(fit_cmd, fit_opts.format);

  ReportOpts report_opts;
  CLI::App* report_cmd = app.add_subcommand("report", "render a fitted transition table");
  add_inventory(report_cmd, report_opts.inventory);
  report_cmd->add_option("--stats", report_opts.stats, "stats file")
      ->envname("SIGNPHON_STATS")
      ->required();
  add_format(report_cmd, report_opts.format);

  CoarticOpts coartic_opts;
  CLI::App* coartic_cmd = app.add_subcommand("coartic", "scan for handshape assimilation");
  add_inventory(coartic_cmd, coartic_opts.inventory);
  coartic_cmd->add_option("--lexicon", coartic_opts.lexicon, "lexicon file")
      ->envname("SIGNPHON_LEXICON")
      ->required();
  coartic_cmd->add_option("--corpus", coartic_opts.corpora, "corpus file (repeatable)")
      ->envname("SIGNPHON_CORPUS")
      ->required();
  coartic_cmd
      ->add_option("--tau-subtle", coartic_opts.tau_subtle,
                   "deviations at or below this distance count as subtle")
      ->envname("SIGNPHON_TAU_SUBTLE");
  coartic_cmd->add_flag("--any-deviation", coartic_opts.any_deviation,
                        "keep deviations that did not move toward the trigger");
  add_format(coartic_cmd, coartic_opts.format);

  DisambiguateOpts disambiguate_opts;
  CLI::App* disambiguate_cmd =
      app.add_subcommand("disambiguate", "interpret hand roles per segment");
  add_inventory(disambiguate_cmd, disambiguate_opts.inventory);
  disambiguate_cmd->add_option("--lexicon", disambiguate_opts.lexicon, "lexicon file")
      ->envname("SIGNPHON_LEXICON")
      ->required();
  disambiguate_cmd
      ->add_option("--corpus", disambiguate_opts.corpora, "corpus file (repeatable)")
      ->envname("SIGNPHON_CORPUS")
      ->required();
  add_format(disambiguate_cmd, disambiguate_opts.format);

  RerankSimOpts rerank_opts;
  CLI::App* rerank_cmd =
      app.add_subcommand("rerank-sim", "synthetic noisy-recognition rescoring benchmark");
  add_inventory(rerank_cmd, rerank_opts.inventory);
  rerank_cmd->add_option("--stats", rerank_opts.stats, "stats file for the prior")
      ->envname("SIGNPHON_STATS")
      ->required();
  rerank_cmd->add_option("--alpha", rerank_opts.alpha, "additive smoothing for the prior")
      ->envname("SIGNPHON_ALPHA")
      ->check(CLI::NonNegativeNumber);
  rerank_cmd->add_option("--lambda", rerank_opts.lambda, "prior weight in [0,1]")
      ->envname("SIGNPHON_LAMBDA")
      ->check(CLI::Range(0.0, 1.0));
  rerank_cmd->add_option("--kappa", rerank_opts.kappa, "noise mass in [0,1]")
      ->envname("SIGNPHON_KAPPA")
      ->check(CLI::Range(0.0, 1.0));
  rerank_cmd->add_option("--sigma", rerank_opts.sigma, "confusability length scale")
      ->envname("SIGNPHON_SIGMA")
      ->check(CLI::PositiveNumber);
  rerank_cmd->add_option("--seed", rerank_opts.seed, "random seed")
      ->envname("SIGNPHON_SEED");
  rerank_cmd->add_option("--samples", rerank_opts.samples, "number of synthetic samples")
      ->envname("SIGNPHON_SAMPLES")
      ->check(CLI::PositiveNumber);
  add_format(rerank_cmd, rerank_opts.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kBadInput;
  }

  try {
    if (*validate_cmd) return run_validate(validate_opts);
    if (*fit_cmd) return run_fit(fit_opts);
    if (*report_cmd) return run_report(report_opts);
    if (*coartic_cmd) return run_coartic(coartic_opts);
    if (*disambiguate_cmd) return run_disambiguate(disambiguate_opts);
    if (*rerank_cmd) return run_rerank_sim(rerank_opts);
  } catch (const std::exception& e) {
    std::cerr << "signphon: " << e.what() << '\n';
    return kBadInput;
  }
  return 0;
}
