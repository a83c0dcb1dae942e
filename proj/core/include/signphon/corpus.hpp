#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "signphon/inventory.hpp"
#include "signphon/lexicon.hpp"

namespace signphon {

enum class Tier { Dominant, Nondominant, Both };

enum class Hand { Dom, Ndh };

// Phonetic reduction phenomena carried through from annotation; never computed.
enum class ReductionTag { WeakFreeze, WeakDrop, Lowering, Distalization, JointFreeze, IterationLoss };

// One annotated token on a hand tier. Observed handshapes are optional on
// every field: annotation gaps are legal and consumers tally skips.
struct SignToken {
  std::string gloss;  // may carry a (1h)/(2h) production prefix
  Tier tier = Tier::Dominant;
  int start_frame = 0;
  int end_frame = 0;  // inclusive; >= start_frame
  std::optional<std::string> obs_dom_start;
  std::optional<std::string> obs_dom_end;
  std::optional<std::string> obs_ndh_start;
  std::optional<std::string> obs_ndh_end;
  std::set<SignClass> class_tags;
  std::set<ReductionTag> reduction_tags;
};

struct Utterance {
  std::string id;
  std::string signer;
  int fps = 30;
  std::vector<SignToken> tokens;
  std::optional<std::string> translation;

  // Tokens visible on one hand's tier, in frame order. Tier::Both tokens
  // appear on both views; passing Tier::Both asks for only those.
  std::vector<const SignToken*> tier_view(Tier which) const;
};

struct ExclusionPolicy {
  std::set<SignClass> exclude_classes = {SignClass::Classifier, SignClass::Gesture,
                                         SignClass::Fingerspelled};
  std::set<SignClass> coartic_extra_excludes = {SignClass::Index, SignClass::PartIndef};
};

enum class FilterPurpose { Statistics, Coarticulation };

// Whether a token survives class-tag filtering for the given purpose.
bool retained(const SignToken& token, const ExclusionPolicy& policy, FilterPurpose purpose);

// All retained tokens across the corpus, in utterance and then token order.
// Filtering never alters neighbor adjacency, which always uses the raw tiers.
std::vector<const SignToken*> filter_tokens(const std::vector<Utterance>& corpus,
                                            const ExclusionPolicy& policy, FilterPurpose purpose);

struct Neighbors {
  const SignToken* prev = nullptr;
  const SignToken* next = nullptr;
};

// Adjacent tokens on one tier of the raw (unfiltered) utterance. The token
// must be an element of utterance.tokens and visible on the requested tier.
Neighbors neighbors(const Utterance& utterance, const SignToken& token,
                    Tier tier = Tier::Dominant);

// JSON Lines, one utterance per line. Parsing validates frame ordering,
// per-tier non-overlap, and handshape labels against the inventory.
std::vector<Utterance> parse_corpus(std::istream& in, const Inventory& inv);
std::vector<Utterance> parse_corpus_file(const std::string& path, const Inventory& inv);

// Canonical form: object keys sorted, tokens ordered by (start_frame, tier,
// gloss), empty optional fields omitted. save(parse(save(x))) == save(x).
void save_corpus(std::ostream& out, const std::vector<Utterance>& corpus);
std::string save_corpus_string(const std::vector<Utterance>& corpus);

std::string_view to_string(Tier t);
std::string_view to_string(ReductionTag r);
std::optional<Tier> parse_tier(std::string_view text);
std::optional<ReductionTag> parse_reduction_tag(std::string_view text);

}  // namespace signphon
