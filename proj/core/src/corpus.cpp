#include "signphon/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "signphon/errors.hpp"

namespace signphon {
namespace {

using nlohmann::json;

const json* get_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::string require_string(const json& obj, const char* key, const std::string& source,
                           std::size_t line_no) {
  const json* v = get_field(obj, key);
  if (!v || !v->is_string()) {
    throw ParseError(source, line_no, std::string("missing or non-string field '") + key + "'");
  }
  return v->get<std::string>();
}

int require_int(const json& obj, const char* key, const std::string& source,
                std::size_t line_no) {
  const json* v = get_field(obj, key);
  if (!v || !v->is_number_integer()) {
    throw ParseError(source, line_no, std::string("missing or non-integer field '") + key + "'");
  }
  return v->get<int>();
}

std::optional<std::string> shape_at(const json& pair, std::size_t i, const Inventory& inv,
                                    const std::string& source, std::size_t line_no) {
  const json& v = pair.at(i);
  if (v.is_null()) return std::nullopt;
  if (!v.is_string()) throw ParseError(source, line_no, "handshape must be a string or null");
  std::string label = v.get<std::string>();
  if (!inv.find(label)) {
    throw ParseError(source, line_no, "unknown handshape '" + label + "'");
  }
  return label;
}

json shape_pair_json(const std::optional<std::string>& start,
                     const std::optional<std::string>& end) {
  json pair = json::array();
  pair.push_back(start ? json(*start) : json(nullptr));
  pair.push_back(end ? json(*end) : json(nullptr));
  return pair;
}

void check_tier_order(const std::vector<const SignToken*>& view, std::string_view tier_name,
                      const std::string& source, std::size_t line_no) {
  for (std::size_t i = 1; i < view.size(); ++i) {
    if (view[i]->start_frame <= view[i - 1]->end_frame) {
      throw ParseError(source, line_no,
                       "tokens on the " + std::string(tier_name) +
                           " tier out of order or overlapping near frame " +
                           std::to_string(view[i]->start_frame));
    }
  }
}

Utterance parse_utterance(const json& obj, const Inventory& inv, const std::string& source,
                          std::size_t line_no) {
  Utterance u;
  u.id = require_string(obj, "id", source, line_no);
  u.signer = require_string(obj, "signer", source, line_no);
  u.fps = require_int(obj, "fps", source, line_no);
  if (u.fps <= 0) throw ParseError(source, line_no, "fps must be positive");
  if (const json* t = get_field(obj, "translation")) {
    if (!t->is_string()) throw ParseError(source, line_no, "translation must be a string");
    u.translation = t->get<std::string>();
  }

  const json* tokens = get_field(obj, "tokens");
  if (!tokens || !tokens->is_array()) {
    throw ParseError(source, line_no, "missing or non-array field 'tokens'");
  }
  for (const json& tok : *tokens) {
    if (!tok.is_object()) throw ParseError(source, line_no, "token must be an object");
    SignToken t;
    t.gloss = require_string(tok, "gloss", source, line_no);
    if (t.gloss.empty()) throw ParseError(source, line_no, "empty gloss");
    auto tier = parse_tier(require_string(tok, "tier", source, line_no));
    if (!tier) throw ParseError(source, line_no, "bad tier value");
    t.tier = *tier;
    t.start_frame = require_int(tok, "start_frame", source, line_no);
    t.end_frame = require_int(tok, "end_frame", source, line_no);
    if (t.start_frame < 0) throw ParseError(source, line_no, "negative start_frame");
    if (t.end_frame < t.start_frame) {
      throw ParseError(source, line_no, "end_frame before start_frame");
    }
    if (const json* hs = get_field(tok, "dom_hs")) {
      if (!hs->is_array() || hs->size() != 2) {
        throw ParseError(source, line_no, "dom_hs must be a two-element array");
      }
      t.obs_dom_start = shape_at(*hs, 0, inv, source, line_no);
      t.obs_dom_end = shape_at(*hs, 1, inv, source, line_no);
    }
    if (const json* hs = get_field(tok, "ndh_hs")) {
      if (!hs->is_array() || hs->size() != 2) {
        throw ParseError(source, line_no, "ndh_hs must be a two-element array");
      }
      t.obs_ndh_start = shape_at(*hs, 0, inv, source, line_no);
      t.obs_ndh_end = shape_at(*hs, 1, inv, source, line_no);
    }
    if (const json* tags = get_field(tok, "class_tags")) {
      if (!tags->is_array()) throw ParseError(source, line_no, "class_tags must be an array");
      for (const json& tag : *tags) {
        auto parsed = tag.is_string() ? parse_sign_class(tag.get<std::string>()) : std::nullopt;
        if (!parsed) throw ParseError(source, line_no, "bad class tag");
        t.class_tags.insert(*parsed);
      }
    }
    if (const json* tags = get_field(tok, "reduction_tags")) {
      if (!tags->is_array()) {
        throw ParseError(source, line_no, "reduction_tags must be an array");
      }
      for (const json& tag : *tags) {
        auto parsed =
            tag.is_string() ? parse_reduction_tag(tag.get<std::string>()) : std::nullopt;
        if (!parsed) throw ParseError(source, line_no, "bad reduction tag");
        t.reduction_tags.insert(*parsed);
      }
    }
    u.tokens.push_back(std::move(t));
  }

  check_tier_order(u.tier_view(Tier::Dominant), "dominant", source, line_no);
  check_tier_order(u.tier_view(Tier::Nondominant), "nondominant", source, line_no);
  return u;
}

std::vector<Utterance> parse_corpus_impl(std::istream& in, const Inventory& inv,
                                         const std::string& source) {
  std::vector<Utterance> corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(source, line_no, e.what());
    }
    if (!obj.is_object()) throw ParseError(source, line_no, "utterance must be an object");
    corpus.push_back(parse_utterance(obj, inv, source, line_no));
  }
  return corpus;
}

}  // namespace

std::vector<const SignToken*> Utterance::tier_view(Tier which) const {
  std::vector<const SignToken*> view;
  for (const SignToken& t : tokens) {
    bool visible = t.tier == which ||
                   (t.tier == Tier::Both &&
                    (which == Tier::Dominant || which == Tier::Nondominant));
    if (visible) view.push_back(&t);
  }
  return view;
}

bool retained(const SignToken& token, const ExclusionPolicy& policy, FilterPurpose purpose) {
  for (SignClass c : token.class_tags) {
    if (policy.exclude_classes.count(c) != 0) return false;
    if (purpose == FilterPurpose::Coarticulation &&
        policy.coartic_extra_excludes.count(c) != 0) {
      return false;
    }
  }
  return true;
}

std::vector<const SignToken*> filter_tokens(const std::vector<Utterance>& corpus,
                                            const ExclusionPolicy& policy,
                                            FilterPurpose purpose) {
  std::vector<const SignToken*> out;
  for (const Utterance& u : corpus) {
    for (const SignToken& t : u.tokens) {
      if (retained(t, policy, purpose)) out.push_back(&t);
    }
  }
  return out;
}

Neighbors neighbors(const Utterance& utterance, const SignToken& token, Tier tier) {
  bool member = !utterance.tokens.empty() && &token >= utterance.tokens.data() &&
                &token < utterance.tokens.data() + utterance.tokens.size();
  if (!member) throw std::invalid_argument("token not in utterance");
  auto view = utterance.tier_view(tier);
  auto it = std::find(view.begin(), view.end(), &token);
  if (it == view.end()) throw std::invalid_argument("token not visible on requested tier");
  Neighbors n;
  if (it != view.begin()) n.prev = *(it - 1);
  if (it + 1 != view.end()) n.next = *(it + 1);
  return n;
}

std::vector<Utterance> parse_corpus(std::istream& in, const Inventory& inv) {
  return parse_corpus_impl(in, inv, "corpus");
}

std::vector<Utterance> parse_corpus_file(const std::string& path, const Inventory& inv) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open corpus file '" + path + "'");
  return parse_corpus_impl(in, inv, path);
}

void save_corpus(std::ostream& out, const std::vector<Utterance>& corpus) {
  for (const Utterance& u : corpus) {
    json obj;
    obj["fps"] = u.fps;
    obj["id"] = u.id;
    obj["signer"] = u.signer;
    if (u.translation) obj["translation"] = *u.translation;

    // Sorting by start frame first keeps every tier view frame-ordered on
    // parse-back, which a tier-major order would not.
    std::vector<const SignToken*> order;
    order.reserve(u.tokens.size());
    for (const SignToken& t : u.tokens) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(), [](const SignToken* a, const SignToken* b) {
      if (a->start_frame != b->start_frame) return a->start_frame < b->start_frame;
      if (a->tier != b->tier) return to_string(a->tier) < to_string(b->tier);
      return a->gloss < b->gloss;
    });

    json tokens = json::array();
    for (const SignToken* t : order) {
      json tok;
      if (!t->class_tags.empty()) {
        std::vector<std::string> tags;
        for (SignClass c : t->class_tags) tags.emplace_back(to_string(c));
        std::sort(tags.begin(), tags.end());
        tok["class_tags"] = tags;
      }
      if (t->obs_dom_start || t->obs_dom_end) {
        tok["dom_hs"] = shape_pair_json(t->obs_dom_start, t->obs_dom_end);
      }
      tok["end_frame"] = t->end_frame;
      tok["gloss"] = t->gloss;
      if (t->obs_ndh_start || t->obs_ndh_end) {
        tok["ndh_hs"] = shape_pair_json(t->obs_ndh_start, t->obs_ndh_end);
      }
      if (!t->reduction_tags.empty()) {
        std::vector<std::string> tags;
        for (ReductionTag r : t->reduction_tags) tags.emplace_back(to_string(r));
        std::sort(tags.begin(), tags.end());
        tok["reduction_tags"] = tags;
      }
      tok["start_frame"] = t->start_frame;
      tok["tier"] = std::string(to_string(t->tier));
      tokens.push_back(std::move(tok));
    }
    obj["tokens"] = std::move(tokens);
    out << obj.dump() << '\n';
  }
}

std::string save_corpus_string(const std::vector<Utterance>& corpus) {
  std::ostringstream out;
  save_corpus(out, corpus);
  return out.str();
}

std::string_view to_string(Tier t) {
  switch (t) {
    case Tier::Dominant: return "dominant";
    case Tier::Nondominant: return "nondominant";
    case Tier::Both: return "both";
  }
  return "?";
}

std::string_view to_string(ReductionTag r) {
  switch (r) {
    case ReductionTag::WeakFreeze: return "weak_freeze";
    case ReductionTag::WeakDrop: return "weak_drop";
    case ReductionTag::Lowering: return "lowering";
    case ReductionTag::Distalization: return "distalization";
    case ReductionTag::JointFreeze: return "joint_freeze";
    case ReductionTag::IterationLoss: return "iteration_loss";
  }
  return "?";
}

std::optional<Tier> parse_tier(std::string_view text) {
  if (text == "dominant") return Tier::Dominant;
  if (text == "nondominant") return Tier::Nondominant;
  if (text == "both") return Tier::Both;
  return std::nullopt;
}

std::optional<ReductionTag> parse_reduction_tag(std::string_view text) {
  if (text == "weak_freeze") return ReductionTag::WeakFreeze;
  if (text == "weak_drop") return ReductionTag::WeakDrop;
  if (text == "lowering") return ReductionTag::Lowering;
  if (text == "distalization") return ReductionTag::Distalization;
  if (text == "joint_freeze") return ReductionTag::JointFreeze;
  if (text == "iteration_loss") return ReductionTag::IterationLoss;
  return std::nullopt;
}

}  // namespace signphon
