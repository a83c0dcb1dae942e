#include "signphon/inventory.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "signphon/errors.hpp"

namespace signphon {
namespace {

constexpr std::string_view kFingerLetters = "TIMRP";

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

// Strips a "key=" prefix, erroring out when the field is mislabeled.
std::string_view field_value(std::string_view field, std::string_view key,
                             const std::string& source, std::size_t line_no) {
  if (field.size() < key.size() + 1 || field.substr(0, key.size()) != key ||
      field[key.size()] != '=') {
    throw ParseError(source, line_no,
                     "expected '" + std::string(key) + "=...', got '" + std::string(field) + "'");
  }
  return field.substr(key.size() + 1);
}

}  // namespace

int FingerSet::count() const { return std::popcount(bits_); }

int FingerSet::symmetric_difference(FingerSet other) const {
  return std::popcount(static_cast<std::uint8_t>(bits_ ^ other.bits_));
}

std::string FingerSet::to_string() const {
  if (bits_ == 0) return "-";
  std::string out;
  for (int i = 0; i < 5; ++i) {
    if (bits_ & (1u << i)) out.push_back(kFingerLetters[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::optional<FingerSet> FingerSet::parse(std::string_view text) {
  FingerSet set;
  if (text == "-") return set;
  if (text.empty()) return std::nullopt;
  int last = -1;
  for (char c : text) {
    std::size_t i = kFingerLetters.find(c);
    // Letters must appear in canonical TIMRP order, each at most once.
    if (i == std::string_view::npos || static_cast<int>(i) <= last) return std::nullopt;
    last = static_cast<int>(i);
    set.add(static_cast<Finger>(1u << i));
  }
  return set;
}

double feature_distance(const HandshapeFeatures& a, const HandshapeFeatures& b,
                        const DistanceWeights& w) {
  double d = w.fingers * a.fingers.symmetric_difference(b.fingers);
  if (a.flexion != b.flexion) d += w.flexion;
  if (a.thumb != b.thumb) d += w.thumb;
  if (a.spread != b.spread) d += w.spread;
  return d;
}

std::string_view to_string(Flexion f) {
  switch (f) {
    case Flexion::Extended: return "extended";
    case Flexion::Bent: return "bent";
    case Flexion::Curved: return "curved";
    case Flexion::Hooked: return "hooked";
    case Flexion::Closed: return "closed";
  }
  return "?";
}

std::string_view to_string(ThumbPosition t) {
  switch (t) {
    case ThumbPosition::Opposed: return "opposed";
    case ThumbPosition::Unopposed: return "unopposed";
    case ThumbPosition::Extended: return "extended";
    case ThumbPosition::Crossed: return "crossed";
  }
  return "?";
}

std::string_view to_string(Spread s) {
  return s == Spread::Spread ? "spread" : "together";
}

std::string_view to_string(HandshapeClass c) {
  switch (c) {
    case HandshapeClass::Class1: return "1";
    case HandshapeClass::Class2: return "2";
    case HandshapeClass::Class3: return "3";
    case HandshapeClass::Class4: return "4";
    case HandshapeClass::ClassY: return "Y";
    case HandshapeClass::ClassPK: return "PK";
    case HandshapeClass::Other: return "other";
  }
  return "?";
}

std::optional<Flexion> parse_flexion(std::string_view text) {
  if (text == "extended") return Flexion::Extended;
  if (text == "bent") return Flexion::Bent;
  if (text == "curved") return Flexion::Curved;
  if (text == "hooked") return Flexion::Hooked;
  if (text == "closed") return Flexion::Closed;
  return std::nullopt;
}

std::optional<ThumbPosition> parse_thumb(std::string_view text) {
  if (text == "opposed") return ThumbPosition::Opposed;
  if (text == "unopposed") return ThumbPosition::Unopposed;
  if (text == "extended") return ThumbPosition::Extended;
  if (text == "crossed") return ThumbPosition::Crossed;
  return std::nullopt;
}

std::optional<Spread> parse_spread(std::string_view text) {
  if (text == "spread") return Spread::Spread;
  if (text == "together") return Spread::Together;
  return std::nullopt;
}

std::optional<HandshapeClass> parse_handshape_class(std::string_view text) {
  if (text == "1") return HandshapeClass::Class1;
  if (text == "2") return HandshapeClass::Class2;
  if (text == "3") return HandshapeClass::Class3;
  if (text == "4") return HandshapeClass::Class4;
  if (text == "Y") return HandshapeClass::ClassY;
  if (text == "PK") return HandshapeClass::ClassPK;
  if (text == "other") return HandshapeClass::Other;
  return std::nullopt;
}

Inventory Inventory::load(std::istream& in, const InventoryOptions& options) {
  Inventory inv;
  inv.unmarked_bases_ = options.unmarked_bases;
  const std::string source = "inventory";

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view = line;
    if (std::size_t hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    while (!view.empty() && (view.back() == ' ' || view.back() == '\t')) view.remove_suffix(1);
    if (view.empty()) continue;

    auto fields = split_tabs(view);
    if (fields.size() != 7) {
      throw ParseError(source, line_no,
                       "expected 7 tab-separated fields, got " + std::to_string(fields.size()));
    }

    HandshapeEntry e;
    e.label = std::string(fields[0]);
    e.base = std::string(fields[1]);
    if (e.label.empty() || e.base.empty()) {
      throw ParseError(source, line_no, "empty label or base");
    }

    auto fingers = FingerSet::parse(field_value(fields[2], "fingers", source, line_no));
    if (!fingers) throw ParseError(source, line_no, "bad fingers value");
    e.features.fingers = *fingers;
    auto flexion = parse_flexion(field_value(fields[3], "flexion", source, line_no));
    if (!flexion) throw ParseError(source, line_no, "bad flexion value");
    e.features.flexion = *flexion;
    auto thumb = parse_thumb(field_value(fields[4], "thumb", source, line_no));
    if (!thumb) throw ParseError(source, line_no, "bad thumb value");
    e.features.thumb = *thumb;
    auto spread = parse_spread(field_value(fields[5], "spread", source, line_no));
    if (!spread) throw ParseError(source, line_no, "bad spread value");
    e.features.spread = *spread;
    auto cls = parse_handshape_class(field_value(fields[6], "class", source, line_no));
    if (!cls) throw ParseError(source, line_no, "bad class value");
    e.cls = *cls;

    if (inv.index_.count(e.label) != 0) {
      throw ParseError(source, line_no, "duplicate handshape label '" + e.label + "'");
    }
    if (inv.entries_.size() >= options.max_entries) {
      throw ParseError(source, line_no,
                       "inventory exceeds the cap of " + std::to_string(options.max_entries) +
                           " entries");
    }
    inv.index_.emplace(e.label, static_cast<HandshapeIndex>(inv.entries_.size()));
    inv.entries_.push_back(std::move(e));
  }

  // Variant chains have depth one: every base must itself be a base entry.
  for (const auto& e : inv.entries_) {
    auto base = inv.find(e.base);
    if (!base) {
      throw ParseError(source, 0, "entry '" + e.label + "' names unknown base '" + e.base + "'");
    }
    if (inv.entries_[*base].base != e.base) {
      throw ParseError(source, 0,
                       "entry '" + e.label + "' chains through variant '" + e.base + "'");
    }
  }
  return inv;
}

Inventory Inventory::load_file(const std::string& path, const InventoryOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open inventory file '" + path + "'");
  return load(in, options);
}

void Inventory::save(std::ostream& out) const {
  for (const auto& e : entries_) {
    out << e.label << '\t' << e.base << "\tfingers=" << e.features.fingers.to_string()
        << "\tflexion=" << to_string(e.features.flexion)
        << "\tthumb=" << to_string(e.features.thumb)
        << "\tspread=" << to_string(e.features.spread) << "\tclass=" << to_string(e.cls) << '\n';
  }
}

std::string Inventory::save_string() const {
  std::ostringstream out;
  save(out);
  return out.str();
}

std::optional<HandshapeIndex> Inventory::find(std::string_view label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

HandshapeIndex Inventory::require(std::string_view label) const {
  auto i = find(label);
  if (!i) throw UnknownHandshape(std::string(label));
  return *i;
}

bool Inventory::base_equal(std::string_view a, std::string_view b) const {
  return entry(a).base == entry(b).base;
}

bool Inventory::is_unmarked(std::string_view label) const {
  return unmarked_bases_.count(entry(label).base) != 0;
}

bool Inventory::is_unmarked(HandshapeIndex i) const {
  return unmarked_bases_.count(entries_[i].base) != 0;
}

double Inventory::distance(HandshapeIndex a, HandshapeIndex b) const {
  return feature_distance(entries_[a].features, entries_[b].features, weights_);
}

double Inventory::distance(std::string_view a, std::string_view b) const {
  return distance(require(a), require(b));
}

}  // namespace signphon
