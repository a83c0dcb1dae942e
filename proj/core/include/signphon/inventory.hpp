#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace signphon {

// Selected fingers, a subset of thumb/index/middle/ring/pinky.
// The text form uses the letters TIMRP in that fixed order ("-" for none).
class FingerSet {
 public:
  enum Finger : std::uint8_t { Thumb = 1, Index = 2, Middle = 4, Ring = 8, Pinky = 16 };

  constexpr FingerSet() = default;
  constexpr explicit FingerSet(std::uint8_t bits) : bits_(bits) {}

  constexpr bool contains(Finger f) const { return (bits_ & f) != 0; }
  constexpr void add(Finger f) { bits_ |= f; }
  int count() const;
  int symmetric_difference(FingerSet other) const;
  std::string to_string() const;
  static std::optional<FingerSet> parse(std::string_view text);

  constexpr bool operator==(const FingerSet&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

enum class Flexion : std::uint8_t { Extended, Bent, Curved, Hooked, Closed };
enum class ThumbPosition : std::uint8_t { Opposed, Unopposed, Extended, Crossed };
enum class Spread : std::uint8_t { Spread, Together };

// Coarse articulatory classes used by the prevalence reports.  Class
// membership follows the entry's base form; labels outside the named
// classes fall into Other.
enum class HandshapeClass : std::uint8_t { Class1, Class2, Class3, Class4, ClassY, ClassPK, Other };

struct HandshapeFeatures {
  FingerSet fingers;
  Flexion flexion = Flexion::Extended;
  ThumbPosition thumb = ThumbPosition::Opposed;
  Spread spread = Spread::Together;

  bool operator==(const HandshapeFeatures&) const = default;
};

// Weighted feature mismatch.  The finger term scales with the size of the
// symmetric difference; the remaining terms are mismatch indicators.
struct DistanceWeights {
  double fingers = 1.0;
  double flexion = 0.5;
  double thumb = 0.25;
  double spread = 0.25;
};

double feature_distance(const HandshapeFeatures& a, const HandshapeFeatures& b,
                        const DistanceWeights& w = {});

struct HandshapeEntry {
  std::string label;
  std::string base;  // label of the base form; equal to label for base entries
  HandshapeFeatures features;
  HandshapeClass cls = HandshapeClass::Other;
};

using HandshapeIndex = std::uint16_t;

struct InventoryOptions {
  // Hard cap on inventory size; raise deliberately if a larger label set is
  // ever needed.
  std::size_t max_entries = 87;
  // Base forms that may serve as a passive hand regardless of the active
  // hand's shape.
  std::set<std::string> unmarked_bases = {"1", "5", "A", "B", "C", "O"};
};

// The set of handshape labels a corpus may use, with per-label features,
// a variant -> base mapping (depth one) and a class assignment.
//
// File format: one entry per line,
//   label <TAB> base <TAB> fingers=TIMRP <TAB> flexion=... <TAB> thumb=...
//         <TAB> spread=... <TAB> class=...
// '#' starts a comment.  Entry order is significant and is preserved.
class Inventory {
 public:
  static Inventory load(std::istream& in, const InventoryOptions& options = {});
  static Inventory load_file(const std::string& path, const InventoryOptions& options = {});
  void save(std::ostream& out) const;
  std::string save_string() const;

  std::size_t size() const { return entries_.size(); }
  const std::vector<HandshapeEntry>& entries() const { return entries_; }

  std::optional<HandshapeIndex> find(std::string_view label) const;
  bool contains(std::string_view label) const { return find(label).has_value(); }
  // Throws UnknownHandshape.
  HandshapeIndex require(std::string_view label) const;
  const HandshapeEntry& entry(HandshapeIndex i) const { return entries_[i]; }
  const HandshapeEntry& entry(std::string_view label) const { return entries_[require(label)]; }

  HandshapeClass class_of(std::string_view label) const { return entry(label).cls; }
  std::string_view base_of(std::string_view label) const { return entry(label).base; }
  bool base_equal(std::string_view a, std::string_view b) const;
  bool is_unmarked(std::string_view label) const;
  bool is_unmarked(HandshapeIndex i) const;

  double distance(HandshapeIndex a, HandshapeIndex b) const;
  double distance(std::string_view a, std::string_view b) const;

  const DistanceWeights& weights() const { return weights_; }
  void set_weights(const DistanceWeights& w) { weights_ = w; }
  const std::set<std::string>& unmarked_bases() const { return unmarked_bases_; }

 private:
  std::vector<HandshapeEntry> entries_;
  std::map<std::string, HandshapeIndex, std::less<>> index_;
  DistanceWeights weights_;
  std::set<std::string> unmarked_bases_;
};

std::string_view to_string(Flexion f);
std::string_view to_string(ThumbPosition t);
std::string_view to_string(Spread s);
std::string_view to_string(HandshapeClass c);
std::optional<Flexion> parse_flexion(std::string_view text);
std::optional<ThumbPosition> parse_thumb(std::string_view text);
std::optional<Spread> parse_spread(std::string_view text);
std::optional<HandshapeClass> parse_handshape_class(std::string_view text);

}  // namespace signphon
