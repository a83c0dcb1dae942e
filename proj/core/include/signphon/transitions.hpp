#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "signphon/corpus.hpp"
#include "signphon/inventory.hpp"

namespace signphon {

// Start-to-end handshape co-occurrence counts. Row totals are maintained
// incrementally, so the row-sum invariant holds by construction; loading
// from a file revalidates it against the stored totals.
class TransitionTable {
 public:
  explicit TransitionTable(std::size_t inventory_size) : inventory_size_(inventory_size) {}

  void add(const std::string& start, const std::string& end, long long count = 1);
  void merge(const TransitionTable& other);

  long long count(std::string_view start, std::string_view end) const;
  long long start_total(std::string_view start) const;
  long long total() const { return total_; }
  std::size_t inventory_size() const { return inventory_size_; }
  bool empty() const { return total_ == 0; }

  using Row = std::map<std::string, long long, std::less<>>;

  const std::map<std::string, Row, std::less<>>& rows() const { return rows_; }

 private:
  std::size_t inventory_size_;
  std::map<std::string, Row, std::less<>> rows_;
  std::map<std::string, long long, std::less<>> start_totals_;
  long long total_ = 0;
};

struct SmoothingConfig {
  double alpha = 0.1;  // additive smoothing constant, >= 0
};

struct FitStats {
  std::size_t used = 0;
  std::size_t skipped_missing = 0;  // right-tier tokens lacking an endpoint
};

// Counts one (start, end) pair per token carrying both observed endpoints on
// the chosen hand. Tokens on the other tier are ignored; permutation of the
// input changes nothing.
TransitionTable fit(const std::vector<const SignToken*>& tokens, const Inventory& inv,
                    Hand hand = Hand::Dom, FitStats* stats = nullptr);

struct CondProb {
  double value = 0.0;
  // True when alpha is zero and the start row is empty, leaving the
  // conditional undefined; value is 0 in that case.
  bool undefined_row = false;
};

// (count + alpha) / (row_total + alpha * inventory_size).
CondProb cond_prob(const TransitionTable& table, std::string_view start, std::string_view end,
                   const Inventory& inv, const SmoothingConfig& cfg = {});

// Dense joint distribution over all inventory pairs. Keeps a reference to the
// inventory; the inventory must outlive the prior.
class JointPrior {
 public:
  double prob(HandshapeIndex start, HandshapeIndex end) const {
    return p_[static_cast<std::size_t>(start) * n_ + end];
  }
  double prob(std::string_view start, std::string_view end) const;
  const Inventory& inventory() const { return *inv_; }

 private:
  friend JointPrior joint_prior(const TransitionTable&, const Inventory&, const SmoothingConfig&);
  const Inventory* inv_ = nullptr;
  std::size_t n_ = 0;
  std::vector<double> p_;  // row-major [start * n + end], sums to 1
};

// P(s,e) = (count + alpha) / (N + alpha * n^2). Throws DegenerateDistribution
// for an empty table with alpha = 0.
JointPrior joint_prior(const TransitionTable& table, const Inventory& inv,
                       const SmoothingConfig& cfg = {});

struct ReportRow {
  std::string start;
  long long total = 0;
  // Ends by descending count, ties by ascending label.
  std::vector<std::pair<std::string, long long>> ends;
  // Ends other than the start itself whose unsmoothed conditional exceeds 1%.
  int non_identity_ends_over_1pct = 0;
};

struct FrequencyReport {
  std::vector<ReportRow> rows;  // by descending total, ties by ascending label
  long long grand_total = 0;
};

FrequencyReport report(const TransitionTable& table);

// JSON stats file in report order; round-trips exactly. Loading validates
// row sums and label membership.
void save_stats(std::ostream& out, const TransitionTable& table);
std::string save_stats_string(const TransitionTable& table);
TransitionTable load_stats(std::istream& in, const Inventory& inv);
TransitionTable load_stats_file(const std::string& path, const Inventory& inv);

}  // namespace signphon
