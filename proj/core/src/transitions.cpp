#include "signphon/transitions.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "signphon/errors.hpp"

namespace signphon {

using nlohmann::json;

void TransitionTable::add(const std::string& start, const std::string& end, long long count) {
  if (count < 0) throw std::invalid_argument("negative transition count");
  if (count == 0) return;
  rows_[start][end] += count;
  start_totals_[start] += count;
  total_ += count;
}

void TransitionTable::merge(const TransitionTable& other) {
  if (other.inventory_size_ != inventory_size_) {
    throw std::invalid_argument("cannot merge tables over different inventory sizes");
  }
  for (const auto& [start, ends] : other.rows_) {
    for (const auto& [end, count] : ends) add(start, end, count);
  }
}

long long TransitionTable::count(std::string_view start, std::string_view end) const {
  auto row = rows_.find(start);
  if (row == rows_.end()) return 0;
  auto cell = row->second.find(end);
  return cell == row->second.end() ? 0 : cell->second;
}

long long TransitionTable::start_total(std::string_view start) const {
  auto it = start_totals_.find(start);
  return it == start_totals_.end() ? 0 : it->second;
}

TransitionTable fit(const std::vector<const SignToken*>& tokens, const Inventory& inv,
                    Hand hand, FitStats* stats) {
  TransitionTable table(inv.size());
  FitStats local;
  for (const SignToken* t : tokens) {
    bool on_tier = t->tier == Tier::Both ||
                   t->tier == (hand == Hand::Dom ? Tier::Dominant : Tier::Nondominant);
    if (!on_tier) continue;
    const auto& start = hand == Hand::Dom ? t->obs_dom_start : t->obs_ndh_start;
    const auto& end = hand == Hand::Dom ? t->obs_dom_end : t->obs_ndh_end;
    if (!start || !end) {
      ++local.skipped_missing;
      continue;
    }
    inv.require(*start);
    inv.require(*end);
    table.add(*start, *end);
    ++local.used;
  }
  if (stats) *stats = local;
  return table;
}

CondProb cond_prob(const TransitionTable& table, std::string_view start, std::string_view end,
                   const Inventory& inv, const SmoothingConfig& cfg) {
  inv.require(start);
  inv.require(end);
  if (cfg.alpha < 0) throw std::invalid_argument("alpha must be non-negative");
  double denom = double(table.start_total(start)) +
                 cfg.alpha * double(table.inventory_size());
  if (denom == 0.0) return {0.0, true};
  return {(double(table.count(start, end)) + cfg.alpha) / denom, false};
}

double JointPrior::prob(std::string_view start, std::string_view end) const {
  return prob(inv_->require(start), inv_->require(end));
}

JointPrior joint_prior(const TransitionTable& table, const Inventory& inv,
                       const SmoothingConfig& cfg) {
  if (cfg.alpha < 0) throw std::invalid_argument("alpha must be non-negative");
  if (table.empty() && cfg.alpha == 0.0) {
    throw DegenerateDistribution("joint prior undefined: empty table with no smoothing");
  }
  std::size_t n = inv.size();
  JointPrior prior;
  prior.inv_ = &inv;
  prior.n_ = n;
  prior.p_.assign(n * n, 0.0);
  double denom = double(table.total()) + cfg.alpha * double(n) * double(n);
  for (std::size_t s = 0; s < n; ++s) {
    const std::string& start = inv.entry(static_cast<HandshapeIndex>(s)).label;
    for (std::size_t e = 0; e < n; ++e) {
      const std::string& end = inv.entry(static_cast<HandshapeIndex>(e)).label;
      prior.p_[s * n + e] = (double(table.count(start, end)) + cfg.alpha) / denom;
    }
  }
  return prior;
}

FrequencyReport report(const TransitionTable& table) {
  FrequencyReport rep;
  rep.grand_total = table.total();
  for (const auto& [start, ends] : table.rows()) {
    ReportRow row;
    row.start = start;
    row.total = table.start_total(start);
    for (const auto& [end, count] : ends) row.ends.emplace_back(end, count);
    std::sort(row.ends.begin(), row.ends.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    for (const auto& [end, count] : row.ends) {
      // Strictly above 1%, in integer arithmetic to keep the boundary exact.
      if (end != start && count * 100 > row.total) ++row.non_identity_ends_over_1pct;
    }
    rep.rows.push_back(std::move(row));
  }
  std::sort(rep.rows.begin(), rep.rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.total != b.total) return a.total > b.total;
    return a.start < b.start;
  });
  return rep;
}

void save_stats(std::ostream& out, const TransitionTable& table) {
  FrequencyReport rep = report(table);
  json rows = json::array();
  for (const ReportRow& row : rep.rows) {
    json ends = json::array();
    for (const auto& [end, count] : row.ends) {
      ends.push_back(json{{"count", count}, {"end", end}});
    }
    rows.push_back(json{{"ends", std::move(ends)}, {"start", row.start}, {"total", row.total}});
  }
  json obj{{"inventory_size", table.inventory_size()}, {"rows", std::move(rows)}};
  out << obj.dump(2) << '\n';
}

std::string save_stats_string(const TransitionTable& table) {
  std::ostringstream out;
  save_stats(out, table);
  return out.str();
}

TransitionTable load_stats(std::istream& in, const Inventory& inv) {
  const std::string source = "stats";
  json obj;
  try {
    obj = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(source, 0, e.what());
  }
  if (!obj.is_object() || !obj.contains("inventory_size") || !obj.contains("rows")) {
    throw ParseError(source, 0, "expected an object with inventory_size and rows");
  }
  if (!obj["inventory_size"].is_number_unsigned() || !obj["rows"].is_array()) {
    throw ParseError(source, 0, "bad inventory_size or rows field");
  }
  TransitionTable table(obj["inventory_size"].get<std::size_t>());
  for (const json& row : obj["rows"]) {
    if (!row.is_object() || !row.contains("start") || !row.contains("total") ||
        !row.contains("ends")) {
      throw ParseError(source, 0, "row needs start, total, and ends");
    }
    std::string start = row["start"].get<std::string>();
    if (!inv.find(start)) throw ParseError(source, 0, "unknown handshape '" + start + "'");
    long long declared = row["total"].get<long long>();
    long long sum = 0;
    for (const json& cell : row["ends"]) {
      std::string end = cell["end"].get<std::string>();
      if (!inv.find(end)) throw ParseError(source, 0, "unknown handshape '" + end + "'");
      long long count = cell["count"].get<long long>();
      if (count < 0) throw ParseError(source, 0, "negative count");
      table.add(start, end, count);
      sum += count;
    }
    if (sum != declared) {
      throw ParseError(source, 0,
                       "row '" + start + "' sums to " + std::to_string(sum) +
                           " but declares total " + std::to_string(declared));
    }
  }
  return table;
}

TransitionTable load_stats_file(const std::string& path, const Inventory& inv) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open stats file '" + path + "'");
  return load_stats(in, inv);
}

}  // namespace signphon
