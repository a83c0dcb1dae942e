#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace signphon {

// Malformed input data (inventory, lexicon, corpus, stats, dataset files).
// The command line tools map this to exit code 2.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& message) : std::runtime_error(message) {}
  ParseError(const std::string& source, std::size_t line, const std::string& message)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + message) {}
};

// A handshape label that is not a member of the active inventory.
class UnknownHandshape : public std::runtime_error {
 public:
  explicit UnknownHandshape(const std::string& label)
      : std::runtime_error("unknown handshape label '" + label + "'") {}
};

// A gloss with no lexicon entry, after variant prefixes have been stripped.
class UnknownGloss : public std::runtime_error {
 public:
  explicit UnknownGloss(const std::string& gloss)
      : std::runtime_error("unknown gloss '" + gloss + "'") {}
};

// A probability mass operation whose result would carry no mass at all,
// e.g. masking a score vector down to an empty support.
class DegenerateDistribution : public std::runtime_error {
 public:
  explicit DegenerateDistribution(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace signphon
