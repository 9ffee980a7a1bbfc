#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "tails/codes.hpp"

namespace tails {

// A symbol is a natural number or the distinguished PAUSE token. PAUSE is the
// "no output" step of an enumeration; colorings and plain words reject it.
class Symbol {
 public:
  Symbol() : value_(Nat(0)) {}
  explicit Symbol(Nat v) : value_(std::move(v)) {}
  static Symbol nat(Nat v) { return Symbol(std::move(v)); }
  static Symbol pause() {
    Symbol s;
    s.value_.reset();
    return s;
  }

  bool is_pause() const { return !value_.has_value(); }
  const Nat& value() const;

  bool operator==(const Symbol& o) const { return value_ == o.value_; }
  bool operator!=(const Symbol& o) const { return !(*this == o); }
  // PAUSE sorts before every natural.
  bool operator<(const Symbol& o) const {
    if (is_pause()) return !o.is_pause();
    if (o.is_pause()) return false;
    return *value_ < *o.value_;
  }

 private:
  std::optional<Nat> value_;
};

inline Symbol sym(std::uint64_t v) { return Symbol(Nat(v)); }

// Where a symbol's occurrences sit in the denoted stream: either it recurs
// forever (it lives in the period block) or it has finitely many positions.
struct OccurrenceInfo {
  bool infinite = false;
  std::uint64_t first = 0;               // first occurrence, when infinite
  std::vector<std::uint64_t> positions;  // all occurrences, when finite
};

// Finite presentation of an infinite sequence: a prefix followed by a
// repeating nonempty period.
class Word {
 public:
  Word(std::vector<Symbol> prefix, std::vector<Symbol> period);

  const std::vector<Symbol>& prefix() const { return prefix_; }
  const std::vector<Symbol>& period() const { return period_; }

  Symbol at(std::uint64_t n) const;
  std::vector<Symbol> stream_prefix(std::uint64_t len) const;

  // Unique presentation with minimal period length, then minimal prefix
  // length.
  Word canonicalize() const;

  OccurrenceInfo occurrence_info(const Symbol& v) const;

  // Exactly the symbols occurring in the period block.
  std::set<Symbol> infinite_values() const;

  bool contains_pause() const;
  bool denotes_same_stream(const Word& other) const;

  bool operator==(const Word& o) const {
    return prefix_ == o.prefix_ && period_ == o.period_;
  }

 private:
  std::vector<Symbol> prefix_;
  std::vector<Symbol> period_;
};

Word make_word(std::vector<std::uint64_t> prefix, std::vector<std::uint64_t> period);

}  // namespace tails
