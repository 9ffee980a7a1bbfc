#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tails/problems.hpp"

namespace tails {

struct UnknownReduction : std::runtime_error {
  explicit UnknownReduction(const std::string& n)
      : std::runtime_error("unknown reduction: " + n) {}
};

enum class Strength { Ordinary, Strong };

// One named instance-transformer / solution-transformer pair. Strong records
// ignore the source instance passed to backward.
struct ReductionRecord {
  std::string name;
  ProblemId source;
  ProblemId target;
  Strength strength = Strength::Ordinary;
  std::function<ProblemInstance(const ProblemInstance&)> forward;
  std::function<ProblemSolution(const ProblemInstance&, const ProblemSolution&)> backward;
};

const std::vector<ReductionRecord>& registry();
const ReductionRecord& find_record(const std::string& name);

// Non-repeating sequences of colors below the palette; candidate orderings of
// first appearances.
using CandidateSequence = std::vector<std::uint64_t>;

// All non-repeating sequences over [0,k) of length < k, ordered by length
// then lexicographically.
std::vector<CandidateSequence> candidates(std::uint64_t k);

// The appearance-order analysis of a coloring: S holds the candidate
// sequences whose colors appear in order somewhere in the stream, T the empty
// sequence plus those members of S whose last color never recurs after the
// first witness, and T0 the members of T that are maximal in T with every
// proper initial segment in T.
struct StzSets {
  std::vector<CandidateSequence> s;
  std::vector<CandidateSequence> t;
  std::vector<CandidateSequence> t0;
  std::map<CandidateSequence, std::vector<std::uint64_t>> witness;  // first witnesses of S
};

StzSets stz_sets(const Coloring& c);

// Minimum tail bound read off T0 and the first witnesses.
Nat bound_from_t0(const Coloring& c);

// Minimum tail bound via the chain of last-appearing singleton colors.
Nat min_ert_last_singleton(const Coloring& c);

// Greedy earliest-positions witness for the colors of sigma appearing in
// order; empty result(.found=false) when sigma never appears.
struct WitnessSearch {
  bool found = false;
  std::vector<std::uint64_t> positions;
};
WitnessSearch first_witness(const Coloring& c, const CandidateSequence& sigma);

// Enumeration whose target set is the single pair-code carrying the ones
// count of p in its first coordinate, or the empty set when the ones do not
// stop. Realized by simulating the marker process to quiescence.
EnumerationPresentation ones_count_gadget(const Word& p);

}  // namespace tails
