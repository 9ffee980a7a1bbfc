#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tails/words.hpp"

namespace tails {

struct EmptyTarget : std::runtime_error {
  EmptyTarget() : std::runtime_error("target set is empty") {}
};
struct EmptyFamily : std::runtime_error {
  EmptyFamily() : std::runtime_error("target family is empty") {}
};
struct InvalidBound : std::runtime_error {
  explicit InvalidBound(const std::string& m) : std::runtime_error(m) {}
};
struct ArityMismatch : std::runtime_error {
  explicit ArityMismatch(const std::string& m) : std::runtime_error(m) {}
};

enum class ProblemId {
  Lpo,
  IsInfinite,
  Cn,
  Tcn,
  Ert,
  Ertj,
  Ect,
  MinErt,
  MinEct,
  CSharpMax,
  Star,
  Product,
};

std::string problem_id_name(ProblemId id);
ProblemId problem_id_from_name(const std::string& name);

// A word over [0,k): the instance form shared by the tail principles.
struct Coloring {
  Word word;
  std::uint64_t palette = 1;  // k

  std::uint64_t color_at(std::uint64_t n) const { return to_u64(word.at(n).value()); }
};

// Presents an enumeration of the complement of a target set A. The stream is
// the explicit values followed by either PAUSE forever or the naturals in
// increasing order skipping exactly `skip`.
struct EnumerationPresentation {
  enum class TailKind { Pauses, AllExcept };
  std::vector<Symbol> explicit_part;
  TailKind tail = TailKind::Pauses;
  std::set<Nat> skip;  // used by AllExcept

  // s-th value of the denoted enumeration stream.
  Symbol stream_at(std::uint64_t s) const;
};

// The target set A of an enumeration: either a finite set or the complement
// of a finite set.
struct TargetSet {
  bool cofinite = false;
  std::set<Nat> elems;  // members when finite, excluded values when cofinite

  bool contains(const Nat& v) const {
    bool listed = elems.count(v) > 0;
    return cofinite ? !listed : listed;
  }
  bool empty() const { return !cofinite && elems.empty(); }
  Nat min() const;
};

struct FiniteSetFamilyInstance {
  std::uint64_t size_bound = 1;  // n
  EnumerationPresentation enumeration;  // over bitmask set-codes
};

struct ProblemInstance;

struct LpoInstance {
  Word word;
};
struct IsInfiniteInstance {
  Word word;  // over {0,1}
};
struct CnInstance {
  EnumerationPresentation enumeration;  // target must be nonempty
};
struct TcnInstance {
  EnumerationPresentation enumeration;
};
struct ErtInstance {
  Coloring coloring;
};
struct ErtjInstance {
  Coloring coloring;
  std::uint64_t multiplicity = 1;  // j
};
struct EctInstance {
  Coloring coloring;
};
struct MinErtInstance {
  Coloring coloring;
};
struct MinEctInstance {
  Coloring coloring;
};
struct CSharpMaxInstance {
  FiniteSetFamilyInstance family;
};
struct StarInstance {
  ProblemId member = ProblemId::Lpo;
  std::vector<ProblemInstance> items;
};
struct ProductInstance {
  std::vector<ProblemInstance> items;
};

struct ProblemInstance {
  std::variant<LpoInstance, IsInfiniteInstance, CnInstance, TcnInstance, ErtInstance,
               ErtjInstance, EctInstance, MinErtInstance, MinEctInstance,
               CSharpMaxInstance, StarInstance, ProductInstance>
      node;

  ProblemId id() const;
};

struct ProblemSolution;

struct BitSolution {
  int bit = 0;
};
struct NumberSolution {
  Nat number;
};
struct SetSolution {
  std::set<Nat> elems;
};
struct TupleSolution {
  std::vector<ProblemSolution> items;
};

struct ProblemSolution {
  std::variant<BitSolution, NumberSolution, SetSolution, TupleSolution> node;

  static ProblemSolution bit(int b) { return {BitSolution{b}}; }
  static ProblemSolution number(Nat n) { return {NumberSolution{std::move(n)}}; }
  static ProblemSolution set(std::set<Nat> s) { return {SetSolution{std::move(s)}}; }
  static ProblemSolution tuple(std::vector<ProblemSolution> t) {
    return {TupleSolution{std::move(t)}};
  }

  int as_bit() const { return std::get<BitSolution>(node).bit; }
  const Nat& as_number() const { return std::get<NumberSolution>(node).number; }
  const std::set<Nat>& as_set() const { return std::get<SetSolution>(node).elems; }
  const std::vector<ProblemSolution>& as_tuple() const {
    return std::get<TupleSolution>(node).items;
  }

  bool operator==(const ProblemSolution& o) const;
};

// Witness data for the ERT' form: a bound, the palette colors occurring at or
// after it, and for each such color the least pair of distinct positions
// carrying it.
struct WitnessTable {
  Nat bound;
  std::set<std::uint64_t> colors;  // I
  std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> pairs;
};

// --- enumeration semantics ---

TargetSet target_set(const EnumerationPresentation& e);
Nat tcn_solve(const EnumerationPresentation& e);
bool tcn_validate(const EnumerationPresentation& e, const Nat& s);
Nat cn_solve(const EnumerationPresentation& e);  // throws EmptyTarget

// --- single-bit problems ---

int lpo_solve(const Word& f);
int is_infinite_solve(const Word& p);

// --- tail validators and minimum-bound oracles ---

bool ert_validate(const Coloring& c, const Nat& b);
bool ect_validate(const Coloring& c, const Nat& b);
bool ertj_validate(const Coloring& c, std::uint64_t j, const Nat& b);
Nat min_ert_oracle(const Coloring& c);
Nat min_ect_oracle(const Coloring& c);
WitnessTable ert_prime_witness(const Coloring& c, const Nat& b);

// --- C#max ---

// The family as a finite set of set-codes. Rejects cofinite presentations:
// a cofinite family contains codes of unbounded cardinality.
std::set<Nat> csharpmax_family(const CSharpMaxInstance& inst);
std::set<Nat> csharpmax_solve(const CSharpMaxInstance& inst);
bool csharpmax_validate(const CSharpMaxInstance& inst, const std::set<Nat>& s);

// --- generic instance interface ---

// Checks the instance invariants (palette bounds, PAUSE legality, binary
// words, nonempty CN target, family size bounds, star homogeneity).
bool instance_valid(const ProblemInstance& inst);

// Canonical solver: min bound for the bound problems, min member for choice,
// componentwise for compounds.
ProblemSolution solve(const ProblemInstance& inst);
bool validate(const ProblemInstance& inst, const ProblemSolution& sol);

// Deterministic solution sampling used by the verification harness.
std::vector<ProblemSolution> sample_solutions(const ProblemInstance& inst,
                                              std::uint64_t seed);

}  // namespace tails
