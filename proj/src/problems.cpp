#include "tails/problems.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace tails {

std::string problem_id_name(ProblemId id) {
  switch (id) {
    case ProblemId::Lpo: return "lpo";
    case ProblemId::IsInfinite: return "isinfinite";
    case ProblemId::Cn: return "cn";
    case ProblemId::Tcn: return "tcn";
    case ProblemId::Ert: return "ert";
    case ProblemId::Ertj: return "ertj";
    case ProblemId::Ect: return "ect";
    case ProblemId::MinErt: return "minert";
    case ProblemId::MinEct: return "minect";
    case ProblemId::CSharpMax: return "csharpmax";
    case ProblemId::Star: return "star";
    case ProblemId::Product: return "product";
  }
  throw std::logic_error("unknown problem id");
}

ProblemId problem_id_from_name(const std::string& name) {
  static const std::map<std::string, ProblemId> table = {
      {"lpo", ProblemId::Lpo},         {"isinfinite", ProblemId::IsInfinite},
      {"cn", ProblemId::Cn},           {"tcn", ProblemId::Tcn},
      {"ert", ProblemId::Ert},         {"ertj", ProblemId::Ertj},
      {"ect", ProblemId::Ect},         {"minert", ProblemId::MinErt},
      {"minect", ProblemId::MinEct},   {"csharpmax", ProblemId::CSharpMax},
      {"star", ProblemId::Star},       {"product", ProblemId::Product},
  };
  auto it = table.find(name);
  if (it == table.end()) throw std::invalid_argument("unknown problem: " + name);
  return it->second;
}

ProblemId ProblemInstance::id() const {
  struct Visitor {
    ProblemId operator()(const LpoInstance&) { return ProblemId::Lpo; }
    ProblemId operator()(const IsInfiniteInstance&) { return ProblemId::IsInfinite; }
    ProblemId operator()(const CnInstance&) { return ProblemId::Cn; }
    ProblemId operator()(const TcnInstance&) { return ProblemId::Tcn; }
    ProblemId operator()(const ErtInstance&) { return ProblemId::Ert; }
    ProblemId operator()(const ErtjInstance&) { return ProblemId::Ertj; }
    ProblemId operator()(const EctInstance&) { return ProblemId::Ect; }
    ProblemId operator()(const MinErtInstance&) { return ProblemId::MinErt; }
    ProblemId operator()(const MinEctInstance&) { return ProblemId::MinEct; }
    ProblemId operator()(const CSharpMaxInstance&) { return ProblemId::CSharpMax; }
    ProblemId operator()(const StarInstance&) { return ProblemId::Star; }
    ProblemId operator()(const ProductInstance&) { return ProblemId::Product; }
  };
  return std::visit(Visitor{}, node);
}

bool ProblemSolution::operator==(const ProblemSolution& o) const {
  if (node.index() != o.node.index()) return false;
  if (std::holds_alternative<BitSolution>(node))
    return as_bit() == o.as_bit();
  if (std::holds_alternative<NumberSolution>(node))
    return as_number() == o.as_number();
  if (std::holds_alternative<SetSolution>(node))
    return as_set() == o.as_set();
  const auto& a = as_tuple();
  const auto& b = o.as_tuple();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

// --- enumerations ---

Symbol EnumerationPresentation::stream_at(std::uint64_t s) const {
  if (s < explicit_part.size()) return explicit_part[s];
  std::uint64_t t = s - explicit_part.size();
  if (tail == TailKind::Pauses) return Symbol::pause();
  // t-th natural in increasing order, skipping `skip`.
  Nat v = t;
  for (const Nat& x : skip)
    if (x <= v) ++v;
  return Symbol(v);
}

TargetSet target_set(const EnumerationPresentation& e) {
  std::set<Nat> explicit_values;
  for (const Symbol& s : e.explicit_part)
    if (!s.is_pause()) explicit_values.insert(s.value());
  TargetSet a;
  if (e.tail == EnumerationPresentation::TailKind::Pauses) {
    a.cofinite = true;
    a.elems = std::move(explicit_values);
  } else {
    a.cofinite = false;
    for (const Nat& v : e.skip)
      if (!explicit_values.count(v)) a.elems.insert(v);
  }
  return a;
}

Nat TargetSet::min() const {
  if (empty()) throw EmptyTarget();
  if (!cofinite) return *elems.begin();
  Nat v = 0;
  while (elems.count(v)) ++v;
  return v;
}

Nat tcn_solve(const EnumerationPresentation& e) {
  TargetSet a = target_set(e);
  if (a.empty()) return 0;  // total continuation convention
  return a.min();
}

bool tcn_validate(const EnumerationPresentation& e, const Nat& s) {
  TargetSet a = target_set(e);
  return a.empty() || a.contains(s);
}

Nat cn_solve(const EnumerationPresentation& e) {
  TargetSet a = target_set(e);
  if (a.empty()) throw EmptyTarget();
  return a.min();
}

// --- bit problems ---

int lpo_solve(const Word& f) {
  OccurrenceInfo occ = f.occurrence_info(sym(0));
  bool has_zero = occ.infinite || !occ.positions.empty();
  return has_zero ? 0 : 1;
}

int is_infinite_solve(const Word& p) {
  return p.infinite_values().count(sym(1)) ? 1 : 0;
}

// --- tail validators ---

bool ert_validate(const Coloring& c, const Nat& b) {
  Word w = c.word.canonicalize();
  for (std::uint64_t v = 0; v < c.palette; ++v) {
    OccurrenceInfo occ = w.occurrence_info(sym(v));
    if (occ.infinite) continue;
    std::size_t at_or_after = 0;
    for (std::uint64_t pos : occ.positions)
      if (Nat(pos) >= b) ++at_or_after;
    if (at_or_after == 1) return false;
  }
  return true;
}

bool ect_validate(const Coloring& c, const Nat& b) {
  Word w = c.word.canonicalize();
  auto inf = w.infinite_values();
  if (b >= Nat(w.prefix().size())) return true;
  for (std::uint64_t x = to_u64(b); x < w.prefix().size(); ++x)
    if (!inf.count(w.at(x))) return false;
  return true;
}

bool ertj_validate(const Coloring& c, std::uint64_t j, const Nat& b) {
  if (j < 1) throw std::invalid_argument("multiplicity must be >= 1");
  Word w = c.word.canonicalize();
  for (std::uint64_t v = 0; v < c.palette; ++v) {
    OccurrenceInfo occ = w.occurrence_info(sym(v));
    if (occ.infinite) continue;
    std::size_t at_or_after = 0;
    for (std::uint64_t pos : occ.positions)
      if (Nat(pos) >= b) ++at_or_after;
    if (at_or_after != 0 && at_or_after < j) return false;
  }
  return true;
}

namespace {

// Positions at or after the canonical prefix carry only period colors, so the
// least valid bound lies in [0, |prefix|]; the scan below relies on this.
template <typename Valid>
Nat min_bound_scan(const Coloring& c, Valid valid) {
  Word w = c.word.canonicalize();
  Coloring canon{w, c.palette};
  for (std::uint64_t b = 0; b <= w.prefix().size(); ++b)
    if (valid(canon, Nat(b))) return Nat(b);
  throw std::logic_error("no bound up to |prefix| validated");
}

}  // namespace

Nat min_ert_oracle(const Coloring& c) {
  return min_bound_scan(c, [](const Coloring& cc, const Nat& b) {
    return ert_validate(cc, b);
  });
}

Nat min_ect_oracle(const Coloring& c) {
  // Least b with only recurring colors from b on: one past the last finitely
  // occurring position of the canonical form.
  Word w = c.word.canonicalize();
  auto inf = w.infinite_values();
  const auto& pre = w.prefix();
  for (std::size_t n = pre.size(); n-- > 0;)
    if (!inf.count(pre[n])) return Nat(n + 1);
  return Nat(0);
}

WitnessTable ert_prime_witness(const Coloring& c, const Nat& b) {
  if (!ert_validate(c, b)) throw InvalidBound("bound does not satisfy the tail condition");
  Word w = c.word.canonicalize();
  WitnessTable table;
  table.bound = b;
  std::uint64_t start = to_u64(b);
  std::uint64_t horizon = start + w.prefix().size() + 2 * w.period().size() + 2;
  for (std::uint64_t v = 0; v < c.palette; ++v) {
    OccurrenceInfo occ = w.occurrence_info(sym(v));
    bool occurs_at_or_after = occ.infinite;
    if (!occ.infinite)
      for (std::uint64_t pos : occ.positions)
        if (Nat(pos) >= b) occurs_at_or_after = true;
    if (!occurs_at_or_after) continue;
    table.colors.insert(v);
    std::uint64_t x = horizon, y = horizon;
    for (std::uint64_t n = start; n < horizon; ++n) {
      if (to_u64(w.at(n).value()) != v) continue;
      if (x == horizon) {
        x = n;
      } else {
        y = n;
        break;
      }
    }
    if (y == horizon) throw std::logic_error("second witness not found within horizon");
    table.pairs[v] = {x, y};
  }
  return table;
}

// --- C#max ---

std::set<Nat> csharpmax_family(const CSharpMaxInstance& inst) {
  TargetSet a = target_set(inst.family.enumeration);
  if (a.cofinite)
    throw std::invalid_argument("cofinite set family has unbounded member sizes");
  return a.elems;
}

std::set<Nat> csharpmax_solve(const CSharpMaxInstance& inst) {
  std::set<Nat> family = csharpmax_family(inst);
  if (family.empty()) throw EmptyFamily();
  std::size_t best = 0;
  for (const Nat& code : family) best = std::max(best, set_code_cardinality(code));
  for (const Nat& code : family)
    if (set_code_cardinality(code) == best) return decode_set(code);
  throw std::logic_error("unreachable");
}

bool csharpmax_validate(const CSharpMaxInstance& inst, const std::set<Nat>& s) {
  std::set<Nat> family = csharpmax_family(inst);
  if (family.empty()) throw EmptyFamily();
  Nat code = encode_set(s);
  if (!family.count(code)) return false;
  std::size_t best = 0;
  for (const Nat& c : family) best = std::max(best, set_code_cardinality(c));
  return s.size() == best;
}

// --- generic interface ---

namespace {

bool coloring_valid(const Coloring& c) {
  if (c.palette < 1) return false;
  if (c.word.contains_pause()) return false;
  auto check = [&](const std::vector<Symbol>& part) {
    for (const Symbol& s : part)
      if (s.value() >= Nat(c.palette)) return false;
    return true;
  };
  return check(c.word.prefix()) && check(c.word.period());
}

bool binary_word_valid(const Word& w) {
  auto check = [](const std::vector<Symbol>& part) {
    for (const Symbol& s : part)
      if (s.is_pause() || s.value() > 1) return false;
    return true;
  };
  return check(w.prefix()) && check(w.period());
}

}  // namespace

bool instance_valid(const ProblemInstance& inst) {
  struct Visitor {
    bool operator()(const LpoInstance& i) { return !i.word.contains_pause(); }
    bool operator()(const IsInfiniteInstance& i) { return binary_word_valid(i.word); }
    bool operator()(const CnInstance& i) { return !target_set(i.enumeration).empty(); }
    bool operator()(const TcnInstance&) { return true; }
    bool operator()(const ErtInstance& i) { return coloring_valid(i.coloring); }
    bool operator()(const ErtjInstance& i) {
      return i.multiplicity >= 1 && coloring_valid(i.coloring);
    }
    bool operator()(const EctInstance& i) { return coloring_valid(i.coloring); }
    bool operator()(const MinErtInstance& i) { return coloring_valid(i.coloring); }
    bool operator()(const MinEctInstance& i) { return coloring_valid(i.coloring); }
    bool operator()(const CSharpMaxInstance& i) {
      TargetSet a = target_set(i.family.enumeration);
      if (a.cofinite) return false;
      for (const Nat& code : a.elems)
        if (set_code_cardinality(code) > i.family.size_bound) return false;
      return true;
    }
    bool operator()(const StarInstance& i) {
      for (const auto& item : i.items)
        if (item.id() != i.member || !instance_valid(item)) return false;
      return true;
    }
    bool operator()(const ProductInstance& i) {
      for (const auto& item : i.items)
        if (!instance_valid(item)) return false;
      return true;
    }
  };
  return std::visit(Visitor{}, inst.node);
}

ProblemSolution solve(const ProblemInstance& inst) {
  struct Visitor {
    ProblemSolution operator()(const LpoInstance& i) {
      return ProblemSolution::bit(lpo_solve(i.word));
    }
    ProblemSolution operator()(const IsInfiniteInstance& i) {
      return ProblemSolution::bit(is_infinite_solve(i.word));
    }
    ProblemSolution operator()(const CnInstance& i) {
      return ProblemSolution::number(cn_solve(i.enumeration));
    }
    ProblemSolution operator()(const TcnInstance& i) {
      return ProblemSolution::number(tcn_solve(i.enumeration));
    }
    ProblemSolution operator()(const ErtInstance& i) {
      return ProblemSolution::number(min_ert_oracle(i.coloring));
    }
    ProblemSolution operator()(const ErtjInstance& i) {
      Word w = i.coloring.word.canonicalize();
      Coloring canon{w, i.coloring.palette};
      for (std::uint64_t b = 0; b <= w.prefix().size(); ++b)
        if (ertj_validate(canon, i.multiplicity, Nat(b)))
          return ProblemSolution::number(Nat(b));
      throw std::logic_error("no ERT(j) bound up to |prefix|");
    }
    ProblemSolution operator()(const EctInstance& i) {
      return ProblemSolution::number(min_ect_oracle(i.coloring));
    }
    ProblemSolution operator()(const MinErtInstance& i) {
      return ProblemSolution::number(min_ert_oracle(i.coloring));
    }
    ProblemSolution operator()(const MinEctInstance& i) {
      return ProblemSolution::number(min_ect_oracle(i.coloring));
    }
    ProblemSolution operator()(const CSharpMaxInstance& i) {
      return ProblemSolution::set(csharpmax_solve(i));
    }
    ProblemSolution operator()(const StarInstance& i) {
      std::vector<ProblemSolution> items;
      for (const auto& item : i.items) items.push_back(solve(item));
      return ProblemSolution::tuple(std::move(items));
    }
    ProblemSolution operator()(const ProductInstance& i) {
      std::vector<ProblemSolution> items;
      for (const auto& item : i.items) items.push_back(solve(item));
      return ProblemSolution::tuple(std::move(items));
    }
  };
  return std::visit(Visitor{}, inst.node);
}

bool validate(const ProblemInstance& inst, const ProblemSolution& sol) {
  struct Visitor {
    const ProblemSolution& sol;
    bool number_shape() const {
      return std::holds_alternative<NumberSolution>(sol.node);
    }
    bool operator()(const LpoInstance& i) {
      return std::holds_alternative<BitSolution>(sol.node) &&
             sol.as_bit() == lpo_solve(i.word);
    }
    bool operator()(const IsInfiniteInstance& i) {
      return std::holds_alternative<BitSolution>(sol.node) &&
             sol.as_bit() == is_infinite_solve(i.word);
    }
    bool operator()(const CnInstance& i) {
      return number_shape() && target_set(i.enumeration).contains(sol.as_number());
    }
    bool operator()(const TcnInstance& i) {
      return number_shape() && tcn_validate(i.enumeration, sol.as_number());
    }
    bool operator()(const ErtInstance& i) {
      return number_shape() && ert_validate(i.coloring, sol.as_number());
    }
    bool operator()(const ErtjInstance& i) {
      return number_shape() &&
             ertj_validate(i.coloring, i.multiplicity, sol.as_number());
    }
    bool operator()(const EctInstance& i) {
      return number_shape() && ect_validate(i.coloring, sol.as_number());
    }
    bool operator()(const MinErtInstance& i) {
      return number_shape() && sol.as_number() == min_ert_oracle(i.coloring);
    }
    bool operator()(const MinEctInstance& i) {
      return number_shape() && sol.as_number() == min_ect_oracle(i.coloring);
    }
    bool operator()(const CSharpMaxInstance& i) {
      return std::holds_alternative<SetSolution>(sol.node) &&
             csharpmax_validate(i, sol.as_set());
    }
    bool operator()(const StarInstance& i) { return componentwise(i.items); }
    bool operator()(const ProductInstance& i) { return componentwise(i.items); }
    bool componentwise(const std::vector<ProblemInstance>& items) {
      if (!std::holds_alternative<TupleSolution>(sol.node)) return false;
      const auto& parts = sol.as_tuple();
      if (parts.size() != items.size()) return false;
      for (std::size_t n = 0; n < items.size(); ++n)
        if (!validate(items[n], parts[n])) return false;
      return true;
    }
  };
  return std::visit(Visitor{sol}, inst.node);
}

namespace {

std::vector<ProblemSolution> sample_tcn(const EnumerationPresentation& e,
                                        std::uint64_t seed, bool allow_empty) {
  TargetSet a = target_set(e);
  if (a.empty()) {
    if (!allow_empty) throw EmptyTarget();
    return {ProblemSolution::number(0), ProblemSolution::number(5),
            ProblemSolution::number(13)};
  }
  std::vector<ProblemSolution> out;
  out.push_back(ProblemSolution::number(a.min()));
  // Largest member visible in a bounded window.
  Nat window_top = a.cofinite
                       ? (a.elems.empty() ? Nat(8) : *a.elems.rbegin() + 5)
                       : *a.elems.rbegin();
  Nat window_max = a.min();
  for (Nat v = a.min(); v <= window_top; ++v)
    if (a.contains(v)) window_max = v;
  out.push_back(ProblemSolution::number(window_max));
  // One seeded member.
  std::mt19937_64 rng(seed);
  if (a.cofinite) {
    Nat probe = a.min() + Nat(rng() % 17);
    while (!a.contains(probe)) ++probe;
    out.push_back(ProblemSolution::number(probe));
  } else {
    auto it = a.elems.begin();
    std::advance(it, rng() % a.elems.size());
    out.push_back(ProblemSolution::number(*it));
  }
  return out;
}

}  // namespace

std::vector<ProblemSolution> sample_solutions(const ProblemInstance& inst,
                                              std::uint64_t seed) {
  struct Visitor {
    std::uint64_t seed;
    std::vector<ProblemSolution> operator()(const LpoInstance& i) {
      return {ProblemSolution::bit(lpo_solve(i.word))};
    }
    std::vector<ProblemSolution> operator()(const IsInfiniteInstance& i) {
      return {ProblemSolution::bit(is_infinite_solve(i.word))};
    }
    std::vector<ProblemSolution> operator()(const CnInstance& i) {
      return sample_tcn(i.enumeration, seed, false);
    }
    std::vector<ProblemSolution> operator()(const TcnInstance& i) {
      return sample_tcn(i.enumeration, seed, true);
    }
    std::vector<ProblemSolution> bounds(const Nat& least) {
      return {ProblemSolution::number(least), ProblemSolution::number(least + 1),
              ProblemSolution::number(least + 7)};
    }
    // Repeating-tail validity is not monotone in the bound (a color can lose
    // its second occurrence when the tail shortens), so sampled bounds above
    // the minimum are bumped up to the next valid bound.  A valid bound
    // always exists at |prefix| and beyond.
    std::vector<ProblemSolution> valid_bounds(
        const Nat& least, const std::function<bool(const Nat&)>& valid) {
      std::vector<ProblemSolution> out{ProblemSolution::number(least)};
      for (unsigned offset : {1u, 7u}) {
        Nat b = least + offset;
        while (!valid(b)) ++b;
        out.push_back(ProblemSolution::number(b));
      }
      return out;
    }
    std::vector<ProblemSolution> operator()(const ErtInstance& i) {
      return valid_bounds(min_ert_oracle(i.coloring), [&](const Nat& b) {
        return ert_validate(i.coloring, b);
      });
    }
    std::vector<ProblemSolution> operator()(const ErtjInstance& i) {
      ProblemInstance wrapped{i};
      return valid_bounds(solve(wrapped).as_number(), [&](const Nat& b) {
        return ertj_validate(i.coloring, i.multiplicity, b);
      });
    }
    std::vector<ProblemSolution> operator()(const EctInstance& i) {
      return bounds(min_ect_oracle(i.coloring));
    }
    std::vector<ProblemSolution> operator()(const MinErtInstance& i) {
      return {ProblemSolution::number(min_ert_oracle(i.coloring))};
    }
    std::vector<ProblemSolution> operator()(const MinEctInstance& i) {
      return {ProblemSolution::number(min_ect_oracle(i.coloring))};
    }
    std::vector<ProblemSolution> operator()(const CSharpMaxInstance& i) {
      std::set<Nat> family = csharpmax_family(i);
      if (family.empty()) throw EmptyFamily();
      std::size_t best = 0;
      for (const Nat& c : family) best = std::max(best, set_code_cardinality(c));
      std::vector<ProblemSolution> out;
      for (const Nat& c : family) {
        if (set_code_cardinality(c) != best) continue;
        out.push_back(ProblemSolution::set(decode_set(c)));
        if (out.size() == 3) break;
      }
      return out;
    }
    std::vector<ProblemSolution> operator()(const StarInstance& i) {
      return componentwise(i.items);
    }
    std::vector<ProblemSolution> operator()(const ProductInstance& i) {
      return componentwise(i.items);
    }
    std::vector<ProblemSolution> componentwise(
        const std::vector<ProblemInstance>& items) {
      std::vector<std::vector<ProblemSolution>> per;
      std::size_t longest = 1;
      for (std::size_t n = 0; n < items.size(); ++n) {
        per.push_back(sample_solutions(items[n], seed + n + 1));
        longest = std::max(longest, per.back().size());
      }
      longest = std::min<std::size_t>(longest, 4);
      std::vector<ProblemSolution> out;
      for (std::size_t s = 0; s < longest; ++s) {
        std::vector<ProblemSolution> parts;
        for (const auto& list : per) parts.push_back(list[s % list.size()]);
        out.push_back(ProblemSolution::tuple(std::move(parts)));
      }
      return out;
    }
  };
  return std::visit(Visitor{seed}, inst.node);
}

}  // namespace tails
