#include "tails/json_io.hpp"

namespace tails {

namespace {

const Nat kMaxExact = Nat(1) << 53;

Json symbol_to_json(const Symbol& s) {
  if (s.is_pause()) return nullptr;
  return nat_to_json(s.value());
}

Symbol symbol_from_json(const Json& j) {
  if (j.is_null()) return Symbol::pause();
  return Symbol(nat_from_json(j));
}

std::uint64_t u64_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned())
    throw std::invalid_argument(std::string("expected natural field: ") + key);
  return j[key].get<std::uint64_t>();
}

Coloring coloring_from_json(const Json& j) {
  return Coloring{word_from_json(j.at("word")), u64_field(j, "k")};
}

Json coloring_fields(const Coloring& c) {
  return Json{{"k", c.palette}, {"word", word_to_json(c.word)}};
}

}  // namespace

Json nat_to_json(const Nat& n) {
  if (n <= kMaxExact) return to_u64(n);
  return n.str();
}

Nat nat_from_json(const Json& j) {
  if (j.is_number_unsigned()) return Nat(j.get<std::uint64_t>());
  if (j.is_string()) {
    Nat n(j.get<std::string>());
    if (n < 0) throw std::invalid_argument("negative natural");
    return n;
  }
  throw std::invalid_argument("expected a natural (number or decimal string)");
}

Json word_to_json(const Word& w) {
  Json prefix = Json::array(), period = Json::array();
  for (const Symbol& s : w.prefix()) prefix.push_back(symbol_to_json(s));
  for (const Symbol& s : w.period()) period.push_back(symbol_to_json(s));
  return Json{{"prefix", std::move(prefix)}, {"period", std::move(period)}};
}

Word word_from_json(const Json& j) {
  std::vector<Symbol> prefix, period;
  for (const Json& e : j.at("prefix")) prefix.push_back(symbol_from_json(e));
  for (const Json& e : j.at("period")) period.push_back(symbol_from_json(e));
  return Word(std::move(prefix), std::move(period));  // rejects empty periods
}

Json enumeration_to_json(const EnumerationPresentation& e) {
  Json explicit_part = Json::array();
  for (const Symbol& s : e.explicit_part) explicit_part.push_back(symbol_to_json(s));
  Json tail;
  if (e.tail == EnumerationPresentation::TailKind::Pauses) {
    tail = Json{{"type", "pauses"}};
  } else {
    Json skip = Json::array();
    for (const Nat& v : e.skip) skip.push_back(nat_to_json(v));
    tail = Json{{"type", "all_except"}, {"skip", std::move(skip)}};
  }
  return Json{{"explicit", std::move(explicit_part)}, {"tail", std::move(tail)}};
}

EnumerationPresentation enumeration_from_json(const Json& j) {
  EnumerationPresentation e;
  for (const Json& v : j.at("explicit")) e.explicit_part.push_back(symbol_from_json(v));
  const Json& tail = j.at("tail");
  std::string type = tail.at("type").get<std::string>();
  if (type == "pauses") {
    e.tail = EnumerationPresentation::TailKind::Pauses;
  } else if (type == "all_except") {
    e.tail = EnumerationPresentation::TailKind::AllExcept;
    if (tail.contains("skip"))
      for (const Json& v : tail["skip"]) e.skip.insert(nat_from_json(v));
  } else {
    throw std::invalid_argument("unknown tail type: " + type);
  }
  return e;
}

Json instance_to_json(const ProblemInstance& inst) {
  struct Visitor {
    Json operator()(const LpoInstance& i) {
      return Json{{"kind", "lpo"}, {"word", word_to_json(i.word)}};
    }
    Json operator()(const IsInfiniteInstance& i) {
      return Json{{"kind", "isinfinite"}, {"word", word_to_json(i.word)}};
    }
    Json operator()(const CnInstance& i) {
      Json j = enumeration_to_json(i.enumeration);
      j["kind"] = "cn";
      return j;
    }
    Json operator()(const TcnInstance& i) {
      Json j = enumeration_to_json(i.enumeration);
      j["kind"] = "tcn";
      return j;
    }
    Json operator()(const ErtInstance& i) {
      Json j = coloring_fields(i.coloring);
      j["kind"] = "ert";
      return j;
    }
    Json operator()(const ErtjInstance& i) {
      Json j = coloring_fields(i.coloring);
      j["kind"] = "ertj";
      j["j"] = i.multiplicity;
      return j;
    }
    Json operator()(const EctInstance& i) {
      Json j = coloring_fields(i.coloring);
      j["kind"] = "ect";
      return j;
    }
    Json operator()(const MinErtInstance& i) {
      Json j = coloring_fields(i.coloring);
      j["kind"] = "minert";
      return j;
    }
    Json operator()(const MinEctInstance& i) {
      Json j = coloring_fields(i.coloring);
      j["kind"] = "minect";
      return j;
    }
    Json operator()(const CSharpMaxInstance& i) {
      return Json{{"kind", "csharpmax"},
                  {"bound", i.family.size_bound},
                  {"enum", enumeration_to_json(i.family.enumeration)}};
    }
    Json operator()(const StarInstance& i) {
      Json items = Json::array();
      for (const auto& item : i.items) items.push_back(instance_to_json(item));
      return Json{{"kind", "star"},
                  {"problem", problem_id_name(i.member)},
                  {"items", std::move(items)}};
    }
    Json operator()(const ProductInstance& i) {
      Json items = Json::array();
      for (const auto& item : i.items) items.push_back(instance_to_json(item));
      return Json{{"kind", "product"}, {"items", std::move(items)}};
    }
  };
  return std::visit(Visitor{}, inst.node);
}

ProblemInstance instance_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "lpo")
    return ProblemInstance{LpoInstance{word_from_json(j.at("word"))}};
  if (kind == "isinfinite")
    return ProblemInstance{IsInfiniteInstance{word_from_json(j.at("word"))}};
  if (kind == "cn") return ProblemInstance{CnInstance{enumeration_from_json(j)}};
  if (kind == "tcn") return ProblemInstance{TcnInstance{enumeration_from_json(j)}};
  if (kind == "ert") return ProblemInstance{ErtInstance{coloring_from_json(j)}};
  if (kind == "ertj")
    return ProblemInstance{ErtjInstance{coloring_from_json(j), u64_field(j, "j")}};
  if (kind == "ect") return ProblemInstance{EctInstance{coloring_from_json(j)}};
  if (kind == "minert")
    return ProblemInstance{MinErtInstance{coloring_from_json(j)}};
  if (kind == "minect")
    return ProblemInstance{MinEctInstance{coloring_from_json(j)}};
  if (kind == "csharpmax")
    return ProblemInstance{CSharpMaxInstance{FiniteSetFamilyInstance{
        u64_field(j, "bound"), enumeration_from_json(j.at("enum"))}}};
  if (kind == "star") {
    StarInstance star;
    star.member = problem_id_from_name(j.at("problem").get<std::string>());
    for (const Json& item : j.at("items"))
      star.items.push_back(instance_from_json(item));
    return ProblemInstance{std::move(star)};
  }
  if (kind == "product") {
    ProductInstance prod;
    for (const Json& item : j.at("items"))
      prod.items.push_back(instance_from_json(item));
    return ProblemInstance{std::move(prod)};
  }
  throw std::invalid_argument("unknown instance kind: " + kind);
}

Json solution_to_json(const ProblemSolution& sol) {
  struct Visitor {
    Json operator()(const BitSolution& s) { return Json{{"bit", s.bit}}; }
    Json operator()(const NumberSolution& s) {
      return Json{{"number", nat_to_json(s.number)}};
    }
    Json operator()(const SetSolution& s) {
      Json elems = Json::array();
      for (const Nat& v : s.elems) elems.push_back(nat_to_json(v));
      return Json{{"set", std::move(elems)}};
    }
    Json operator()(const TupleSolution& s) {
      Json items = Json::array();
      for (const auto& item : s.items) items.push_back(solution_to_json(item));
      return Json{{"tuple", std::move(items)}};
    }
  };
  return std::visit(Visitor{}, sol.node);
}

ProblemSolution solution_from_json(const Json& j) {
  if (j.contains("bit")) {
    int b = j["bit"].get<int>();
    if (b != 0 && b != 1) throw std::invalid_argument("bit must be 0 or 1");
    return ProblemSolution::bit(b);
  }
  if (j.contains("number")) return ProblemSolution::number(nat_from_json(j["number"]));
  if (j.contains("set")) {
    std::set<Nat> elems;
    for (const Json& v : j["set"]) elems.insert(nat_from_json(v));
    return ProblemSolution::set(std::move(elems));
  }
  if (j.contains("tuple")) {
    std::vector<ProblemSolution> items;
    for (const Json& v : j["tuple"]) items.push_back(solution_from_json(v));
    return ProblemSolution::tuple(std::move(items));
  }
  throw std::invalid_argument("unknown solution shape");
}

GeneratorLimits limits_from_json(const Json& j) {
  GeneratorLimits limits;
  if (j.contains("maxPalette")) limits.max_palette = u64_field(j, "maxPalette");
  if (j.contains("maxPrefix")) limits.max_prefix = u64_field(j, "maxPrefix");
  if (j.contains("maxPeriod")) limits.max_period = u64_field(j, "maxPeriod");
  if (j.contains("maxSkipSet")) limits.max_skip_set = u64_field(j, "maxSkipSet");
  if (j.contains("maxStarArity")) limits.max_star_arity = u64_field(j, "maxStarArity");
  if (limits.max_palette < 1 || limits.max_prefix < 1 || limits.max_period < 1 ||
      limits.max_star_arity < 1)
    throw std::invalid_argument("limits must be >= 1 (except maxSkipSet)");
  return limits;
}

Json report_to_json(const Report& r) {
  Json failures = Json::array();
  for (const Failure& f : r.failures) {
    Json entry{{"instance", instance_to_json(f.instance)}, {"violated", f.violated}};
    if (f.target_solution) entry["target_solution"] = solution_to_json(*f.target_solution);
    if (f.decoded) entry["decoded"] = solution_to_json(*f.decoded);
    failures.push_back(std::move(entry));
  }
  return Json{{"reduction", r.reduction},
              {"trials", r.trials},
              {"failures", std::move(failures)}};
}

Json counterexample_to_json(const Counterexample& c) {
  Json instances = Json::array();
  for (const auto& inst : c.instances) instances.push_back(instance_to_json(inst));
  return Json{{"candidate", c.candidate},
              {"instances", std::move(instances)},
              {"answer", solution_to_json(c.answer)},
              {"violated", c.violated}};
}

}  // namespace tails
