#include "lambridge/axioms.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "lambridge/typing.hpp"

namespace lambridge {

std::string Provenance::str() const {
  switch (kind) {
    case Kind::E1: return "E1(" + lexeme + "#" + std::to_string(chiIndex) + ")";
    case Kind::E2: return "E2(" + type.str() + ")";
    case Kind::Q1:
      return "Q1(parent " + std::to_string(parent) + ", alpha " + type.str() + ")";
    case Kind::Q2:
      return "Q2(parent " + std::to_string(parent) + ", delta " + type.str() + ")";
  }
  return "?";
}

bool AxiomSet::insert(ProperAxiom ax) {
  std::string key = canonicalKey(ax.seq);
  if (!keys_.insert(key).second) return false;
  axioms_.push_back(std::move(ax));
  return true;
}

ProperAxiom flatten(const Type& alpha, const ContextItem& head, std::size_t chiIndex) {
  Decomposition dec = decompose(alpha);
  Word word{head};
  Term term = head.isVar ? Term::var(head.name) : Term::constant(head.name, chiIndex);
  NameSupply names("z");
  for (const auto& [conn, argType] : dec.args) {
    std::string z = names.next();
    word = attach(std::move(word), conn, ContextItem::var(z, argType));
    term = Term::app(term, Term::var(z));
  }
  ProperAxiom ax;
  ax.seq = Sequent{std::move(word), std::move(term), dec.head};
  return ax;
}

AxiomSet buildA0(const Grammar& g) {
  AxiomSet out;
  for (const auto& lex : g.lexemes) {
    const auto& types = g.typesOf(lex);
    for (std::size_t k = 0; k < types.size(); k++) {
      ProperAxiom ax = flatten(types[k], ContextItem::lexeme(lex), k);
      ax.prov = Provenance{Provenance::Kind::E1, lex, k, types[k], 0, Term()};
      out.insert(std::move(ax));
    }
  }
  SignedOccurrences occ = signedOccurrences(g);
  for (const auto& t : occ.strictPositive) {
    ProperAxiom ax = flatten(t, ContextItem::var("x1", t));
    ax.prov = Provenance{Provenance::Kind::E2, "", 0, t, 0, Term()};
    out.insert(std::move(ax));
  }
  return out;
}

namespace {

// A name of the given stem unused by the word and term at hand; boundary
// rewrites must not capture the variables that survive in the context.
std::string freshAgainst(const std::string& stem, const Word& w,
                         const std::vector<Term>& terms) {
  std::set<std::string> used;
  for (const auto& item : w)
    if (item.isVar) used.insert(item.name);
  for (const auto& t : terms) {
    auto fv = freeVars(t);
    used.insert(fv.begin(), fv.end());
  }
  for (unsigned long i = 1;; i++) {
    std::string name = stem + std::to_string(i);
    if (!used.count(name)) return name;
  }
}

} // namespace

std::vector<ProperAxiom> q1(const AxiomSet& base, const Grammar& g,
                            const SignedOccurrences& occ, ArgProver& prover) {
  std::vector<ProperAxiom> out;
  const auto& axioms = base.axioms();
  for (std::size_t i = 0; i < axioms.size(); i++) {
    const Sequent& seq = axioms[i].seq;
    for (Conn c : {Conn::Right, Conn::Left}) {
      auto split = splitBoundary(seq.context, c);
      if (!split) continue;
      const auto& [rest, item] = *split;
      if (!item.isVar) continue;
      const Type& gamma = item.type;
      for (const Type& alpha : occ.strictPositive) {
        auto v = prover.prove(alpha, gamma, "_q");
        if (!v) continue;
        std::string x = freshAgainst("x", rest, {*seq.term, *v});
        Term body = substitute(*seq.term, item.name, substitute(*v, "_q", Term::var(x)));
        ProperAxiom ax;
        ax.seq = Sequent{rest, betaNormalize(Term::abs(x, body)),
                         Type::slash(c, alpha, seq.result)};
        ax.prov = Provenance{Provenance::Kind::Q1, "", 0, alpha, i, *v};
        out.push_back(std::move(ax));
      }
    }
  }
  return out;
}

std::vector<ProperAxiom> q2(const AxiomSet& base, const Grammar& g,
                            const SignedOccurrences& occ) {
  (void)g;
  std::vector<ProperAxiom> out;
  const auto& axioms = base.axioms();
  for (std::size_t i = 0; i < axioms.size(); i++) {
    const Sequent& seq = axioms[i].seq;
    for (Conn c : {Conn::Right, Conn::Left}) {
      auto split = splitBoundary(seq.context, c);
      if (!split) continue;
      const auto& [rest, item] = *split;
      if (!item.isVar) continue;
      const Type& alpha = item.type;
      for (const Type& delta : occ.strictPositive) {
        Type zType = Type::slash(c, delta, alpha);
        std::string z = freshAgainst("z", rest, {*seq.term});
        std::string x = freshAgainst("x", rest, {*seq.term, Term::var(z)});
        Term body =
            substitute(*seq.term, item.name, Term::app(Term::var(z), Term::var(x)));
        ProperAxiom ax;
        ax.seq = Sequent{attach(rest, c, ContextItem::var(z, zType)),
                         betaNormalize(Term::abs(x, body)),
                         Type::slash(c, delta, seq.result)};
        ax.prov = Provenance{Provenance::Kind::Q2, "", 0, delta, i, Term()};
        out.push_back(std::move(ax));
      }
    }
  }
  return out;
}

AxiomSet accessibleFilter(const AxiomSet& axioms, const Grammar& g) {
  std::set<Type> reachable{g.startType()};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& ax : axioms.axioms()) {
      if (!reachable.count(ax.seq.result)) continue;
      for (const auto& item : ax.seq.context)
        if (item.isVar && reachable.insert(item.type).second) changed = true;
    }
  }
  AxiomSet out;
  out.generation = axioms.generation;
  for (const auto& ax : axioms.axioms())
    if (reachable.count(ax.seq.result)) out.insert(ax);
  return out;
}

AxiomSet level(const Grammar& g, const LevelOptions& opts) {
  SignedOccurrences occ = signedOccurrences(g);
  ArgProver prover(g, opts.budget);
  AxiomSet current = buildA0(g);
  if (opts.filter) current = accessibleFilter(current, g);
  for (int round = 1; round <= opts.iterations; round++) {
    std::vector<ProperAxiom> fresh;
    auto add = [&](std::vector<ProperAxiom>&& batch) {
      for (auto& ax : batch) {
        ax.generation = round;
        fresh.push_back(std::move(ax));
      }
    };
    add(q1(current, g, occ, prover));
    add(q2(current, g, occ));
    for (auto& ax : fresh) current.insert(std::move(ax));
    if (opts.filter) current = accessibleFilter(current, g);
    current.generation = round;
  }
  return current;
}

std::string renderAxioms(const AxiomSet& axioms, const Grammar& g) {
  std::string out;
  for (const auto& ax : axioms.axioms()) {
    out += wordStr(ax.seq.context);
    out += " |- ";
    out += termStr(*ax.seq.term, {true, &g});
    out += " : ";
    out += ax.seq.result.str();
    out += "   # ";
    out += ax.prov.str();
    out += " [gen " + std::to_string(ax.generation) + "]\n";
  }
  return out;
}

std::string axiomsJson(const AxiomSet& axioms, const Grammar& g) {
  nlohmann::json root;
  root["generation"] = axioms.generation;
  root["count"] = axioms.size();
  nlohmann::json list = nlohmann::json::array();
  for (const auto& ax : axioms.axioms()) {
    nlohmann::json item;
    nlohmann::json ctx = nlohmann::json::array();
    for (const auto& it : ax.seq.context) {
      if (it.isVar)
        ctx.push_back({{"var", it.name}, {"type", it.type.str()}});
      else
        ctx.push_back({{"lexeme", it.name}});
    }
    item["context"] = ctx;
    item["term"] = termStr(*ax.seq.term, {true, &g});
    item["result"] = ax.seq.result.str();
    item["provenance"] = ax.prov.str();
    item["generation"] = ax.generation;
    list.push_back(item);
  }
  root["axioms"] = list;
  return root.dump(2);
}

} // namespace lambridge
