#include "lambridge/acg.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lambridge {

SimpleType SimpleSignature::typeOf(const std::string& c) const {
  auto it = typing.find(c);
  if (it == typing.end()) return SimpleType();
  return it->second;
}

ConstTyping SimpleSignature::constTyping() const {
  return [this](const std::string& name, std::size_t) { return typeOf(name); };
}

int signatureOrder(const SimpleSignature& sig) {
  int best = 0;
  for (const auto& c : sig.constants) best = std::max(best, order(sig.typing.at(c)));
  return best;
}

SimpleType applyLexiconType(const AcgLexicon& lex, const SimpleType& t) {
  if (t.isBase()) {
    auto it = lex.typeMap.find(t.baseName());
    if (it == lex.typeMap.end())
      throw std::runtime_error("lexicon: unmapped base type " + t.baseName());
    return it->second;
  }
  return SimpleType::arrow(applyLexiconType(lex, t.argument()),
                           applyLexiconType(lex, t.result()));
}

namespace {

Term applyLexiconRaw(const AcgLexicon& lex, const Term& u) {
  switch (u.kind()) {
    case Term::Kind::Var: return u;
    case Term::Kind::Const: {
      auto it = lex.termMap.find(u.name());
      if (it == lex.termMap.end())
        throw std::runtime_error("lexicon: unmapped constant " + u.name());
      return it->second;
    }
    case Term::Kind::Abs: return Term::abs(u.name(), applyLexiconRaw(lex, u.body()));
    case Term::Kind::App:
      return Term::app(applyLexiconRaw(lex, u.fun()), applyLexiconRaw(lex, u.arg()));
  }
  return u;
}

} // namespace

Term applyLexicon(const AcgLexicon& lex, const Term& u) {
  return betaNormalize(applyLexiconRaw(lex, u));
}

std::optional<LexiconFailure> validateLexicon(const AcgLexicon& lex,
                                              const SimpleSignature& src,
                                              const SimpleSignature& tgt) {
  ConstTyping tgtConsts = tgt.constTyping();
  for (const auto& c : src.constants) {
    auto img = lex.termMap.find(c);
    if (img == lex.termMap.end())
      return LexiconFailure{c, "", "constant has no lexicon image"};
    SimpleType expected;
    try {
      expected = applyLexiconType(lex, src.typing.at(c));
    } catch (const std::exception& e) {
      return LexiconFailure{c, "", e.what()};
    }
    if (auto err = checkSimple({}, img->second, expected, tgtConsts))
      return LexiconFailure{c, expected.str(), err->message};
  }
  return std::nullopt;
}

SimpleType sigmaType() {
  return SimpleType::arrow(SimpleType::base("*"), SimpleType::base("*"));
}

std::string productionConstant(const Cfg& cfg, std::size_t index) {
  return "R" + std::to_string(index) + "[" + cfg.productions.at(index).lhs.str() + "]";
}

Acg cfgToAcg(const Cfg& cfg) {
  Acg acg;
  for (const auto& nt : cfg.nonterminals) {
    acg.abstractSig.baseTypes.insert(nt.str());
    acg.lexicon.typeMap[nt.str()] = sigmaType();
  }
  acg.objectSig.baseTypes.insert("*");
  for (const auto& t : cfg.terminals) {
    acg.objectSig.constants.push_back(t);
    acg.objectSig.typing[t] = sigmaType();
  }
  for (std::size_t i = 0; i < cfg.productions.size(); i++) {
    const Production& p = cfg.productions[i];
    std::string name = productionConstant(cfg, i);

    // [[w]]_K = N1 -> .. -> Nm -> K over the rhs nonterminals.
    SimpleType ty = SimpleType::base(p.lhs.str());
    for (auto it = p.rhs.rbegin(); it != p.rhs.rend(); ++it)
      if (!it->terminal) ty = SimpleType::arrow(SimpleType::base(it->nonterminal.str()), ty);

    // \y1..ym. \z. s1 (s2 (.. z)) interleaving terminals and the yj.
    std::vector<std::string> binders;
    std::size_t ntCount = 0;
    for (const auto& sym : p.rhs)
      if (!sym.terminal) binders.push_back("y" + std::to_string(++ntCount));
    Term chain = Term::var("z");
    std::size_t yIdx = binders.size();
    for (auto it = p.rhs.rbegin(); it != p.rhs.rend(); ++it) {
      if (it->terminal)
        chain = Term::app(Term::constant(it->lexeme), chain);
      else
        chain = Term::app(Term::var(binders[--yIdx]), chain);
    }
    Term image = Term::abs("z", chain);
    for (auto it = binders.rbegin(); it != binders.rend(); ++it)
      image = Term::abs(*it, image);

    acg.abstractSig.constants.push_back(name);
    acg.abstractSig.typing[name] = ty;
    acg.lexicon.termMap[name] = image;
  }
  acg.distinguished = SimpleType::base(cfg.start.str());
  return acg;
}

std::vector<std::string> yieldString(const Term& objectTerm, const SimpleSignature& objectSig) {
  Term nf = betaNormalize(objectTerm);
  if (auto err = checkSimple({}, nf, sigmaType(), objectSig.constTyping()))
    throw std::runtime_error("yieldString: term is not a closed string: " + err->message);
  Term applied = betaNormalize(Term::app(nf, Term::var("_z")));
  std::vector<std::string> out;
  Term cur = applied;
  while (true) {
    if (cur.kind() == Term::Kind::Var && cur.name() == "_z") break;
    if (cur.kind() == Term::Kind::App && cur.fun().kind() == Term::Kind::Const) {
      out.push_back(cur.fun().name());
      cur = cur.arg();
      continue;
    }
    throw std::runtime_error("yieldString: normal form is not a constant spine");
  }
  return out;
}

Term treeToAbstractTerm(const Cfg& cfg, const ParseTree& tree) {
  Term t = Term::constant(productionConstant(cfg, tree.production));
  for (const auto& child : tree.children) t = Term::app(t, treeToAbstractTerm(cfg, child));
  return t;
}

std::vector<Term> objectMembership(const Acg& acg, const Cfg& cfg, const AxiomSet& axioms,
                                   const std::vector<std::string>& tokens,
                                   std::size_t maxTerms) {
  (void)acg;
  (void)axioms;
  std::vector<Term> out;
  for (const auto& tree : parse(cfg, tokens, maxTerms))
    out.push_back(treeToAbstractTerm(cfg, tree));
  return out;
}

std::string erasedConstantName(const Grammar& g, const std::string& lexeme, std::size_t k) {
  if (g.typesOf(lexeme).size() <= 1) return lexeme;
  return lexeme + "#" + std::to_string(k);
}

SimpleSignature erasedSignature(const Grammar& g) {
  SimpleSignature sig;
  sig.baseTypes.insert(g.atoms.begin(), g.atoms.end());
  for (const auto& lex : g.lexemes) {
    const auto& types = g.typesOf(lex);
    for (std::size_t k = 0; k < types.size(); k++) {
      std::string name = erasedConstantName(g, lex, k);
      sig.constants.push_back(name);
      sig.typing[name] = erase(types[k]);
    }
  }
  return sig;
}

std::string renderAcg(const Acg& acg) {
  std::string out = "# abstract signature\n";
  for (const auto& c : acg.abstractSig.constants)
    out += c + " : " + acg.abstractSig.typing.at(c).str() + ";\n";
  out += "\n# lexicon\n";
  for (const auto& c : acg.abstractSig.constants)
    out += c + " := " + termStr(acg.lexicon.termMap.at(c), {false, nullptr}) + ";\n";
  return out;
}

std::string acgJson(const Acg& acg) {
  nlohmann::json root;
  nlohmann::json abs = nlohmann::json::array();
  for (const auto& c : acg.abstractSig.constants)
    abs.push_back({{"constant", c}, {"type", acg.abstractSig.typing.at(c).str()}});
  root["abstract"] = abs;
  nlohmann::json obj = nlohmann::json::array();
  for (const auto& c : acg.objectSig.constants)
    obj.push_back({{"constant", c}, {"type", acg.objectSig.typing.at(c).str()}});
  root["object"] = obj;
  nlohmann::json lexicon = nlohmann::json::array();
  for (const auto& c : acg.abstractSig.constants)
    lexicon.push_back(
        {{"constant", c}, {"image", termStr(acg.lexicon.termMap.at(c), {false, nullptr})}});
  root["lexicon"] = lexicon;
  root["distinguished"] = acg.distinguished.str();
  root["abstractOrder"] = signatureOrder(acg.abstractSig);
  return root.dump(2);
}

} // namespace lambridge
