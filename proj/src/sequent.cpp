#include "lambridge/sequent.hpp"

#include <stdexcept>

#include "lambridge/axioms.hpp"

namespace lambridge {

std::string Sequent::str() const {
  std::string out = wordStr(context);
  out += " |- ";
  if (term) {
    out += termStr(*term);
    out += " : ";
  }
  out += result.str();
  return out;
}

namespace {

// Renames free occurrences per `ren` while canonically renaming binders.
Term renameCanonical(const Term& u, const std::map<std::string, std::string>& ren,
                     std::map<std::string, std::string>& bound, unsigned long& next) {
  switch (u.kind()) {
    case Term::Kind::Var: {
      if (auto it = bound.find(u.name()); it != bound.end()) return Term::var(it->second);
      if (auto it = ren.find(u.name()); it != ren.end()) return Term::var(it->second);
      return u;
    }
    case Term::Kind::Const: return u;
    case Term::Kind::Abs: {
      std::string nn = "_b" + std::to_string(++next);
      auto old = bound.find(u.name());
      std::optional<std::string> saved;
      if (old != bound.end()) saved = old->second;
      bound[u.name()] = nn;
      Term body = renameCanonical(u.body(), ren, bound, next);
      if (saved)
        bound[u.name()] = *saved;
      else
        bound.erase(u.name());
      return Term::abs(nn, body);
    }
    case Term::Kind::App: {
      Term f = renameCanonical(u.fun(), ren, bound, next);
      Term a = renameCanonical(u.arg(), ren, bound, next);
      return Term::app(f, a);
    }
  }
  return u;
}

} // namespace

std::string canonicalKey(const Sequent& s) {
  std::map<std::string, std::string> ren;
  std::string out;
  std::size_t i = 0;
  for (const auto& item : s.context) {
    if (i) out += ",";
    if (item.isVar) {
      std::string nn = "c" + std::to_string(i + 1);
      ren[item.name] = nn;
      out += nn + ":" + item.type.str();
    } else {
      out += "'" + item.name + "'";
    }
    i++;
  }
  out += " |- ";
  if (s.term) {
    std::map<std::string, std::string> bound;
    unsigned long next = 0;
    out += termStr(renameCanonical(*s.term, ren, bound, next), {false, nullptr});
    out += " : ";
  }
  out += s.result.str();
  return out;
}

bool sequentAlphaEqual(const Sequent& a, const Sequent& b) {
  return canonicalKey(a) == canonicalKey(b);
}

std::string ruleName(const Rule r) {
  switch (r) {
    case Rule::Ax: return "Ax";
    case Rule::Lex: return "Lex";
    case Rule::Intro: return "I";
    case Rule::Elim: return "E";
    case Rule::Cut: return "Cut";
    case Rule::PAxE1: return "pAxE1";
    case Rule::PAxE2: return "pAxE2";
    case Rule::PAxI: return "pAxI";
  }
  return "?";
}

std::size_t Derivation::size() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.size();
  return n;
}

namespace {

struct NodeChecker {
  const RuleSystem& sys;
  std::optional<CheckFailure> failure;
  std::optional<SignedOccurrences> signedOcc; // lazily built for S_IC

  bool fail(const std::vector<std::size_t>& path, std::string reason) {
    if (!failure) failure = CheckFailure{path, std::move(reason)};
    return false;
  }

  bool ruleAllowed(Rule r) const {
    switch (sys.tag) {
      case SystemTag::S_IE:
        return r == Rule::Ax || r == Rule::Lex || r == Rule::Intro || r == Rule::Elim;
      case SystemTag::S_IC:
        return r == Rule::PAxE1 || r == Rule::PAxE2 || r == Rule::Intro || r == Rule::Cut;
      case SystemTag::S_C: return r == Rule::PAxI || r == Rule::Cut;
    }
    return false;
  }

  const SignedOccurrences& strictPositives() {
    if (!signedOcc) signedOcc = signedOccurrences(*sys.grammar);
    return *signedOcc;
  }

  bool checkNode(const Derivation& d, std::vector<std::size_t>& path) {
    const Sequent& con = d.conclusion;
    if (con.context.empty()) return fail(path, "empty context word");
    if (!con.term) return fail(path, "conclusion carries no term");
    if (!ruleAllowed(d.rule))
      return fail(path, "rule " + ruleName(d.rule) + " is not part of this system");

    std::size_t arity = (d.rule == Rule::Elim || d.rule == Rule::Cut) ? 2
                        : d.rule == Rule::Intro                       ? 1
                                                                      : 0;
    if (d.children.size() != arity)
      return fail(path, ruleName(d.rule) + " expects " + std::to_string(arity) + " premises");

    switch (d.rule) {
      case Rule::Ax: {
        if (con.context.size() != 1 || !con.context[0].isVar)
          return fail(path, "Ax needs a single typed variable context");
        const auto& v = con.context[0];
        if (v.type != con.result) return fail(path, "Ax: context and result types differ");
        if (*con.term != Term::var(v.name)) return fail(path, "Ax: term is not the variable");
        break;
      }
      case Rule::Lex: {
        if (con.context.size() != 1 || con.context[0].isVar)
          return fail(path, "Lex needs a single lexeme context");
        const auto& t = con.context[0].name;
        if (!sys.grammar->isLexeme(t)) return fail(path, "Lex: unknown lexeme " + t);
        const auto& types = sys.grammar->typesOf(t);
        if (d.lexIndex >= types.size()) return fail(path, "Lex: chi index out of range");
        if (types[d.lexIndex] != con.result)
          return fail(path, "Lex: result is not the selected chi entry");
        if (*con.term != Term::constant(t, d.lexIndex))
          return fail(path, "Lex: term is not the lexeme constant");
        break;
      }
      case Rule::Intro: {
        if (con.result.isAtom() || con.result.conn() != d.conn)
          return fail(path, "Intro: conclusion type does not start with the rule connective");
        if (con.term->kind() != Term::Kind::Abs)
          return fail(path, "Intro: conclusion term is not an abstraction");
        const Sequent& prem = d.children[0].conclusion;
        Word expected = attach(con.context, d.conn,
                               ContextItem::var(con.term->name(), con.result.argument()));
        if (prem.context != expected)
          return fail(path, "Intro: premise context is not f_c(Gamma, x:alpha)");
        if (prem.result != con.result.result())
          return fail(path, "Intro: premise result type mismatch");
        if (!prem.term || !alphaEqual(*prem.term, con.term->body()))
          return fail(path, "Intro: premise term is not the abstraction body");
        break;
      }
      case Rule::Elim: {
        const Sequent& fn = d.children[0].conclusion;
        const Sequent& ar = d.children[1].conclusion;
        if (fn.result.isAtom() || fn.result.conn() != d.conn)
          return fail(path, "Elim: major premise type does not match the connective");
        if (fn.result.argument() != ar.result)
          return fail(path, "Elim: argument type mismatch");
        if (fn.result.result() != con.result)
          return fail(path, "Elim: conclusion type mismatch");
        Word expected = d.conn == Conn::Right ? fn.context : ar.context;
        const Word& tail = d.conn == Conn::Right ? ar.context : fn.context;
        expected.insert(expected.end(), tail.begin(), tail.end());
        if (con.context != expected)
          return fail(path, "Elim: conclusion context is not f_c(Gamma, Delta)");
        if (!fn.term || !ar.term ||
            !alphaEqual(*con.term, Term::app(*fn.term, *ar.term)))
          return fail(path, "Elim: conclusion term is not the application");
        break;
      }
      case Rule::Cut: {
        const Sequent& main = d.children[0].conclusion;
        const Sequent& sub = d.children[1].conclusion;
        if (d.cutPos >= main.context.size() || !main.context[d.cutPos].isVar)
          return fail(path, "Cut: position does not name a context variable");
        const ContextItem& y = main.context[d.cutPos];
        if (y.type != sub.result) return fail(path, "Cut: variable and premise types differ");
        Word expected(main.context.begin(), main.context.begin() + d.cutPos);
        expected.insert(expected.end(), sub.context.begin(), sub.context.end());
        expected.insert(expected.end(), main.context.begin() + d.cutPos + 1, main.context.end());
        if (con.context != expected)
          return fail(path, "Cut: conclusion context is not the spliced word");
        if (main.result != con.result) return fail(path, "Cut: result type mismatch");
        if (!main.term || !sub.term ||
            !alphaEqual(*con.term, substitute(*main.term, y.name, *sub.term)))
          return fail(path, "Cut: conclusion term is not the substitution instance");
        break;
      }
      case Rule::PAxE1: {
        std::optional<std::size_t> lexPos;
        for (std::size_t i = 0; i < con.context.size(); i++)
          if (!con.context[i].isVar) {
            if (lexPos) return fail(path, "pAxE1: several lexemes in the context");
            lexPos = i;
          }
        if (!lexPos) return fail(path, "pAxE1: no lexeme in the context");
        const auto& t = con.context[*lexPos].name;
        if (!sys.grammar->isLexeme(t)) return fail(path, "pAxE1: unknown lexeme " + t);
        const auto& types = sys.grammar->typesOf(t);
        if (d.lexIndex >= types.size()) return fail(path, "pAxE1: chi index out of range");
        ProperAxiom expect = flatten(types[d.lexIndex], ContextItem::lexeme(t), d.lexIndex);
        if (!sequentAlphaEqual(con, expect.seq))
          return fail(path, "pAxE1: sequent is not the flattening of " + types[d.lexIndex].str());
        break;
      }
      case Rule::PAxE2: {
        const auto& sp = strictPositives().strictPositive;
        bool ok = false;
        for (const auto& item : con.context) {
          if (!item.isVar || !sp.count(item.type)) continue;
          ProperAxiom expect = flatten(item.type, ContextItem::var(item.name, item.type));
          if (sequentAlphaEqual(con, expect.seq)) {
            ok = true;
            break;
          }
        }
        if (!ok)
          return fail(path, "pAxE2: sequent is not the flattening of a strictly positive type");
        break;
      }
      case Rule::PAxI: {
        if (!sys.axiomKeys) return fail(path, "pAxI: no axiom base configured");
        if (!sys.axiomKeys->count(canonicalKey(con)))
          return fail(path, "pAxI: sequent is not in the axiom base");
        break;
      }
    }

    for (std::size_t i = 0; i < d.children.size(); i++) {
      path.push_back(i);
      bool ok = checkNode(d.children[i], path);
      path.pop_back();
      if (!ok) return false;
    }
    return true;
  }
};

} // namespace

std::optional<CheckFailure> checkDerivation(const RuleSystem& sys, const Derivation& d) {
  if (!sys.grammar) return CheckFailure{{}, "rule system carries no grammar"};
  NodeChecker checker{sys, std::nullopt, std::nullopt};
  std::vector<std::size_t> path;
  checker.checkNode(d, path);
  return checker.failure;
}

std::string CheckFailure::str() const {
  std::string out = "at node [";
  for (std::size_t i = 0; i < path.size(); i++) {
    if (i) out += ".";
    out += std::to_string(path[i]);
  }
  out += "]: " + reason;
  return out;
}

Term extractTerm(const Derivation& d) {
  switch (d.rule) {
    case Rule::Ax: return Term::var(d.conclusion.context[0].name);
    case Rule::Lex: return Term::constant(d.conclusion.context[0].name, d.lexIndex);
    case Rule::PAxE1:
    case Rule::PAxE2:
    case Rule::PAxI:
      if (!d.conclusion.term) throw std::runtime_error("axiom leaf carries no term");
      return *d.conclusion.term;
    case Rule::Intro:
      if (!d.conclusion.term || d.conclusion.term->kind() != Term::Kind::Abs)
        throw std::runtime_error("intro node conclusion is not an abstraction");
      return Term::abs(d.conclusion.term->name(), extractTerm(d.children[0]));
    case Rule::Elim:
      return Term::app(extractTerm(d.children[0]), extractTerm(d.children[1]));
    case Rule::Cut: {
      const ContextItem& y = d.children[0].conclusion.context[d.cutPos];
      return substitute(extractTerm(d.children[0]), y.name, extractTerm(d.children[1]));
    }
  }
  throw std::runtime_error("unknown rule");
}

namespace {

struct OrientedChecker {
  const Grammar& g;

  bool checkSpan(const Word& w, std::size_t lo, std::size_t hi, const Term& u, const Type& goal) {
    if (u.kind() == Term::Kind::Abs) {
      if (goal.isAtom()) return false;
      Word inner(w.begin() + lo, w.begin() + hi);
      inner = attach(std::move(inner), goal.conn(),
                     ContextItem::var(u.name(), goal.argument()));
      return checkSpan(inner, 0, inner.size(), u.body(), goal.result());
    }
    HeadForm hf = headForm(u);
    if (!hf.binders.empty()) return false; // unreachable: Abs handled above
    std::vector<std::pair<std::size_t, Type>> heads;
    if (hf.head.kind() == Term::Kind::Var) {
      for (std::size_t i = lo; i < hi; i++)
        if (w[i].isVar && w[i].name == hf.head.name()) heads.emplace_back(i, w[i].type);
    } else if (hf.head.kind() == Term::Kind::Const) {
      if (!g.isLexeme(hf.head.name())) return false;
      const auto& types = g.typesOf(hf.head.name());
      if (hf.head.chiIndex() >= types.size()) return false;
      for (std::size_t i = lo; i < hi; i++)
        if (!w[i].isVar && w[i].name == hf.head.name())
          heads.emplace_back(i, types[hf.head.chiIndex()]);
    } else {
      return false; // beta-redex
    }
    for (const auto& [pos, headType] : heads) {
      Decomposition dec = decompose(headType);
      if (dec.args.size() < hf.args.size()) continue;
      // Partial application: the leftover suffix must rebuild the goal.
      Decomposition rest{{dec.args.begin() + hf.args.size(), dec.args.end()}, dec.head};
      if (recompose(rest) != goal) continue;
      if (placeArgs(w, lo, hi, pos, hf, dec, hf.args.size())) return true;
    }
    return false;
  }

  // Assigns contiguous non-empty segments to the first `n` arguments,
  // growing outward from the head; segment j sits right of the current
  // extent for '/', left of it for '\'.
  bool placeArgs(const Word& w, std::size_t lo, std::size_t hi, std::size_t pos,
                 const HeadForm& hf, const Decomposition& dec, std::size_t n) {
    struct Seg { std::size_t lo, hi; };
    std::vector<Seg> segs(n);
    std::function<bool(std::size_t, std::size_t, std::size_t)> go =
        [&](std::size_t j, std::size_t exlo, std::size_t exhi) -> bool {
      if (j == n) {
        if (exlo != lo || exhi != hi) return false;
        for (std::size_t k = 0; k < n; k++)
          if (!checkSpan(w, segs[k].lo, segs[k].hi, hf.args[k], dec.args[k].second))
            return false;
        return true;
      }
      if (dec.args[j].first == Conn::Right) {
        for (std::size_t m = exhi + 1; m <= hi; m++) {
          segs[j] = {exhi, m};
          if (go(j + 1, exlo, m)) return true;
        }
      } else {
        for (std::size_t m = lo; m < exlo; m++) {
          segs[j] = {m, exlo};
          if (go(j + 1, m, exhi)) return true;
        }
      }
      return false;
    };
    return go(0, pos, pos + 1);
  }
};

} // namespace

bool orientedCheck(const Grammar& g, const Sequent& s) {
  if (s.context.empty() || !s.term) return false;
  OrientedChecker checker{g};
  return checker.checkSpan(s.context, 0, s.context.size(), *s.term, s.result);
}

namespace {

void sexpr(const Derivation& d, const Grammar* grammar, std::string& out) {
  out += "(";
  out += ruleName(d.rule);
  if (d.rule == Rule::Intro || d.rule == Rule::Elim) out += connChar(d.conn);
  out += " \"";
  out += wordStr(d.conclusion.context);
  out += " |- ";
  if (d.conclusion.term) {
    out += termStr(*d.conclusion.term, {true, grammar});
    out += " : ";
  }
  out += d.conclusion.result.str();
  out += "\"";
  for (const auto& c : d.children) {
    out += " ";
    sexpr(c, grammar, out);
  }
  out += ")";
}

} // namespace

std::string derivationSexpr(const Derivation& d, const Grammar* grammar) {
  std::string out;
  sexpr(d, grammar, out);
  return out;
}

} // namespace lambridge
