#include "lambridge/cfg.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lambridge {

std::string Production::str() const {
  std::string out = lhs.str() + " ->";
  for (const auto& s : rhs) out += " " + s.str();
  return out;
}

std::vector<std::size_t> Cfg::productionsFor(const Type& lhs) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < productions.size(); i++)
    if (productions[i].lhs == lhs) out.push_back(i);
  return out;
}

Cfg toCfg(const AxiomSet& axioms, const Grammar& g) {
  Cfg cfg;
  cfg.start = g.startType();
  cfg.nonterminals.insert(cfg.start);
  for (std::size_t i = 0; i < axioms.axioms().size(); i++) {
    const auto& ax = axioms.axioms()[i];
    Production p;
    p.lhs = ax.seq.result;
    p.axiom = i;
    cfg.nonterminals.insert(p.lhs);
    for (const auto& item : ax.seq.context) {
      CfgSymbol sym;
      if (item.isVar) {
        sym.terminal = false;
        sym.nonterminal = item.type;
        cfg.nonterminals.insert(item.type);
      } else {
        sym.terminal = true;
        sym.lexeme = item.name;
        cfg.terminals.insert(item.name);
      }
      p.rhs.push_back(std::move(sym));
    }
    cfg.productions.push_back(std::move(p));
  }
  return cfg;
}

namespace {

// Derivability chart over spans of one token word.
struct Chart {
  const Cfg& cfg;
  const std::vector<std::string>& tokens;
  std::map<Type, std::size_t> ntIndex;
  std::vector<std::vector<std::vector<bool>>> table; // [nt][i][j]

  Chart(const Cfg& c, const std::vector<std::string>& toks) : cfg(c), tokens(toks) {
    std::size_t n = 0;
    for (const auto& nt : cfg.nonterminals) ntIndex[nt] = n++;
    std::size_t len = tokens.size();
    table.assign(n, std::vector<std::vector<bool>>(len + 1, std::vector<bool>(len + 1, false)));
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& p : cfg.productions) {
        std::size_t a = ntIndex.at(p.lhs);
        for (std::size_t i = 0; i < len; i++)
          for (std::size_t j = i + 1; j <= len; j++) {
            if (table[a][i][j]) continue;
            if (covers(p.rhs, 0, i, j)) {
              table[a][i][j] = true;
              changed = true;
            }
          }
      }
    }
  }

  bool derivable(const Type& nt, std::size_t i, std::size_t j) const {
    auto it = ntIndex.find(nt);
    if (it == ntIndex.end()) return false;
    return table[it->second][i][j];
  }

  bool covers(const std::vector<CfgSymbol>& rhs, std::size_t k, std::size_t i,
              std::size_t j) const {
    if (k == rhs.size()) return i == j;
    const CfgSymbol& sym = rhs[k];
    if (sym.terminal)
      return i < j && tokens[i] == sym.lexeme && covers(rhs, k + 1, i + 1, j);
    auto it = ntIndex.find(sym.nonterminal);
    if (it == ntIndex.end()) return false;
    for (std::size_t m = i + 1; m <= j; m++)
      if (table[it->second][i][m] && covers(rhs, k + 1, m, j)) return true;
    return false;
  }
};

using TreeSink = std::function<bool(ParseTree&&)>;

struct TreeEnum {
  const Cfg& cfg;
  const Chart& chart;
  std::map<Type, std::vector<std::size_t>> byLhs;

  explicit TreeEnum(const Cfg& c, const Chart& ch) : cfg(c), chart(ch) {
    for (std::size_t i = 0; i < cfg.productions.size(); i++)
      byLhs[cfg.productions[i].lhs].push_back(i);
  }

  // Unit chains may not revisit a nonterminal: trees stay finite and the
  // language is unchanged (longer chains only pump unit productions).
  bool emit(const Type& nt, std::size_t i, std::size_t j, std::set<Type>& chain,
            const TreeSink& sink) {
    auto it = byLhs.find(nt);
    if (it == byLhs.end()) return true;
    for (std::size_t idx : it->second) {
      const Production& p = cfg.productions[idx];
      bool unit = p.rhs.size() == 1 && !p.rhs[0].terminal;
      if (unit) {
        const Type& b = p.rhs[0].nonterminal;
        if (chain.count(b) || !chart.derivable(b, i, j)) continue;
        chain.insert(b);
        bool cont = emit(b, i, j, chain, [&](ParseTree&& sub) {
          ParseTree t;
          t.production = idx;
          t.children.push_back(std::move(sub));
          return sink(std::move(t));
        });
        chain.erase(b);
        if (!cont) return false;
        continue;
      }
      std::vector<ParseTree> kids;
      if (!assign(p, idx, 0, i, j, kids, sink)) return false;
    }
    return true;
  }

  bool assign(const Production& p, std::size_t idx, std::size_t k, std::size_t i,
              std::size_t j, std::vector<ParseTree>& kids, const TreeSink& sink) {
    if (k == p.rhs.size()) {
      if (i != j) return true;
      ParseTree t;
      t.production = idx;
      t.children = kids;
      return sink(std::move(t));
    }
    const CfgSymbol& sym = p.rhs[k];
    if (sym.terminal) {
      if (i >= j || chart.tokens[i] != sym.lexeme) return true;
      return assign(p, idx, k + 1, i + 1, j, kids, sink);
    }
    for (std::size_t m = i + 1; m <= j; m++) {
      if (!chart.derivable(sym.nonterminal, i, m)) continue;
      // Quick feasibility check for the rest of the sequence.
      if (!chart.covers(p.rhs, k + 1, m, j)) continue;
      std::set<Type> chain{sym.nonterminal};
      bool cont = emit(sym.nonterminal, i, m, chain, [&](ParseTree&& sub) {
        kids.push_back(std::move(sub));
        bool c = assign(p, idx, k + 1, m, j, kids, sink);
        kids.pop_back();
        return c;
      });
      if (!cont) return false;
    }
    return true;
  }
};

} // namespace

std::vector<ParseTree> parse(const Cfg& cfg, const std::vector<std::string>& tokens,
                             std::size_t maxTrees, const std::optional<Type>& start) {
  if (tokens.empty()) throw std::runtime_error("parse: empty token sequence");
  Type s = start.value_or(cfg.start);
  Chart chart(cfg, tokens);
  std::vector<ParseTree> out;
  if (!chart.derivable(s, 0, tokens.size())) return out;
  TreeEnum te(cfg, chart);
  std::set<Type> chain{s};
  te.emit(s, 0, tokens.size(), chain, [&](ParseTree&& t) {
    out.push_back(std::move(t));
    return out.size() < maxTrees;
  });
  return out;
}

bool cfgMember(const Cfg& cfg, const std::vector<std::string>& tokens,
               const std::optional<Type>& start) {
  if (tokens.empty()) return false;
  Chart chart(cfg, tokens);
  return chart.derivable(start.value_or(cfg.start), 0, tokens.size());
}

namespace {

Derivation buildCutProof(const Cfg& cfg, const AxiomSet& axioms, const ParseTree& tree,
                         NameSupply& names) {
  const Production& p = cfg.productions.at(tree.production);
  if (!p.axiom) throw std::runtime_error("production carries no axiom back-reference");
  const ProperAxiom& ax = axioms.axioms().at(*p.axiom);

  // Freshly rename the axiom's variables so cuts never collide.
  Word word;
  Term term = *ax.seq.term;
  std::vector<std::string> varNames; // renamed, in context order
  for (const auto& item : ax.seq.context) {
    if (item.isVar) {
      std::string nn = names.next();
      term = substitute(term, item.name, Term::var(nn));
      word.push_back(ContextItem::var(nn, item.type));
      varNames.push_back(nn);
    } else {
      word.push_back(item);
    }
  }

  Derivation d;
  d.rule = Rule::PAxI;
  d.conclusion = Sequent{word, term, ax.seq.result};

  if (varNames.size() != tree.children.size())
    throw std::runtime_error("parse tree arity does not match the axiom");

  for (std::size_t k = 0; k < varNames.size(); k++) {
    Derivation child = buildCutProof(cfg, axioms, tree.children[k], names);
    const Word& cur = d.conclusion.context;
    std::size_t pos = 0;
    while (pos < cur.size() && !(cur[pos].isVar && cur[pos].name == varNames[k])) pos++;
    if (pos == cur.size()) throw std::runtime_error("cut variable vanished");
    Word spliced(cur.begin(), cur.begin() + pos);
    spliced.insert(spliced.end(), child.conclusion.context.begin(),
                   child.conclusion.context.end());
    spliced.insert(spliced.end(), cur.begin() + pos + 1, cur.end());
    Term newTerm =
        substitute(*d.conclusion.term, varNames[k], *child.conclusion.term);
    Derivation cut;
    cut.rule = Rule::Cut;
    cut.cutPos = pos;
    cut.conclusion = Sequent{std::move(spliced), std::move(newTerm), d.conclusion.result};
    cut.children.push_back(std::move(d));
    cut.children.push_back(std::move(child));
    d = std::move(cut);
  }
  return d;
}

} // namespace

Derivation treeToCutProof(const Cfg& cfg, const AxiomSet& axioms, const ParseTree& tree) {
  NameSupply names("v");
  return buildCutProof(cfg, axioms, tree, names);
}

std::map<Type, std::set<std::vector<std::string>>> enumerateLanguageAll(const Cfg& cfg,
                                                                        std::size_t maxLen) {
  std::map<Type, std::set<std::vector<std::string>>> lang;
  if (maxLen == 0) return lang;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : cfg.productions) {
      auto& target = lang[p.lhs];
      // Assemble words symbol by symbol under the length cap.
      std::vector<std::vector<std::string>> partial{{}};
      bool dead = false;
      for (const auto& sym : p.rhs) {
        std::vector<std::vector<std::string>> next;
        if (sym.terminal) {
          for (auto w : partial) {
            if (w.size() + 1 > maxLen) continue;
            w.push_back(sym.lexeme);
            next.push_back(std::move(w));
          }
        } else {
          auto it = lang.find(sym.nonterminal);
          if (it == lang.end() || it->second.empty()) {
            dead = true;
            break;
          }
          for (const auto& w : partial)
            for (const auto& sub : it->second) {
              if (w.size() + sub.size() > maxLen) continue;
              auto ext = w;
              ext.insert(ext.end(), sub.begin(), sub.end());
              next.push_back(std::move(ext));
            }
        }
        partial = std::move(next);
        if (partial.empty()) break;
      }
      if (dead) continue;
      for (auto& w : partial)
        if (!w.empty() && target.insert(std::move(w)).second) changed = true;
    }
  }
  return lang;
}

std::set<std::vector<std::string>> enumerateLanguage(const Cfg& cfg, std::size_t maxLen) {
  auto all = enumerateLanguageAll(cfg, maxLen);
  auto it = all.find(cfg.start);
  if (it == all.end()) return {};
  return it->second;
}

ReachableProductive reachableProductive(const Cfg& cfg) {
  ReachableProductive out;
  out.reachable.insert(cfg.start);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : cfg.productions) {
      if (!out.reachable.count(p.lhs)) continue;
      for (const auto& sym : p.rhs)
        if (!sym.terminal && out.reachable.insert(sym.nonterminal).second) changed = true;
    }
  }
  changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : cfg.productions) {
      if (out.productive.count(p.lhs)) continue;
      bool ok = true;
      for (const auto& sym : p.rhs)
        if (!sym.terminal && !out.productive.count(sym.nonterminal)) {
          ok = false;
          break;
        }
      if (ok) {
        out.productive.insert(p.lhs);
        changed = true;
      }
    }
  }
  return out;
}

std::string renderCfg(const Cfg& cfg) {
  std::string out = "start: " + cfg.start.str() + "\n";
  for (const auto& p : cfg.productions) out += p.str() + "\n";
  return out;
}

std::string cfgJson(const Cfg& cfg) {
  nlohmann::json root;
  root["start"] = cfg.start.str();
  nlohmann::json nts = nlohmann::json::array();
  for (const auto& nt : cfg.nonterminals) nts.push_back(nt.str());
  root["nonterminals"] = nts;
  root["terminals"] = cfg.terminals;
  nlohmann::json prods = nlohmann::json::array();
  for (const auto& p : cfg.productions) {
    nlohmann::json jp;
    jp["lhs"] = p.lhs.str();
    nlohmann::json rhs = nlohmann::json::array();
    for (const auto& sym : p.rhs) {
      if (sym.terminal)
        rhs.push_back({{"terminal", sym.lexeme}});
      else
        rhs.push_back({{"nonterminal", sym.nonterminal.str()}});
    }
    jp["rhs"] = rhs;
    if (p.axiom) jp["axiom"] = *p.axiom;
    prods.push_back(jp);
  }
  root["productions"] = prods;
  return root.dump(2);
}

Cfg parseCfgText(const std::string& text) {
  Cfg cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "start:") {
      std::string s;
      if (!(ls >> s)) throw std::runtime_error("cfg line " + std::to_string(lineno) + ": missing start");
      cfg.start = parseType(s);
      cfg.nonterminals.insert(cfg.start);
      continue;
    }
    std::string arrow;
    if (!(ls >> arrow) || arrow != "->")
      throw std::runtime_error("cfg line " + std::to_string(lineno) + ": expected '->'");
    Production p;
    p.lhs = parseType(first);
    cfg.nonterminals.insert(p.lhs);
    std::string tok;
    while (ls >> tok) {
      CfgSymbol sym;
      if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"') {
        sym.terminal = true;
        sym.lexeme = tok.substr(1, tok.size() - 2);
        cfg.terminals.insert(sym.lexeme);
      } else {
        sym.terminal = false;
        sym.nonterminal = parseType(tok);
        cfg.nonterminals.insert(sym.nonterminal);
      }
      p.rhs.push_back(std::move(sym));
    }
    if (p.rhs.empty())
      throw std::runtime_error("cfg line " + std::to_string(lineno) + ": empty right-hand side");
    cfg.productions.push_back(std::move(p));
  }
  if (cfg.start.empty()) throw std::runtime_error("cfg: missing start declaration");
  return cfg;
}

namespace {

void collectLeaves(const Cfg& cfg, const ParseTree& t, std::vector<std::string>& out) {
  const Production& p = cfg.productions.at(t.production);
  std::size_t child = 0;
  for (const auto& sym : p.rhs) {
    if (sym.terminal)
      out.push_back(sym.lexeme);
    else
      collectLeaves(cfg, t.children.at(child++), out);
  }
}

} // namespace

std::string leafTokens(const Cfg& cfg, const ParseTree& tree) {
  std::vector<std::string> toks;
  collectLeaves(cfg, tree, toks);
  std::string out;
  for (std::size_t i = 0; i < toks.size(); i++) {
    if (i) out += " ";
    out += toks[i];
  }
  return out;
}

} // namespace lambridge
