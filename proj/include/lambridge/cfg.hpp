#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lambridge/axioms.hpp"
#include "lambridge/grammar.hpp"
#include "lambridge/sequent.hpp"

namespace lambridge {

// A right-hand-side symbol: a nonterminal (an oriented type) or a terminal
// (a lexeme).
struct CfgSymbol {
  bool terminal = false;
  Type nonterminal;    // !terminal
  std::string lexeme;  // terminal

  bool operator==(const CfgSymbol& o) const {
    return terminal == o.terminal &&
           (terminal ? lexeme == o.lexeme : nonterminal == o.nonterminal);
  }
  std::string str() const { return terminal ? "\"" + lexeme + "\"" : nonterminal.str(); }
};

struct Production {
  Type lhs;
  std::vector<CfgSymbol> rhs;           // never empty: context words are non-empty
  std::optional<std::size_t> axiom;     // index into the originating AxiomSet

  std::string str() const;
};

struct Cfg {
  std::set<Type> nonterminals;
  std::set<std::string> terminals;
  std::vector<Production> productions;
  Type start;

  std::vector<std::size_t> productionsFor(const Type& lhs) const; // indices, stable order
};

// One production beta -> Gamma per axiom Gamma |- beta; typed variables
// become their type as a nonterminal, lexemes stay terminal.
Cfg toCfg(const AxiomSet& axioms, const Grammar& g);

// Parse tree: a production plus one subtree per nonterminal occurrence.
struct ParseTree {
  std::size_t production = 0;
  std::vector<ParseTree> children;
};

// Complete enumeration of the parse trees of `tokens` from `start` (the
// grammar's start when absent).  Chains of unit productions never revisit a
// nonterminal, which caps their length at |nonterminals| and keeps forests
// finite without changing the language.  `maxTrees` bounds the enumeration.
std::vector<ParseTree> parse(const Cfg& cfg, const std::vector<std::string>& tokens,
                             std::size_t maxTrees = SIZE_MAX,
                             const std::optional<Type>& start = std::nullopt);

bool cfgMember(const Cfg& cfg, const std::vector<std::string>& tokens,
               const std::optional<Type>& start = std::nullopt);

// Rebuilds a cut-only derivation whose leaves are the originating proper
// axioms; needs the axiom set the CFG was built from.
Derivation treeToCutProof(const Cfg& cfg, const AxiomSet& axioms, const ParseTree& tree);

// Exactly the words of length <= maxLen derivable from each nonterminal;
// the start entry is the grammar's bounded language.
std::map<Type, std::set<std::vector<std::string>>> enumerateLanguageAll(const Cfg& cfg,
                                                                        std::size_t maxLen);
std::set<std::vector<std::string>> enumerateLanguage(const Cfg& cfg, std::size_t maxLen);

struct ReachableProductive {
  std::set<Type> reachable;
  std::set<Type> productive;
};
ReachableProductive reachableProductive(const Cfg& cfg);

// BNF-like text form, one production per line: s -> np "voit" np
std::string renderCfg(const Cfg& cfg);
std::string cfgJson(const Cfg& cfg);
// Parses the BNF-like form back (axiom back-references are not preserved).
Cfg parseCfgText(const std::string& text);

std::string leafTokens(const Cfg& cfg, const ParseTree& tree); // space-joined yield

} // namespace lambridge
