#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "lambridge/type.hpp"

namespace lambridge {

// A Lambek grammar (Pr, T, chi, s): atomic types, lexemes, a set-valued type
// assignment, and a distinguished atomic start type.
struct Grammar {
  std::set<std::string> atoms;
  std::vector<std::string> lexemes; // declaration order
  std::map<std::string, std::vector<Type>> assignment;
  std::string start;

  bool isLexeme(const std::string& name) const { return assignment.count(name) != 0; }
  const std::vector<Type>& typesOf(const std::string& lexeme) const;
  Type startType() const { return Type::atom(start); }

  // All assigned types, deduplicated, in deterministic order.
  std::vector<Type> lexicalTypes() const;

  // Throws std::runtime_error when an invariant is broken: start not an
  // atom, atoms and lexemes overlapping, or an undeclared atom in a type.
  void validate() const;
};

// Text format, one declaration per line, '#' starts a comment:
//   atoms: s n np
//   start: s
//   le   : np/n
//   que  : (n\n)/(s/np)
// A lexeme may be assigned on several lines (chi is set-valued).
Grammar parseGrammar(const std::string& text);
Grammar loadGrammar(const std::string& path);
std::string renderGrammar(const Grammar& g);

// Signed subformula occurrences over all lexical types:
//   a in positive for every lexical type a;
//   c(g,b) positive => b positive and g negative;
//   c(g,b) negative => b negative and g positive.
// strictPositive keeps the positive occurrences that are proper subterms of
// some lexical type (the set Tp(G)^{+,!=}).
struct SignedOccurrences {
  std::set<Type> positive;
  std::set<Type> negative;
  std::set<Type> strictPositive;
};

SignedOccurrences signedOccurrences(const Grammar& g);

} // namespace lambridge
