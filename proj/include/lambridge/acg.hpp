#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lambridge/cfg.hpp"
#include "lambridge/typing.hpp"

namespace lambridge {

// Higher-order signature (B, C, tau).
struct SimpleSignature {
  std::set<std::string> baseTypes;
  std::vector<std::string> constants; // stable order
  std::map<std::string, SimpleType> typing;

  SimpleType typeOf(const std::string& c) const;
  ConstTyping constTyping() const;
};

int signatureOrder(const SimpleSignature& sig);

// Signature morphism: F on base types, G on constants.
struct AcgLexicon {
  std::map<std::string, SimpleType> typeMap;
  std::map<std::string, Term> termMap;
};

SimpleType applyLexiconType(const AcgLexicon& lex, const SimpleType& t);
// Homomorphic constant replacement followed by beta-normalization; throws
// on constants missing from the lexicon.
Term applyLexicon(const AcgLexicon& lex, const Term& u);

struct Acg {
  SimpleSignature abstractSig;
  SimpleSignature objectSig;
  AcgLexicon lexicon;
  SimpleType distinguished;
};

struct LexiconFailure {
  std::string constant;
  std::string expectedType;
  std::string reason;
};

// Checks the homomorphism condition |- G(c) : F(tau1(c)) for every abstract
// constant.
std::optional<LexiconFailure> validateLexicon(const AcgLexicon& lex,
                                              const SimpleSignature& src,
                                              const SimpleSignature& tgt);

// The string type sigma = * -> *.
SimpleType sigmaType();

// Name of the abstract constant for production i (index plus lhs type).
std::string productionConstant(const Cfg& cfg, std::size_t index);

// CFG -> second-order ACG: abstract constants are the productions typed
// N1 -> .. -> Nm -> K, the object vocabulary is the string signature, and
// the lexicon sends a production to the concatenation of its right-hand
// side with one free position per nonterminal.
Acg cfgToAcg(const Cfg& cfg);

// Reads the token list of a closed object term of type sigma.
std::vector<std::string> yieldString(const Term& objectTerm, const SimpleSignature& objectSig);

// The abstract term isomorphic to a parse tree.
Term treeToAbstractTerm(const Cfg& cfg, const ParseTree& tree);

// Parses with the CFG and maps each tree to its abstract term; empty iff
// the tokens are outside the object language.
std::vector<Term> objectMembership(const Acg& acg, const Cfg& cfg, const AxiomSet& axioms,
                                   const std::vector<std::string>& tokens,
                                   std::size_t maxTerms = SIZE_MAX);

// tau_0-erased signature of a Lambek grammar: one constant per (lexeme, chi
// entry), named "lexeme" or "lexeme#k" when several entries exist.
SimpleSignature erasedSignature(const Grammar& g);
std::string erasedConstantName(const Grammar& g, const std::string& lexeme, std::size_t k);

// Two-section text export: "constant : type;" then "constant := term;".
std::string renderAcg(const Acg& acg);
std::string acgJson(const Acg& acg);

} // namespace lambridge
