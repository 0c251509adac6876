#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lambridge/grammar.hpp"
#include "lambridge/term.hpp"
#include "lambridge/type.hpp"
#include "lambridge/word.hpp"

namespace lambridge {

// Gamma |- u : beta.  The term is absent in pure search goals.
struct Sequent {
  Word context; // non-empty
  std::optional<Term> term;
  Type result;

  std::string str() const;
};

// Alpha-invariant rendering: context variables are renamed positionally and
// the term is alpha-normalized against them.  Used for axiom deduplication
// and proper-axiom membership tests.
std::string canonicalKey(const Sequent& s);
bool sequentAlphaEqual(const Sequent& a, const Sequent& b);

enum class Rule : unsigned char {
  Ax,        // x:a |- x:a
  Lex,       // t |- t:a, a in chi(t)
  Intro,     // (c I)
  Elim,      // (c E)
  Cut,       // substitute a derived sequent for a context variable
  PAxE1,     // flattened lexical axiom
  PAxE2,     // flattened strictly-positive variable axiom
  PAxI,      // member of the generated axiom base
};

std::string ruleName(const Rule r);

struct Derivation {
  Rule rule = Rule::Ax;
  Sequent conclusion;
  std::vector<Derivation> children;

  // Rule bookkeeping.
  Conn conn = Conn::Right; // Intro / Elim
  std::size_t cutPos = 0;  // Cut: index of the replaced variable in child 0
  std::size_t lexIndex = 0; // Lex / PAxE1: chi entry

  std::size_t size() const;
};

enum class SystemTag : unsigned char { S_IE, S_IC, S_C };

// S_IE needs the grammar (Lex side conditions); S_IC additionally checks
// flattened axioms against the grammar; S_C variants check pAx_I leaves
// against an axiom base given as canonical sequent keys.
struct RuleSystem {
  SystemTag tag = SystemTag::S_IE;
  const Grammar* grammar = nullptr;
  const std::set<std::string>* axiomKeys = nullptr; // S_C only

  static RuleSystem sIE(const Grammar& g) { return {SystemTag::S_IE, &g, nullptr}; }
  static RuleSystem sIC(const Grammar& g) { return {SystemTag::S_IC, &g, nullptr}; }
  static RuleSystem sC(const Grammar& g, const std::set<std::string>& keys) {
    return {SystemTag::S_C, &g, &keys};
  }
};

struct CheckFailure {
  std::vector<std::size_t> path; // child indices from the root
  std::string reason;

  std::string str() const;
};

// Verifies that every node instantiates a rule of the system, including the
// word-algebra side conditions and the lambda-term bookkeeping.
std::optional<CheckFailure> checkDerivation(const RuleSystem& sys, const Derivation& d);

// Rebuilds the conclusion term bottom-up (Intro => abstraction, Elim =>
// application, Cut => substitution).
Term extractTerm(const Derivation& d);

// Term-directed oriented typing check of Gamma |- u : beta (figure-level
// validation used on generated axioms; backtracks over lexeme placement and
// argument segmentation).
bool orientedCheck(const Grammar& g, const Sequent& s);

// Canonical S-expression: (rule "context |- term : type" child*).
std::string derivationSexpr(const Derivation& d, const Grammar* grammar = nullptr);

} // namespace lambridge
