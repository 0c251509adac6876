#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "lambridge/grammar.hpp"
#include "lambridge/sequent.hpp"

namespace lambridge {

struct Budget {
  int maxDepth = 40;
  long maxNodes = 200000;
};

struct ProveResult {
  std::vector<Derivation> derivations;
  // True when the budget stopped the search before the space was exhausted;
  // an empty stream with exhausted=false is a refutation.
  bool exhausted = false;

  bool provable() const { return !derivations.empty(); }
};

// Enumerates the beta-normal eta-long derivations of `context |- goal`,
// head choices left-to-right, lexicon entries in declaration order,
// argument segments by increasing split position.  Sound always; complete
// when exhausted stays false.
ProveResult proveIE(const Grammar& g, const Word& context, const Type& goal,
                    const Budget& budget = {}, std::size_t maxDerivations = SIZE_MAX);

// Words of lexemes; throws std::runtime_error on a token outside the lexicon.
Word sentenceWord(const Grammar& g, const std::vector<std::string>& tokens);

ProveResult proveSentence(const Grammar& g, const std::vector<std::string>& tokens,
                          const Type& goal, const Budget& budget = {},
                          std::size_t maxDerivations = SIZE_MAX);

// Single-variable sub-prover for Q1: finds v with x:alpha |- v : gamma.
// Results are cached per (alpha, gamma); the returned term has exactly one
// free variable, named by `freeVar`.
class ArgProver {
public:
  explicit ArgProver(const Grammar& g, Budget budget = {}) : g_(g), budget_(budget) {}

  std::optional<Term> prove(const Type& alpha, const Type& gamma, const std::string& freeVar);
  bool lastQueryExhausted() const { return exhausted_; }

private:
  const Grammar& g_;
  Budget budget_;
  bool exhausted_ = false;
  std::mutex mutex_;
  std::map<std::pair<Type, Type>, std::optional<Term>> cache_;
};

} // namespace lambridge
