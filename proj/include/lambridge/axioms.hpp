#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lambridge/grammar.hpp"
#include "lambridge/prover.hpp"
#include "lambridge/sequent.hpp"

namespace lambridge {

// Where a proper axiom came from.
struct Provenance {
  enum class Kind : unsigned char { E1, E2, Q1, Q2 } kind = Kind::E1;
  std::string lexeme;       // E1
  std::size_t chiIndex = 0; // E1
  Type type;                // E2: the flattened type; Q1: alpha; Q2: delta
  std::size_t parent = 0;   // Q1/Q2: index of the source axiom
  Term witness;             // Q1: the v with x:alpha |- v : gamma

  std::string str() const;
};

struct ProperAxiom {
  Sequent seq;
  Provenance prov;
  int generation = 0;
};

// Deduplicated, insertion-ordered axiom set; the dedup key is the
// alpha-equivalence class of the sequent (variables renamed positionally).
class AxiomSet {
public:
  bool insert(ProperAxiom ax); // false when an alpha-variant is present
  bool contains(const Sequent& s) const { return keys_.count(canonicalKey(s)) != 0; }

  const std::vector<ProperAxiom>& axioms() const { return axioms_; }
  const std::set<std::string>& keys() const { return keys_; }
  std::size_t size() const { return axioms_.size(); }

  int generation = 0; // leveling iteration that produced this set

private:
  std::vector<ProperAxiom> axioms_;
  std::set<std::string> keys_;
};

// Flattened word pi(alpha)[head] |- head z1..zn : rho(alpha).  The head is
// a lexeme with alpha in chi (chiIndex selects the entry), or a typed
// variable; flattening a variable head is only meaningful for strictly
// positive types, which build_A0 and the checker enforce.
ProperAxiom flatten(const Type& alpha, const ContextItem& head, std::size_t chiIndex = 0);

// A0: one E1 axiom per (lexeme, chi entry), one E2 axiom per strictly
// positive proper subtype.
AxiomSet buildA0(const Grammar& g);

// Q1: abstract a boundary variable y:gamma, routing it through a witness
// x:alpha |- v:gamma with alpha strictly positive.
std::vector<ProperAxiom> q1(const AxiomSet& base, const Grammar& g,
                            const SignedOccurrences& occ, ArgProver& prover);

// Q2: replace a boundary variable y:alpha by a fresh z:c(delta,alpha)
// applied to a fresh abstracted x:delta, delta strictly positive.
std::vector<ProperAxiom> q2(const AxiomSet& base, const Grammar& g,
                            const SignedOccurrences& occ);

// Keeps the axioms whose result type is reachable: fixpoint seeded with the
// start atom, closed by walking from reachable results to the context
// variable types of the axioms carrying them.
AxiomSet accessibleFilter(const AxiomSet& axioms, const Grammar& g);

struct LevelOptions {
  int iterations = 3;
  bool filter = true;
  Budget budget;
};

// Algorithm MaN: B1 <- A0; n times B0 <- B1, B1 <- B1 u Q1(B0) u Q2(B0),
// filtering each round unless disabled.
AxiomSet level(const Grammar& g, const LevelOptions& opts = {});

// Line-oriented export: "context |- term : type   # provenance [gen k]".
std::string renderAxioms(const AxiomSet& axioms, const Grammar& g);
std::string axiomsJson(const AxiomSet& axioms, const Grammar& g);

} // namespace lambridge
