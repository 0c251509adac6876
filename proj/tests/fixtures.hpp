#pragma once

#include <string>
#include <vector>

#include "lambridge/grammar.hpp"
#include "lambridge/term.hpp"

namespace lambridge::fixtures {

inline Grammar g0() {
  return parseGrammar(R"(
atoms: s n np
start: s
le     : np/n
chat   : n
dort   : np\s
que    : (n\n)/(s/np)
pierre : np
voit   : (np\s)/np
)");
}

inline Grammar g0ext() {
  return parseGrammar(R"(
atoms: s n np
start: s
le     : np/n
chat   : n
dort   : np\s
que    : (n\n)/(s/np)
pierre : np
voit   : (np\s)/np
beau   : n/n
très   : (n/n)/(n/n)
)");
}

inline Grammar g1() {
  return parseGrammar(R"(
atoms: s r
start: s
a : (s/r)/s
b : s/(s/r)
c : s
)");
}

inline Grammar g2() {
  return parseGrammar(R"(
atoms: s
start: s
a : s/(s/(s\s))
b : s
)");
}

inline Grammar g3() {
  return parseGrammar(R"(
atoms: p q r s
start: s
a : (p/q)/r
b : s/((p/r)/q)
)");
}

inline std::vector<std::string> tokens(const std::string& spaceSeparated) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : spaceSeparated) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// D (L ((Q (\x. (V x) P)) C)) : the root term of the g0 example sentence.
inline Term g0SentenceTerm() {
  Term v = Term::constant("voit");
  Term inner = Term::abs(
      "x", Term::app(Term::app(v, Term::var("x")), Term::constant("pierre")));
  Term q = Term::app(Term::app(Term::constant("que"), inner), Term::constant("chat"));
  return Term::app(Term::constant("dort"), Term::app(Term::constant("le"), q));
}

// B (\x. B (\y. (A ((A C) x)) y)) : the n=2 member of the g1 family.
inline Term g1NestedTerm() {
  Term a = Term::constant("a");
  Term ac = Term::app(a, Term::constant("c"));
  Term inner = Term::app(Term::app(a, Term::app(ac, Term::var("x"))), Term::var("y"));
  return Term::app(Term::constant("b"),
                   Term::abs("x", Term::app(Term::constant("b"), Term::abs("y", inner))));
}

} // namespace lambridge::fixtures
