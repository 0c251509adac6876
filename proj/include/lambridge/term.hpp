#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lambridge {

struct Grammar;

// Linear lambda terms over lexical constants.  A constant carries the name
// of its lexeme plus the index of the chi entry it was drawn from, so that a
// lexeme with several assigned types stays unambiguous.
class Term {
public:
  enum class Kind : unsigned char { Var, Const, Abs, App };

  Term() = default;

  static Term var(std::string name);
  static Term constant(std::string name, std::size_t chiIndex = 0);
  static Term abs(std::string binder, Term body);
  static Term app(Term fun, Term arg);
  static Term app(Term fun, const std::vector<Term>& args);

  bool empty() const { return node_ == nullptr; }
  Kind kind() const;
  const std::string& name() const;   // Var, Const, Abs (binder)
  std::size_t chiIndex() const;      // Const
  const Term& body() const;          // Abs
  const Term& fun() const;           // App
  const Term& arg() const;           // App

  bool operator==(const Term& o) const; // syntactic, not alpha
  bool operator!=(const Term& o) const { return !(*this == o); }

private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::set<std::string> freeVars(const Term& u);
bool occursFree(const Term& u, const std::string& x);

// Every variable, free or bound, occurs exactly once.
bool isLinear(const Term& u);

// Capture-avoiding u[x := v]; binders are alpha-renamed when needed.
Term substitute(const Term& u, const std::string& x, const Term& v);

// Canonical bound-variable renaming (_b1, _b2, ... in traversal order).
Term alphaNormalize(const Term& u);
bool alphaEqual(const Term& a, const Term& b);

// Full beta-normal form.  Linear terms make this terminating without fuel,
// but a step cap guards against accidental non-linear inputs.
Term betaNormalize(const Term& u);
bool betaNormal(const Term& u);

// Head form u = \b1..bm. h a1..an with h not an application or abstraction.
struct HeadForm {
  std::vector<std::string> binders;
  Term head;
  std::vector<Term> args;
};
HeadForm headForm(const Term& u);

struct TermPrintOptions {
  bool uppercaseConstants = true;
  // Lexemes with several chi entries get a "#k" suffix.
  const Grammar* grammar = nullptr;
};

std::string termStr(const Term& u, const TermPrintOptions& opts = {});

// Parses the canonical syntax: "\x. body", juxtaposition left-associative,
// identifiers starting with an upper-case letter are constants (an optional
// "#k" suffix selects the chi entry).  When a grammar is given, constant
// names are resolved case-insensitively against its lexemes.
Term parseTerm(std::string_view text, const Grammar* grammar = nullptr);

// Fresh-name supply ("x1", "x2", ... for a given stem).
class NameSupply {
public:
  explicit NameSupply(std::string stem) : stem_(std::move(stem)) {}
  std::string next() { return stem_ + std::to_string(++count_); }

private:
  std::string stem_;
  unsigned long count_ = 0;
};

} // namespace lambridge
