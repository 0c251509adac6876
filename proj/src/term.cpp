#include "lambridge/term.hpp"

#include <atomic>
#include <cctype>
#include <map>
#include <stdexcept>

#include "lambridge/grammar.hpp"

namespace lambridge {

struct Term::Node {
  Kind kind;
  std::string name;
  std::size_t chiIndex = 0;
  Term a; // Abs body / App fun
  Term b; // App arg
};

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::constant(std::string name, std::size_t chiIndex) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->name = std::move(name);
  n->chiIndex = chiIndex;
  return Term(std::move(n));
}

Term Term::abs(std::string binder, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Abs;
  n->name = std::move(binder);
  n->a = std::move(body);
  return Term(std::move(n));
}

Term Term::app(Term fun, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->a = std::move(fun);
  n->b = std::move(arg);
  return Term(std::move(n));
}

Term Term::app(Term fun, const std::vector<Term>& args) {
  Term cur = std::move(fun);
  for (const auto& a : args) cur = app(cur, a);
  return cur;
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
std::size_t Term::chiIndex() const { return node_->chiIndex; }
const Term& Term::body() const { return node_->a; }
const Term& Term::fun() const { return node_->a; }
const Term& Term::arg() const { return node_->b; }

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->kind != o.node_->kind) return false;
  switch (node_->kind) {
    case Kind::Var: return node_->name == o.node_->name;
    case Kind::Const:
      return node_->name == o.node_->name && node_->chiIndex == o.node_->chiIndex;
    case Kind::Abs: return node_->name == o.node_->name && node_->a == o.node_->a;
    case Kind::App: return node_->a == o.node_->a && node_->b == o.node_->b;
  }
  return false;
}

namespace {

void collectFree(const Term& u, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (u.kind()) {
    case Term::Kind::Var:
      if (!bound.count(u.name())) out.insert(u.name());
      return;
    case Term::Kind::Const: return;
    case Term::Kind::Abs: {
      bool fresh = bound.insert(u.name()).second;
      collectFree(u.body(), bound, out);
      if (fresh) bound.erase(u.name());
      return;
    }
    case Term::Kind::App:
      collectFree(u.fun(), bound, out);
      collectFree(u.arg(), bound, out);
      return;
  }
}

} // namespace

std::set<std::string> freeVars(const Term& u) {
  std::set<std::string> bound, out;
  collectFree(u, bound, out);
  return out;
}

bool occursFree(const Term& u, const std::string& x) {
  switch (u.kind()) {
    case Term::Kind::Var: return u.name() == x;
    case Term::Kind::Const: return false;
    case Term::Kind::Abs: return u.name() != x && occursFree(u.body(), x);
    case Term::Kind::App: return occursFree(u.fun(), x) || occursFree(u.arg(), x);
  }
  return false;
}

namespace {

// Counts free occurrences of every variable; fails fast past one.
bool countUses(const Term& u, std::map<std::string, int>& uses) {
  switch (u.kind()) {
    case Term::Kind::Var:
      if (++uses[u.name()] > 1) return false;
      return true;
    case Term::Kind::Const: return true;
    case Term::Kind::Abs: {
      std::map<std::string, int> inner;
      if (!countUses(u.body(), inner)) return false;
      if (inner[u.name()] != 1) return false;
      for (auto& [k, v] : inner)
        if (k != u.name() && (uses[k] += v) > 1) return false;
      return true;
    }
    case Term::Kind::App:
      return countUses(u.fun(), uses) && countUses(u.arg(), uses);
  }
  return false;
}

} // namespace

bool isLinear(const Term& u) {
  std::map<std::string, int> uses;
  return countUses(u, uses);
}

namespace {

std::atomic<unsigned long> freshCounter{0};

std::string freshName() { return "_r" + std::to_string(++freshCounter); }

Term substImpl(const Term& u, const std::string& x, const Term& v,
               const std::set<std::string>& avoid) {
  switch (u.kind()) {
    case Term::Kind::Var: return u.name() == x ? v : u;
    case Term::Kind::Const: return u;
    case Term::Kind::Abs: {
      if (u.name() == x) return u; // x shadowed, no free occurrence below
      if (!occursFree(u.body(), x)) return u;
      if (avoid.count(u.name())) {
        std::string nn = freshName();
        Term renamed = substImpl(u.body(), u.name(), Term::var(nn), {});
        return Term::abs(nn, substImpl(renamed, x, v, avoid));
      }
      return Term::abs(u.name(), substImpl(u.body(), x, v, avoid));
    }
    case Term::Kind::App:
      return Term::app(substImpl(u.fun(), x, v, avoid), substImpl(u.arg(), x, v, avoid));
  }
  return u;
}

} // namespace

Term substitute(const Term& u, const std::string& x, const Term& v) {
  return substImpl(u, x, v, freeVars(v));
}

namespace {

Term alphaImpl(const Term& u, std::map<std::string, std::string>& ren, unsigned long& next) {
  switch (u.kind()) {
    case Term::Kind::Var: {
      auto it = ren.find(u.name());
      return it == ren.end() ? u : Term::var(it->second);
    }
    case Term::Kind::Const: return u;
    case Term::Kind::Abs: {
      std::string nn = "_b" + std::to_string(++next);
      auto old = ren.find(u.name());
      std::optional<std::string> saved;
      if (old != ren.end()) saved = old->second;
      ren[u.name()] = nn;
      Term body = alphaImpl(u.body(), ren, next);
      if (saved)
        ren[u.name()] = *saved;
      else
        ren.erase(u.name());
      return Term::abs(nn, body);
    }
    case Term::Kind::App: {
      Term f = alphaImpl(u.fun(), ren, next);
      Term a = alphaImpl(u.arg(), ren, next);
      return Term::app(f, a);
    }
  }
  return u;
}

} // namespace

Term alphaNormalize(const Term& u) {
  std::map<std::string, std::string> ren;
  unsigned long next = 0;
  return alphaImpl(u, ren, next);
}

bool alphaEqual(const Term& a, const Term& b) {
  if (a.empty() || b.empty()) return a.empty() == b.empty();
  return alphaNormalize(a) == alphaNormalize(b);
}

namespace {

constexpr long kBetaFuel = 100000;

Term normalize(const Term& u, long& fuel) {
  if (--fuel < 0) throw std::runtime_error("beta normalization fuel exhausted");
  switch (u.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const: return u;
    case Term::Kind::Abs: return Term::abs(u.name(), normalize(u.body(), fuel));
    case Term::Kind::App: {
      Term f = normalize(u.fun(), fuel);
      if (f.kind() == Term::Kind::Abs)
        return normalize(substitute(f.body(), f.name(), u.arg()), fuel);
      return Term::app(f, normalize(u.arg(), fuel));
    }
  }
  return u;
}

} // namespace

Term betaNormalize(const Term& u) {
  long fuel = kBetaFuel;
  return normalize(u, fuel);
}

bool betaNormal(const Term& u) {
  switch (u.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const: return true;
    case Term::Kind::Abs: return betaNormal(u.body());
    case Term::Kind::App:
      return u.fun().kind() != Term::Kind::Abs && betaNormal(u.fun()) && betaNormal(u.arg());
  }
  return true;
}

HeadForm headForm(const Term& u) {
  HeadForm hf;
  Term cur = u;
  while (cur.kind() == Term::Kind::Abs) {
    hf.binders.push_back(cur.name());
    cur = cur.body();
  }
  while (cur.kind() == Term::Kind::App) {
    hf.args.push_back(cur.arg());
    cur = cur.fun();
  }
  std::reverse(hf.args.begin(), hf.args.end());
  hf.head = cur;
  return hf;
}

namespace {

std::string upcase(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

void print(const Term& u, const TermPrintOptions& opts, std::string& out, bool parens) {
  switch (u.kind()) {
    case Term::Kind::Var: out += u.name(); return;
    case Term::Kind::Const: {
      out += opts.uppercaseConstants ? upcase(u.name()) : u.name();
      bool ambiguous = u.chiIndex() > 0;
      if (opts.grammar && opts.grammar->isLexeme(u.name()))
        ambiguous = opts.grammar->typesOf(u.name()).size() > 1;
      if (ambiguous) out += "#" + std::to_string(u.chiIndex());
      return;
    }
    case Term::Kind::Abs: {
      if (parens) out += '(';
      out += '\\';
      out += u.name();
      out += ". ";
      print(u.body(), opts, out, false);
      if (parens) out += ')';
      return;
    }
    case Term::Kind::App: {
      if (parens) out += '(';
      print(u.fun(), opts, out, u.fun().kind() == Term::Kind::Abs);
      out += ' ';
      print(u.arg(), opts, out, u.arg().kind() != Term::Kind::Var &&
                                    u.arg().kind() != Term::Kind::Const);
      if (parens) out += ')';
      return;
    }
  }
}

} // namespace

std::string termStr(const Term& u, const TermPrintOptions& opts) {
  if (u.empty()) return "<none>";
  std::string out;
  print(u, opts, out, false);
  return out;
}

namespace {

struct TermParser {
  std::string_view text;
  std::size_t pos = 0;
  const Grammar* grammar;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("term syntax error at offset " + std::to_string(pos) + ": " + msg);
  }

  void skipWs() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) pos++;
  }

  bool identChar(char c) const {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' ||
           static_cast<unsigned char>(c) >= 0x80;
  }

  std::string ident() {
    std::size_t start = pos;
    while (pos < text.size() && identChar(text[pos])) pos++;
    if (pos == start) fail("expected identifier");
    return std::string(text.substr(start, pos - start));
  }

  Term atomTerm() {
    skipWs();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] == '(') {
      pos++;
      Term t = expr();
      skipWs();
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
      pos++;
      return t;
    }
    std::string id = ident();
    if (std::isupper(static_cast<unsigned char>(id[0]))) {
      std::size_t k = 0;
      if (pos < text.size() && text[pos] == '#') {
        pos++;
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) pos++;
        if (pos == start) fail("expected chi index after '#'");
        k = std::stoul(std::string(text.substr(start, pos - start)));
      }
      // Constants are stored under their lower-case lexeme name; printing
      // restores the upper case.
      std::string name = id;
      for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (grammar && !grammar->isLexeme(name)) name = id;
      return Term::constant(name, k);
    }
    return Term::var(id);
  }

  Term expr() {
    skipWs();
    if (pos < text.size() && text[pos] == '\\') {
      pos++;
      skipWs();
      std::vector<std::string> binders{ident()};
      skipWs();
      while (pos < text.size() && text[pos] == ',') {
        pos++;
        skipWs();
        binders.push_back(ident());
        skipWs();
      }
      if (pos >= text.size() || text[pos] != '.') fail("expected '.' after binder");
      pos++;
      Term body = expr();
      for (auto it = binders.rbegin(); it != binders.rend(); ++it)
        body = Term::abs(*it, body);
      return body;
    }
    Term cur = atomTerm();
    while (true) {
      skipWs();
      if (pos >= text.size() || text[pos] == ')' ) break;
      if (text[pos] == '\\') { // lambda as an argument needs parentheses
        fail("unexpected '\\'; parenthesize lambda arguments");
      }
      cur = Term::app(cur, atomTerm());
    }
    return cur;
  }
};

} // namespace

Term parseTerm(std::string_view text, const Grammar* grammar) {
  TermParser p{text, 0, grammar};
  Term t = p.expr();
  p.skipWs();
  if (p.pos != text.size()) p.fail("trailing input");
  return t;
}

} // namespace lambridge
