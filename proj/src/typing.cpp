#include "lambridge/typing.hpp"

#include <set>
#include <stdexcept>

#include "lambridge/grammar.hpp"

namespace lambridge {

struct SimpleType::Node {
  bool base;
  std::string name;
  SimpleType argument;
  SimpleType result;
};

SimpleType SimpleType::base(std::string name) {
  auto n = std::make_shared<Node>();
  n->base = true;
  n->name = std::move(name);
  return SimpleType(std::move(n));
}

SimpleType SimpleType::arrow(SimpleType argument, SimpleType result) {
  auto n = std::make_shared<Node>();
  n->base = false;
  n->argument = std::move(argument);
  n->result = std::move(result);
  return SimpleType(std::move(n));
}

bool SimpleType::isBase() const { return node_->base; }
const std::string& SimpleType::baseName() const { return node_->name; }
const SimpleType& SimpleType::argument() const { return node_->argument; }
const SimpleType& SimpleType::result() const { return node_->result; }

bool SimpleType::operator==(const SimpleType& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->base != o.node_->base) return false;
  if (node_->base) return node_->name == o.node_->name;
  return node_->argument == o.node_->argument && node_->result == o.node_->result;
}

std::strong_ordering SimpleType::operator<=>(const SimpleType& o) const {
  if (node_ == o.node_) return std::strong_ordering::equal;
  if (!node_) return std::strong_ordering::less;
  if (!o.node_) return std::strong_ordering::greater;
  if (node_->base != o.node_->base)
    return node_->base ? std::strong_ordering::less : std::strong_ordering::greater;
  if (node_->base) return node_->name <=> o.node_->name;
  if (auto c = node_->argument <=> o.node_->argument; c != 0) return c;
  return node_->result <=> o.node_->result;
}

std::string SimpleType::str() const {
  if (!node_) return "<none>";
  if (isBase()) return baseName();
  std::string lhs = argument().isBase() ? argument().str() : "(" + argument().str() + ")";
  return lhs + " -> " + result().str();
}

int order(const SimpleType& t) {
  if (t.isBase()) return 1;
  return std::max(1 + order(t.argument()), order(t.result()));
}

SimpleType erase(const Type& t) {
  if (t.isAtom()) return SimpleType::base(t.atomName());
  return SimpleType::arrow(erase(t.argument()), erase(t.result()));
}

ConstTyping grammarConstants(const Grammar& g) {
  return [&g](const std::string& name, std::size_t chiIndex) -> SimpleType {
    if (!g.isLexeme(name)) return SimpleType();
    const auto& types = g.typesOf(name);
    if (chiIndex >= types.size()) return SimpleType();
    return erase(types[chiIndex]);
  };
}

namespace {

struct Checker {
  const ConstTyping& consts;
  std::map<std::string, SimpleType> scope; // still-unconsumed variables
  std::set<std::string> consumed;
  std::optional<TypeError> error;

  bool fail(TypeError::Kind k, std::string msg) {
    if (!error) error = TypeError{k, std::move(msg)};
    return false;
  }

  // Consumes a variable from the linear scope.
  std::optional<SimpleType> take(const std::string& x) {
    auto it = scope.find(x);
    if (it == scope.end()) return std::nullopt;
    SimpleType t = it->second;
    scope.erase(it);
    consumed.insert(x);
    return t;
  }

  bool infer(const Term& u, SimpleType& out) {
    switch (u.kind()) {
      case Term::Kind::Var: {
        auto t = take(u.name());
        if (!t) {
          if (consumed.count(u.name()))
            return fail(TypeError::Kind::NonLinear,
                        "variable '" + u.name() + "' is used more than once");
          return fail(TypeError::Kind::UnboundVariable,
                      "unbound variable '" + u.name() + "'");
        }
        out = *t;
        return true;
      }
      case Term::Kind::Const: {
        SimpleType t = consts(u.name(), u.chiIndex());
        if (t.empty())
          return fail(TypeError::Kind::UnknownConstant, "unknown constant '" + u.name() + "'");
        out = t;
        return true;
      }
      case Term::Kind::App: {
        SimpleType f;
        if (!infer(u.fun(), f)) return false;
        if (f.isBase())
          return fail(TypeError::Kind::Clash,
                      "applied term of base type " + f.str());
        if (!check(u.arg(), f.argument())) return false;
        out = f.result();
        return true;
      }
      case Term::Kind::Abs:
        return fail(TypeError::Kind::Shape, "cannot infer the type of a bare abstraction");
    }
    return false;
  }

  bool check(const Term& u, const SimpleType& expected) {
    if (u.kind() == Term::Kind::Abs) {
      if (expected.isBase())
        return fail(TypeError::Kind::Clash,
                    "abstraction checked against base type " + expected.str());
      if (scope.count(u.name()))
        return fail(TypeError::Kind::NonLinear, "binder '" + u.name() + "' shadows a live variable");
      scope[u.name()] = expected.argument();
      if (!check(u.body(), expected.result())) return false;
      if (scope.count(u.name()))
        return fail(TypeError::Kind::NonLinear,
                    "bound variable '" + u.name() + "' is never used");
      return true;
    }
    SimpleType got;
    if (!infer(u, got)) return false;
    if (got != expected)
      return fail(TypeError::Kind::Clash,
                  "expected " + expected.str() + " but found " + got.str());
    return true;
  }
};

} // namespace

std::optional<TypeError> checkSimple(const TypeEnv& env, const Term& u,
                                     const SimpleType& expected, const ConstTyping& consts) {
  Checker c{consts, {env.begin(), env.end()}, {}, std::nullopt};
  if (!c.check(u, expected)) return c.error;
  if (!c.scope.empty())
    return TypeError{TypeError::Kind::NonLinear,
                     "context variable '" + c.scope.begin()->first + "' is never used"};
  return std::nullopt;
}

InferResult inferSimple(const TypeEnv& env, const Term& u, const ConstTyping& consts) {
  Checker c{consts, {env.begin(), env.end()}, {}, std::nullopt};
  SimpleType out;
  if (!c.infer(u, out)) return {std::nullopt, c.error};
  if (!c.scope.empty())
    return {std::nullopt,
            TypeError{TypeError::Kind::NonLinear,
                      "context variable '" + c.scope.begin()->first + "' is never used"}};
  return {out, std::nullopt};
}

namespace {

Term etaLong(const Term& u, const SimpleType& type, TypeEnv& env, const ConstTyping& consts,
             NameSupply& fresh) {
  if (!type.isBase()) {
    if (u.kind() == Term::Kind::Abs) {
      auto saved = env.find(u.name()) != env.end()
                       ? std::optional<SimpleType>(env[u.name()])
                       : std::nullopt;
      env[u.name()] = type.argument();
      Term body = etaLong(u.body(), type.result(), env, consts, fresh);
      if (saved)
        env[u.name()] = *saved;
      else
        env.erase(u.name());
      return Term::abs(u.name(), body);
    }
    std::string x = fresh.next();
    env[x] = type.argument();
    Term body = etaLong(Term::app(u, Term::var(x)), type.result(), env, consts, fresh);
    env.erase(x);
    return Term::abs(x, body);
  }
  // Base type: u is a beta-normal spine h a1..an; expand each argument at
  // the type demanded by the head.
  HeadForm hf = headForm(u);
  if (!hf.binders.empty())
    throw std::runtime_error("eta expansion: abstraction at base type " + type.str());
  SimpleType headType;
  if (hf.head.kind() == Term::Kind::Var) {
    auto it = env.find(hf.head.name());
    if (it == env.end())
      throw std::runtime_error("eta expansion: unbound variable " + hf.head.name());
    headType = it->second;
  } else if (hf.head.kind() == Term::Kind::Const) {
    headType = consts(hf.head.name(), hf.head.chiIndex());
    if (headType.empty())
      throw std::runtime_error("eta expansion: unknown constant " + hf.head.name());
  } else {
    throw std::runtime_error("eta expansion: term is not beta-normal");
  }
  Term out = hf.head;
  SimpleType cur = headType;
  for (const auto& a : hf.args) {
    if (cur.isBase()) throw std::runtime_error("eta expansion: over-applied head");
    out = Term::app(out, etaLong(a, cur.argument(), env, consts, fresh));
    cur = cur.result();
  }
  if (cur != type)
    throw std::runtime_error("eta expansion: spine yields " + cur.str() + ", expected " +
                             type.str());
  return out;
}

} // namespace

Term betaEtaNormalize(const Term& u, const SimpleType& type, const TypeEnv& env,
                      const ConstTyping& consts) {
  // Reduce first: the bidirectional checker wants spine-shaped terms, and
  // beta steps preserve types.  Alpha-normalizing gives binders distinct
  // names, which the linear checker insists on.
  Term nf = alphaNormalize(betaNormalize(u));
  if (auto err = checkSimple(env, nf, type, consts))
    throw std::runtime_error("betaEtaNormalize: input does not typecheck: " + err->message);
  TypeEnv scratch = env;
  NameSupply fresh("_e");
  return etaLong(nf, type, scratch, consts, fresh);
}

namespace {

// For each subterm, counts path binders whose variable is free in it.
int nestingWalk(const Term& u, std::vector<std::string>& binders) {
  int count = 0;
  for (const auto& b : binders)
    if (occursFree(u, b)) count++;
  int best = count;
  switch (u.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const: break;
    case Term::Kind::Abs: {
      binders.push_back(u.name());
      best = std::max(best, nestingWalk(u.body(), binders));
      binders.pop_back();
      break;
    }
    case Term::Kind::App: {
      best = std::max(best, nestingWalk(u.fun(), binders));
      best = std::max(best, nestingWalk(u.arg(), binders));
      break;
    }
  }
  return best;
}

} // namespace

int nestingDepth(const Term& u) {
  if (!betaNormal(u))
    throw std::invalid_argument("nestingDepth expects a beta-normal term");
  // Canonical renaming keeps shadowed binder names from being miscounted.
  Term t = alphaNormalize(u);
  std::vector<std::string> binders;
  return nestingWalk(t, binders);
}

} // namespace lambridge
