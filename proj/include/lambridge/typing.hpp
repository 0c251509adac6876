#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lambridge/term.hpp"
#include "lambridge/type.hpp"

namespace lambridge {

// Non-oriented simple types over base names.
class SimpleType {
public:
  SimpleType() = default;
  static SimpleType base(std::string name);
  static SimpleType arrow(SimpleType argument, SimpleType result);

  bool empty() const { return node_ == nullptr; }
  bool isBase() const;
  const std::string& baseName() const;
  const SimpleType& argument() const;
  const SimpleType& result() const;

  bool operator==(const SimpleType& o) const;
  bool operator!=(const SimpleType& o) const { return !(*this == o); }
  std::strong_ordering operator<=>(const SimpleType& o) const;

  std::string str() const;

private:
  struct Node;
  explicit SimpleType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

int order(const SimpleType& t);

// tau_0: forget orientation, c(a,b) becomes a -> b.
SimpleType erase(const Type& t);

// Typing environment: each variable bound at most once.
using TypeEnv = std::map<std::string, SimpleType>;

// Resolves the type of a constant; empty result means "unknown constant".
using ConstTyping = std::function<SimpleType(const std::string& name, std::size_t chiIndex)>;

ConstTyping grammarConstants(const Grammar& g);

struct TypeError {
  enum class Kind { UnboundVariable, UnknownConstant, Clash, NonLinear, Shape };
  Kind kind;
  std::string message;
};

// Checks u against an expected type in the simple linear system: every
// environment variable and every binder is consumed exactly once.  Handles
// beta-normal terms bidirectionally (abstractions checked, spines inferred).
std::optional<TypeError> checkSimple(const TypeEnv& env, const Term& u,
                                     const SimpleType& expected, const ConstTyping& consts);

// Infers the type of a spine-headed beta-normal term (fails on a bare
// abstraction, whose type is not unique).
struct InferResult {
  std::optional<SimpleType> type;
  std::optional<TypeError> error;
};
InferResult inferSimple(const TypeEnv& env, const Term& u, const ConstTyping& consts);

// Unique beta-normal eta-long representative of u at the given type.
// Signals (throws std::runtime_error) on input that does not check.
Term betaEtaNormalize(const Term& u, const SimpleType& type, const TypeEnv& env,
                      const ConstTyping& consts);

// Count, over all subterms w, of binders on the root-to-w path whose bound
// variable occurs free in w; the maximum is the nested-introduction depth.
// Rejects (throws std::invalid_argument) terms that are not beta-normal.
int nestingDepth(const Term& u);

} // namespace lambridge
