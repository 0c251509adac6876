#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lambridge {

// Oriented slash types of the product-free associative calculus.
//
// Slash(Right, a, b) prints "b/a": the argument a is expected on the right.
// Slash(Left, a, b)  prints "a\b": the argument a is expected on the left.
// Equality is syntactic; there is no associativity at the type level.
enum class Conn : unsigned char { Right, Left };

Conn complement(Conn c);
char connChar(Conn c);

class Type {
public:
  Type() = default; // empty handle, only useful as a container placeholder

  static Type atom(std::string name);
  static Type slash(Conn c, Type argument, Type result);

  bool empty() const { return node_ == nullptr; }
  bool isAtom() const;
  const std::string& atomName() const; // requires isAtom()
  Conn conn() const;                   // requires !isAtom()
  const Type& argument() const;        // requires !isAtom()
  const Type& result() const;          // requires !isAtom()

  bool operator==(const Type& o) const;
  bool operator!=(const Type& o) const { return !(*this == o); }
  // Total structural order; used for deterministic set iteration.
  std::strong_ordering operator<=>(const Type& o) const;

  std::size_t hash() const;
  std::string str() const;

private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Order of a type: ord(atom) = 1, ord(c(a,b)) = max(1 + ord(a), ord(b)).
int order(const Type& t);

// Unique decomposition t = c1(a1, c2(a2, ... cn(an, r) ...)) with r atomic.
struct Decomposition {
  std::vector<std::pair<Conn, Type>> args; // (c1,a1) .. (cn,an)
  Type head;                               // atomic result r
};

Decomposition decompose(const Type& t);
Type recompose(const Decomposition& d);

// Text form. '/' and '\' share one precedence level and do not mix without
// parentheses; a chain of a single operator associates toward the result
// ("a/b/c" = "(a/b)/c", "a\b\c" = "a\(b\c)", "np\s/np" is rejected).
Type parseType(std::string_view text);

struct TypeHash {
  std::size_t operator()(const Type& t) const { return t.hash(); }
};

} // namespace lambridge
