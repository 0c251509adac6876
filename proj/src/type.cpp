#include "lambridge/type.hpp"

#include <cctype>
#include <stdexcept>

namespace lambridge {

Conn complement(Conn c) { return c == Conn::Right ? Conn::Left : Conn::Right; }

char connChar(Conn c) { return c == Conn::Right ? '/' : '\\'; }

struct Type::Node {
  bool atom;
  std::string name;   // atoms only
  Conn conn{};        // slashes only
  Type argument;      // slashes only
  Type result;        // slashes only
  std::size_t hash{};
};

Type Type::atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->atom = true;
  n->name = std::move(name);
  n->hash = std::hash<std::string>{}(n->name) * 3 + 1;
  return Type(std::move(n));
}

Type Type::slash(Conn c, Type argument, Type result) {
  auto n = std::make_shared<Node>();
  n->atom = false;
  n->conn = c;
  n->argument = std::move(argument);
  n->result = std::move(result);
  std::size_t h = c == Conn::Right ? 0x9e3779b9u : 0x85ebca6bu;
  h ^= n->argument.hash() + 0x9e3779b9u + (h << 6) + (h >> 2);
  h ^= n->result.hash() + 0x9e3779b9u + (h << 6) + (h >> 2);
  n->hash = h;
  return Type(std::move(n));
}

bool Type::isAtom() const { return node_->atom; }
const std::string& Type::atomName() const { return node_->name; }
Conn Type::conn() const { return node_->conn; }
const Type& Type::argument() const { return node_->argument; }
const Type& Type::result() const { return node_->result; }
std::size_t Type::hash() const { return node_ ? node_->hash : 0; }

bool Type::operator==(const Type& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->hash != o.node_->hash) return false;
  if (node_->atom != o.node_->atom) return false;
  if (node_->atom) return node_->name == o.node_->name;
  return node_->conn == o.node_->conn && node_->argument == o.node_->argument &&
         node_->result == o.node_->result;
}

std::strong_ordering Type::operator<=>(const Type& o) const {
  if (node_ == o.node_) return std::strong_ordering::equal;
  if (!node_) return std::strong_ordering::less;
  if (!o.node_) return std::strong_ordering::greater;
  if (node_->atom != o.node_->atom)
    return node_->atom ? std::strong_ordering::less : std::strong_ordering::greater;
  if (node_->atom) return node_->name <=> o.node_->name;
  if (auto c = node_->conn <=> o.node_->conn; c != 0) return c;
  if (auto c = node_->argument <=> o.node_->argument; c != 0) return c;
  return node_->result <=> o.node_->result;
}

namespace {

void render(const Type& t, std::string& out, bool parens) {
  if (t.isAtom()) {
    out += t.atomName();
    return;
  }
  if (parens) out += '(';
  if (t.conn() == Conn::Right) {
    render(t.result(), out, !t.result().isAtom());
    out += '/';
    render(t.argument(), out, !t.argument().isAtom());
  } else {
    render(t.argument(), out, !t.argument().isAtom());
    out += '\\';
    render(t.result(), out, !t.result().isAtom());
  }
  if (parens) out += ')';
}

} // namespace

std::string Type::str() const {
  if (!node_) return "<none>";
  std::string out;
  render(*this, out, false);
  return out;
}

int order(const Type& t) {
  if (t.isAtom()) return 1;
  return std::max(1 + order(t.argument()), order(t.result()));
}

Decomposition decompose(const Type& t) {
  Decomposition d;
  Type cur = t;
  while (!cur.isAtom()) {
    d.args.emplace_back(cur.conn(), cur.argument());
    cur = cur.result();
  }
  d.head = cur;
  return d;
}

Type recompose(const Decomposition& d) {
  Type cur = d.head;
  for (auto it = d.args.rbegin(); it != d.args.rend(); ++it)
    cur = Type::slash(it->first, it->second, cur);
  return cur;
}

namespace {

struct TypeParser {
  std::string_view text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("type syntax error at offset " + std::to_string(pos) + ": " +
                             msg + " in \"" + std::string(text) + "\"");
  }

  void skipWs() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) pos++;
  }

  bool identChar(char c) const {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' ||
           static_cast<unsigned char>(c) >= 0x80; // keep UTF-8 lexeme atoms intact
  }

  Type primary() {
    skipWs();
    if (pos >= text.size()) fail("unexpected end of input");
    if (text[pos] == '(') {
      pos++;
      Type t = expr();
      skipWs();
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
      pos++;
      return t;
    }
    std::size_t start = pos;
    while (pos < text.size() && identChar(text[pos])) pos++;
    if (pos == start) fail("expected atom or '('");
    return Type::atom(std::string(text.substr(start, pos - start)));
  }

  Type expr() {
    std::vector<Type> parts{primary()};
    std::vector<Conn> ops;
    while (true) {
      skipWs();
      if (pos >= text.size() || (text[pos] != '/' && text[pos] != '\\')) break;
      ops.push_back(text[pos] == '/' ? Conn::Right : Conn::Left);
      pos++;
      parts.push_back(primary());
    }
    if (ops.empty()) return parts[0];
    for (Conn c : ops)
      if (c != ops[0])
        fail("mixed '/' and '\\' need parentheses");
    if (ops[0] == Conn::Right) {
      // a/b/c = (a/b)/c: result a, then arguments b, c from the inside out.
      Type cur = parts[0];
      for (std::size_t i = 1; i < parts.size(); i++)
        cur = Type::slash(Conn::Right, parts[i], cur);
      return cur;
    }
    // a\b\c = a\(b\c)
    Type cur = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;)
      cur = Type::slash(Conn::Left, parts[i], cur);
    return cur;
  }
};

} // namespace

Type parseType(std::string_view text) {
  TypeParser p{text};
  Type t = p.expr();
  p.skipWs();
  if (p.pos != text.size()) p.fail("trailing input");
  return t;
}

} // namespace lambridge
