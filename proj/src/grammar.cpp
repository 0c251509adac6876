#include "lambridge/grammar.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lambridge {

const std::vector<Type>& Grammar::typesOf(const std::string& lexeme) const {
  auto it = assignment.find(lexeme);
  if (it == assignment.end())
    throw std::runtime_error("unknown lexeme: " + lexeme);
  return it->second;
}

std::vector<Type> Grammar::lexicalTypes() const {
  std::set<Type> seen;
  std::vector<Type> out;
  for (const auto& lex : lexemes)
    for (const auto& t : assignment.at(lex))
      if (seen.insert(t).second) out.push_back(t);
  return out;
}

namespace {

void collectAtoms(const Type& t, std::set<std::string>& out) {
  if (t.isAtom()) {
    out.insert(t.atomName());
    return;
  }
  collectAtoms(t.argument(), out);
  collectAtoms(t.result(), out);
}

} // namespace

void Grammar::validate() const {
  if (start.empty()) throw std::runtime_error("grammar: missing start declaration");
  if (!atoms.count(start))
    throw std::runtime_error("grammar: start type '" + start + "' is not a declared atom");
  for (const auto& lex : lexemes) {
    if (atoms.count(lex))
      throw std::runtime_error("grammar: '" + lex + "' is both an atom and a lexeme");
    std::set<std::string> used;
    for (const auto& t : assignment.at(lex)) collectAtoms(t, used);
    for (const auto& a : used)
      if (!atoms.count(a))
        throw std::runtime_error("grammar: type of '" + lex + "' uses undeclared atom '" + a + "'");
  }
}

namespace {

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

} // namespace

Grammar parseGrammar(const std::string& text) {
  Grammar g;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = strip(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("grammar line " + std::to_string(lineno) + ": expected ':'");
    std::string key = strip(line.substr(0, colon));
    std::string rhs = strip(line.substr(colon + 1));
    if (key.empty() || rhs.empty())
      throw std::runtime_error("grammar line " + std::to_string(lineno) + ": empty declaration");
    if (key == "atoms") {
      std::istringstream as(rhs);
      std::string a;
      while (as >> a) g.atoms.insert(a);
    } else if (key == "start") {
      g.start = rhs;
    } else {
      Type t;
      try {
        t = parseType(rhs);
      } catch (const std::exception& e) {
        throw std::runtime_error("grammar line " + std::to_string(lineno) + ": " + e.what());
      }
      if (!g.assignment.count(key)) g.lexemes.push_back(key);
      g.assignment[key].push_back(t);
    }
  }
  g.validate();
  return g;
}

Grammar loadGrammar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open grammar file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseGrammar(buf.str());
}

std::string renderGrammar(const Grammar& g) {
  std::string out = "atoms:";
  for (const auto& a : g.atoms) out += " " + a;
  out += "\nstart: " + g.start + "\n";
  for (const auto& lex : g.lexemes)
    for (const auto& t : g.assignment.at(lex)) out += lex + " : " + t.str() + "\n";
  return out;
}

namespace {

void mark(const Type& t, bool positive, SignedOccurrences& out) {
  bool fresh = positive ? out.positive.insert(t).second : out.negative.insert(t).second;
  if (!fresh || t.isAtom()) return;
  mark(t.result(), positive, out);
  mark(t.argument(), !positive, out);
}

} // namespace

SignedOccurrences signedOccurrences(const Grammar& g) {
  SignedOccurrences out;
  for (const auto& t : g.lexicalTypes()) mark(t, true, out);
  // strictPositive: positive occurrences that are proper subterms of some
  // lexical type.  Re-run the closure per lexical type, skipping the root.
  for (const auto& root : g.lexicalTypes()) {
    if (root.isAtom()) continue;
    SignedOccurrences local;
    mark(root.result(), true, local);
    mark(root.argument(), false, local);
    out.strictPositive.insert(local.positive.begin(), local.positive.end());
  }
  return out;
}

} // namespace lambridge
